//! Rational functions in one variable as reduced numerator/denominator pairs.

use super::field::{Field, FieldElement};
use super::poly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RatFn {
    /// Reduced form with monic denominator.
    pub fn new(num: UniPoly, den: UniPoly) -> RatFn {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn {
                num,
                den: UniPoly::one(den.field()),
            };
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lc = den.leading().inv();
        RatFn {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: UniPoly) -> RatFn {
        let one = UniPoly::one(p.field());
        RatFn { num: p, den: one }
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        RatFn::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        RatFn::new(
            self.num
                .mul(&other.den)
                .sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFn) -> RatFn {
        assert!(!other.num.is_zero(), "division by zero");
        RatFn::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at a finite point; `None` when the denominator vanishes there.
    pub fn eval(&self, x: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).div(&d))
    }

    /// Limit value at infinity: `None` when deg num > deg den (a pole).
    pub fn eval_at_infinity(&self) -> Option<FieldElement> {
        let field = self.field().clone();
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(field.zero()),
            (Some(dn), Some(dd)) => {
                if dn > dd {
                    None
                } else if dn < dd {
                    Some(field.zero())
                } else {
                    Some(self.num.leading().div(&self.den.leading()))
                }
            }
            (Some(_), None) => unreachable!("denominator is nonzero"),
        }
    }
}
