//! Univariate polynomials over a finite field, in canonical form (no
//! trailing zero coefficients; the zero polynomial has an empty vector).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{embed, Field, FieldElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    c: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> UniPoly {
        let mut p = UniPoly {
            field: field.clone(),
            c: coeffs,
        };
        p.normalize();
        p
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly {
            field: field.clone(),
            c: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn constant(e: FieldElement) -> UniPoly {
        let field = e.field().clone();
        UniPoly::new(&field, vec![e])
    }

    /// The monomial `x`.
    pub fn x(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// Polynomial from small signed integer coefficients (little-endian).
    pub fn from_i64(field: &Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&n| field.from_i64(n)).collect())
    }

    fn normalize(&mut self) {
        while self.c.last().map_or(false, |e| e.is_zero()) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> FieldElement {
        self.c.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        UniPoly::new(&self.field, out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        UniPoly::new(&self.field, out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(&self.field, self.c.iter().map(|e| e.neg()).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(&self.field, out)
    }

    pub fn scale(&self, s: &FieldElement) -> UniPoly {
        UniPoly::new(&self.field, self.c.iter().map(|e| e.mul(s)).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.field.zero(); n];
        out.extend(self.c.iter().cloned());
        UniPoly::new(&self.field, out)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut result = UniPoly::one(&self.field);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Euclidean division; panics on zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lc_inv = divisor.leading().inv();
        let mut rem = self.clone();
        let mut quot = vec![
            self.field.zero();
            self.degree()
                .map_or(0, |d| if d >= dd { d - dd + 1 } else { 0 })
        ];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let coef = rem.leading().mul(&lc_inv);
            let shift = dr - dd;
            quot[shift] = quot[shift].add(&coef);
            rem = rem.sub(&divisor.scale(&coef).shift(shift));
        }
        (UniPoly::new(&self.field, quot), rem)
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut f = self.clone();
        let mut g = other.clone();
        while !g.is_zero() {
            let r = f.rem(&g);
            f = g;
            g = r;
        }
        f.monic()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    pub fn derivative(&self) -> UniPoly {
        if self.c.len() <= 1 {
            return UniPoly::zero(&self.field);
        }
        let out = self.c[1..]
            .iter()
            .enumerate()
            .map(|(i, e)| e.mul(&self.field.from_u64(i as u64 + 1)))
            .collect();
        UniPoly::new(&self.field, out)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `self^e mod m` by binary exponentiation.
    pub fn pow_mod(&self, mut e: u128, m: &UniPoly) -> UniPoly {
        let mut result = UniPoly::one(&self.field);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        result
    }

    /// Coefficient-wise image under the fixed embedding into `target`.
    pub fn embed(&self, target: &Field) -> Result<UniPoly> {
        let c = self
            .c
            .iter()
            .map(|e| embed(e, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(target, c))
    }

    /// Substitute `g` for the variable.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&self.field);
        for c in self.c.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(c.clone()));
        }
        acc
    }
}

/// Resultant of `f` and `g` via the Euclidean polynomial remainder sequence.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> FieldElement {
    let field = f.field().clone();
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = field.one();
    loop {
        let db = match b.degree() {
            None => return field.zero(),
            Some(d) => d,
        };
        let da = match a.degree() {
            None => return field.zero(),
            Some(d) => d,
        };
        if db == 0 {
            return acc.mul(&b.leading().pow(da as u128));
        }
        let r = a.rem(&b);
        let dr = r.degree();
        // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        if (da * db) % 2 == 1 {
            acc = acc.neg();
        }
        let drop = da - dr.map_or(0, |d| d);
        match dr {
            None => {
                // r = 0: resultant vanishes unless b is a unit (db == 0, handled)
                return field.zero();
            }
            Some(_) => {
                acc = acc.mul(&b.leading().pow(drop as u128));
            }
        }
        a = b;
        b = r;
    }
}

/// Discriminant with the classical normalization
/// `disc(f) = lc^{2d-2} prod_{i<j} (r_i - r_j)^2`, computed as
/// `(-1)^{d(d-1)/2} res(f, f') lc^{d-2-deg f'}`. The leading-coefficient
/// power matters when the derivative degree drops below `d - 1`, which
/// happens in small characteristic.
pub fn discriminant(f: &UniPoly) -> Result<FieldElement> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d < 1 {
        return Err(Error::ZeroPolynomial);
    }
    let fp = f.derivative();
    let mut out = match fp.degree() {
        None => f.field().zero(),
        Some(m) => {
            let res = resultant(f, &fp);
            if d >= m + 2 {
                res.mul(&f.leading().pow((d - 2 - m) as u128))
            } else {
                res.div(&f.leading())
            }
        }
    };
    if (d * (d - 1) / 2) % 2 == 1 {
        out = out.neg();
    }
    Ok(out)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "({})", c)?;
            } else if i == 1 {
                write!(f, "({})*t", c)?;
            } else {
                write!(f, "({})*t^{}", c, i)?;
            }
        }
        Ok(())
    }
}
