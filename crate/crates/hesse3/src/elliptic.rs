//! Weierstrass models, the chord-tangent group law, invariants, and
//! isomorphism search.
//!
//! Three shapes are supported: short Weierstrass `y^2 = x^3 + ax + b` for
//! p >= 5, and the two characteristic-two normal forms
//! `y^2 + xy = x^3 + a2 x^2 + a6` (ordinary) and
//! `y^2 + a3 y = x^3 + a4 x + a6` (supersingular).

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::poly::UniPoly;
use crate::algebra::roots_in;
use crate::error::{Error, Result};
use crate::plane_cubic::TernaryCubic;

pub const DEFAULT_POINT_BOUND: u128 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    ShortW {
        a: FieldElement,
        b: FieldElement,
    },
    Char2Ord {
        a2: FieldElement,
        a6: FieldElement,
    },
    Char2SS {
        a3: FieldElement,
        a4: FieldElement,
        a6: FieldElement,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticModel {
    field: Field,
    shape: Shape,
}

/// A point on a specific curve: the point at infinity or an affine pair.
#[derive(Debug, Clone)]
pub enum Coords {
    Infinity,
    Affine(FieldElement, FieldElement),
}

#[derive(Debug, Clone)]
pub struct ProjPoint {
    curve: EllipticModel,
    coords: Coords,
}

impl EllipticModel {
    pub fn short_w(a: FieldElement, b: FieldElement) -> Result<EllipticModel> {
        let field = a.field().clone();
        if field.characteristic() < 5 {
            return Err(Error::WrongCharacteristic);
        }
        let model = EllipticModel {
            field,
            shape: Shape::ShortW { a, b },
        };
        model.check_nonsingular()
    }

    pub fn char2_ord(a2: FieldElement, a6: FieldElement) -> Result<EllipticModel> {
        let field = a2.field().clone();
        if field.characteristic() != 2 {
            return Err(Error::WrongCharacteristic);
        }
        let model = EllipticModel {
            field,
            shape: Shape::Char2Ord { a2, a6 },
        };
        model.check_nonsingular()
    }

    pub fn char2_ss(
        a3: FieldElement,
        a4: FieldElement,
        a6: FieldElement,
    ) -> Result<EllipticModel> {
        let field = a3.field().clone();
        if field.characteristic() != 2 {
            return Err(Error::WrongCharacteristic);
        }
        let model = EllipticModel {
            field,
            shape: Shape::Char2SS { a3, a4, a6 },
        };
        model.check_nonsingular()
    }

    fn check_nonsingular(self) -> Result<EllipticModel> {
        if self.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(self)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// The five coefficients of the long Weierstrass form
    /// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
    pub fn a_invariants(&self) -> [FieldElement; 5] {
        let z = self.field.zero();
        match &self.shape {
            Shape::ShortW { a, b } => [z.clone(), z.clone(), z, a.clone(), b.clone()],
            Shape::Char2Ord { a2, a6 } => {
                [self.field.one(), a2.clone(), z.clone(), z, a6.clone()]
            }
            Shape::Char2SS { a3, a4, a6 } => {
                [z.clone(), z, a3.clone(), a4.clone(), a6.clone()]
            }
        }
    }

    fn b_invariants(&self) -> [FieldElement; 4] {
        let [a1, a2, a3, a4, a6] = self.a_invariants();
        let four = self.field.from_u64(4);
        let b2 = a1.square().add(&four.mul(&a2));
        let b4 = a4.add(&a4).add(&a1.mul(&a3));
        let b6 = a3.square().add(&four.mul(&a6));
        let b8 = a1
            .square()
            .mul(&a6)
            .add(&four.mul(&a2).mul(&a6))
            .sub(&a1.mul(&a3).mul(&a4))
            .add(&a2.mul(&a3.square()))
            .sub(&a4.square());
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> FieldElement {
        let [b2, b4, b6, b8] = self.b_invariants();
        let f = &self.field;
        b2.square()
            .mul(&b8)
            .neg()
            .sub(&f.from_u64(8).mul(&b4.pow(3)))
            .sub(&f.from_u64(27).mul(&b6.square()))
            .add(&f.from_u64(9).mul(&b2).mul(&b4).mul(&b6))
    }

    pub fn j_invariant(&self) -> FieldElement {
        let [b2, b4, _, _] = self.b_invariants();
        let c4 = b2.square().sub(&self.field.from_u64(24).mul(&b4));
        c4.pow(3).div(&self.discriminant())
    }

    pub fn embed(&self, target: &Field) -> Result<EllipticModel> {
        let e = |v: &FieldElement| crate::algebra::embed(v, target);
        let shape = match &self.shape {
            Shape::ShortW { a, b } => Shape::ShortW {
                a: e(a)?,
                b: e(b)?,
            },
            Shape::Char2Ord { a2, a6 } => Shape::Char2Ord {
                a2: e(a2)?,
                a6: e(a6)?,
            },
            Shape::Char2SS { a3, a4, a6 } => Shape::Char2SS {
                a3: e(a3)?,
                a4: e(a4)?,
                a6: e(a6)?,
            },
        };
        Ok(EllipticModel {
            field: target.clone(),
            shape,
        })
    }

    pub fn infinity(&self) -> ProjPoint {
        ProjPoint {
            curve: self.clone(),
            coords: Coords::Infinity,
        }
    }

    pub fn affine(&self, x: FieldElement, y: FieldElement) -> Result<ProjPoint> {
        let p = ProjPoint {
            curve: self.clone(),
            coords: Coords::Affine(x, y),
        };
        if !p.on_curve() {
            return Err(Error::NotOnCurve);
        }
        Ok(p)
    }

    /// The curve as a homogeneous cubic
    /// `Y^2Z + a1 XYZ + a3 YZ^2 - X^3 - a2 X^2Z - a4 XZ^2 - a6 Z^3`.
    pub fn to_cubic(&self) -> TernaryCubic {
        let [a1, a2, a3, a4, a6] = self.a_invariants();
        let mut c = vec![self.field.zero(); 10];
        c[0] = self.field.one().neg();
        c[2] = a2.neg();
        c[4] = a1;
        c[5] = a4.neg();
        c[7] = self.field.one();
        c[8] = a3;
        c[9] = a6.neg();
        TernaryCubic::new(&self.field, c)
    }
}

impl core::fmt::Display for EllipticModel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match &self.shape {
            Shape::ShortW { a, b } => write!(f, "shortw:a={},b={}", a, b),
            Shape::Char2Ord { a2, a6 } => write!(f, "ord2:a2={},a6={}", a2, a6),
            Shape::Char2SS { a3, a4, a6 } => {
                write!(f, "ss2:a3={},a4={},a6={}", a3, a4, a6)
            }
        }
    }
}

impl ProjPoint {
    pub fn curve(&self) -> &EllipticModel {
        &self.curve
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self.coords, Coords::Infinity)
    }

    pub fn xy(&self) -> Option<(&FieldElement, &FieldElement)> {
        match &self.coords {
            Coords::Infinity => None,
            Coords::Affine(x, y) => Some((x, y)),
        }
    }

    fn on_curve(&self) -> bool {
        match &self.coords {
            Coords::Infinity => true,
            Coords::Affine(x, y) => {
                let [a1, a2, a3, a4, a6] = self.curve.a_invariants();
                let lhs = y.square().add(&a1.mul(x).mul(y)).add(&a3.mul(y));
                let rhs = x
                    .pow(3)
                    .add(&a2.mul(&x.square()))
                    .add(&a4.mul(x))
                    .add(&a6);
                lhs == rhs
            }
        }
    }

    pub fn neg(&self) -> ProjPoint {
        match &self.coords {
            Coords::Infinity => self.clone(),
            Coords::Affine(x, y) => {
                let [a1, _, a3, _, _] = self.curve.a_invariants();
                let ny = y.neg().sub(&a1.mul(x)).sub(&a3);
                ProjPoint {
                    curve: self.curve.clone(),
                    coords: Coords::Affine(x.clone(), ny),
                }
            }
        }
    }

    pub fn add(&self, other: &ProjPoint) -> ProjPoint {
        debug_assert_eq!(self.curve, other.curve, "points on different curves");
        let curve = &self.curve;
        let field = curve.field();
        let (x1, y1) = match &self.coords {
            Coords::Infinity => return other.clone(),
            Coords::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match &other.coords {
            Coords::Infinity => return self.clone(),
            Coords::Affine(x, y) => (x, y),
        };
        let [a1, a2, a3, a4, a6] = curve.a_invariants();
        if x1 == x2 && *y2 == y1.neg().sub(&a1.mul(x1)).sub(&a3) {
            return curve.infinity();
        }
        let (lambda, nu) = if x1 == x2 {
            let den = y1.add(y1).add(&a1.mul(x1)).add(&a3);
            let three = field.from_u64(3);
            let lam = three
                .mul(&x1.square())
                .add(&a2.mul(x1).add(&a2.mul(x1)))
                .add(&a4)
                .sub(&a1.mul(y1))
                .div(&den);
            let nu = x1
                .pow(3)
                .neg()
                .add(&a4.mul(x1))
                .add(&a6.add(&a6))
                .sub(&a3.mul(y1))
                .div(&den);
            (lam, nu)
        } else {
            let lam = y2.sub(y1).div(&x2.sub(x1));
            let nu = y1.sub(&lam.mul(x1));
            (lam, nu)
        };
        let x3 = lambda
            .square()
            .add(&a1.mul(&lambda))
            .sub(&a2)
            .sub(x1)
            .sub(x2);
        let y3 = lambda.add(&a1).mul(&x3).add(&nu).add(&a3).neg();
        ProjPoint {
            curve: curve.clone(),
            coords: Coords::Affine(x3, y3),
        }
    }

    pub fn sub(&self, other: &ProjPoint) -> ProjPoint {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, n: u64) -> ProjPoint {
        let mut acc = self.curve.infinity();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base);
            }
            base = base.add(&base);
            k >>= 1;
        }
        acc
    }

    pub fn embed(&self, target: &Field) -> Result<ProjPoint> {
        let curve = self.curve.embed(target)?;
        match &self.coords {
            Coords::Infinity => Ok(curve.infinity()),
            Coords::Affine(x, y) => curve.affine(
                crate::algebra::embed(x, target)?,
                crate::algebra::embed(y, target)?,
            ),
        }
    }

    /// The corresponding point of the plane model from
    /// [`EllipticModel::to_cubic`]; O maps to (0:1:0).
    pub fn to_plane(&self) -> crate::plane_cubic::ProjPoint2 {
        let field = self.curve.field();
        match &self.coords {
            Coords::Infinity => crate::plane_cubic::ProjPoint2::new(
                field.zero(),
                field.one(),
                field.zero(),
            ),
            Coords::Affine(x, y) => {
                crate::plane_cubic::ProjPoint2::new(x.clone(), y.clone(), field.one())
            }
        }
    }

    fn sort_key(&self) -> (u8, u128, u128) {
        match &self.coords {
            Coords::Infinity => (0, 0, 0),
            Coords::Affine(x, y) => (1, x.value_index(), y.value_index()),
        }
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        match (&self.coords, &other.coords) {
            (Coords::Infinity, Coords::Infinity) => true,
            (Coords::Affine(x1, y1), Coords::Affine(x2, y2)) => x1 == x2 && y1 == y2,
            _ => false,
        }
    }
}
impl Eq for ProjPoint {}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl core::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match &self.coords {
            Coords::Infinity => write!(f, "O"),
            Coords::Affine(x, y) => write!(f, "({}, {})", x, y),
        }
    }
}

pub fn curve_invariants(e: &EllipticModel) -> (FieldElement, FieldElement) {
    (e.discriminant(), e.j_invariant())
}

/// All rational points of the curve base-changed to `target`, in a
/// deterministic order starting with O.
pub fn points_over(e: &EllipticModel, target: &Field) -> Result<Vec<ProjPoint>> {
    points_over_bounded(e, target, DEFAULT_POINT_BOUND)
}

pub fn points_over_bounded(
    e: &EllipticModel,
    target: &Field,
    bound: u128,
) -> Result<Vec<ProjPoint>> {
    if target.order() > bound {
        return Err(Error::FieldTooLarge);
    }
    let curve = e.embed(target)?;
    let [a1, a2, a3, a4, a6] = curve.a_invariants();
    let mut out = vec![curve.infinity()];
    for x in target.elements() {
        // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
        let lin = a1.mul(&x).add(&a3);
        let cst = x
            .pow(3)
            .add(&a2.mul(&x.square()))
            .add(&a4.mul(&x))
            .add(&a6)
            .neg();
        let poly = UniPoly::new(target, vec![cst, lin, target.one()]);
        let mut ys = roots_in(&poly, target)?;
        ys.dedup();
        for y in ys {
            out.push(curve.affine(x.clone(), y).expect("solved point is on curve"));
        }
    }
    Ok(out)
}

/// An isomorphism of Weierstrass models given by the substitution
/// `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + w`, carrying the source
/// equation into the target equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveIso {
    pub source: EllipticModel,
    pub target: EllipticModel,
    pub u: FieldElement,
    pub r: FieldElement,
    pub s: FieldElement,
    pub w: FieldElement,
}

fn transformed_a_invariants(
    src: &[FieldElement; 5],
    u: &FieldElement,
    r: &FieldElement,
    s: &FieldElement,
    w: &FieldElement,
) -> [FieldElement; 5] {
    let field = u.field();
    let [a1, a2, a3, a4, a6] = src;
    let two = field.from_u64(2);
    let three = field.from_u64(3);
    let u2 = u.square();
    let u3 = u2.mul(u);
    let u4 = u2.square();
    let u6 = u3.square();
    let na1 = a1.add(&two.mul(s)).div(u);
    let na2 = a2
        .sub(&s.mul(a1))
        .add(&three.mul(r))
        .sub(&s.square())
        .div(&u2);
    let na3 = a3.add(&r.mul(a1)).add(&two.mul(w)).div(&u3);
    let na4 = a4
        .sub(&s.mul(a3))
        .add(&two.mul(r).mul(a2))
        .sub(&w.add(&r.mul(s)).mul(a1))
        .add(&three.mul(&r.square()))
        .sub(&two.mul(s).mul(w))
        .div(&u4);
    let na6 = a6
        .add(&r.mul(a4))
        .add(&r.square().mul(a2))
        .add(&r.pow(3))
        .sub(&w.mul(a3))
        .sub(&w.square())
        .sub(&r.mul(w).mul(a1))
        .div(&u6);
    [na1, na2, na3, na4, na6]
}

impl CurveIso {
    pub fn new(
        source: EllipticModel,
        target: EllipticModel,
        u: FieldElement,
        r: FieldElement,
        s: FieldElement,
        w: FieldElement,
    ) -> Result<CurveIso> {
        if u.is_zero() {
            return Err(Error::SingularInput);
        }
        let got = transformed_a_invariants(&source.a_invariants(), &u, &r, &s, &w);
        if got != target.a_invariants() {
            return Err(Error::NotOnCurve);
        }
        Ok(CurveIso {
            source,
            target,
            u,
            r,
            s,
            w,
        })
    }

    pub fn identity(e: &EllipticModel) -> CurveIso {
        let field = e.field();
        CurveIso {
            source: e.clone(),
            target: e.clone(),
            u: field.one(),
            r: field.zero(),
            s: field.zero(),
            w: field.zero(),
        }
    }

    /// Image of a source point on the target model.
    pub fn map_point(&self, p: &ProjPoint) -> ProjPoint {
        match &p.coords {
            Coords::Infinity => self.target.infinity(),
            Coords::Affine(x, y) => {
                let u2 = self.u.square();
                let u3 = u2.mul(&self.u);
                let nx = x.sub(&self.r).div(&u2);
                let ny = y
                    .sub(&self.s.mul(&x.sub(&self.r)))
                    .sub(&self.w)
                    .div(&u3);
                self.target
                    .affine(nx, ny)
                    .expect("isomorphism maps curve points to curve points")
            }
        }
    }

    pub fn inverse(&self) -> CurveIso {
        let ui = self.u.inv();
        let ns = self.s.mul(&ui).neg();
        let nr = self.r.neg().mul(&ui.square());
        let nw = self
            .s
            .mul(&self.r)
            .sub(&self.w)
            .mul(&ui.pow(3));
        CurveIso::new(
            self.target.clone(),
            self.source.clone(),
            ui,
            nr,
            ns,
            nw,
        )
        .expect("inverse substitution is an isomorphism")
    }

    pub fn compose(&self, then: &CurveIso) -> CurveIso {
        debug_assert_eq!(self.target, then.source);
        // (u1,r1,s1,w1) followed by (u2,r2,s2,w2)
        let u = self.u.mul(&then.u);
        let r = self.r.add(&self.u.square().mul(&then.r));
        let s = self.s.add(&self.u.mul(&then.s));
        let w = self
            .w
            .add(&self.u.square().mul(&self.s).mul(&then.r))
            .add(&self.u.pow(3).mul(&then.w));
        CurveIso::new(self.source.clone(), then.target.clone(), u, r, s, w)
            .expect("composite substitution is an isomorphism")
    }
}

/// All Weierstrass isomorphisms from `e` to `e2` defined over `target`,
/// in a deterministic order.
pub fn isomorphisms_over(
    e: &EllipticModel,
    e2: &EllipticModel,
    target: &Field,
) -> Result<Vec<CurveIso>> {
    let src = e.embed(target)?;
    let dst = e2.embed(target)?;
    let field = target;
    let mut out = Vec::new();
    match (&src.shape, &dst.shape) {
        (Shape::ShortW { a, b }, Shape::ShortW { a: a2, b: b2 }) => {
            // forced r = s = w = 0; u^4 a' = a and u^6 b' = b
            let us: Vec<FieldElement> = if !a2.is_zero() {
                let rhs = a.div(a2);
                let quartic = UniPoly::new(
                    field,
                    vec![
                        rhs.neg(),
                        field.zero(),
                        field.zero(),
                        field.zero(),
                        field.one(),
                    ],
                );
                roots_in(&quartic, field)?
            } else if !b2.is_zero() {
                let rhs = b.div(b2);
                let mut c = vec![field.zero(); 7];
                c[0] = rhs.neg();
                c[6] = field.one();
                roots_in(&UniPoly::new(field, c), field)?
            } else {
                Vec::new()
            };
            for u in us {
                if u.is_zero() {
                    continue;
                }
                if let Ok(iso) = CurveIso::new(
                    src.clone(),
                    dst.clone(),
                    u,
                    field.zero(),
                    field.zero(),
                    field.zero(),
                ) {
                    out.push(iso);
                }
            }
        }
        (Shape::Char2Ord { a2: c2, a6 }, Shape::Char2Ord { a2: d2, a6: e6 }) => {
            if a6 == e6 {
                // u = 1, r = w = 0, s^2 + s = a2 + a2'
                let rhs = c2.add(d2);
                let quad = UniPoly::new(field, vec![rhs, field.one(), field.one()]);
                for s in roots_in(&quad, field)? {
                    if let Ok(iso) = CurveIso::new(
                        src.clone(),
                        dst.clone(),
                        field.one(),
                        field.zero(),
                        s,
                        field.zero(),
                    ) {
                        out.push(iso);
                    }
                }
            }
        }
        (
            Shape::Char2SS { a3, a4, a6 },
            Shape::Char2SS {
                a3: b3,
                a4: b4,
                a6: b6,
            },
        ) => {
            // u^3 = a3/a3', r = s^2, then quartic in s and quadratic in w
            let rhs = a3.div(b3);
            let cubic = UniPoly::new(
                field,
                vec![rhs.neg(), field.zero(), field.zero(), field.one()],
            );
            for u in roots_in(&cubic, field)? {
                if u.is_zero() {
                    continue;
                }
                let u4 = u.pow(4);
                let u6 = u.pow(6);
                // s^4 + a3 s + (a4 + u^4 a4') = 0
                let quart = UniPoly::new(
                    field,
                    vec![
                        a4.add(&u4.mul(b4)),
                        a3.clone(),
                        field.zero(),
                        field.zero(),
                        field.one(),
                    ],
                );
                for s in roots_in(&quart, field)? {
                    let r = s.square();
                    // w^2 + a3 w + (a6 + s^2 a4 + s^6 + u^6 a6') = 0
                    let cst = a6
                        .add(&s.square().mul(a4))
                        .add(&s.pow(6))
                        .add(&u6.mul(b6));
                    let quad = UniPoly::new(field, vec![cst, a3.clone(), field.one()]);
                    for w in roots_in(&quad, field)? {
                        if let Ok(iso) = CurveIso::new(
                            src.clone(),
                            dst.clone(),
                            u.clone(),
                            r.clone(),
                            s.clone(),
                            w,
                        ) {
                            out.push(iso);
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out.sort_by_key(|iso| {
        (
            iso.u.value_index(),
            iso.r.value_index(),
            iso.s.value_index(),
            iso.w.value_index(),
        )
    });
    out.dedup();
    Ok(out)
}

/// First isomorphism over `target` in the deterministic order, if any.
pub fn isomorphism_over(
    e: &EllipticModel,
    e2: &EllipticModel,
    target: &Field,
) -> Result<Option<CurveIso>> {
    Ok(isomorphisms_over(e, e2, target)?.into_iter().next())
}

/// Automorphisms of the curve defined over `target`.
pub fn automorphisms(e: &EllipticModel, target: &Field) -> Result<Vec<CurveIso>> {
    isomorphisms_over(e, e, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    fn gf(p: u64, k: usize) -> Field {
        FieldSpec::new(p, k, None).unwrap()
    }

    fn shortw(field: &Field, a: i64, b: i64) -> EllipticModel {
        EllipticModel::short_w(field.from_i64(a), field.from_i64(b)).unwrap()
    }

    fn small_curves(field: &Field) -> Vec<EllipticModel> {
        let mut out = Vec::new();
        if field.characteristic() == 2 {
            for a2 in field.elements() {
                for a6 in field.elements() {
                    if let Ok(e) = EllipticModel::char2_ord(a2.clone(), a6.clone()) {
                        out.push(e);
                    }
                }
            }
            for a3 in field.elements() {
                for a4 in field.elements() {
                    for a6 in field.elements() {
                        if let Ok(e) =
                            EllipticModel::char2_ss(a3.clone(), a4.clone(), a6.clone())
                        {
                            out.push(e);
                        }
                    }
                }
            }
        } else {
            for a in field.elements() {
                for b in field.elements() {
                    if let Ok(e) = EllipticModel::short_w(a.clone(), b.clone()) {
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn invariants_by_shape() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 0, 1);
        let (d, j) = curve_invariants(&e);
        assert!(j.is_zero());
        assert_eq!(d, f7.from_i64(-16 * 27));

        let e = shortw(&f7, 1, 0);
        let (_, j) = curve_invariants(&e);
        assert_eq!(j, f7.from_u64(1728));

        let f4 = gf(2, 2);
        for a6 in f4.elements().filter(|e| !e.is_zero()) {
            let e = EllipticModel::char2_ord(f4.zero(), a6.clone()).unwrap();
            let (d, j) = curve_invariants(&e);
            assert_eq!(d, a6);
            assert_eq!(j, a6.inv());
        }
        for a3 in f4.elements().filter(|e| !e.is_zero()) {
            let e = EllipticModel::char2_ss(a3.clone(), f4.one(), f4.zero()).unwrap();
            let (d, j) = curve_invariants(&e);
            assert_eq!(d, a3.pow(4));
            assert!(j.is_zero());
        }

        assert_eq!(
            EllipticModel::char2_ord(f4.one(), f4.zero()),
            Err(Error::SingularCurve)
        );
        assert_eq!(
            EllipticModel::char2_ss(f4.zero(), f4.one(), f4.one()),
            Err(Error::SingularCurve)
        );
        assert_eq!(
            EllipticModel::short_w(f7.zero(), f7.zero()),
            Err(Error::SingularCurve)
        );
        assert_eq!(
            EllipticModel::short_w(gf(2, 1).one(), gf(2, 1).one()),
            Err(Error::WrongCharacteristic)
        );
    }

    #[test]
    fn group_law_examples() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 0, 2);
        let o = e.infinity();
        let p = e.affine(f7.zero(), f7.from_u64(3)).unwrap();
        let q = e.affine(f7.from_u64(3), f7.one()).unwrap();
        assert_eq!(p.add(&o), p);
        assert_eq!(p.add(&p.neg()), o);

        // chord through (0,3) and (3,1): y = 3 - (2/3)x; third point negated
        let sum = p.add(&q);
        let (x3, y3) = sum.xy().unwrap();
        let lam = q.xy().unwrap().1.sub(p.xy().unwrap().1).div(
            &q.xy().unwrap().0.sub(p.xy().unwrap().0),
        );
        let third_y = f7.from_u64(3).add(&lam.mul(x3));
        assert_eq!(*y3, third_y.neg());
        assert!(e.affine(x3.clone(), third_y).is_ok());
    }

    #[test]
    fn group_law_exhaustive_small_fields() {
        for field in [gf(5, 1), gf(7, 1), gf(11, 1), gf(13, 1), gf(2, 1), gf(2, 2), gf(2, 3), gf(2, 4)] {
            for e in small_curves(&field) {
                let pts = points_over(&e, &field).unwrap();
                let n = pts.len() as f64;
                let q = field.order() as f64;
                assert!((n - q - 1.0).abs() <= 2.0 * q.sqrt() + 1e-9, "{e}");
                for p in &pts {
                    assert_eq!(p.add(&p.neg()), e.infinity());
                    for r in &pts {
                        let s = p.add(&r);
                        assert!(s.on_curve());
                        assert_eq!(s, r.add(p));
                    }
                }
                // associativity on a deterministic sample
                for (i, p) in pts.iter().enumerate().step_by(3) {
                    for (j, r) in pts.iter().enumerate().step_by(2) {
                        let t = &pts[(i * 5 + j) % pts.len()];
                        assert_eq!(p.add(r).add(t), p.add(&r.add(t)));
                    }
                }
            }
        }
    }

    #[test]
    fn point_enumeration() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 0, 2);
        let pts = points_over(&e, &f7).unwrap();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], e.infinity());

        let big = gf(2, 13);
        assert_eq!(points_over(&e, &big), Err(Error::FieldTooLarge));
    }

    #[test]
    fn isomorphism_search() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 1, 1);
        let id = isomorphism_over(&e, &e, &f7).unwrap().unwrap();
        assert_eq!(id.u, f7.one());

        // scaling by u = 2: a' = a/u^4, b' = b/u^6
        let u = f7.from_u64(2);
        let e2 = EllipticModel::short_w(
            f7.one().div(&u.pow(4)),
            f7.one().div(&u.pow(6)),
        )
        .unwrap();
        let iso = isomorphism_over(&e, &e2, &f7).unwrap().unwrap();
        assert_eq!(iso.u.pow(4), u.pow(4));

        // quadratic twist by the non-square 3
        let tw = f7.from_u64(3);
        let et = EllipticModel::short_w(
            f7.one().mul(&tw.square()),
            f7.one().mul(&tw.pow(3)),
        )
        .unwrap();
        assert!(isomorphism_over(&e, &et, &f7).unwrap().is_none());
        let f49 = gf(7, 2);
        assert!(isomorphism_over(&e, &et, &f49).unwrap().is_some());
    }

    #[test]
    fn automorphism_counts() {
        let f7 = gf(7, 1);
        assert_eq!(automorphisms(&shortw(&f7, 1, 1), &f7).unwrap().len(), 2);
        // 7 = 1 mod 3, so F7 contains the cube roots of unity
        assert_eq!(automorphisms(&shortw(&f7, 0, 1), &f7).unwrap().len(), 6);
        // i is not in F7 (7 = 3 mod 4), so only 2 of the 4 automorphisms
        // of the j = 1728 curve are rational; all 4 appear over F49
        assert_eq!(automorphisms(&shortw(&f7, 1, 0), &f7).unwrap().len(), 2);
        assert_eq!(
            automorphisms(&shortw(&f7, 1, 0), &gf(7, 2)).unwrap().len(),
            4
        );

        let f2 = gf(2, 1);
        let ss = EllipticModel::char2_ss(f2.one(), f2.zero(), f2.zero()).unwrap();
        assert_eq!(automorphisms(&ss, &f2).unwrap().len(), 2);
        assert_eq!(automorphisms(&ss, &gf(2, 2)).unwrap().len(), 24);

        let ord = EllipticModel::char2_ord(f2.zero(), f2.one()).unwrap();
        assert_eq!(automorphisms(&ord, &f2).unwrap().len(), 2);
    }

    #[test]
    fn iso_is_group_homomorphism() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 1, 1);
        let u = f7.from_u64(3);
        let e2 = EllipticModel::short_w(
            f7.one().div(&u.pow(4)),
            f7.one().div(&u.pow(6)),
        )
        .unwrap();
        let iso = isomorphism_over(&e, &e2, &f7).unwrap().unwrap();
        let pts = points_over(&e, &f7).unwrap();
        for p in &pts {
            assert!(iso.map_point(p).on_curve());
            for q in &pts {
                assert_eq!(
                    iso.map_point(&p.add(q)),
                    iso.map_point(p).add(&iso.map_point(q))
                );
            }
            assert_eq!(iso.inverse().map_point(&iso.map_point(p)), *p);
        }
    }

    #[test]
    fn j_classifies_isomorphism_over_closure() {
        for base in [
            gf(5, 1),
            gf(7, 1),
            gf(11, 1),
            gf(13, 1),
            gf(2, 1),
            gf(2, 2),
            gf(2, 3),
        ] {
            let curves = small_curves(&base);
            let p = base.characteristic();
            let deg = base.degree();
            let exts: Vec<Field> = (1..=12usize)
                .map(|d| FieldSpec::new(p, deg * d, None).unwrap())
                .collect();
            let found_somewhere = |e: &EllipticModel, e2: &EllipticModel| {
                exts.iter()
                    .any(|ext| isomorphism_over(e, e2, ext).unwrap().is_some())
            };
            let (ss, rest): (Vec<_>, Vec<_>) = curves
                .into_iter()
                .partition(|e| matches!(e.shape(), Shape::Char2SS { .. }));
            for e in &rest {
                for e2 in &rest {
                    if e.j_invariant() == e2.j_invariant() {
                        assert!(found_somewhere(e, e2), "{e} vs {e2}");
                    } else {
                        // unequal j rules out isomorphism over every
                        // extension; exercise the negative path on one
                        assert!(isomorphism_over(e, e2, &exts[0]).unwrap().is_none());
                    }
                }
            }
            // all supersingular curves share j = 0; link each to a fixed
            // representative, plus a strided sample of direct pairs
            if let Some(first) = ss.first() {
                for e in &ss {
                    assert!(found_somewhere(e, first), "{e} vs {first}");
                }
                for (i, e) in ss.iter().enumerate().step_by(11) {
                    for e2 in ss.iter().skip(i % 5).step_by(13) {
                        assert!(found_somewhere(e, e2), "{e} vs {e2}");
                    }
                }
            }
            // across families the j-invariants differ (1/a6 vs 0)
            if let (Some(e), Some(e2)) = (
                rest.iter().find(|e| matches!(e.shape(), Shape::Char2Ord { .. })),
                ss.first(),
            ) {
                for ext in &exts[..2] {
                    assert!(isomorphism_over(e, e2, ext).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn curve_to_cubic_consistency() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 2, 3);
        let cubic = e.to_cubic();
        for p in points_over(&e, &f7).unwrap() {
            assert!(cubic.eval(&p.to_plane()).is_zero());
        }
        assert!(crate::plane_cubic::cubic_is_singular(&cubic, &f7).is_none());
    }
}
