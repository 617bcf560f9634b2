//! The pencil of cubics spanned by an elliptic curve and its Hessian: fiber
//! cubics, the Weierstrass form of the family in each shape family, fiber
//! specialization, the j-invariant as a function of the parameter, parameter
//! matching for a target j-invariant, and singular-fiber detection.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{roots_in, Field, FieldElement, FieldSpec, Mat3, RatFn, UniPoly};
use crate::elliptic::{EllipticModel, Shape};
use crate::error::{Error, Result};
use crate::plane_cubic::{
    cubic_is_singular, hessian_char2_ordinary, hessian_char2_supersingular, ProjPoint2,
    TernaryCubic,
};

/// A point of the projective line parameterizing the pencil. `Infinity`
/// denotes the original curve itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilParam {
    Finite(FieldElement),
    Infinity,
}

impl core::fmt::Display for PencilParam {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PencilParam::Finite(t) => write!(f, "{t}"),
            PencilParam::Infinity => write!(f, "inf"),
        }
    }
}

/// The symbolic Weierstrass package of the pencil, per shape family.
#[derive(Clone, Debug)]
pub enum PencilWeierstrass {
    /// Characteristic at least five: the family eta^2 = xi^3 + a_t xi + b_t
    /// together with the coordinate change matrix and its determinant.
    ShortW {
        a_t: UniPoly,
        b_t: UniPoly,
        a_mat: [[UniPoly; 3]; 3],
        det_a: UniPoly,
    },
    /// Characteristic two, ordinary family: eta^2 + b1 xi eta = xi^3 +
    /// b2 xi^2 + b6, valid away from t = 1, plus the supersingular model of
    /// the t = 1 fiber.
    Char2Ord {
        b1: UniPoly,
        b2: UniPoly,
        b6: UniPoly,
        special_t1: EllipticModel,
    },
    /// Characteristic two, supersingular family: the normalized ordinary
    /// coefficients of the fibers as rational functions of t, plus the
    /// ordinary model of the t = 0 fiber when it is smooth.
    Char2SS {
        b2: RatFn,
        b6: RatFn,
        special_t0: Option<EllipticModel>,
    },
}

/// A specialized member of the pencil: an elliptic curve, or a singular cubic
/// together with a witness singular point.
#[derive(Clone, Debug)]
pub enum FiberResult {
    Smooth(EllipticModel),
    Singular(ProjPoint2),
}

impl FiberResult {
    pub fn smooth(&self) -> Option<&EllipticModel> {
        match self {
            FiberResult::Smooth(e) => Some(e),
            FiberResult::Singular(_) => None,
        }
    }
}

fn poly(field: &Field, coeffs: &[FieldElement]) -> UniPoly {
    UniPoly::new(field, coeffs.to_vec())
}

/// The quartic in t whose zeros in the closure are exactly the singular
/// fibers of the pencil (finite parameters only; the fiber at infinity is the
/// original smooth curve).
pub fn singular_quartic(e: &EllipticModel) -> UniPoly {
    let field = e.field();
    match e.shape() {
        Shape::ShortW { a, b } => {
            // t^4 + 18a t^2 - 108b t - 27a^2
            let c0 = a.square().mul(&field.from_i64(-27));
            let c1 = b.mul(&field.from_i64(-108));
            let c2 = a.mul(&field.from_i64(18));
            poly(field, &[c0, c1, c2, field.zero(), field.one()])
        }
        Shape::Char2Ord { a6, .. } => {
            // t^4 + t^3 + t^2 + t + a6
            poly(
                field,
                &[a6.clone(), field.one(), field.one(), field.one(), field.one()],
            )
        }
        Shape::Char2SS { a3, a4, .. } => {
            // t^4 + a3^2 t + a4^2
            poly(
                field,
                &[a4.square(), a3.square(), field.zero(), field.zero(), field.one()],
            )
        }
    }
}

/// The fiber cubic of the pencil at a parameter, in the parameterization in
/// which all closed-form family coefficients below hold. `Infinity` returns
/// the cubic of the curve itself.
pub fn pencil_cubic(e: &EllipticModel, t: &PencilParam) -> Result<TernaryCubic> {
    let t0 = match t {
        PencilParam::Infinity => return Ok(e.to_cubic()),
        PencilParam::Finite(t0) => t0,
    };
    let ef = e.embed(t0.field())?;
    let field = ef.field();
    match ef.shape() {
        Shape::ShortW { a, b } => {
            // t y^2 z + 3 x y^2 - t x^3 + 3a x^2 z + (9b - at) x z^2 - (bt + a^2) z^3
            let mut c = vec![field.zero(); 10];
            c[0] = t0.neg();
            c[2] = a.mul(&field.from_i64(3));
            c[3] = field.from_i64(3);
            c[5] = b.mul(&field.from_i64(9)).sub(&a.mul(t0));
            c[7] = t0.clone();
            c[9] = b.mul(t0).add(&a.square()).neg();
            Ok(TernaryCubic::new(field, c))
        }
        Shape::Char2Ord { a2, a6 } => {
            combine(t0, &ef.to_cubic(), &hessian_char2_ordinary(a2, a6)?)
        }
        Shape::Char2SS { a3, a4, a6 } => {
            combine(t0, &ef.to_cubic(), &hessian_char2_supersingular(a3, a4, a6)?)
        }
    }
}

/// t * f + h, coefficientwise.
fn combine(t0: &FieldElement, f: &TernaryCubic, h: &TernaryCubic) -> Result<TernaryCubic> {
    let coeffs = f
        .coeffs()
        .iter()
        .zip(h.coeffs())
        .map(|(fc, hc)| fc.mul(t0).add(hc))
        .collect();
    Ok(TernaryCubic::new(f.field(), coeffs))
}

/// The symbolic Weierstrass form of the pencil. Every closed-form identity
/// the package relies on is checked at construction time.
pub fn pencil_weierstrass(e: &EllipticModel) -> PencilWeierstrass {
    let field = e.field();
    match e.shape() {
        Shape::ShortW { a, b } => {
            let n = |v: i64| field.from_i64(v);
            let a2 = a.square();
            let a3 = a2.mul(a);
            let a4 = a2.square();
            let b2 = b.square();
            let b3 = b2.mul(b);
            let ab = a.mul(b);
            let a_t = poly(
                field,
                &[
                    a3.mul(&n(27)).add(&b2.mul(&n(243))).neg(),
                    ab.mul(&n(54)),
                    a2.mul(&n(-18)),
                    b.mul(&n(-18)),
                    a.clone(),
                ],
            );
            let b_t = poly(
                field,
                &[
                    a3.mul(b).mul(&n(243)).add(&b3.mul(&n(1458))).neg(),
                    a4.mul(&n(108)).add(&ab.mul(b).mul(&n(486))),
                    a2.mul(b).mul(&n(135)),
                    b2.mul(&n(270)),
                    ab.mul(&n(-45)),
                    a2.mul(&n(4)),
                    b.clone(),
                ],
            );
            let det_a = singular_quartic(e);
            let zero = UniPoly::zero(field);
            let a_mat = [
                [
                    UniPoly::x(field),
                    zero.clone(),
                    poly(field, &[a2.mul(&n(-9)), b.mul(&n(-27)), a.mul(&n(3))]),
                ],
                [zero.clone(), UniPoly::one(field), zero.clone()],
                [
                    UniPoly::constant(n(-3)),
                    zero.clone(),
                    poly(field, &[b.mul(&n(-27)), a.mul(&n(9)), field.zero(), field.one()]),
                ],
            ];
            // det of the block structure: A00*A22 - A02*A20.
            let det = a_mat[0][0]
                .mul(&a_mat[2][2])
                .sub(&a_mat[0][2].mul(&a_mat[2][0]));
            assert_eq!(det, det_a);
            let lhs = a_t
                .pow(3)
                .scale(&n(4))
                .add(&b_t.mul(&b_t).scale(&n(27)));
            let rhs = det_a
                .pow(3)
                .scale(&a3.mul(&n(4)).add(&b2.mul(&n(27))));
            assert_eq!(lhs, rhs);
            PencilWeierstrass::ShortW { a_t, b_t, a_mat, det_a }
        }
        Shape::Char2Ord { a2, a6 } => {
            let tp1 = UniPoly::from_i64(field, &[1, 1]);
            let b1 = tp1.mul(&tp1);
            let b2 = tp1
                .pow(4)
                .scale(a2)
                .add(&UniPoly::x(field).mul(&tp1).scale(a6));
            let b6 = singular_quartic(e).pow(3).scale(a6);
            let special_t1 = EllipticModel::char2_ss(
                a6.clone(),
                a6.square(),
                a6.square().mul(&field.one().add(a2)),
            )
            .expect("a6 is nonzero on a smooth curve");
            PencilWeierstrass::Char2Ord { b1, b2, b6, special_t1 }
        }
        Shape::Char2SS { a3, a4, a6 } => {
            let a3sq = a3.square();
            let b2 = RatFn::new(
                poly(
                    field,
                    &[a3sq.add(a6), a4.clone(), field.zero(), field.one()],
                ),
                UniPoly::constant(a3sq.clone()),
            );
            let b6 = RatFn::new(
                singular_quartic(e).pow(3),
                UniPoly::constant(a3sq.pow(4)),
            );
            let special_t0 = if a4.is_zero() {
                None
            } else {
                // The separately constructed model of the t = 0 fiber,
                // eta^2 + a3^2 xi eta = xi^3 + (a3^4 + a6 a3^2) xi^2 +
                // a3^4 a4^6, normalized to leading coefficient one.
                let u = a3sq.clone();
                let a2n = a3sq.square().add(&a6.mul(&a3sq)).div(&u.square());
                let a6n = a3sq.square().mul(&a4.pow(6)).div(&u.pow(6));
                let model =
                    EllipticModel::char2_ord(a2n, a6n).expect("t = 0 fiber is smooth");
                // It must agree with the generic family evaluated at t = 0.
                let z = field.zero();
                let Shape::Char2Ord { a2: m2, a6: m6 } = model.shape() else {
                    unreachable!()
                };
                assert_eq!(b2.eval(&z).as_ref(), Some(m2));
                assert_eq!(b6.eval(&z).as_ref(), Some(m6));
                Some(model)
            };
            PencilWeierstrass::Char2SS { b2, b6, special_t0 }
        }
    }
}

impl PencilWeierstrass {
    /// The coordinate-change matrix of the family evaluated at a parameter
    /// value; only available in the characteristic-at-least-five family.
    pub fn matrix_at(&self, t0: &FieldElement) -> Option<Mat3> {
        let PencilWeierstrass::ShortW { a_mat, .. } = self else {
            return None;
        };
        let field = t0.field();
        let entry = |p: &UniPoly| -> Result<FieldElement> {
            Ok(p.embed(field)?.eval(t0))
        };
        let mut rows = [[field.zero(), field.zero(), field.zero()], [field.zero(), field.zero(), field.zero()], [field.zero(), field.zero(), field.zero()]];
        for (i, row) in a_mat.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                rows[i][j] = entry(p).ok()?;
            }
        }
        Some(Mat3::new(field, rows))
    }
}

/// Search for a singular point of a cubic over extensions of its base field.
fn singular_witness(cubic: &TernaryCubic) -> Result<ProjPoint2> {
    let field = cubic.field();
    let p = field.characteristic();
    for m in 1..=6 {
        let ext = FieldSpec::new(p, field.degree() * m, None)?;
        if let Some(pt) = cubic_is_singular(cubic, &ext) {
            return Ok(pt);
        }
    }
    Err(Error::DegenerateConfiguration)
}

/// Specialize the pencil at a parameter, returning the Weierstrass model of
/// a smooth fiber or a witness singular point otherwise.
pub fn fiber(e: &EllipticModel, t: &PencilParam) -> Result<FiberResult> {
    let t0 = match t {
        PencilParam::Infinity => return Ok(FiberResult::Smooth(e.clone())),
        PencilParam::Finite(t0) => t0,
    };
    let ef = e.embed(t0.field())?;
    let field = ef.field();
    let quartic = singular_quartic(&ef);
    if quartic.eval(t0).is_zero() {
        let cubic = pencil_cubic(&ef, &PencilParam::Finite(t0.clone()))?;
        return Ok(FiberResult::Singular(singular_witness(&cubic)?));
    }
    let model = match ef.shape() {
        Shape::ShortW { .. } => {
            let PencilWeierstrass::ShortW { a_t, b_t, .. } = pencil_weierstrass(&ef)
            else {
                unreachable!()
            };
            EllipticModel::short_w(a_t.eval(t0), b_t.eval(t0))?
        }
        Shape::Char2Ord { .. } => {
            let PencilWeierstrass::Char2Ord { b1, b2, b6, special_t1 } =
                pencil_weierstrass(&ef)
            else {
                unreachable!()
            };
            if *t0 == field.one() {
                special_t1
            } else {
                let u = b1.eval(t0);
                EllipticModel::char2_ord(
                    b2.eval(t0).div(&u.square()),
                    b6.eval(t0).div(&u.pow(6)),
                )?
            }
        }
        Shape::Char2SS { .. } => {
            let PencilWeierstrass::Char2SS { b2, b6, special_t0 } =
                pencil_weierstrass(&ef)
            else {
                unreachable!()
            };
            if t0.is_zero() {
                special_t0.expect("quartic is nonzero at t = 0")
            } else {
                EllipticModel::char2_ord(
                    b2.eval(t0).ok_or(Error::DegenerateConfiguration)?,
                    b6.eval(t0).ok_or(Error::DegenerateConfiguration)?,
                )?
            }
        }
    };
    Ok(FiberResult::Smooth(model))
}

/// The j-invariant of the fibers as a rational function of the parameter.
/// Its value at infinity is the j-invariant of the original curve.
pub fn j_of_pencil(e: &EllipticModel) -> RatFn {
    let field = e.field();
    match e.shape() {
        Shape::ShortW { a, b } => {
            let PencilWeierstrass::ShortW { a_t, det_a, .. } = pencil_weierstrass(e)
            else {
                unreachable!()
            };
            let denom_scale = a
                .square()
                .mul(a)
                .mul(&field.from_i64(4))
                .add(&b.square().mul(&field.from_i64(27)));
            RatFn::new(
                a_t.pow(3).scale(&field.from_i64(6912)),
                det_a.pow(3).scale(&denom_scale),
            )
        }
        Shape::Char2Ord { a6, .. } => {
            let tp1 = UniPoly::from_i64(field, &[1, 1]);
            RatFn::new(tp1.pow(12), singular_quartic(e).pow(3).scale(a6))
        }
        Shape::Char2SS { a3, .. } => RatFn::new(
            UniPoly::constant(a3.pow(8)),
            singular_quartic(e).pow(3),
        ),
    }
}

/// The polynomial in t whose zeros are the finite smooth-fiber parameters
/// with j-invariant `jp`, or `None` in the cases resolved by a special
/// parameter value alone (j' = 0 in either characteristic-two family).
pub fn matching_polynomial(e: &EllipticModel, jp: &FieldElement) -> Option<UniPoly> {
    let field = e.field();
    match e.shape() {
        Shape::ShortW { .. } => {
            let PencilWeierstrass::ShortW { a_t, b_t, det_a, .. } = pencil_weierstrass(e)
            else {
                unreachable!()
            };
            if jp.is_zero() {
                Some(a_t)
            } else if *jp == field.from_i64(1728) {
                Some(b_t)
            } else {
                // -1728 (4 a_t)^3 - jp * disc(E) * det_a^3
                Some(
                    a_t.pow(3)
                        .scale(&field.from_i64(-110592))
                        .sub(&det_a.pow(3).scale(&jp.mul(&e.discriminant()))),
                )
            }
        }
        Shape::Char2Ord { a6, .. } => {
            if jp.is_zero() {
                return None;
            }
            let tp1 = UniPoly::from_i64(field, &[1, 1]);
            Some(
                tp1.pow(12)
                    .add(&singular_quartic(e).pow(3).scale(&jp.mul(a6))),
            )
        }
        Shape::Char2SS { a3, .. } => {
            if jp.is_zero() {
                return None;
            }
            Some(
                UniPoly::constant(a3.pow(8))
                    .add(&singular_quartic(e).pow(3).scale(jp)),
            )
        }
    }
}

/// All parameters in the projective line over `search` whose fiber is smooth
/// with j-invariant `jp`, found through the case-appropriate matching
/// polynomial together with the special parameter values.
pub fn matching_fibers(
    e: &EllipticModel,
    jp: &FieldElement,
    search: &Field,
) -> Result<Vec<PencilParam>> {
    let j0 = e.j_invariant();
    let quartic = singular_quartic(e).embed(search)?;
    let Some(g) = matching_polynomial(e, jp) else {
        return Ok(match e.shape() {
            Shape::Char2Ord { .. } => vec![PencilParam::Finite(search.one())],
            Shape::Char2SS { .. } => vec![PencilParam::Infinity],
            Shape::ShortW { .. } => unreachable!(),
        });
    };
    let mut roots = roots_in(&g, search)?;
    roots.dedup();
    let mut out: Vec<PencilParam> = roots
        .into_iter()
        .filter(|t0| !quartic.eval(t0).is_zero())
        .map(PencilParam::Finite)
        .collect();
    if *jp == j0 {
        out.push(PencilParam::Infinity);
    }
    Ok(out)
}

/// All parameters in `search` whose fiber is singular. The fiber at infinity
/// is the original curve and is never singular.
pub fn singular_parameters(e: &EllipticModel, search: &Field) -> Result<Vec<PencilParam>> {
    let mut roots = roots_in(&singular_quartic(e), search)?;
    roots.dedup();
    Ok(roots.into_iter().map(PencilParam::Finite).collect())
}
