//! 3-division polynomials, enumeration of E[3] over its minimal field of
//! definition, the Weil pairing on 3-torsion via tangent lines (with a
//! Miller-algorithm cross-check), and the Frobenius action on E[3].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin::Mutex;

use crate::algebra::field::{seed, Field, FieldElement, FieldSpec};
use crate::algebra::poly::UniPoly;
use crate::algebra::roots_in;
use crate::elliptic::{EllipticModel, ProjPoint, Shape};
use crate::error::{Error, Result};
use crate::plane_cubic::{ProjPoint2, TernaryCubic};

/// The tangent line of the plane model at a smooth curve point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentLine {
    base: ProjPoint2,
    coeffs: [FieldElement; 3],
}

impl TangentLine {
    /// Tangent of the given cubic at a point on it; coefficients are
    /// normalized so the first nonzero one is 1.
    pub fn at(cubic: &TernaryCubic, p: &ProjPoint2) -> Result<TangentLine> {
        if !cubic.eval(p).is_zero() {
            return Err(Error::NotOnCurve);
        }
        let mut grad = cubic.gradient(p);
        let lead = match grad.iter().find(|g| !g.is_zero()) {
            Some(g) => g.clone(),
            None => return Err(Error::SingularPoint),
        };
        let inv = lead.inv();
        for g in grad.iter_mut() {
            *g = g.mul(&inv);
        }
        Ok(TangentLine {
            base: p.clone(),
            coeffs: grad,
        })
    }

    pub fn base(&self) -> &ProjPoint2 {
        &self.base
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn eval(&self, q: &ProjPoint2) -> FieldElement {
        let mut acc = self.coeffs[0].field().zero();
        for (c, x) in self.coeffs.iter().zip(q.coords().iter()) {
            acc = acc.add(&c.mul(x));
        }
        acc
    }
}

/// A symplectic basis of E[3] over its field of definition.
#[derive(Debug, Clone)]
pub struct TorsionBasis {
    pub curve: EllipticModel,
    pub s: ProjPoint,
    pub t: ProjPoint,
    pub zeta3: FieldElement,
}

/// Full 3-torsion data of a curve: the minimal field extension, all nine
/// points, and a basis normalized to the canonical cube root of unity.
#[derive(Debug, Clone)]
pub struct Torsion3 {
    pub field: Field,
    pub curve: EllipticModel,
    pub points: Vec<ProjPoint>,
    pub basis: TorsionBasis,
}

/// The 3-division polynomial `3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8`,
/// whose roots are the x-coordinates of the affine 3-torsion points.
pub fn psi3(e: &EllipticModel) -> UniPoly {
    let field = e.field();
    let [a1, a2, a3, a4, a6] = e.a_invariants();
    let four = field.from_u64(4);
    let three = field.from_u64(3);
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
    UniPoly::new(
        field,
        vec![b8, three.mul(&b6), three.mul(&b4), b2, three],
    )
}

/// The canonical primitive cube root of unity of a field: the smaller root
/// of `x^2 + x + 1` in the element value order.
pub fn canonical_zeta3(field: &Field) -> Result<FieldElement> {
    let poly = UniPoly::from_i64(field, &[1, 1, 1]);
    let roots = roots_in(&poly, field)?;
    roots.into_iter().next().ok_or(Error::NoEmbedding)
}

type CurveKey = ((u64, usize, Vec<u64>), u8, Vec<u128>);

fn curve_key(e: &EllipticModel) -> CurveKey {
    let (tag, coeffs): (u8, Vec<u128>) = match e.shape() {
        Shape::ShortW { a, b } => (0, vec![a.value_index(), b.value_index()]),
        Shape::Char2Ord { a2, a6 } => (1, vec![a2.value_index(), a6.value_index()]),
        Shape::Char2SS { a3, a4, a6 } => (
            2,
            vec![a3.value_index(), a4.value_index(), a6.value_index()],
        ),
    };
    (e.field().key(), tag, coeffs)
}

static TORSION_CACHE: Mutex<BTreeMap<CurveKey, Torsion3>> = Mutex::new(BTreeMap::new());

/// E[3] over the minimal extension of the base field, with a symplectic
/// basis. Results are memoized per curve.
pub fn torsion3(e: &EllipticModel) -> Result<Torsion3> {
    let key = curve_key(e);
    if let Some(hit) = TORSION_CACHE.lock().get(&key) {
        return Ok(hit.clone());
    }
    let out = torsion3_uncached(e)?;
    TORSION_CACHE.lock().insert(key, out.clone());
    Ok(out)
}

fn torsion3_uncached(e: &EllipticModel) -> Result<Torsion3> {
    let base = e.field();
    let p = base.characteristic();
    let deg = base.degree();
    for m in 1..=8usize {
        let ext = match FieldSpec::new(p, deg * m, None) {
            Ok(f) => f,
            Err(Error::FieldTooLarge) => return Err(Error::FieldTooLarge),
            Err(err) => return Err(err),
        };
        let curve = e.embed(&ext)?;
        let psi = psi3(&curve);
        let mut xs = roots_in(&psi, &ext)?;
        xs.dedup();
        let mut affine = Vec::new();
        for x in xs {
            for y in curve_y_coords(&curve, &x)? {
                affine.push(curve.affine(x.clone(), y)?);
            }
        }
        if affine.len() != 8 {
            continue;
        }
        affine.sort();
        let mut points = vec![curve.infinity()];
        points.extend(affine);
        let s = points[1].clone();
        let span = [curve.infinity(), s.clone(), s.add(&s)];
        let mut t = points
            .iter()
            .find(|p| !span.contains(p))
            .expect("nine points cannot lie in one cyclic subgroup")
            .clone();
        let canon = canonical_zeta3(&ext)?;
        let mut zeta = weil_pairing_tangent(&s, &t)?;
        if zeta != canon {
            t = t.neg();
            zeta = zeta.square();
        }
        if zeta != canon {
            return Err(Error::DegenerateConfiguration);
        }
        let basis = TorsionBasis {
            curve: curve.clone(),
            s,
            t,
            zeta3: zeta,
        };
        return Ok(Torsion3 {
            field: ext,
            curve,
            points,
            basis,
        });
    }
    Err(Error::ExtensionTooLarge)
}

fn curve_y_coords(curve: &EllipticModel, x: &FieldElement) -> Result<Vec<FieldElement>> {
    let field = curve.field();
    let [a1, a2, a3, a4, a6] = curve.a_invariants();
    let lin = a1.mul(x).add(&a3);
    let cst = x
        .pow(3)
        .add(&a2.mul(&x.square()))
        .add(&a4.mul(x))
        .add(&a6)
        .neg();
    let poly = UniPoly::new(field, vec![cst, lin, field.one()]);
    let mut ys = roots_in(&poly, field)?;
    ys.dedup();
    Ok(ys)
}

fn is_degenerate_pair(s: &ProjPoint, t: &ProjPoint) -> bool {
    s.is_infinity() || t.is_infinity() || *t == *s || *t == s.neg()
}

/// The 3-torsion Weil pairing evaluated with the tangent lines of an
/// arbitrary plane cubic through the points. Degenerate pairs resolve to 1
/// by bilinearity without touching the formula.
pub fn pairing_on_cubic(
    cubic: &TernaryCubic,
    s: &ProjPoint,
    t: &ProjPoint,
) -> Result<FieldElement> {
    let field = s.curve().field();
    if is_degenerate_pair(s, t) {
        return Ok(field.one());
    }
    let o = s.curve().infinity();
    let nt = t.neg();
    let l_s = TangentLine::at(cubic, &s.to_plane())?;
    let l_o = TangentLine::at(cubic, &o.to_plane())?;
    let l_t = TangentLine::at(cubic, &t.to_plane())?;
    let l_nt = TangentLine::at(cubic, &nt.to_plane())?;
    let num = l_s
        .eval(&t.to_plane())
        .mul(&l_o.eval(&nt.to_plane()))
        .mul(&l_t.eval(&o.to_plane()))
        .mul(&l_nt.eval(&s.to_plane()));
    let den = l_o
        .eval(&t.to_plane())
        .mul(&l_s.eval(&nt.to_plane()))
        .mul(&l_nt.eval(&o.to_plane()))
        .mul(&l_t.eval(&s.to_plane()));
    if num.is_zero() || den.is_zero() {
        return Err(Error::DegenerateConfiguration);
    }
    Ok(num.div(&den).square())
}

/// The Weil pairing e3(S, T) by the tangent-line formula on the curve's own
/// plane model.
pub fn weil_pairing_tangent(s: &ProjPoint, t: &ProjPoint) -> Result<FieldElement> {
    pairing_on_cubic(&s.curve().to_cubic(), s, t)
}

fn random_point(curve: &EllipticModel, rng: &mut ChaCha8Rng) -> Option<ProjPoint> {
    let field = curve.field();
    for _ in 0..32 {
        let idx = (((rng.next_u64() as u128) << 64) | rng.next_u64() as u128) % field.order();
        let x = field.element_by_index(idx);
        if let Ok(ys) = curve_y_coords(curve, &x) {
            if ys.is_empty() {
                continue;
            }
            let pick = rng.next_u64() as usize % ys.len();
            return curve.affine(x, ys[pick].clone()).ok();
        }
    }
    None
}

/// Value of the degree-3 Miller function of `p` (the tangent line at `p`,
/// with divisor 3(p) - 3(O)) at an affine point `q`.
fn miller_f3(p: &ProjPoint, q: &ProjPoint) -> Option<FieldElement> {
    let curve = p.curve();
    let field = curve.field();
    let (px, py) = match p.xy() {
        None => return Some(field.one()),
        Some(xy) => xy,
    };
    let (qx, qy) = q.xy()?;
    let [a1, a2, a3, a4, a6] = curve.a_invariants();
    let den = py.add(py).add(&a1.mul(px)).add(&a3);
    if den.is_zero() {
        return None;
    }
    let three = field.from_u64(3);
    let lam = three
        .mul(&px.square())
        .add(&a2.mul(px).add(&a2.mul(px)))
        .add(&a4)
        .sub(&a1.mul(py))
        .div(&den);
    let nu = tangent_nu(px, py, &a3, &a4, &a6, &den);
    Some(qy.sub(&lam.mul(qx)).sub(&nu))
}

fn tangent_nu(
    px: &FieldElement,
    py: &FieldElement,
    a3: &FieldElement,
    a4: &FieldElement,
    a6: &FieldElement,
    den: &FieldElement,
) -> FieldElement {
    px.pow(3)
        .neg()
        .add(&a4.mul(px))
        .add(&a6.add(a6))
        .sub(&a3.mul(py))
        .div(den)
}

/// The Weil pairing by Miller's algorithm with a random auxiliary point,
/// retried until all evaluations avoid the divisor supports.
pub fn weil_pairing_miller(s: &ProjPoint, t: &ProjPoint) -> FieldElement {
    let curve = s.curve();
    let field = curve.field();
    if s.is_infinity() || t.is_infinity() {
        return field.one();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 0x6d69_6c6c_6572);
    for _ in 0..256 {
        let r = match random_point(curve, &mut rng) {
            Some(r) => r,
            None => continue,
        };
        let tr = t.add(&r);
        let sr = s.sub(&r);
        let nr = r.neg();
        let vals = [
            miller_f3(s, &tr),
            miller_f3(s, &r),
            miller_f3(t, &sr),
            miller_f3(t, &nr),
        ];
        let [fs_tr, fs_r, ft_sr, ft_nr] = match vals {
            [Some(a), Some(b), Some(c), Some(d)] => [a, b, c, d],
            _ => continue,
        };
        if fs_tr.is_zero() || fs_r.is_zero() || ft_sr.is_zero() || ft_nr.is_zero() {
            continue;
        }
        let val = fs_tr.div(&fs_r).div(&ft_sr.div(&ft_nr));
        if val.pow(3).is_one() {
            return val;
        }
    }
    panic!("no admissible auxiliary point found");
}

/// The matrix of the `base_order`-power Frobenius on E[3] in the given
/// basis, with entries in F_3: the first column expresses the image of S,
/// the second the image of T.
pub fn frobenius_matrix(basis: &TorsionBasis, base_order: u128) -> [[u8; 2]; 2] {
    let curve = &basis.curve;
    let combos: Vec<(u8, u8, ProjPoint)> = {
        let mut v = Vec::new();
        for i in 0..3u8 {
            for j in 0..3u8 {
                let pt = basis
                    .s
                    .mul_scalar(i as u64)
                    .add(&basis.t.mul_scalar(j as u64));
                v.push((i, j, pt));
            }
        }
        v
    };
    let decompose = |p: &ProjPoint| -> (u8, u8) {
        combos
            .iter()
            .find(|(_, _, q)| q == p)
            .map(|(i, j, _)| (*i, *j))
            .expect("Frobenius permutes E[3]")
    };
    let frob = |p: &ProjPoint| -> ProjPoint {
        match p.xy() {
            None => curve.infinity(),
            Some((x, y)) => curve
                .affine(x.frobenius(base_order), y.frobenius(base_order))
                .expect("Frobenius preserves the curve"),
        }
    };
    let (a, c) = decompose(&frob(&basis.s));
    let (b, d) = decompose(&frob(&basis.t));
    let m = [[a, b], [c, d]];
    let det = (a as i32 * d as i32 - b as i32 * c as i32).rem_euclid(3) as u128;
    assert_eq!(det, base_order % 3, "pairing compatibility of Frobenius");
    m
}

/// 2x2 matrix product over F_3.
pub fn mat2_mul(a: [[u8; 2]; 2], b: [[u8; 2]; 2]) -> [[u8; 2]; 2] {
    let mut out = [[0u8; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = ((a[i][0] as u16 * b[0][j] as u16 + a[i][1] as u16 * b[1][j] as u16) % 3)
                as u8;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::points_over;
    use crate::plane_cubic::flex_points;

    fn gf(p: u64, k: usize) -> Field {
        FieldSpec::new(p, k, None).unwrap()
    }

    fn shortw(field: &Field, a: i64, b: i64) -> EllipticModel {
        EllipticModel::short_w(field.from_i64(a), field.from_i64(b)).unwrap()
    }

    fn corpus() -> Vec<EllipticModel> {
        let f5 = gf(5, 1);
        let f7 = gf(7, 1);
        let f2 = gf(2, 1);
        let f4 = gf(2, 2);
        vec![
            shortw(&f7, 0, 2),
            shortw(&f7, 1, 1),
            shortw(&f5, -1, 0),
            shortw(&f5, 1, 1),
            EllipticModel::char2_ord(f2.zero(), f2.one()).unwrap(),
            EllipticModel::char2_ord(f4.element_by_index(2), f4.one()).unwrap(),
            EllipticModel::char2_ss(f2.one(), f2.zero(), f2.zero()).unwrap(),
            EllipticModel::char2_ss(f2.one(), f2.one(), f2.zero()).unwrap(),
        ]
    }

    fn all_curves(field: &Field) -> Vec<EllipticModel> {
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
    fn division_polynomial_by_shape() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 0, 1);
        assert_eq!(psi3(&e), UniPoly::from_i64(&f7, &[0, 12, 0, 0, 3]));

        let f4 = gf(2, 2);
        for a2 in f4.elements() {
            let e = EllipticModel::char2_ord(a2, f4.one()).unwrap();
            assert_eq!(psi3(&e), UniPoly::from_i64(&f4, &[1, 0, 0, 1, 1]));
        }
        for a3 in f4.elements().filter(|v| !v.is_zero()) {
            for a4 in f4.elements() {
                let e = EllipticModel::char2_ss(a3.clone(), a4.clone(), f4.zero()).unwrap();
                let expect = UniPoly::new(
                    &f4,
                    vec![a4.square(), a3.square(), f4.zero(), f4.zero(), f4.one()],
                );
                assert_eq!(psi3(&e), expect);
            }
        }
    }

    #[test]
    fn division_polynomial_matches_group_scan() {
        for field in [gf(5, 1), gf(7, 1), gf(11, 1), gf(13, 1), gf(2, 1), gf(2, 2), gf(2, 3), gf(2, 4)] {
            for e in all_curves(&field) {
                let psi = psi3(&e);
                let mut scan: Vec<FieldElement> = points_over(&e, &field)
                    .unwrap()
                    .into_iter()
                    .filter(|p| !p.is_infinity() && p.add(p) == p.neg())
                    .map(|p| p.xy().unwrap().0.clone())
                    .collect();
                scan.sort();
                scan.dedup();
                let mut roots: Vec<FieldElement> = roots_in(&psi, &field)
                    .unwrap()
                    .into_iter()
                    .filter(|x| !curve_y_coords(&e, x).unwrap().is_empty())
                    .collect();
                roots.sort();
                roots.dedup();
                assert_eq!(scan, roots, "{e}");
            }
        }
    }

    #[test]
    fn division_polynomial_matches_flexes() {
        for field in [gf(5, 1), gf(7, 1), gf(2, 1), gf(2, 2), gf(2, 3)] {
            for e in all_curves(&field) {
                let tor = torsion3(&e).unwrap();
                let flexes = flex_points(&e.to_cubic(), &tor.field).unwrap();
                assert_eq!(flexes.len(), 9);
                let mut flex_x: Vec<u128> = flexes
                    .iter()
                    .filter(|p| !p.z().is_zero())
                    .map(|p| p.x().value_index())
                    .collect();
                flex_x.sort();
                flex_x.dedup();
                let psi = psi3(&e.embed(&tor.field).unwrap());
                let mut root_x: Vec<u128> = roots_in(&psi, &tor.field)
                    .unwrap()
                    .into_iter()
                    .map(|x| x.value_index())
                    .collect();
                root_x.sort();
                root_x.dedup();
                assert_eq!(flex_x, root_x, "{e}");
            }
        }
    }

    #[test]
    fn torsion_field_examples() {
        let f7 = gf(7, 1);
        let tor = torsion3(&shortw(&f7, 0, 2)).unwrap();
        assert_eq!(tor.field.degree(), 1);
        assert_eq!(tor.points.len(), 9);
        let flexes = flex_points(&shortw(&f7, 0, 2).to_cubic(), &f7).unwrap();
        let mut plane: Vec<_> = tor.points.iter().map(|p| p.to_plane()).collect();
        plane.sort();
        assert_eq!(plane, flexes);

        let f5 = gf(5, 1);
        let tor = torsion3(&shortw(&f5, -1, 0)).unwrap();
        assert!(tor.field.degree() > 1);

        for e in corpus() {
            let tor = torsion3(&e).unwrap();
            assert_eq!(tor.points.len(), 9);
            for p in &tor.points {
                assert!(p.mul_scalar(3).is_infinity());
                for q in &tor.points {
                    assert!(tor.points.contains(&p.add(q)));
                }
            }
            assert_eq!(tor.basis.zeta3, canonical_zeta3(&tor.field).unwrap());
            assert_eq!(
                weil_pairing_tangent(&tor.basis.s, &tor.basis.t).unwrap(),
                tor.basis.zeta3
            );
        }
    }

    #[test]
    fn pairing_bilinear_alternating_nondegenerate() {
        for e in corpus() {
            let tor = torsion3(&e).unwrap();
            let one = tor.field.one();
            for s in &tor.points {
                assert_eq!(weil_pairing_tangent(s, s).unwrap(), one);
                assert_eq!(
                    weil_pairing_tangent(s, &tor.curve.infinity()).unwrap(),
                    one
                );
                if !s.is_infinity() {
                    assert!(tor
                        .points
                        .iter()
                        .any(|t| !weil_pairing_tangent(s, t).unwrap().is_one()));
                }
                for s2 in &tor.points {
                    for t in &tor.points {
                        let lhs = weil_pairing_tangent(&s.add(s2), t).unwrap();
                        let rhs = weil_pairing_tangent(s, t)
                            .unwrap()
                            .mul(&weil_pairing_tangent(s2, t).unwrap());
                        assert_eq!(lhs, rhs, "{e}");
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_example_on_f7_curve() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 0, 2);
        let s = e.affine(f7.zero(), f7.from_u64(3)).unwrap();
        let t = e.affine(f7.from_u64(3), f7.one()).unwrap();
        let z = weil_pairing_tangent(&s, &t).unwrap();
        assert!(z == f7.from_u64(2) || z == f7.from_u64(4));
        assert_eq!(weil_pairing_miller(&s, &t), z);
    }

    #[test]
    fn miller_oracle_agrees() {
        for e in corpus() {
            let tor = torsion3(&e).unwrap();
            for s in &tor.points {
                for t in &tor.points {
                    let tangent = weil_pairing_tangent(s, t).unwrap();
                    let miller = weil_pairing_miller(s, t);
                    assert_eq!(tangent, miller, "{e} s={s} t={t}");
                    assert_eq!(
                        weil_pairing_miller(t, s),
                        miller.inv(),
                        "antisymmetry {e}"
                    );
                    assert!(miller.pow(3).is_one());
                }
            }
        }
    }

    #[test]
    fn frobenius_action() {
        let f7 = gf(7, 1);
        let tor = torsion3(&shortw(&f7, 0, 2)).unwrap();
        assert_eq!(
            frobenius_matrix(&tor.basis, 7),
            [[1, 0], [0, 1]]
        );

        let f5 = gf(5, 1);
        let tor = torsion3(&shortw(&f5, -1, 0)).unwrap();
        let m = frobenius_matrix(&tor.basis, 5);
        assert_ne!(m, [[1, 0], [0, 1]]);
        let det = (m[0][0] as i32 * m[1][1] as i32 - m[0][1] as i32 * m[1][0] as i32)
            .rem_euclid(3);
        assert_eq!(det, 2);

        for e in corpus() {
            let tor = torsion3(&e).unwrap();
            let q = e.field().order();
            let m = frobenius_matrix(&tor.basis, q);
            let det = (m[0][0] as i32 * m[1][1] as i32 - m[0][1] as i32 * m[1][0] as i32)
                .rem_euclid(3) as u128;
            assert_eq!(det, q % 3, "{e}");
            if crate::algebra::is_subfield_order(&tor.field, q * q) {
                let m2 = frobenius_matrix(&tor.basis, q * q);
                assert_eq!(m2, mat2_mul(m, m), "{e}");
            }
        }
    }
}
