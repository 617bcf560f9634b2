//! Isomorphisms of 3-torsion groups: enumeration, the symplectic (pairing
//! preserving) and Frobenius-equivariance tests, realization of a symplectic
//! isomorphism as a projective change of coordinates from a pencil fiber,
//! projective descent to the base field, and a two-sided verifier for the
//! pencil-membership equivalence together with an exhaustive small-field
//! harness.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{embed, Field, FieldElement, FieldSpec, Mat3};
use crate::elliptic::{isomorphism_over, CurveIso, EllipticModel, ProjPoint};
use crate::error::{Error, Result};
use crate::pencil::{
    fiber, matching_fibers, matching_polynomial, pencil_cubic, FiberResult, PencilParam,
};
use crate::plane_cubic::ProjPoint2;
use crate::torsion::{
    canonical_zeta3, frobenius_matrix, mat2_mul, torsion3, weil_pairing_tangent,
    TorsionBasis,
};

/// A group isomorphism between two 3-torsion groups, recorded as a matrix
/// over the field with three elements relative to the two symplectic bases.
/// The matrix columns are the coordinates of the images of the source basis.
#[derive(Clone, Debug)]
pub struct TorsionIso {
    pub source: TorsionBasis,
    pub target: TorsionBasis,
    pub matrix: [[u8; 2]; 2],
}

fn mat2_det(m: [[u8; 2]; 2]) -> u8 {
    ((m[0][0] as i32 * m[1][1] as i32 - m[0][1] as i32 * m[1][0] as i32).rem_euclid(3))
        as u8
}

fn combo(basis: &TorsionBasis, a: u8, b: u8) -> ProjPoint {
    basis
        .s
        .mul_scalar(a as u64)
        .add(&basis.t.mul_scalar(b as u64))
}

impl TorsionIso {
    /// Coordinates of a point relative to a basis.
    fn decompose(basis: &TorsionBasis, p: &ProjPoint) -> (u8, u8) {
        for a in 0..3u8 {
            for b in 0..3u8 {
                if combo(basis, a, b) == *p {
                    return (a, b);
                }
            }
        }
        panic!("point is not 3-torsion on the basis curve");
    }

    /// The image of a 3-torsion point of the source curve.
    pub fn map_point(&self, p: &ProjPoint) -> ProjPoint {
        let (alpha, beta) = Self::decompose(&self.source, p);
        let m = &self.matrix;
        combo(
            &self.target,
            (alpha * m[0][0] + beta * m[0][1]) % 3,
            (alpha * m[1][0] + beta * m[1][1]) % 3,
        )
    }
}

/// A basis embedded into `target` and re-normalized so that its stored
/// pairing value is the canonical primitive cube root of unity of `target`.
fn basis_in(basis: &TorsionBasis, target: &Field) -> Result<TorsionBasis> {
    let zeta_l = canonical_zeta3(target)?;
    let s = basis.s.embed(target)?;
    let mut t = basis.t.embed(target)?;
    let curve = basis.curve.embed(target)?;
    if embed(&basis.zeta3, target)? != zeta_l {
        t = t.neg();
    }
    Ok(TorsionBasis { curve, s, t, zeta3: zeta_l })
}

/// The least common extension containing both curves' full 3-torsion, plus
/// the two normalized bases inside it.
fn common_torsion_field(
    e: &EllipticModel,
    e2: &EllipticModel,
) -> Result<(Field, TorsionBasis, TorsionBasis)> {
    let t1 = torsion3(e)?;
    let t2 = torsion3(e2)?;
    let d1 = t1.field.degree();
    let d2 = t2.field.degree();
    let lcm = d1 / gcd(d1, d2) * d2;
    let l = FieldSpec::new(e.field().characteristic(), lcm, None)?;
    let b1 = basis_in(&t1.basis, &l)?;
    let b2 = basis_in(&t2.basis, &l)?;
    Ok((l, b1, b2))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// All 48 group isomorphisms between the 3-torsion groups, as matrices
/// relative to the two canonical symplectic bases over a common field.
pub fn torsion_isos(e: &EllipticModel, e2: &EllipticModel) -> Result<Vec<TorsionIso>> {
    let (_, b1, b2) = common_torsion_field(e, e2)?;
    let mut out = Vec::with_capacity(48);
    for idx in 0..81u8 {
        let m = [[idx % 3, (idx / 3) % 3], [(idx / 9) % 3, (idx / 27) % 3]];
        if mat2_det(m) != 0 {
            out.push(TorsionIso { source: b1.clone(), target: b2.clone(), matrix: m });
        }
    }
    Ok(out)
}

/// Whether the isomorphism preserves the pairing. The pairing condition on
/// the basis pair is checked directly and asserted to agree with the
/// determinant criterion.
pub fn is_symplectic(phi: &TorsionIso) -> bool {
    let by_det = mat2_det(phi.matrix) == 1;
    let lhs = weil_pairing_tangent(
        &phi.map_point(&phi.source.s),
        &phi.map_point(&phi.source.t),
    )
    .expect("basis images generate the target torsion group");
    let rhs = weil_pairing_tangent(&phi.source.s, &phi.source.t)
        .expect("basis pairs are non-degenerate");
    assert_eq!(by_det, lhs == rhs);
    by_det
}

/// Whether the isomorphism commutes with the Frobenius of the field with `q`
/// elements, which generates the Galois action on both torsion groups.
pub fn is_equivariant(phi: &TorsionIso, q: u128) -> bool {
    let m_src = frobenius_matrix(&phi.source, q);
    let m_dst = frobenius_matrix(&phi.target, q);
    mat2_mul(phi.matrix, m_src) == mat2_mul(m_dst, phi.matrix)
}

/// An invertible projective transformation of the plane, stored by its
/// canonical representative with the first nonzero entry (row-major)
/// normalized to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pgl3Map {
    mat: Mat3,
}

impl Pgl3Map {
    pub fn new(mat: Mat3) -> Result<Pgl3Map> {
        if mat.det().is_zero() {
            return Err(Error::DegenerateConfiguration);
        }
        let mut scale = None;
        'outer: for row in &mat.m {
            for e in row {
                if !e.is_zero() {
                    scale = Some(e.inv());
                    break 'outer;
                }
            }
        }
        let s = scale.expect("an invertible matrix has a nonzero entry");
        let rows = [
            [mat.m[0][0].mul(&s), mat.m[0][1].mul(&s), mat.m[0][2].mul(&s)],
            [mat.m[1][0].mul(&s), mat.m[1][1].mul(&s), mat.m[1][2].mul(&s)],
            [mat.m[2][0].mul(&s), mat.m[2][1].mul(&s), mat.m[2][2].mul(&s)],
        ];
        Ok(Pgl3Map { mat: Mat3::new(mat.field(), rows) })
    }

    pub fn identity(field: &Field) -> Pgl3Map {
        Pgl3Map { mat: Mat3::identity(field) }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.mat
    }

    pub fn field(&self) -> &Field {
        self.mat.field()
    }

    pub fn apply(&self, p: &ProjPoint2) -> ProjPoint2 {
        let [x, y, z] = self.mat.apply(p.coords());
        ProjPoint2::new(x, y, z)
    }

    pub fn embed(&self, target: &Field) -> Result<Pgl3Map> {
        Pgl3Map::new(self.mat.embed(target)?)
    }
}

/// The unique projective transformation carrying one quadruple of points in
/// general position onto another.
pub fn pgl3_through_points(ps: &[ProjPoint2; 4], qs: &[ProjPoint2; 4]) -> Result<Pgl3Map> {
    let field = ps[0].field().clone();
    let frame = |pts: &[ProjPoint2; 4]| -> Result<Mat3> {
        let cols = Mat3::new(
            &field,
            [
                [pts[0].x().clone(), pts[1].x().clone(), pts[2].x().clone()],
                [pts[0].y().clone(), pts[1].y().clone(), pts[2].y().clone()],
                [pts[0].z().clone(), pts[1].z().clone(), pts[2].z().clone()],
            ],
        );
        if cols.det().is_zero() {
            return Err(Error::CollinearTriple);
        }
        let w = cols.inv().apply(pts[3].coords());
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::CollinearTriple);
        }
        Ok(Mat3::new(
            &field,
            [
                [pts[0].x().mul(a), pts[1].x().mul(b), pts[2].x().mul(c)],
                [pts[0].y().mul(a), pts[1].y().mul(b), pts[2].y().mul(c)],
                [pts[0].z().mul(a), pts[1].z().mul(b), pts[2].z().mul(c)],
            ],
        ))
    };
    let bp = frame(ps)?;
    let bq = frame(qs)?;
    Pgl3Map::new(bq.mul(&bp.inv()))
}

/// Realize a symplectic torsion isomorphism as a projective change of
/// coordinates from a fiber of the pencil of the source curve onto the
/// target curve, over a finite extension of degree at most `max_ext`.
pub fn realize_symplectic(
    e: &EllipticModel,
    e2: &EllipticModel,
    phi: &TorsionIso,
    max_ext: usize,
) -> Result<(PencilParam, Pgl3Map)> {
    if !is_symplectic(phi) {
        return Err(Error::NotSymplectic);
    }
    let p = e.field().characteristic();
    let jp = e2.j_invariant();

    // the field over which all candidate fiber parameters exist
    let split_deg = match matching_polynomial(e, &jp) {
        None => e.field().degree(),
        Some(g) => {
            let mut d = e.field().degree();
            for (factor, _) in crate::algebra::factor(&g)? {
                let fd = factor.degree().unwrap_or(0).max(1) * e.field().degree();
                d = d / gcd(d, fd) * fd;
            }
            d
        }
    };
    // everything meets inside one extension: candidate parameters, both
    // torsion groups, and therefore the basis images defining the map
    let base_deg = phi.source.curve.field().degree();
    let mut full_deg = split_deg / gcd(split_deg, base_deg) * base_deg;
    let target_deg = phi.target.curve.field().degree();
    full_deg = full_deg / gcd(full_deg, target_deg) * target_deg;
    if full_deg > max_ext {
        return Err(Error::ExtensionTooLarge);
    }
    let l = FieldSpec::new(p, full_deg, None)?;
    let search = FieldSpec::new(p, split_deg, None)?;

    let o = phi.source.curve.infinity();
    let st = phi.source.s.add(&phi.source.t);
    let sources = [
        o.embed(&l)?.to_plane(),
        phi.source.s.embed(&l)?.to_plane(),
        phi.source.t.embed(&l)?.to_plane(),
        st.embed(&l)?.to_plane(),
    ];
    let images = [
        phi.map_point(&o).embed(&l)?.to_plane(),
        phi.map_point(&phi.source.s).embed(&l)?.to_plane(),
        phi.map_point(&phi.source.t).embed(&l)?.to_plane(),
        phi.map_point(&st).embed(&l)?.to_plane(),
    ];
    let target_cubic = e2.embed(&l)?.to_cubic();
    let candidate_map = pgl3_through_points(&sources, &images)?;

    for t0 in matching_fibers(e, &jp, &search)? {
        let t0l = match &t0 {
            PencilParam::Infinity => PencilParam::Infinity,
            PencilParam::Finite(v) => PencilParam::Finite(embed(v, &l)?),
        };
        let fiber_cubic = pencil_cubic(e, &t0l)?.embed(&l)?;
        // the pullback of the target cubic along the candidate must cut out
        // the fiber itself
        if target_cubic
            .substitute(candidate_map.matrix())
            .proportional_to(&fiber_cubic)
        {
            return Ok((t0, candidate_map));
        }
    }
    Err(Error::ExtensionTooLarge)
}

/// If the map is fixed by the Frobenius over the subfield with `q` elements
/// as a projective transformation, return its representative over that
/// subfield; otherwise `None`.
pub fn descend_pgl3(m: &Pgl3Map, q: u128) -> Option<Pgl3Map> {
    let field = m.field();
    let conj = |e: &FieldElement| e.frobenius(q);
    let frob = Pgl3Map::new(Mat3::new(
        field,
        [
            [conj(&m.mat.m[0][0]), conj(&m.mat.m[0][1]), conj(&m.mat.m[0][2])],
            [conj(&m.mat.m[1][0]), conj(&m.mat.m[1][1]), conj(&m.mat.m[1][2])],
            [conj(&m.mat.m[2][0]), conj(&m.mat.m[2][1]), conj(&m.mat.m[2][2])],
        ],
    ))
    .expect("conjugate of an invertible matrix is invertible");
    if frob != *m {
        return None;
    }
    // the canonical representative is entrywise Frobenius-fixed, hence all
    // entries lie in the subfield
    let p = field.characteristic();
    let mut sub_deg = 0usize;
    let mut v: u128 = 1;
    while v < q {
        v *= p as u128;
        sub_deg += 1;
    }
    if v != q {
        return None;
    }
    let sub = FieldSpec::new(p, sub_deg.max(1), None).ok()?;
    let pull = |e: &FieldElement| pull_to_subfield(e, &sub);
    let rows = [
        [pull(&m.mat.m[0][0])?, pull(&m.mat.m[0][1])?, pull(&m.mat.m[0][2])?],
        [pull(&m.mat.m[1][0])?, pull(&m.mat.m[1][1])?, pull(&m.mat.m[1][2])?],
        [pull(&m.mat.m[2][0])?, pull(&m.mat.m[2][1])?, pull(&m.mat.m[2][2])?],
    ];
    Pgl3Map::new(Mat3::new(&sub, rows)).ok()
}

/// Express a Frobenius-fixed element in the subfield, by solving the linear
/// system over the prime field relating the subfield basis to the big field.
fn pull_to_subfield(e: &FieldElement, sub: &Field) -> Option<FieldElement> {
    let big = e.field();
    let p = big.characteristic();
    let n = big.degree();
    let d = sub.degree();
    // columns: prime-field coordinate vectors of the embedded subfield basis
    let digits = |v: u128| -> Vec<u64> {
        let mut out = Vec::with_capacity(n);
        let mut v = v;
        for _ in 0..n {
            out.push((v % p as u128) as u64);
            v /= p as u128;
        }
        out
    };
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(d);
    let mut basis_val: u128 = 1;
    for _ in 0..d {
        // basis vectors are x^i, whose value index is p^i
        let b = sub.element_by_index(basis_val);
        let be = embed(&b, big).ok()?;
        cols.push(digits(be.value_index()));
        basis_val = basis_val.checked_mul(p as u128)?;
    }
    let rhs = digits(e.value_index());
    // Gaussian elimination over the prime field on the n x (d+1) system
    let mut aug: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let modp = p;
    let inv_mod = |a: u64| -> u64 {
        // prime modulus: Fermat inversion
        let mut r: u64 = 1;
        let mut b = a % modp;
        let mut ex = modp - 2;
        while ex > 0 {
            if ex & 1 == 1 {
                r = r * b % modp;
            }
            b = b * b % modp;
            ex >>= 1;
        }
        r
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank_row = 0;
    for col in 0..d {
        let Some(pr) = (rank_row..n).find(|&r| aug[r][col] % modp != 0) else {
            continue;
        };
        aug.swap(rank_row, pr);
        let inv = inv_mod(aug[rank_row][col]);
        for v in aug[rank_row].iter_mut() {
            *v = *v % modp * inv % modp;
        }
        for r in 0..n {
            if r != rank_row && aug[r][col] % modp != 0 {
                let f = aug[r][col] % modp;
                for c2 in 0..=d {
                    let sub_v = f * aug[rank_row][c2] % modp;
                    aug[r][c2] = (aug[r][c2] + modp * modp - sub_v) % modp;
                }
            }
        }
        pivots.push((rank_row, col));
        rank_row += 1;
    }
    // consistency: non-pivot rows must have zero right-hand side
    for r in rank_row..n {
        if aug[r][d] % modp != 0 {
            return None;
        }
    }
    let mut coeffs = vec![0u64; d];
    for (row, col) in pivots {
        coeffs[col] = aug[row][d] % modp;
    }
    let mut idx: u128 = 0;
    for &c in coeffs.iter().rev() {
        idx = idx * p as u128 + c as u128;
    }
    let out = sub.element_by_index(idx);
    if embed(&out, big).ok()? == *e {
        Some(out)
    } else {
        None
    }
}

/// The outcome of the two-sided pencil-membership check for a pair of
/// curves over their common base field.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    /// a symplectic, Frobenius-equivariant torsion isomorphism, if any
    pub symplectic_witness: Option<TorsionIso>,
    /// a base-field pencil parameter with an isomorphism fiber -> target
    pub pencil_witness: Option<(PencilParam, CurveIso)>,
    /// both witnesses exist, or neither does
    pub verdict: bool,
}

/// Check both directions of the equivalence "a symplectic Galois-equivariant
/// torsion isomorphism exists iff the target appears among the fibers over
/// the base field", each by its own exhaustive scan.
pub fn theorem_check(
    e: &EllipticModel,
    e2: &EllipticModel,
    base: &Field,
) -> Result<TheoremReport> {
    let q = base.order();
    let mut isos = torsion_isos(e, e2)?;
    // prefer the identity matrix so self-pairs report the obvious witness
    isos.sort_by_key(|phi| phi.matrix != [[1, 0], [0, 1]]);
    let mut symplectic_witness = None;
    for phi in isos {
        if mat2_det(phi.matrix) == 1 && is_equivariant(&phi, q) {
            assert!(is_symplectic(&phi));
            symplectic_witness = Some(phi);
            break;
        }
    }
    let mut pencil_witness = None;
    let mut params = vec![PencilParam::Infinity];
    params.extend(base.elements().map(PencilParam::Finite));
    for t0 in params {
        if let FiberResult::Smooth(model) = fiber(e, &t0)? {
            if let Some(iso) = isomorphism_over(&model, e2, base)? {
                pencil_witness = Some((t0, iso));
                break;
            }
        }
    }
    let verdict = symplectic_witness.is_some() == pencil_witness.is_some();
    Ok(TheoremReport { symplectic_witness, pencil_witness, verdict })
}

/// Aggregate results of running the two-sided check over every ordered pair
/// of curves in the normal-form families over a small field.
#[derive(Clone, Debug)]
pub struct VerifySummary {
    pub field_order: u128,
    pub curves: usize,
    pub pairs: usize,
    pub equivalences: usize,
    pub memberships: usize,
    pub mismatches: Vec<String>,
}

/// All curves over the field in the applicable normal-form shape families,
/// in a deterministic order.
pub fn curve_universe(field: &Field) -> Vec<EllipticModel> {
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
                    if let Ok(e) = EllipticModel::char2_ss(a3.clone(), a4.clone(), a6.clone())
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

/// Run the two-sided check over every ordered pair of curves over `field`.
pub fn exhaustive_verify(field: &Field, max_order: u128) -> Result<VerifySummary> {
    if field.order() > max_order {
        return Err(Error::FieldTooLarge);
    }
    let curves = curve_universe(field);
    let mut summary = VerifySummary {
        field_order: field.order(),
        curves: curves.len(),
        pairs: 0,
        equivalences: 0,
        memberships: 0,
        mismatches: Vec::new(),
    };
    for e in &curves {
        for e2 in &curves {
            summary.pairs += 1;
            let report = theorem_check(e, e2, field)?;
            if report.symplectic_witness.is_some() {
                summary.equivalences += 1;
            }
            if report.pencil_witness.is_some() {
                summary.memberships += 1;
            }
            if !report.verdict {
                summary.mismatches.push(format!("{e} vs {e2}"));
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    fn gf(p: u64, k: usize) -> Field {
        FieldSpec::new(p, k, None).unwrap()
    }

    fn shortw(f: &Field, a: i64, b: i64) -> EllipticModel {
        EllipticModel::short_w(f.from_i64(a), f.from_i64(b)).unwrap()
    }

    #[test]
    fn iso_enumeration_counts() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 1, 1);
        let e2 = shortw(&f7, 2, 1);
        let isos = torsion_isos(&e, &e2).unwrap();
        assert_eq!(isos.len(), 48);
        assert_eq!(
            isos.iter().filter(|p| mat2_det(p.matrix) == 1).count(),
            24
        );
        let selfs = torsion_isos(&e, &e).unwrap();
        assert!(selfs.iter().any(|p| p.matrix == [[1, 0], [0, 1]]));
    }

    #[test]
    fn symplectic_is_det_one_and_cosets_close() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 1, 1);
        let e2 = shortw(&f7, 0, 2);
        let isos = torsion_isos(&e, &e2).unwrap();
        // the pairing criterion (asserted inside against the determinant)
        // selects exactly half of the 48
        let symplectic: Vec<&TorsionIso> =
            isos.iter().filter(|p| is_symplectic(p)).collect();
        assert_eq!(symplectic.len(), 24);
        // closure: composites of symplectic matrices stay symplectic
        for a in symplectic.iter().take(6) {
            for b in symplectic.iter().take(6) {
                assert_eq!(mat2_det(mat2_mul(a.matrix, b.matrix)), 1);
            }
        }
        // an explicit determinant minus-one example is rejected
        let anti = isos
            .iter()
            .find(|p| p.matrix == [[1, 0], [0, 2]])
            .unwrap();
        assert!(!is_symplectic(anti));
    }

    #[test]
    fn equivariance_examples() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 1, 1);
        let isos = torsion_isos(&e, &e).unwrap();
        let id = isos
            .iter()
            .find(|p| p.matrix == [[1, 0], [0, 1]])
            .unwrap();
        assert!(is_equivariant(id, 7));

        // over the full torsion field the Galois action is trivial, so every
        // isomorphism is equivariant
        let big = torsion3(&e).unwrap().field.clone();
        let e_big = e.embed(&big).unwrap();
        for phi in torsion_isos(&e_big, &e_big).unwrap() {
            assert_eq!(
                frobenius_matrix(&phi.source, big.order()),
                [[1, 0], [0, 1]]
            );
            assert!(is_equivariant(&phi, big.order()));
        }

        // a curve whose Frobenius matrix is non-central admits some
        // non-commuting isomorphism
        let mut found = false;
        for (p, a, b) in [(5i64, 1i64, 1i64), (5, 0, 1), (7, 1, 1), (7, 0, 1), (7, 2, 1)] {
            let f = gf(p as u64, 1);
            let disc = f.from_i64(4 * a * a * a + 27 * b * b);
            if disc.is_zero() {
                continue;
            }
            let c = shortw(&f, a, b);
            let tor = torsion3(&c).unwrap();
            let basis = basis_in(&tor.basis, &tor.field).unwrap();
            let m = frobenius_matrix(&basis, f.order());
            if m != [[1, 0], [0, 1]] && m != [[2, 0], [0, 2]] {
                let isos = torsion_isos(&c, &c).unwrap();
                assert!(isos.iter().any(|phi| !is_equivariant(phi, f.order())));
                found = true;
            }
        }
        assert!(found, "expected a curve with non-central Frobenius action");
    }

    fn pt(f: &Field, x: i64, y: i64, z: i64) -> ProjPoint2 {
        ProjPoint2::new(f.from_i64(x), f.from_i64(y), f.from_i64(z))
    }

    #[test]
    fn four_point_map_examples_and_uniqueness() {
        let f = gf(7, 1);
        let frame = [pt(&f, 1, 0, 0), pt(&f, 0, 1, 0), pt(&f, 0, 0, 1), pt(&f, 1, 1, 1)];
        // fixing a frame gives the identity
        let id = pgl3_through_points(&frame, &frame).unwrap();
        assert_eq!(id, Pgl3Map::identity(&f));
        // permuting the first two frame points gives the transposition matrix
        let swapped = [
            frame[1].clone(),
            frame[0].clone(),
            frame[2].clone(),
            frame[3].clone(),
        ];
        let perm = pgl3_through_points(&frame, &swapped).unwrap();
        let expect = Mat3::new(
            &f,
            [
                [f.from_i64(0), f.from_i64(1), f.from_i64(0)],
                [f.from_i64(1), f.from_i64(0), f.from_i64(0)],
                [f.from_i64(0), f.from_i64(0), f.from_i64(1)],
            ],
        );
        assert_eq!(perm, Pgl3Map::new(expect).unwrap());
        // collinear triple in either quadruple is rejected
        let bad = [pt(&f, 1, 0, 0), pt(&f, 0, 1, 0), pt(&f, 1, 1, 0), pt(&f, 0, 0, 1)];
        assert!(matches!(
            pgl3_through_points(&bad, &frame),
            Err(Error::CollinearTriple)
        ));
        assert!(matches!(
            pgl3_through_points(&frame, &bad),
            Err(Error::CollinearTriple)
        ));
        // recovering a known map: uniqueness means the solver returns the
        // generator projectively
        let mats = [
            [[1, 2, 3], [0, 1, 4], [5, 0, 1]],
            [[2, 0, 1], [1, 1, 0], [3, 4, 6]],
            [[0, 1, 0], [0, 0, 1], [1, 0, 1]],
        ];
        for rows in mats {
            let m = Mat3::new(
                &f,
                rows.map(|r: [i64; 3]| r.map(|v| f.from_i64(v))),
            );
            if m.det().is_zero() {
                continue;
            }
            let gen = Pgl3Map::new(m).unwrap();
            let images = [
                gen.apply(&frame[0]),
                gen.apply(&frame[1]),
                gen.apply(&frame[2]),
                gen.apply(&frame[3]),
            ];
            let solved = pgl3_through_points(&frame, &images).unwrap();
            assert_eq!(solved, gen);
        }
    }

    #[test]
    fn realize_identity_is_the_infinity_fiber() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 1, 1);
        let isos = torsion_isos(&e, &e).unwrap();
        let id = isos
            .iter()
            .find(|p| p.matrix == [[1, 0], [0, 1]])
            .unwrap();
        let (t0, map) = realize_symplectic(&e, &e, id, 24).unwrap();
        assert_eq!(t0, PencilParam::Infinity);
        assert_eq!(map, Pgl3Map::identity(map.field()));
        // an anti-symplectic input is rejected up front
        let anti = isos
            .iter()
            .find(|p| mat2_det(p.matrix) == 2)
            .unwrap();
        assert!(matches!(
            realize_symplectic(&e, &e, anti, 24),
            Err(Error::NotSymplectic)
        ));
    }

    #[test]
    fn realization_restricts_to_the_isomorphism_on_all_nine_points() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 1, 1);
        let e2 = shortw(&f7, 2, 6);
        let report = theorem_check(&e, &e2, &f7).unwrap();
        let phi = report
            .symplectic_witness
            .expect("pair chosen to admit an equivariant symplectic iso");
        let (t0, map) = realize_symplectic(&e, &e2, &phi, 24).unwrap();
        let l = map.field().clone();
        let t0l = match &t0 {
            PencilParam::Infinity => PencilParam::Infinity,
            PencilParam::Finite(v) => PencilParam::Finite(embed(v, &l).unwrap()),
        };
        let fiber_cubic = pencil_cubic(&e, &t0l).unwrap();
        let target_cubic = e2.embed(&l).unwrap().to_cubic();
        assert!(target_cubic
            .substitute(map.matrix())
            .proportional_to(&fiber_cubic));
        for a in 0..3u8 {
            for b in 0..3u8 {
                let p = combo(&phi.source, a, b);
                let image = phi.map_point(&p).embed(&l).unwrap().to_plane();
                assert_eq!(
                    map.apply(&p.embed(&l).unwrap().to_plane()),
                    image
                );
            }
        }
    }

    #[test]
    fn descent_examples_and_round_trip() {
        let f7 = gf(7, 1);
        let f49 = gf(7, 2);
        // identity descends to the identity
        let id49 = Pgl3Map::identity(&f49);
        assert_eq!(descend_pgl3(&id49, 7).unwrap(), Pgl3Map::identity(&f7));
        // a non-rational scalar multiple of the identity is projectively
        // trivial and still descends
        let c = f49
            .elements()
            .find(|x| !x.is_zero() && x.frobenius(7) != *x)
            .unwrap();
        let scaled = Pgl3Map::new(Mat3::identity(&f49).scale(&c)).unwrap();
        assert_eq!(descend_pgl3(&scaled, 7).unwrap(), Pgl3Map::identity(&f7));
        // a genuinely non-rational projective class does not descend
        let mut rows = Mat3::identity(&f49);
        rows.m[2][2] = c.clone();
        let twisted = Pgl3Map::new(rows).unwrap();
        assert!(descend_pgl3(&twisted, 7).is_none());
        // round trip: rational maps lift and come back unchanged
        let m = Mat3::new(
            &f7,
            [[1, 2, 3], [0, 1, 4], [5, 0, 1]].map(|r: [i64; 3]| r.map(|v| f7.from_i64(v))),
        );
        let over7 = Pgl3Map::new(m).unwrap();
        let lifted = over7.embed(&f49).unwrap();
        assert_eq!(descend_pgl3(&lifted, 7).unwrap(), over7);
    }

    #[test]
    fn theorem_check_self_pair_and_mismatched_pair() {
        let f7 = gf(7, 1);
        let e = shortw(&f7, 1, 1);
        let report = theorem_check(&e, &e, &f7).unwrap();
        assert!(report.verdict);
        assert_eq!(
            report.symplectic_witness.unwrap().matrix,
            [[1, 0], [0, 1]]
        );
        assert_eq!(report.pencil_witness.unwrap().0, PencilParam::Infinity);
        // hunt for a pair with no witness on either side
        let mut seen_double_absence = false;
        for b in 1..7i64 {
            let e2 = shortw(&f7, 3, b);
            let r = theorem_check(&e, &e2, &f7).unwrap();
            assert!(r.verdict);
            if r.symplectic_witness.is_none() {
                assert!(r.pencil_witness.is_none());
                seen_double_absence = true;
            }
        }
        assert!(seen_double_absence);
    }

    #[test]
    fn exhaustive_small_fields() {
        let f2 = gf(2, 1);
        let summary = exhaustive_verify(&f2, 16).unwrap();
        assert_eq!(summary.curves, 6);
        assert_eq!(summary.pairs, 36);
        assert!(summary.mismatches.is_empty());
        assert!(summary.equivalences > 0);
        assert!(matches!(
            exhaustive_verify(&gf(5, 2), 16),
            Err(Error::FieldTooLarge)
        ));
    }
}
