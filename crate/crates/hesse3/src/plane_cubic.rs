//! Homogeneous ternary cubics: classical and characteristic-two Hessians,
//! flex detection and singularity tests.
//!
//! Coefficients are stored in the fixed monomial order
//! `X^3, X^2Y, X^2Z, XY^2, XYZ, XZ^2, Y^3, Y^2Z, YZ^2, Z^3`,
//! which is also the serialization order.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::mat3::Mat3;
use crate::algebra::poly::UniPoly;
use crate::algebra::roots_in;
use crate::error::{Error, Result};

/// Exponent triples matching the coefficient order.
pub const MONOMIALS: [(u32, u32, u32); 10] = [
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
];

/// A nonzero homogeneous cubic form in `X, Y, Z`.
///
/// Hessians of degenerate forms may come out identically zero; such values
/// are representable internally but cannot be built through the public
/// constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryCubic {
    field: Field,
    c: Vec<FieldElement>,
}

/// A point of the projective plane. Equality is up to nonzero scalar; the
/// canonical representative has its last nonzero coordinate equal to one.
#[derive(Debug, Clone)]
pub struct ProjPoint2 {
    coords: [FieldElement; 3],
}

impl ProjPoint2 {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> ProjPoint2 {
        assert!(
            !(x.is_zero() && y.is_zero() && z.is_zero()),
            "projective point must be nonzero"
        );
        let mut p = ProjPoint2 { coords: [x, y, z] };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let idx = (0..3).rev().find(|&i| !self.coords[i].is_zero()).unwrap();
        let inv = self.coords[idx].inv();
        for c in self.coords.iter_mut() {
            *c = c.mul(&inv);
        }
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn x(&self) -> &FieldElement {
        &self.coords[0]
    }

    pub fn y(&self) -> &FieldElement {
        &self.coords[1]
    }

    pub fn z(&self) -> &FieldElement {
        &self.coords[2]
    }

    pub fn embed(&self, target: &Field) -> Result<ProjPoint2> {
        Ok(ProjPoint2::new(
            crate::algebra::embed(&self.coords[0], target)?,
            crate::algebra::embed(&self.coords[1], target)?,
            crate::algebra::embed(&self.coords[2], target)?,
        ))
    }
}

impl PartialEq for ProjPoint2 {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}
impl Eq for ProjPoint2 {}

impl PartialOrd for ProjPoint2 {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ProjPoint2 {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let key = |p: &ProjPoint2| {
            [
                p.coords[0].value_index(),
                p.coords[1].value_index(),
                p.coords[2].value_index(),
            ]
        };
        key(self).cmp(&key(other))
    }
}

impl core::fmt::Display for ProjPoint2 {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "({}:{}:{})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

impl TernaryCubic {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> TernaryCubic {
        assert_eq!(coeffs.len(), 10);
        assert!(
            coeffs.iter().any(|c| !c.is_zero()),
            "cubic form must be nonzero"
        );
        TernaryCubic {
            field: field.clone(),
            c: coeffs,
        }
    }

    /// Build from small signed integers in the fixed monomial order.
    pub fn from_i64(field: &Field, coeffs: [i64; 10]) -> TernaryCubic {
        TernaryCubic::new(field, coeffs.iter().map(|&n| field.from_i64(n)).collect())
    }

    fn raw(field: &Field, coeffs: Vec<FieldElement>) -> TernaryCubic {
        TernaryCubic {
            field: field.clone(),
            c: coeffs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    pub fn embed(&self, target: &Field) -> Result<TernaryCubic> {
        let c = self
            .c
            .iter()
            .map(|e| crate::algebra::embed(e, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(TernaryCubic::raw(target, c))
    }

    pub fn scale(&self, s: &FieldElement) -> TernaryCubic {
        TernaryCubic::raw(&self.field, self.c.iter().map(|e| e.mul(s)).collect())
    }

    /// Whether `other` is a nonzero scalar multiple of `self`.
    pub fn proportional_to(&self, other: &TernaryCubic) -> bool {
        let i = match self.c.iter().position(|c| !c.is_zero()) {
            Some(i) => i,
            None => return other.is_zero(),
        };
        if other.c[i].is_zero() {
            return false;
        }
        let s = other.c[i].div(&self.c[i]);
        self.scale(&s) == *other
    }

    pub fn eval(&self, p: &ProjPoint2) -> FieldElement {
        self.eval_xyz(&p.coords[0], &p.coords[1], &p.coords[2])
    }

    pub fn eval_xyz(&self, x: &FieldElement, y: &FieldElement, z: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for (i, (a, b, c)) in MONOMIALS.iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            let term = self.c[i]
                .mul(&x.pow(*a as u128))
                .mul(&y.pow(*b as u128))
                .mul(&z.pow(*c as u128));
            acc = acc.add(&term);
        }
        acc
    }

    /// First partial derivatives as quadratic forms with coefficients in the
    /// order `X^2, XY, XZ, Y^2, YZ, Z^2`.
    pub fn partials(&self) -> [[FieldElement; 6]; 3] {
        let z = self.field.zero();
        let mut out: [[FieldElement; 6]; 3] =
            core::array::from_fn(|_| core::array::from_fn(|_| z.clone()));
        for (i, &(a, b, c)) in MONOMIALS.iter().enumerate() {
            let coef = &self.c[i];
            if coef.is_zero() {
                continue;
            }
            let exps = [a, b, c];
            for axis in 0..3 {
                if exps[axis] == 0 {
                    continue;
                }
                let mut e = exps;
                e[axis] -= 1;
                let k = quad_index(e);
                let v = coef.mul(&self.field.from_u64(exps[axis] as u64));
                out[axis][k] = out[axis][k].add(&v);
            }
        }
        out
    }

    /// Gradient at a point.
    pub fn gradient(&self, p: &ProjPoint2) -> [FieldElement; 3] {
        let parts = self.partials();
        core::array::from_fn(|axis| eval_quad(&self.field, &parts[axis], &p.coords))
    }

    /// Substitute `(X,Y,Z) = M (X',Y',Z')`: the pullback of the form by `M`.
    pub fn substitute(&self, m: &Mat3) -> TernaryCubic {
        let rows: [[FieldElement; 3]; 3] = core::array::from_fn(|i| m.m[i].clone());
        let mut acc = vec![self.field.zero(); 10];
        for (i, &(a, b, c)) in MONOMIALS.iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            let mut term = TernaryForm::constant(&self.field, self.c[i].clone());
            for _ in 0..a {
                term = term.mul_linear(&rows[0]);
            }
            for _ in 0..b {
                term = term.mul_linear(&rows[1]);
            }
            for _ in 0..c {
                term = term.mul_linear(&rows[2]);
            }
            for (k, v) in term.into_cubic_coeffs().into_iter().enumerate() {
                acc[k] = acc[k].add(&v);
            }
        }
        TernaryCubic::raw(&self.field, acc)
    }
}

impl core::fmt::Display for TernaryCubic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        const NAMES: [&str; 10] = [
            "X^3", "X^2*Y", "X^2*Z", "X*Y^2", "X*Y*Z", "X*Z^2", "Y^3", "Y^2*Z", "Y*Z^2", "Z^3",
        ];
        let mut first = true;
        for (i, coef) in self.c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if coef.is_one() {
                write!(f, "{}", NAMES[i])?;
            } else {
                write!(f, "({})*{}", coef, NAMES[i])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn quad_index(e: [u32; 3]) -> usize {
    match (e[0], e[1]) {
        (2, 0) => 0,
        (1, 1) => 1,
        (1, 0) => 2,
        (0, 2) => 3,
        (0, 1) => 4,
        (0, 0) => 5,
        _ => unreachable!(),
    }
}

const QUAD_MONOMIALS: [(u32, u32, u32); 6] = [
    (2, 0, 0),
    (1, 1, 0),
    (1, 0, 1),
    (0, 2, 0),
    (0, 1, 1),
    (0, 0, 2),
];

fn eval_quad(field: &Field, q: &[FieldElement; 6], v: &[FieldElement; 3]) -> FieldElement {
    let mut acc = field.zero();
    for (k, &(a, b, c)) in QUAD_MONOMIALS.iter().enumerate() {
        if q[k].is_zero() {
            continue;
        }
        let term = q[k]
            .mul(&v[0].pow(a as u128))
            .mul(&v[1].pow(b as u128))
            .mul(&v[2].pow(c as u128));
        acc = acc.add(&term);
    }
    acc
}

/// Dense homogeneous form of small degree, used for expansions.
struct TernaryForm {
    field: Field,
    degree: u32,
    c: Vec<FieldElement>,
}

impl TernaryForm {
    fn index(degree: u32, a: u32, b: u32) -> usize {
        let mut idx = 0usize;
        for aa in 0..a {
            idx += (degree - aa + 1) as usize;
        }
        idx + b as usize
    }

    fn size(degree: u32) -> usize {
        ((degree + 1) * (degree + 2) / 2) as usize
    }

    fn constant(field: &Field, v: FieldElement) -> TernaryForm {
        TernaryForm {
            field: field.clone(),
            degree: 0,
            c: vec![v],
        }
    }

    fn mul_linear(&self, l: &[FieldElement; 3]) -> TernaryForm {
        let nd = self.degree + 1;
        let mut out = vec![self.field.zero(); TernaryForm::size(nd)];
        for a in 0..=self.degree {
            for b in 0..=(self.degree - a) {
                let v = &self.c[TernaryForm::index(self.degree, a, b)];
                if v.is_zero() {
                    continue;
                }
                let tx = TernaryForm::index(nd, a + 1, b);
                out[tx] = out[tx].add(&v.mul(&l[0]));
                let ty = TernaryForm::index(nd, a, b + 1);
                out[ty] = out[ty].add(&v.mul(&l[1]));
                let tz = TernaryForm::index(nd, a, b);
                out[tz] = out[tz].add(&v.mul(&l[2]));
            }
        }
        TernaryForm {
            field: self.field.clone(),
            degree: nd,
            c: out,
        }
    }

    fn into_cubic_coeffs(self) -> Vec<FieldElement> {
        assert_eq!(self.degree, 3);
        MONOMIALS
            .iter()
            .map(|&(a, b, _)| self.c[TernaryForm::index(3, a, b)].clone())
            .collect()
    }
}

/// Determinant of the matrix of second partial derivatives. Rejected in
/// characteristic two, where it vanishes identically for every cubic.
pub fn hessian_classical(f: &TernaryCubic) -> Result<TernaryCubic> {
    let field = f.field().clone();
    if field.characteristic() == 2 {
        return Err(Error::WrongCharacteristic);
    }
    // second partials of a cubic are linear forms in X, Y, Z
    let zero_lin = || -> [FieldElement; 3] { core::array::from_fn(|_| field.zero()) };
    let mut h: [[[FieldElement; 3]; 3]; 3] =
        core::array::from_fn(|_| core::array::from_fn(|_| zero_lin()));
    for (m, &(a, b, c)) in MONOMIALS.iter().enumerate() {
        if f.c[m].is_zero() {
            continue;
        }
        let exps = [a, b, c];
        for i in 0..3 {
            if exps[i] == 0 {
                continue;
            }
            let mut e1 = exps;
            e1[i] -= 1;
            for j in 0..3 {
                if e1[j] == 0 {
                    continue;
                }
                let mut e2 = e1;
                e2[j] -= 1;
                let axis = (0..3).find(|&k| e2[k] == 1).unwrap();
                let mult = field.from_u64((exps[i] * e1[j]) as u64);
                h[i][j][axis] = h[i][j][axis].add(&f.c[m].mul(&mult));
            }
        }
    }
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([0, 2, 1], false),
        ([2, 1, 0], false),
        ([1, 0, 2], false),
    ];
    let mut acc = vec![field.zero(); 10];
    for (perm, pos) in PERMS.iter() {
        let mut term = TernaryForm::constant(&field, field.one());
        for r in 0..3 {
            term = term.mul_linear(&h[r][perm[r]]);
        }
        for (k, v) in term.into_cubic_coeffs().into_iter().enumerate() {
            acc[k] = if *pos { acc[k].add(&v) } else { acc[k].sub(&v) };
        }
    }
    Ok(TernaryCubic::raw(&field, acc))
}

/// Hessian of the ordinary characteristic-two Weierstrass cubic
/// `Y^2Z + XYZ + X^3 + a2*X^2Z + a6*Z^3`.
pub fn hessian_char2_ordinary(a2: &FieldElement, a6: &FieldElement) -> Result<TernaryCubic> {
    let field = a2.field().clone();
    if field.characteristic() != 2 {
        return Err(Error::WrongCharacteristic);
    }
    if a6.is_zero() {
        return Err(Error::SingularInput);
    }
    let mut c = vec![field.zero(); 10];
    c[0] = a2.clone();
    c[1] = field.one();
    c[2] = a2.clone();
    c[3] = field.one();
    c[4] = field.one();
    c[5] = a6.clone();
    c[7] = field.one();
    Ok(TernaryCubic::new(&field, c))
}

/// Hessian of the supersingular characteristic-two Weierstrass cubic
/// `Y^2Z + a3*YZ^2 + X^3 + a4*XZ^2 + a6*Z^3`.
pub fn hessian_char2_supersingular(
    a3: &FieldElement,
    a4: &FieldElement,
    a6: &FieldElement,
) -> Result<TernaryCubic> {
    let field = a3.field().clone();
    if field.characteristic() != 2 {
        return Err(Error::WrongCharacteristic);
    }
    if a3.is_zero() {
        return Err(Error::SingularInput);
    }
    let mut c = vec![field.zero(); 10];
    c[2] = a4.clone();
    c[3] = field.one();
    c[4] = a3.clone();
    c[5] = a3.square().add(a6);
    c[9] = a4.square();
    Ok(TernaryCubic::new(&field, c))
}

/// Whether the tangent line at `P` meets the cubic with multiplicity at least
/// three there.
pub fn is_flex(f: &TernaryCubic, p: &ProjPoint2) -> Result<bool> {
    if !f.eval(p).is_zero() {
        return Err(Error::NotOnCurve);
    }
    let grad = f.gradient(p);
    if grad.iter().all(|g| g.is_zero()) {
        return Err(Error::SingularPoint);
    }
    let field = f.field().clone();
    // second point spanning the tangent line, independent from P
    let i = grad.iter().position(|g| !g.is_zero()).unwrap();
    let mut q = None;
    for j in 0..3 {
        if j == i {
            continue;
        }
        let mut v: [FieldElement; 3] = core::array::from_fn(|_| field.zero());
        v[j] = field.one();
        v[i] = grad[j].div(&grad[i]).neg();
        let cand = ProjPoint2::new(v[0].clone(), v[1].clone(), v[2].clone());
        if cand != *p {
            q = Some(cand);
            break;
        }
    }
    let q = q.unwrap();
    // restrict F to the parameterization P + s*Q
    let coords: [UniPoly; 3] = core::array::from_fn(|k| {
        UniPoly::new(&field, vec![p.coords[k].clone(), q.coords[k].clone()])
    });
    let mut g = UniPoly::zero(&field);
    for (m, &(a, b, c)) in MONOMIALS.iter().enumerate() {
        if f.c[m].is_zero() {
            continue;
        }
        let term = coords[0]
            .pow(a)
            .mul(&coords[1].pow(b))
            .mul(&coords[2].pow(c))
            .scale(&f.c[m]);
        g = g.add(&term);
    }
    Ok(g.coeff(0).is_zero() && g.coeff(1).is_zero() && g.coeff(2).is_zero())
}

/// A homogeneous form in X, Y, Z split into the charts needed for projective
/// root finding: the z = 1 chart as a polynomial in y with coefficients in
/// k[x], the restriction to the line z = 0 dehomogenized at y = 1, and the
/// value at (1:0:0).
struct ChartForms {
    ycoeffs: Vec<UniPoly>,
    line: UniPoly,
    corner: FieldElement,
}

fn charts(field: &Field, terms: &[((u32, u32, u32), FieldElement)]) -> ChartForms {
    let max_y = terms
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((_, b, _), _)| *b)
        .max()
        .unwrap_or(0) as usize;
    let mut ycoeffs = vec![UniPoly::zero(field); max_y + 1];
    let mut line = UniPoly::zero(field);
    let mut corner = field.zero();
    for ((a, b, c), v) in terms {
        if v.is_zero() {
            continue;
        }
        let xpow = UniPoly::x(field).pow(*a).scale(v);
        ycoeffs[*b as usize] = ycoeffs[*b as usize].add(&xpow);
        if *c == 0 {
            line = line.add(&UniPoly::x(field).pow(*a).scale(v));
            if *b == 0 {
                corner = corner.add(v);
            }
        }
    }
    while ycoeffs.len() > 1 && ycoeffs.last().unwrap().is_zero() {
        ycoeffs.pop();
    }
    ChartForms {
        ycoeffs,
        line,
        corner,
    }
}

fn cubic_terms(f: &TernaryCubic) -> Vec<((u32, u32, u32), FieldElement)> {
    MONOMIALS
        .iter()
        .zip(f.c.iter())
        .map(|(&e, v)| (e, v.clone()))
        .collect()
}

fn quad_terms(q: &[FieldElement; 6]) -> Vec<((u32, u32, u32), FieldElement)> {
    QUAD_MONOMIALS
        .iter()
        .zip(q.iter())
        .map(|(&e, v)| (e, v.clone()))
        .collect()
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
fn poly_det(field: &Field, m: &[Vec<UniPoly>]) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one(field);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero(field);
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let sub = entry.mul(&poly_det(field, &minor));
        acc = if col % 2 == 0 {
            acc.add(&sub)
        } else {
            acc.sub(&sub)
        };
    }
    acc
}

/// Resultant with respect to y of two polynomials in k[x][y], given by their
/// y-coefficient vectors (index = power of y).
fn resultant_y(field: &Field, a: &[UniPoly], b: &[UniPoly]) -> UniPoly {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return UniPoly::one(field);
    }
    let mut mat = vec![vec![UniPoly::zero(field); size]; size];
    for (i, row) in mat.iter_mut().take(n).enumerate() {
        for (k, coef) in a.iter().rev().enumerate() {
            row[i + k] = coef.clone();
        }
    }
    for (i, row) in mat.iter_mut().skip(n).enumerate() {
        for (k, coef) in b.iter().rev().enumerate() {
            row[i + k] = coef.clone();
        }
    }
    poly_det(field, &mat)
}

fn gcd_allow_zero(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    a.gcd(b)
}

const ENUM_CAP: u128 = 65536;

/// Common projective zeros of two cubics over `search`, sorted.
pub fn cubic_common_points(
    f: &TernaryCubic,
    g: &TernaryCubic,
    search: &Field,
) -> Result<Vec<ProjPoint2>> {
    let fe = f.embed(search)?;
    let ge = g.embed(search)?;
    let terms = |c: &TernaryCubic| -> Vec<((u32, u32, u32), FieldElement)> {
        MONOMIALS
            .iter()
            .zip(c.coeffs())
            .filter(|(_, e)| !e.is_zero())
            .map(|(m, e)| (*m, e.clone()))
            .collect()
    };
    let mut pts = common_zeros(search, &terms(&fe), &terms(&ge))?;
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// Common projective zeros of two nonzero forms over the forms' own field.
fn common_zeros(
    field: &Field,
    fa: &[((u32, u32, u32), FieldElement)],
    fb: &[((u32, u32, u32), FieldElement)],
) -> Result<Vec<ProjPoint2>> {
    let ca = charts(field, fa);
    let cb = charts(field, fb);
    let mut out: Vec<ProjPoint2> = Vec::new();

    let eval_terms = |terms: &[((u32, u32, u32), FieldElement)], v: &[FieldElement; 3]| {
        let mut acc = field.zero();
        for ((a, b, c), coef) in terms {
            if coef.is_zero() {
                continue;
            }
            acc = acc.add(
                &coef
                    .mul(&v[0].pow(*a as u128))
                    .mul(&v[1].pow(*b as u128))
                    .mul(&v[2].pow(*c as u128)),
            );
        }
        acc
    };
    let on_both = |v: [FieldElement; 3]| -> Option<ProjPoint2> {
        if eval_terms(fa, &v).is_zero() && eval_terms(fb, &v).is_zero() {
            Some(ProjPoint2::new(v[0].clone(), v[1].clone(), v[2].clone()))
        } else {
            None
        }
    };

    // affine chart z = 1
    let da = ca.ycoeffs.len() - 1;
    let db = cb.ycoeffs.len() - 1;
    if da == 0 && db == 0 {
        let g = gcd_allow_zero(&ca.ycoeffs[0], &cb.ycoeffs[0]);
        if g.is_zero() || g.degree().is_some_and(|d| d > 0) {
            if field.order() > ENUM_CAP {
                return Err(Error::FieldTooLarge);
            }
            let xs: Vec<FieldElement> = if g.is_zero() {
                field.elements().collect()
            } else {
                roots_in(&g, field)?
            };
            for x0 in xs {
                for y0 in field.elements() {
                    if let Some(p) = on_both([x0.clone(), y0, field.one()]) {
                        out.push(p);
                    }
                }
            }
        }
    } else {
        let res = resultant_y(field, &ca.ycoeffs, &cb.ycoeffs);
        if res.is_zero() {
            // common factor in k(x)[y]; fall back to scanning the chart
            if field.order() > ENUM_CAP {
                return Err(Error::DegenerateConfiguration);
            }
            for x0 in field.elements() {
                for y0 in field.elements() {
                    if let Some(p) = on_both([x0.clone(), y0, field.one()]) {
                        out.push(p);
                    }
                }
            }
        } else {
            for x0 in roots_in(&res, field)? {
                let ax = UniPoly::new(field, ca.ycoeffs.iter().map(|p| p.eval(&x0)).collect());
                let bx = UniPoly::new(field, cb.ycoeffs.iter().map(|p| p.eval(&x0)).collect());
                if ax.is_zero() && bx.is_zero() {
                    if field.order() > ENUM_CAP {
                        return Err(Error::FieldTooLarge);
                    }
                    for y0 in field.elements() {
                        if let Some(p) = on_both([x0.clone(), y0, field.one()]) {
                            out.push(p);
                        }
                    }
                    continue;
                }
                let g = gcd_allow_zero(&ax, &bx);
                if g.degree().is_some_and(|d| d > 0) {
                    for y0 in roots_in(&g, field)? {
                        if let Some(p) = on_both([x0.clone(), y0, field.one()]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }

    // line z = 0
    if ca.line.is_zero() && cb.line.is_zero() {
        if field.order() > ENUM_CAP {
            return Err(Error::FieldTooLarge);
        }
        for x0 in field.elements() {
            out.push(ProjPoint2::new(x0, field.one(), field.zero()));
        }
        out.push(ProjPoint2::new(field.one(), field.zero(), field.zero()));
    } else {
        let g = gcd_allow_zero(&ca.line, &cb.line);
        if g.degree().is_some_and(|d| d > 0) {
            for x0 in roots_in(&g, field)? {
                if let Some(p) = on_both([x0.clone(), field.one(), field.zero()]) {
                    out.push(p);
                }
            }
        }
        if ca.corner.is_zero() && cb.corner.is_zero() {
            if let Some(p) = on_both([field.one(), field.zero(), field.zero()]) {
                out.push(p);
            }
        }
    }

    out.sort();
    out.dedup();
    Ok(out)
}

/// The two characteristic-two Weierstrass shapes a cubic form can match,
/// up to an overall scalar.
enum Char2Shape {
    Ordinary {
        a2: FieldElement,
        a6: FieldElement,
    },
    Supersingular {
        a3: FieldElement,
        a4: FieldElement,
        a6: FieldElement,
    },
}

fn recognize_char2_shape(f: &TernaryCubic) -> Option<Char2Shape> {
    let c = &f.c;
    // ordinary: Y^2Z + XYZ + X^3 + a2 X^2Z + a6 Z^3
    if !c[7].is_zero()
        && [1, 3, 5, 6, 8].iter().all(|&i| c[i].is_zero())
        && c[0] == c[7]
        && c[4] == c[7]
    {
        let s = c[7].inv();
        return Some(Char2Shape::Ordinary {
            a2: c[2].mul(&s),
            a6: c[9].mul(&s),
        });
    }
    // supersingular: Y^2Z + a3 YZ^2 + X^3 + a4 XZ^2 + a6 Z^3
    if !c[7].is_zero() && [1, 2, 3, 4, 6].iter().all(|&i| c[i].is_zero()) && c[0] == c[7] {
        let s = c[7].inv();
        return Some(Char2Shape::Supersingular {
            a3: c[8].mul(&s),
            a4: c[5].mul(&s),
            a6: c[9].mul(&s),
        });
    }
    None
}

/// All flex points of a smooth cubic with coordinates in `search`, found by
/// intersecting with the appropriate Hessian and cross-checked against
/// [`is_flex`].
pub fn flex_points(f: &TernaryCubic, search: &Field) -> Result<Vec<ProjPoint2>> {
    let fe = f.embed(search)?;
    let hess = if search.characteristic() == 2 {
        match recognize_char2_shape(&fe) {
            Some(Char2Shape::Ordinary { a2, a6 }) => hessian_char2_ordinary(&a2, &a6)?,
            Some(Char2Shape::Supersingular { a3, a4, a6 }) => {
                hessian_char2_supersingular(&a3, &a4, &a6)?
            }
            None => return Err(Error::UnsupportedShape),
        }
    } else {
        let h = hessian_classical(&fe)?;
        if h.is_zero() {
            return Err(Error::SingularInput);
        }
        h
    };
    let pts = common_zeros(search, &cubic_terms(&fe), &cubic_terms(&hess))?;
    let mut out = Vec::new();
    for p in pts {
        match is_flex(&fe, &p) {
            Ok(true) => out.push(p),
            Ok(false) => {}
            Err(Error::SingularPoint) => return Err(Error::SingularInput),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Search for a point over `search` where all three partial derivatives (and
/// hence the form itself, by Euler's relation in odd degree) vanish.
pub fn cubic_is_singular(f: &TernaryCubic, search: &Field) -> Option<ProjPoint2> {
    let fe = match f.embed(search) {
        Ok(fe) => fe,
        Err(_) => return None,
    };
    let parts = fe.partials();
    let nonzero: Vec<usize> = (0..3)
        .filter(|&i| parts[i].iter().any(|c| !c.is_zero()))
        .collect();
    let check =
        |p: &ProjPoint2| -> bool { fe.eval(p).is_zero() && fe.gradient(p).iter().all(|g| g.is_zero()) };
    match nonzero.len() {
        0 => unreachable!("nonzero cubic has a nonzero partial away from characteristic 3"),
        1 => {
            let cand = if search.characteristic() == 2 {
                // the lone partial is the square of a linear form; take a
                // zero of that line
                let q = &parts[nonzero[0]];
                let half = search.order() / 2;
                let sqrt = |v: &FieldElement| v.pow(half);
                let (alpha, beta) = (sqrt(&q[0]), sqrt(&q[3]));
                if !alpha.is_zero() || !beta.is_zero() {
                    ProjPoint2::new(beta, alpha.neg(), search.zero())
                } else {
                    ProjPoint2::new(search.one(), search.zero(), search.zero())
                }
            } else {
                // in odd characteristic this forces a perfect cube of one
                // coordinate; any point off that axis is singular
                let j = if nonzero[0] == 2 { 1 } else { 2 };
                let mut v: [FieldElement; 3] = core::array::from_fn(|_| search.zero());
                v[j] = search.one();
                ProjPoint2::new(v[0].clone(), v[1].clone(), v[2].clone())
            };
            if check(&cand) {
                Some(cand)
            } else {
                None
            }
        }
        _ => {
            let a = quad_terms(&parts[nonzero[0]]);
            let b = quad_terms(&parts[nonzero[1]]);
            let cands = match common_zeros(search, &a, &b) {
                Ok(c) => c,
                Err(_) => return None,
            };
            cands.into_iter().find(check)
        }
    }
}
