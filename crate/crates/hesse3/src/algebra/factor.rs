//! Squarefree, distinct-degree and equal-degree factorization over finite
//! fields, and root extraction inside extension fields.
//!
//! Equal-degree splitting is randomized (Cantor-Zassenhaus for odd
//! characteristic, the trace construction for characteristic two) with a
//! seeded generator, so results are reproducible for a fixed seed.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{seed, Field, FieldElement};
use super::poly::UniPoly;
use crate::error::{Error, Result};

fn rng_for(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ tag)
}

fn random_element(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    let coeffs: Vec<u64> = (0..field.degree()).map(|_| rng.next_u64()).collect();
    field.element(&coeffs)
}

fn random_poly(field: &Field, deg_below: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    let coeffs = (0..deg_below).map(|_| random_element(field, rng)).collect();
    UniPoly::new(field, coeffs)
}

/// Coefficient-wise inverse Frobenius: `c -> c^(p^(k-1))`.
fn pth_root_coeff(e: &FieldElement) -> FieldElement {
    let p = e.field().characteristic() as u128;
    let k = e.field().degree();
    let mut exp: u128 = 1;
    for _ in 0..k - 1 {
        exp *= p;
    }
    e.pow(exp)
}

/// For `f = g(x^p)`, recover `g` with `g^p = f` up to Frobenius on coefficients.
fn pth_root_poly(f: &UniPoly) -> UniPoly {
    let p = f.field().characteristic() as usize;
    let d = f.degree().unwrap();
    debug_assert_eq!(d % p, 0);
    let mut out = Vec::with_capacity(d / p + 1);
    for i in 0..=d / p {
        out.push(pth_root_coeff(&f.coeff(i * p)));
    }
    UniPoly::new(f.field(), out)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, m_i)` with
/// `f = prod g_i^{m_i}`, the `g_i` squarefree and pairwise coprime.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    fn go(f: &UniPoly, scale: usize, out: &mut Vec<(UniPoly, usize)>) {
        if f.degree() == Some(0) {
            return;
        }
        let fd = f.derivative();
        if fd.is_zero() {
            let p = f.field().characteristic() as usize;
            go(&pth_root_poly(f), scale * p, out);
            return;
        }
        let mut c = f.gcd(&fd);
        let mut w = f.div_rem(&c).0.monic();
        let mut i = 1usize;
        while w.degree() != Some(0) {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0.monic();
            if z.degree() != Some(0) {
                out.push((z, i * scale));
            }
            w = y;
            c = c.div_rem(&w).0.monic();
            i += 1;
        }
        if c.degree() != Some(0) {
            let p = f.field().characteristic() as usize;
            go(&pth_root_poly(&c), scale * p, out);
        }
    }
    let mut out = Vec::new();
    go(&f.monic(), 1, &mut out);
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(h_d, d)` where `h_d` is the product of all irreducible factors of
/// degree `d`.
pub fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let q = f.field().order();
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut h = UniPoly::x(f.field());
    let mut d = 0usize;
    while f.degree().map_or(0, |d| d) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &f);
        let g = h.sub(&UniPoly::x(f.field())).gcd(&f);
        if g.degree() != Some(0) {
            out.push((g.clone(), d));
            f = f.div_rem(&g).0.monic();
            h = h.rem(&f);
        }
    }
    if f.degree().map_or(false, |deg| deg >= 1) {
        let deg = f.degree().unwrap();
        out.push((f, deg));
    }
    out
}

fn checked_pow(q: u128, d: usize) -> u128 {
    let mut v: u128 = 1;
    for _ in 0..d {
        v = v.checked_mul(q).expect("field tower too large for exponent");
    }
    v
}

/// One random splitting attempt for a product of degree-`d` irreducibles.
fn split_attempt(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    let field = f.field();
    let p = field.characteristic();
    let n = f.degree().unwrap();
    let a = random_poly(field, n, rng);
    if a.is_zero() {
        return UniPoly::zero(field);
    }
    if p == 2 {
        // trace map over F_2 of the degree-d factor fields
        let bits = field.degree() * d;
        let mut t = a.rem(f);
        let mut acc = t.clone();
        for _ in 1..bits {
            t = t.mul(&t).rem(f);
            acc = acc.add(&t);
        }
        acc.gcd(f)
    } else {
        let e = (checked_pow(field.order(), d) - 1) / 2;
        let b = a.pow_mod(e, f).sub(&UniPoly::one(field));
        b.gcd(f)
    }
}

/// Equal-degree factorization: split a monic product of distinct irreducible
/// factors, all of degree `d`, into those factors.
pub fn equal_degree(f: &UniPoly, d: usize) -> Vec<UniPoly> {
    let mut out = Vec::new();
    let mut stack = vec![f.monic()];
    let mut rng = rng_for(0x45df);
    while let Some(g) = stack.pop() {
        let n = g.degree().unwrap();
        if n == d {
            out.push(g);
            continue;
        }
        loop {
            let h = split_attempt(&g, d, &mut rng);
            if let Some(dh) = h.degree() {
                if dh > 0 && dh < n {
                    let other = g.div_rem(&h).0.monic();
                    stack.push(h);
                    stack.push(other);
                    break;
                }
            }
        }
    }
    out
}

/// Full factorization into monic irreducibles with multiplicities, in a
/// deterministic order (by degree, then by coefficient value).
pub fn factor(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| {
        let da = a.0.degree();
        let db = b.0.degree();
        da.cmp(&db).then_with(|| {
            let va: Vec<u128> = a.0.coeffs().iter().map(|c| c.value_index()).collect();
            let vb: Vec<u128> = b.0.coeffs().iter().map(|c| c.value_index()).collect();
            va.cmp(&vb)
        })
    });
    Ok(out)
}

/// One root of a polynomial known to split into distinct linear factors
/// over its own field.
fn root_of_split(h: &UniPoly, rng: &mut ChaCha8Rng) -> FieldElement {
    let mut g = h.monic();
    while g.degree().unwrap() > 1 {
        let n = g.degree().unwrap();
        loop {
            let s = split_attempt(&g, 1, rng);
            if let Some(ds) = s.degree() {
                if ds > 0 && ds < n {
                    let other = g.div_rem(&s).0.monic();
                    g = if s.degree() <= other.degree() { s } else { other };
                    break;
                }
            }
        }
    }
    g.coeff(0).neg().div(&g.coeff(1))
}

/// All roots of `f` lying in `target`, with multiplicity, sorted in value
/// order. `target` must be an extension of the coefficient field.
pub fn roots_in(f: &UniPoly, target: &Field) -> Result<Vec<FieldElement>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !target.extends(f.field()) {
        return Err(Error::NoEmbedding);
    }
    let q = f.field().order();
    let ext = target.degree() / f.field().degree();
    let mut rng = rng_for(0x7007);
    let mut out: Vec<FieldElement> = Vec::new();
    for (g, mult) in factor(f)? {
        let d = g.degree().unwrap();
        if d == 0 {
            continue;
        }
        if ext % d != 0 {
            continue; // roots lie outside the target field
        }
        if d == 1 {
            let r = g.coeff(0).neg();
            let r = super::field::embed(&r, target)?;
            for _ in 0..mult {
                out.push(r.clone());
            }
            continue;
        }
        // Frobenius orbit of one root inside the target field
        let h = g.embed(target)?;
        let mut r = root_of_split(&h, &mut rng);
        for _ in 0..d {
            for _ in 0..mult {
                out.push(r.clone());
            }
            r = r.frobenius(q);
        }
    }
    out.sort();
    Ok(out)
}

/// Minimal root (value order) in `target` of a monic irreducible over the
/// prime field, given by raw residue coefficients. Used to fix embeddings.
pub(crate) fn min_root_of_fp_poly(coeffs: &[u64], target: &Field) -> Option<FieldElement> {
    let d = coeffs.len() - 1;
    if target.degree() % d != 0 {
        return None;
    }
    let h = UniPoly::new(
        target,
        coeffs.iter().map(|&c| target.from_u64(c)).collect(),
    );
    let mut rng = rng_for(0xe3bd);
    let mut r = root_of_split(&h, &mut rng);
    let mut best = r.clone();
    let p = target.characteristic() as u128;
    for _ in 1..d {
        r = r.frobenius(p);
        if r < best {
            best = r.clone();
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    #[test]
    fn roots_x2_minus_2_over_f7() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let f = UniPoly::from_i64(&f7, &[-2, 0, 1]);
        let roots = roots_in(&f, &f7).unwrap();
        let vals: Vec<u64> = roots.iter().map(|r| r.coeffs()[0]).collect();
        assert_eq!(vals, vec![3, 4]);
    }

    #[test]
    fn roots_x2_plus_1_over_f7_and_f49() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let f49 = FieldSpec::new(7, 2, None).unwrap();
        let f = UniPoly::from_i64(&f7, &[1, 0, 1]);
        assert!(roots_in(&f, &f7).unwrap().is_empty());
        let roots = roots_in(&f, &f49).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(r.square().add(&f49.one()).is_zero());
        }
    }

    #[test]
    fn triple_root_multiplicity() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        let c = f5.from_u64(2);
        let lin = UniPoly::from_i64(&f5, &[-2, 1]);
        let f = lin.mul(&lin).mul(&lin);
        let roots = roots_in(&f, &f5).unwrap();
        assert_eq!(roots, vec![c.clone(), c.clone(), c]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert!(roots_in(&UniPoly::zero(&f5), &f5).is_err());
    }

    #[test]
    fn roots_match_brute_force_small_fields() {
        // oracle: exhaustive evaluation over every field of order <= 64 here
        let mut rng = rng_for(0xbf);
        for (p, k) in [(2u64, 1usize), (2, 3), (2, 4), (5, 1), (5, 2), (7, 1), (13, 1), (2, 6)] {
            let field = FieldSpec::new(p, k, None).unwrap();
            for _ in 0..20 {
                let f = random_poly(&field, 6, &mut rng);
                if f.is_zero() {
                    continue;
                }
                let mut expected: Vec<_> = Vec::new();
                for e in field.elements() {
                    // multiplicity by repeated division
                    let mut g = f.clone();
                    let lin = UniPoly::new(&field, vec![e.neg(), field.one()]);
                    while !g.is_zero() && g.eval(&e).is_zero() {
                        let (q, r) = g.div_rem(&lin);
                        assert!(r.is_zero());
                        expected.push(e.clone());
                        g = q;
                    }
                }
                expected.sort();
                assert_eq!(roots_in(&f, &field).unwrap(), expected, "f = {}", f);
            }
        }
    }

    #[test]
    fn roots_in_extension_match_brute_force() {
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        let f16 = FieldSpec::new(2, 4, None).unwrap();
        let mut rng = rng_for(0xcafe);
        for _ in 0..20 {
            let f = random_poly(&f2, 7, &mut rng);
            if f.is_zero() {
                continue;
            }
            let fe = f.embed(&f16).unwrap();
            let mut expected: Vec<_> = Vec::new();
            for e in f16.elements() {
                let mut g = fe.clone();
                let lin = UniPoly::new(&f16, vec![e.neg(), f16.one()]);
                while !g.is_zero() && g.eval(&e).is_zero() {
                    let (q, r) = g.div_rem(&lin);
                    assert!(r.is_zero());
                    expected.push(e.clone());
                    g = q;
                }
            }
            expected.sort();
            assert_eq!(roots_in(&f, &f16).unwrap(), expected, "f = {}", f);
        }
    }

    #[test]
    fn factor_recombines() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let mut rng = rng_for(0x77);
        for _ in 0..30 {
            let f = random_poly(&f7, 8, &mut rng);
            if f.degree().map_or(true, |d| d == 0) {
                continue;
            }
            let factors = factor(&f).unwrap();
            let mut prod = UniPoly::constant(f.leading());
            for (g, m) in &factors {
                assert!(g.leading().is_one());
                for _ in 0..*m {
                    prod = prod.mul(g);
                }
            }
            assert_eq!(prod, f);
        }
    }
}
