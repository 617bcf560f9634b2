//! Prime fields `F_p` and extension fields `F_{p^k}` with exact arithmetic.
//!
//! Extension fields are quotient rings `F_p[x]/(m)` for a monic irreducible
//! modulus `m`. When no modulus is supplied, a canonical one is generated
//! deterministically (the first irreducible in counting order), so repeated
//! runs construct identical fields. Characteristic three is rejected at
//! construction.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Global seed for the randomized (but reproducible) parts of root finding.
static SEED: AtomicU64 = AtomicU64::new(0);

pub fn set_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

/// Descriptor of a finite field `F_{p^k}`, `p != 3`.
#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u64,
    degree: usize,
    /// Monic modulus, little-endian, length `degree + 1`. Empty for `degree == 1`.
    modulus: Vec<u64>,
    order: u128,
}

pub type Field = Arc<FieldSpec>;

/// An element of a [`FieldSpec`], stored as `degree` residues mod `p`
/// (little-endian in the root of the modulus).
#[derive(Debug, Clone)]
pub struct FieldElement {
    field: Field,
    c: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Low-level arithmetic on F_p[x] represented as little-endian Vec<u64>.
// Used both for extension-field arithmetic and for modulus validation.
// ---------------------------------------------------------------------------

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pdeg(v: &[u64]) -> isize {
    v.len() as isize - 1
}

pub(crate) fn scalar_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); a must be nonzero mod p
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    debug_assert_eq!(r0, 1);
    (s0.rem_euclid(p as i128)) as u64
}

fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + (x as u128) * (y as u128)) % (p as u128);
        }
    }
    let mut out: Vec<u64> = out.into_iter().map(|v| v as u64).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo monic-after-normalization `m`.
fn prem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = pdeg(m);
    assert!(dm >= 0);
    let lc_inv = scalar_inv(*m.last().unwrap(), p);
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    while pdeg(&r) >= dm {
        let shift = (pdeg(&r) - dm) as usize;
        let coef = ((*r.last().unwrap() as u128) * (lc_inv as u128) % (p as u128)) as u64;
        for (j, &mj) in m.iter().enumerate() {
            let idx = j + shift;
            let sub = (coef as u128) * (mj as u128) % (p as u128);
            r[idx] = ((r[idx] as u128 + p as u128 - sub) % (p as u128)) as u64;
        }
        trim(&mut r);
    }
    r
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut f, mut g) = (a.to_vec(), b.to_vec());
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        let r = prem(&f, &g, p);
        f = g;
        g = r;
    }
    if let Some(&lc) = f.last() {
        let inv = scalar_inv(lc, p);
        for c in f.iter_mut() {
            *c = ((*c as u128) * (inv as u128) % (p as u128)) as u64;
        }
    }
    f
}

fn pmulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    prem(&pmul(a, b, p), m, p)
}

/// `base^exp mod m` in `F_p[x]`.
fn ppowmod(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = prem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            result = pmulmod(&result, &b, m, p);
        }
        b = pmulmod(&b, &b, m, p);
        exp >>= 1;
    }
    result
}

/// `x^(p^j) mod m` by iterating the `p`-power map.
fn pfrobpow(j: usize, m: &[u64], p: u64) -> Vec<u64> {
    let mut y = vec![0u64, 1]; // x
    for _ in 0..j {
        y = ppowmod(&y, p as u128, m, p);
    }
    y
}

/// Irreducibility of a monic polynomial over `F_p` (Rabin's test).
pub(crate) fn irreducible_fp(m: &[u64], p: u64) -> bool {
    let k = pdeg(m);
    if k < 1 {
        return false;
    }
    let k = k as usize;
    if k == 1 {
        return true;
    }
    // x^(p^k) == x mod m
    let xq = pfrobpow(k, m, p);
    let x = prem(&[0, 1], m, p);
    if xq != x {
        return false;
    }
    // gcd(x^(p^(k/r)) - x, m) == 1 for every prime r | k
    let mut rem_k = k;
    let mut r = 2;
    while rem_k > 1 {
        if rem_k % r == 0 {
            let y = pfrobpow(k / r, m, p);
            let diff = psub(&y, &x, p);
            let g = pgcd(&diff, m, p);
            if pdeg(&g) != 0 {
                return false;
            }
            while rem_k % r == 0 {
                rem_k /= r;
            }
        }
        r += 1;
    }
    true
}

impl FieldSpec {
    /// Construct `F_{p^k}`. A supplied modulus must be monic irreducible of
    /// degree `k`; with none given a canonical modulus is generated.
    pub fn new(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<Field> {
        if p == 3 {
            return Err(Error::CharacteristicThree);
        }
        if !is_prime(p) || k == 0 {
            return Err(Error::ReducibleModulus);
        }
        let mut order: u128 = 1;
        for _ in 0..k {
            order = order.checked_mul(p as u128).ok_or(Error::FieldTooLarge)?;
        }
        let modulus = if k == 1 {
            Vec::new()
        } else {
            match modulus {
                Some(m) => {
                    let mut m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                    trim(&mut m);
                    if pdeg(&m) != k as isize || *m.last().unwrap() != 1 {
                        return Err(Error::ReducibleModulus);
                    }
                    if !irreducible_fp(&m, p) {
                        return Err(Error::ReducibleModulus);
                    }
                    m
                }
                None => canonical_modulus(p, k),
            }
        };
        Ok(Arc::new(FieldSpec {
            p,
            degree: k,
            modulus,
            order,
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Modulus coefficients (little-endian); empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(self: &Field) -> FieldElement {
        FieldElement {
            field: self.clone(),
            c: vec![0; self.degree],
        }
    }

    pub fn one(self: &Field) -> FieldElement {
        self.from_u64(1)
    }

    /// The constant `n mod p` as a field element.
    pub fn from_u64(self: &Field, n: u64) -> FieldElement {
        let mut c = vec![0; self.degree];
        c[0] = n % self.p;
        FieldElement {
            field: self.clone(),
            c,
        }
    }

    /// Signed constant, for small integer formulas.
    pub fn from_i64(self: &Field, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }

    /// Element from little-endian residue vector (length <= degree).
    pub fn element(self: &Field, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.degree, "coefficient vector too long");
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.p).collect();
        c.resize(self.degree, 0);
        FieldElement {
            field: self.clone(),
            c,
        }
    }

    /// Element with value index `v` (digits of `v` base `p`).
    pub fn element_by_index(self: &Field, mut v: u128) -> FieldElement {
        let mut c = vec![0u64; self.degree];
        for digit in c.iter_mut() {
            *digit = (v % self.p as u128) as u64;
            v /= self.p as u128;
        }
        assert_eq!(v, 0);
        FieldElement {
            field: self.clone(),
            c,
        }
    }

    /// All elements in value order. Callers are responsible for size bounds.
    pub fn elements(self: &Field) -> impl Iterator<Item = FieldElement> {
        let f = self.clone();
        (0..self.order).map(move |v| f.element_by_index(v))
    }

    /// Whether `sub` embeds into `self` (same `p`, degree divides).
    pub fn extends(&self, sub: &FieldSpec) -> bool {
        self.p == sub.p && self.degree % sub.degree == 0
    }

    pub(crate) fn key(&self) -> (u64, usize, Vec<u64>) {
        (self.p, self.degree, self.modulus.clone())
    }
}

/// First monic irreducible of degree `k` over `F_p` in counting order of the
/// lower-coefficient vector (e.g., `x^3 + x + 1` for `F_8`).
fn canonical_modulus(p: u64, k: usize) -> Vec<u64> {
    let mut v: u128 = 0;
    loop {
        let mut m = vec![0u64; k + 1];
        let mut t = v;
        for c in m.iter_mut().take(k) {
            *c = (t % p as u128) as u64;
            t /= p as u128;
        }
        assert_eq!(t, 0, "no irreducible polynomial found");
        m[k] = 1;
        if irreducible_fp(&m, p) {
            return m;
        }
        v += 1;
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}
impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Value order: coefficient vectors compared as base-`p` integers.
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.value_index().cmp(&other.value_index())
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// The element's index in value order: sum of `c_i p^i`.
    pub fn value_index(&self) -> u128 {
        let p = self.field.p as u128;
        let mut v: u128 = 0;
        for &c in self.c.iter().rev() {
            v = v * p + c as u128;
        }
        v
    }

    fn same_field(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        assert!(self.same_field(other), "field mismatch");
        let p = self.field.p;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement {
            field: self.field.clone(),
            c,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        assert!(self.same_field(other), "field mismatch");
        let p = self.field.p;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElement {
            field: self.field.clone(),
            c,
        }
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p;
        let c = self.c.iter().map(|&a| (p - a) % p).collect();
        FieldElement {
            field: self.field.clone(),
            c,
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        assert!(self.same_field(other), "field mismatch");
        let p = self.field.p;
        let k = self.field.degree;
        if k == 1 {
            let v = (self.c[0] as u128) * (other.c[0] as u128) % (p as u128);
            return FieldElement {
                field: self.field.clone(),
                c: vec![v as u64],
            };
        }
        let prod = pmul(&self.c, &other.c, p);
        let mut c = prem(&prod, &self.field.modulus, p);
        c.resize(k, 0);
        FieldElement {
            field: self.field.clone(),
            c,
        }
    }

    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        let p = self.field.p;
        let k = self.field.degree;
        if k == 1 {
            return FieldElement {
                field: self.field.clone(),
                c: vec![scalar_inv(self.c[0], p)],
            };
        }
        // extended Euclid in F_p[x] modulo the field modulus
        let mut r0 = self.field.modulus.clone();
        let mut r1 = self.c.clone();
        trim(&mut r1);
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // division step: r0 = q*r1 + r
            let lc_inv = scalar_inv(*r1.last().unwrap(), p);
            let mut q: Vec<u64> = vec![0; (pdeg(&r0) - pdeg(&r1) + 1).max(0) as usize];
            let mut r = r0.clone();
            while pdeg(&r) >= pdeg(&r1) {
                let shift = (pdeg(&r) - pdeg(&r1)) as usize;
                let coef = ((*r.last().unwrap() as u128) * (lc_inv as u128) % (p as u128)) as u64;
                q[shift] = (q[shift] + coef) % p;
                for (j, &mj) in r1.iter().enumerate() {
                    let sub = (coef as u128) * (mj as u128) % (p as u128);
                    r[j + shift] = ((r[j + shift] as u128 + p as u128 - sub) % (p as u128)) as u64;
                }
                trim(&mut r);
            }
            trim(&mut q);
            let s = psub(&s0, &pmul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd = constant (element invertible)
        debug_assert_eq!(pdeg(&r0), 0);
        let norm = scalar_inv(r0[0], p);
        let mut c: Vec<u64> = s0
            .iter()
            .map(|&x| ((x as u128) * (norm as u128) % (p as u128)) as u64)
            .collect();
        c.resize(k, 0);
        FieldElement {
            field: self.field.clone(),
            c,
        }
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }

    pub fn pow(&self, mut e: u128) -> FieldElement {
        let mut result = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            b = b.square();
            e >>= 1;
        }
        result
    }

    /// `e^q` for `q` the order of a subfield; the Frobenius over that subfield.
    pub fn frobenius(&self, base_order: u128) -> FieldElement {
        debug_assert!(is_subfield_order(&self.field, base_order));
        self.pow(base_order)
    }
}

/// Whether `q` is the order of a subfield of `f`.
pub fn is_subfield_order(f: &FieldSpec, q: u128) -> bool {
    let p = f.p as u128;
    let mut d = 0usize;
    let mut v = 1u128;
    while v < q {
        v = match v.checked_mul(p) {
            Some(v) => v,
            None => return false,
        };
        d += 1;
    }
    v == q && d >= 1 && f.degree % d == 0
}

// ---------------------------------------------------------------------------
// Embeddings. A fixed embedding per (sub, super) pair: the minimal root (in
// value order) of the subfield modulus inside the target, cached globally.
// ---------------------------------------------------------------------------

type FieldKey = (u64, usize, Vec<u64>);

static EMBED_CACHE: spin::Mutex<BTreeMap<(FieldKey, FieldKey), Vec<u64>>> =
    spin::Mutex::new(BTreeMap::new());

/// Image of `e` under the fixed embedding of its field into `target`.
pub fn embed(e: &FieldElement, target: &Field) -> Result<FieldElement> {
    let sub = e.field();
    if **sub == **target {
        return Ok(FieldElement {
            field: target.clone(),
            c: e.c.clone(),
        });
    }
    if !target.extends(sub) {
        return Err(Error::NoEmbedding);
    }
    if sub.degree == 1 {
        return Ok(target.from_u64(e.c[0]));
    }
    let key = (sub.key(), target.key());
    let root_coeffs = {
        let cached = EMBED_CACHE.lock().get(&key).cloned();
        match cached {
            Some(c) => c,
            None => {
                let root = crate::algebra::factor::min_root_of_fp_poly(&sub.modulus, target)
                    .ok_or(Error::NoEmbedding)?;
                EMBED_CACHE.lock().insert(key, root.c.clone());
                root.c
            }
        }
    };
    let rho = FieldElement {
        field: target.clone(),
        c: root_coeffs,
    };
    // evaluate sum c_i rho^i by Horner
    let mut acc = target.zero();
    for &ci in e.c.iter().rev() {
        acc = acc.mul(&rho).add(&target.from_u64(ci));
    }
    Ok(acc)
}

impl fmt::Display for FieldElement {
    /// Decimal for prime fields, comma-separated coefficients otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            write!(f, "{}", self.c[0])
        } else {
            for (i, c) in self.c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", c)?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}", self.p)?;
        if self.degree > 1 {
            write!(f, ",deg={},mod=", self.degree)?;
            for (i, c) in self.modulus.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", c)?;
            }
        }
        Ok(())
    }
}
