//! 3x3 matrices over a finite field.

use alloc::vec::Vec;

use super::field::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3 {
    field: Field,
    /// Row-major entries.
    pub m: [[FieldElement; 3]; 3],
}

impl Mat3 {
    pub fn new(field: &Field, m: [[FieldElement; 3]; 3]) -> Mat3 {
        Mat3 {
            field: field.clone(),
            m,
        }
    }

    pub fn identity(field: &Field) -> Mat3 {
        let mut m = Mat3::zero(field);
        for i in 0..3 {
            m.m[i][i] = field.one();
        }
        m
    }

    pub fn zero(field: &Field) -> Mat3 {
        let z = || field.zero();
        Mat3 {
            field: field.clone(),
            m: [
                [z(), z(), z()],
                [z(), z(), z()],
                [z(), z(), z()],
            ],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let mut out = Mat3::zero(&self.field);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = self.field.zero();
                for k in 0..3 {
                    acc = acc.add(&self.m[i][k].mul(&other.m[k][j]));
                }
                out.m[i][j] = acc;
            }
        }
        out
    }

    pub fn apply(&self, v: &[FieldElement; 3]) -> [FieldElement; 3] {
        let mut out = [self.field.zero(), self.field.zero(), self.field.zero()];
        for i in 0..3 {
            let mut acc = self.field.zero();
            for k in 0..3 {
                acc = acc.add(&self.m[i][k].mul(&v[k]));
            }
            out[i] = acc;
        }
        out
    }

    pub fn scale(&self, s: &FieldElement) -> Mat3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] = out.m[i][j].mul(s);
            }
        }
        out
    }

    pub fn det(&self) -> FieldElement {
        let m = &self.m;
        let t1 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
        let t2 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
        let t3 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
        t1.sub(&t2).add(&t3)
    }

    /// Inverse via the adjugate; panics if singular.
    pub fn inv(&self) -> Mat3 {
        let d = self.det();
        assert!(!d.is_zero(), "matrix is singular");
        let dinv = d.inv();
        let m = &self.m;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0].mul(&m[r1][c1]).sub(&m[r0][c1].mul(&m[r1][c0]))
        };
        let mut out = Mat3::zero(&self.field);
        // adjugate transpose indices
        let rows = [(1usize, 2usize), (0, 2), (0, 1)];
        let cols = [(1usize, 2usize), (0, 2), (0, 1)];
        for i in 0..3 {
            for j in 0..3 {
                let (r0, r1) = rows[j];
                let (c0, c1) = cols[i];
                let mut v = cof(r0, r1, c0, c1);
                if (i + j) % 2 == 1 {
                    v = v.neg();
                }
                out.m[i][j] = v.mul(&dinv);
            }
        }
        out
    }

    /// Entry-wise image under the fixed embedding into `target`.
    pub fn embed(&self, target: &Field) -> crate::error::Result<Mat3> {
        let mut out = Mat3::zero(target);
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] = super::field::embed(&self.m[i][j], target)?;
            }
        }
        Ok(out)
    }

    pub fn entries(&self) -> Vec<FieldElement> {
        self.m.iter().flat_map(|r| r.iter().cloned()).collect()
    }
}
