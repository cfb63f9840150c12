//! Exact arithmetic for stabilizer amplitudes.
//!
//! Every amplitude arising from stabilizer diagrams lies in the ring
//! Z[ω] with ω = exp(iπ/4), scaled by a power of 1/√2. [`RingElem`]
//! stores the four integer coefficients of 1, ω, ω², ω³ (reduced with
//! ω⁴ = −1); the √2 exponent is tracked once per matrix, not per entry.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::phase::Phase;

/// An element `a0 + a1·ω + a2·ω² + a3·ω³` of Z[ω], ω = e^{iπ/4}.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingElem {
    coeffs: [BigInt; 4],
}

impl RingElem {
    pub fn zero() -> RingElem {
        RingElem::default()
    }

    pub fn one() -> RingElem {
        RingElem::from_coeffs([1, 0, 0, 0])
    }

    pub fn from_coeffs(c: [i64; 4]) -> RingElem {
        RingElem {
            coeffs: c.map(BigInt::from),
        }
    }

    /// ω^k for any integer k, using ω⁴ = −1.
    pub fn omega_pow(k: i64) -> RingElem {
        let k = k.rem_euclid(8) as usize;
        let mut c = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        if k < 4 {
            c[k] = BigInt::one();
        } else {
            c[k - 4] = -BigInt::one();
        }
        RingElem { coeffs: c }
    }

    /// e^{iφ} for a phase that is a multiple of π/2, i.e. ω^{2k}.
    pub fn from_phase(p: Phase) -> RingElem {
        RingElem::omega_pow(2 * p.k() as i64)
    }

    /// √2 = ω − ω³.
    pub fn sqrt2() -> RingElem {
        RingElem::from_coeffs([0, 1, 0, -1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Complex conjugate: ω ↦ ω⁻¹ = −ω³.
    pub fn conj(&self) -> RingElem {
        RingElem {
            coeffs: [
                self.coeffs[0].clone(),
                -self.coeffs[3].clone(),
                -self.coeffs[2].clone(),
                -self.coeffs[1].clone(),
            ],
        }
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        let mut c = self.coeffs.clone();
        for (x, y) in c.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
        RingElem { coeffs: c }
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        let mut c = self.coeffs.clone();
        for (x, y) in c.iter_mut().zip(&rhs.coeffs) {
            *x -= y;
        }
        RingElem { coeffs: c }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            coeffs: self.coeffs.clone().map(|c| -c),
        }
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        let mut c = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for i in 0..4 {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &rhs.coeffs[j];
                let k = i + j;
                if k < 4 {
                    c[k] += prod;
                } else {
                    c[k - 4] -= prod;
                }
            }
        }
        RingElem { coeffs: c }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.coeffs[0], self.coeffs[1], self.coeffs[2], self.coeffs[3]
        )
    }
}

/// A dense `2^m × 2^n` matrix over [`RingElem`] with a single global
/// divisor `√2^k`. Row indices encode output qubits big-endian by
/// boundary index, columns likewise for inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    /// Global divisor exponent: the matrix denotes `entries / √2^k`.
    sqrt2_exp: i64,
    entries: Vec<RingElem>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            sqrt2_exp: 0,
            entries: vec![RingElem::zero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(dim, dim);
        for i in 0..dim {
            *m.entry_mut(i, i) = RingElem::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        sqrt2_exp: i64,
        mut f: impl FnMut(usize, usize) -> RingElem,
    ) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(rows, cols);
        m.sqrt2_exp = sqrt2_exp;
        for r in 0..rows {
            for c in 0..cols {
                *m.entry_mut(r, c) = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn sqrt2_exp(&self) -> i64 {
        self.sqrt2_exp
    }

    pub fn entry(&self, r: usize, c: usize) -> &RingElem {
        &self.entries[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut RingElem {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set_sqrt2_exp(&mut self, k: i64) {
        self.sqrt2_exp = k;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Matrix product; √2 exponents add.
    pub fn matmul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        out.sqrt2_exp = self.sqrt2_exp + rhs.sqrt2_exp;
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.entry(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    *out.entry_mut(r, c) += &(a * b);
                }
            }
        }
        out
    }

    /// Kronecker product; √2 exponents add.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        out.sqrt2_exp = self.sqrt2_exp + rhs.sqrt2_exp;
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.entry(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        let b = rhs.entry(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        *out.entry_mut(r1 * rhs.rows + r2, c1 * rhs.cols + c2) = a * b;
                    }
                }
            }
        }
        out
    }

    /// Rewrites the matrix to use divisor `√2^k` without changing its
    /// value. Requires `k >= self.sqrt2_exp`; the entries are scaled by
    /// `√2^(k − self.sqrt2_exp)`.
    pub fn with_sqrt2_exp(&self, k: i64) -> ExactMatrix {
        assert!(k >= self.sqrt2_exp, "cannot lower the divisor exactly");
        let diff = k - self.sqrt2_exp;
        let mut scale = RingElem::one();
        let s2 = RingElem::sqrt2();
        for _ in 0..diff {
            scale = &scale * &s2;
        }
        let mut out = self.clone();
        out.sqrt2_exp = k;
        for e in &mut out.entries {
            *e = &*e * &scale;
        }
        out
    }

    /// Exact equality as complex matrices: both sides are brought to a
    /// common √2 divisor and compared entrywise.
    pub fn value_eq(&self, other: &ExactMatrix) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let k = self.sqrt2_exp.max(other.sqrt2_exp);
        self.with_sqrt2_exp(k).entries == other.with_sqrt2_exp(k).entries
    }

    /// One row per line, entries tab-separated as
    /// `(<a0>,<a1>,<a2>,<a3>)/sqrt2^<k>`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    out.push('\t');
                }
                out.push_str(&format!("{}/sqrt2^{}", self.entry(r, c), self.sqrt2_exp));
            }
            out.push('\n');
        }
        out
    }
}

/// True iff the matrices are equal up to a nonzero complex scalar.
///
/// Both all-zero counts as equal; otherwise the first (row-major)
/// nonzero entry of `m1` is used for cross-multiplication. The √2
/// divisors do not matter here since they only contribute a positive
/// real factor.
pub fn scalar_equal(m1: &ExactMatrix, m2: &ExactMatrix) -> bool {
    assert_eq!(
        (m1.rows, m1.cols),
        (m2.rows, m2.cols),
        "scalar_equal shape mismatch"
    );
    let pivot = m1.entries.iter().position(|e| !e.is_zero());
    let Some(i0) = pivot else {
        return m2.is_zero();
    };
    if m2.entries[i0].is_zero() {
        return false;
    }
    let a = &m1.entries[i0];
    let b = &m2.entries[i0];
    for j in 0..m1.entries.len() {
        if (a * &m2.entries[j]) != (b * &m1.entries[j]) {
            return false;
        }
    }
    true
}
