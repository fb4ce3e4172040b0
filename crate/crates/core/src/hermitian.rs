use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// A dense `n x n` complex Hermitian matrix, stored row-major.
///
/// The constructor checks Hermitian symmetry to `1e-12` (relative to the
/// largest entry) and positive definiteness via a Cholesky factorisation.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm {
    n: usize,
    entries: Vec<Complex64>,
}

impl HermitianForm {
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        let m = Self { n, entries };
        let scale = m.max_abs().max(1.0);
        let residual = m.hermitian_residual();
        if residual > 1e-12 * scale {
            return Err(Error::NonHermitian { residual });
        }
        if !m.is_positive_definite() {
            return Err(Error::InvalidConfig("matrix is not positive definite"));
        }
        Ok(m)
    }

    /// Builds without the symmetry/definiteness checks. Used for exact
    /// closed forms and for projectors (which are only semi-definite).
    pub(crate) fn from_entries(n: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = alloc::vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            entries[j * n + j] = Complex64::new(1.0, 0.0);
        }
        Self { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        Self { n, entries: alloc::vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation of `M` from its conjugate transpose.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.n {
            for k in j..self.n {
                let d = (self.get(j, k) - self.get(k, j).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|j| {
                (0..self.n)
                    .map(|k| self.get(j, k) * v[k])
                    .sum::<Complex64>()
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = alloc::vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for k in 0..n {
                entries[j * n + k] = (0..n).map(|m| self.get(j, m) * other.get(m, k)).sum();
            }
        }
        Self { n, entries }
    }

    /// The real quadratic form `v* M v`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> f64 {
        debug_assert_eq!(v.len(), self.n);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.n {
            for k in 0..self.n {
                acc += v[j].conj() * self.get(j, k) * v[k];
            }
        }
        acc.re
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a + b)
            .collect();
        Self { n: self.n, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a - b)
            .collect();
        Self { n: self.n, entries }
    }

    pub fn scale(&self, factor: f64) -> Self {
        let entries = self.entries.iter().map(|a| a * factor).collect();
        Self { n: self.n, entries }
    }

    /// Determinant by LU factorisation with partial pivoting.
    ///
    /// For a Hermitian matrix the result is real; the imaginary part of the
    /// accumulated product is discarded after a sanity check.
    pub fn det_lu(&self) -> f64 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[col * n + col].norm();
            for row in col + 1..n {
                let mag = a[row * n + col].norm();
                if mag > best {
                    best = mag;
                    pivot = row;
                }
            }
            if best == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot * n + k);
                }
                det = -det;
            }
            let diag = a[col * n + col];
            det *= diag;
            for row in col + 1..n {
                let factor = a[row * n + col] / diag;
                for k in col..n {
                    let sub = factor * a[col * n + k];
                    a[row * n + k] -= sub;
                }
            }
        }
        debug_assert!(det.im.abs() <= 1e-8 * det.norm().max(1.0));
        det.re
    }

    /// Cholesky-based positive definiteness test.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.n;
        let mut l = alloc::vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for k in 0..=j {
                let mut sum = self.get(j, k);
                for m in 0..k {
                    sum -= l[j * n + m] * l[k * n + m].conj();
                }
                if j == k {
                    if sum.re <= 0.0 {
                        return false;
                    }
                    l[j * n + j] = Complex64::new(sum.re.sqrt(), 0.0);
                } else {
                    l[j * n + k] = sum / l[k * n + k];
                }
            }
        }
        true
    }
}
