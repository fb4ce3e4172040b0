use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

#[allow(unused_imports)]
use num_traits::Float;
/// Points with `|z| >= 1 - BOUNDARY_EPSILON` are rejected: the weight
/// `exp(-psi)` underflows long before that, and every quadrature node must
/// stay strictly interior.
pub const BOUNDARY_EPSILON: f64 = 1e-12;

/// A point of the open unit ball of `C^n`.
///
/// The coordinate vector is validated on construction: `n >= 1` and
/// `|z| < 1 - BOUNDARY_EPSILON`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<Complex64>,
}

impl Point {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidConfig("point dimension must be at least 1"));
        }
        let norm = coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm < 1.0 - BOUNDARY_EPSILON) {
            return Err(Error::InvalidPoint { norm });
        }
        Ok(Self { coords })
    }

    /// Builds a point from interleaved real coordinates `[re1, im1, re2, im2, ..]`.
    pub fn from_real_coords(reals: &[f64]) -> Result<Self> {
        if reals.len() % 2 != 0 {
            return Err(Error::InvalidConfig("real coordinate list must have even length"));
        }
        let coords = reals
            .chunks_exact(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        Self::new(coords)
    }

    /// The origin of `C^n`.
    pub fn origin(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            coords: alloc::vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// Internal constructor for coordinates already known to be interior.
    pub(crate) fn new_unchecked(coords: Vec<Complex64>) -> Self {
        debug_assert!(coords.iter().map(|c| c.norm_sqr()).sum::<f64>() < 1.0);
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Squared Euclidean norm `|z|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `1 - |z|^2`, the basic boundary-distance quantity.
    pub fn one_minus_norm_sqr(&self) -> f64 {
        1.0 - self.norm_sqr()
    }

    /// Hermitian inner product `<z, w> = sum_j z_j conj(w_j)`.
    pub fn inner(&self, other: &Point) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    /// Euclidean distance `|z - w|`.
    pub fn dist(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Coordinate difference `z - w` as a raw vector.
    pub fn sub(&self, other: &Point) -> Vec<Complex64> {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a - b)
            .collect()
    }
}

/// The weight exponent `psi(z) = 1/(1 - |z|^2)`.
pub fn psi(z: &Point) -> f64 {
    1.0 / z.one_minus_norm_sqr()
}

/// Squared Euclidean norm of a raw coordinate vector.
pub(crate) fn vec_norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// Hermitian inner product of raw coordinate vectors.
pub(crate) fn vec_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_boundary_points() {
        let err = Point::new(alloc::vec![Complex64::new(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidPoint { .. }));
        assert!(Point::new(alloc::vec![Complex64::new(1.0 - 1e-13, 0.0)]).is_err());
        assert!(Point::new(alloc::vec![Complex64::new(1.0 - 1e-9, 0.0)]).is_ok());
    }

    #[test]
    fn rejects_empty_coordinates() {
        assert!(Point::new(Vec::new()).is_err());
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(&Point::origin(2)), 1.0);
        let z = Point::from_real_coords(&[0.5, 0.0, 0.0, 0.0]).unwrap();
        assert!((psi(&z) - 4.0 / 3.0).abs() < 1e-15);
        // |z|^2 = 0.99 -> psi = 100.
        let z = Point::from_real_coords(&[0.99f64.sqrt(), 0.0]).unwrap();
        assert!((psi(&z) - 100.0).abs() < 1e-10);
    }
}
