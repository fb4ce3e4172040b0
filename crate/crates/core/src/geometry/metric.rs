use alloc::vec::Vec;

use num_complex::Complex64;

use crate::hermitian::HermitianForm;
use crate::point::{vec_inner, vec_norm_sqr, Point};

#[allow(unused_imports)]
use num_traits::Float;
/// Complex Hessian of `psi` at `z`:
/// `H(z) = (1-|z|^2)^{-3} ((1-|z|^2) I + 2 z z*)`.
///
/// The rank-one part is the outer product `(z z*)_{jk} = z_j conj(z_k)`,
/// so `H z = lambda_r z` and the quadratic form `v* H v` expands to
/// `(1-|z|^2)^{-3} ((1-|z|^2)|v|^2 + 2 |<z,v>|^2)`.
pub fn hessian(z: &Point) -> HermitianForm {
    let n = z.dim();
    let t = z.norm_sqr();
    let one_minus = 1.0 - t;
    let c = one_minus.powi(-3);
    let coords = z.coords();
    let mut entries = alloc::vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for k in 0..n {
            let mut e = 2.0 * coords[j] * coords[k].conj();
            if j == k {
                e += Complex64::new(one_minus, 0.0);
            }
            entries[j * n + k] = e * c;
        }
    }
    HermitianForm::from_entries(n, entries)
}

/// Closed-form inverse `H(z)^{-1} = (1-|z|^2)^2 (I - 2/(1+|z|^2) z z*)`.
pub fn hessian_inverse(z: &Point) -> HermitianForm {
    let n = z.dim();
    let t = z.norm_sqr();
    let one_minus = 1.0 - t;
    let scale = one_minus * one_minus;
    let rank_one = -2.0 / (1.0 + t);
    let coords = z.coords();
    let mut entries = alloc::vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for k in 0..n {
            let mut e = rank_one * coords[j] * coords[k].conj();
            if j == k {
                e += Complex64::new(1.0, 0.0);
            }
            entries[j * n + k] = e * scale;
        }
    }
    HermitianForm::from_entries(n, entries)
}

/// Closed-form determinant `det H(z) = (1+|z|^2) / (1-|z|^2)^{2n+1}`.
///
/// Debug builds cross-check the closed form against an LU determinant of
/// the assembled matrix.
pub fn hessian_det(z: &Point) -> f64 {
    let t = z.norm_sqr();
    let closed = (1.0 + t) / (1.0 - t).powi(2 * z.dim() as i32 + 1);
    #[cfg(debug_assertions)]
    {
        let numeric = hessian(z).det_lu();
        debug_assert!(
            (numeric - closed).abs() <= 1e-10 * closed.abs(),
            "LU determinant {numeric} disagrees with closed form {closed}"
        );
    }
    closed
}

/// Spectral decomposition `H(z) = lambda_r P + lambda_t Q` with `P` the
/// orthogonal projector onto the complex line through `z` and `Q = I - P`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Eigenvalue `(1+|z|^2)/(1-|z|^2)^3` on the line through `z`.
    pub radial_eigenvalue: f64,
    /// Eigenvalue `1/(1-|z|^2)^2` on the orthogonal complement.
    pub tangential_eigenvalue: f64,
    pub radial_projector: HermitianForm,
    pub tangential_projector: HermitianForm,
}

/// At `z = 0` the projector onto the (undefined) radial line is taken to
/// be zero, so `Q = I` and both eigenvalues equal `1`.
pub fn hessian_spectral(z: &Point) -> SpectralDecomposition {
    let n = z.dim();
    let t = z.norm_sqr();
    let radial_eigenvalue = (1.0 + t) / (1.0 - t).powi(3);
    let tangential_eigenvalue = (1.0 - t).powi(-2);
    let radial_projector = if t == 0.0 {
        HermitianForm::zero(n)
    } else {
        let coords = z.coords();
        let mut entries = alloc::vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for k in 0..n {
                entries[j * n + k] = coords[j] * coords[k].conj() / t;
            }
        }
        HermitianForm::from_entries(n, entries)
    };
    let tangential_projector = HermitianForm::identity(n).sub(&radial_projector);
    SpectralDecomposition {
        radial_eigenvalue,
        tangential_eigenvalue,
        radial_projector,
        tangential_projector,
    }
}

/// Quadratic form of the metric at raw coordinates `x` applied to the
/// tangent vector `v`, without assembling the matrix. Returns `None` when
/// `x` has left the open ball.
pub fn metric_form_raw(x: &[Complex64], v: &[Complex64]) -> Option<f64> {
    let t = vec_norm_sqr(x);
    if t >= 1.0 {
        return None;
    }
    let one_minus = 1.0 - t;
    let cross = vec_inner(x, v).norm_sqr();
    Some((one_minus * vec_norm_sqr(v) + 2.0 * cross) / (one_minus * one_minus * one_minus))
}

/// Orthogonal projection of `w` onto the complex line through `z`
/// (zero when `z = 0`).
pub fn radial_projection(z: &Point, w: &Point) -> Vec<Complex64> {
    let t = z.norm_sqr();
    if t == 0.0 {
        return alloc::vec![Complex64::new(0.0, 0.0); z.dim()];
    }
    let factor = w.inner(z) / t;
    z.coords().iter().map(|c| factor * c).collect()
}
