use super::gauss::gl16;

/// Adaptive Gauss-Legendre quadrature on `[a, b]`.
///
/// Bisects until the two-half refinement of each interval agrees with the
/// single-panel value within the local error budget. The integrands used
/// here are smooth on the open interval with rapidly decaying one-sided
/// limits, so convergence is fast.
pub fn adaptive_integral<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let rough = gl16(f, a, b);
    let scale = rough.abs().max(1e-300);
    integrate_interval(f, a, b, rough, rel_tol * scale, 0)
}

fn integrate_interval<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let mid = 0.5 * (a + b);
    let left = gl16(f, a, mid);
    let right = gl16(f, mid, b);
    let refined = left + right;
    if (refined - whole).abs() <= tol || depth >= 48 {
        return refined;
    }
    integrate_interval(f, a, mid, left, 0.5 * tol, depth + 1)
        + integrate_interval(f, mid, b, right, 0.5 * tol, depth + 1)
}
