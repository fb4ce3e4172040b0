use alloc::vec::Vec;

use num_complex::Complex64;

use super::metric::metric_form_raw;
use crate::point::{vec_norm_sqr, Point};
use crate::quadrature::gauss::gauss_legendre_16;
use crate::{Error, Result};

#[allow(unused_imports)]
use num_traits::Float;
/// A piecewise-linear curve in the ball, at least two nodes.
#[derive(Debug, Clone)]
pub struct Polyline {
    nodes: Vec<Point>,
}

impl Polyline {
    pub fn new(nodes: Vec<Point>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidConfig("polyline needs at least two nodes"));
        }
        let n = nodes[0].dim();
        if nodes.iter().any(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: 0 });
        }
        Ok(Self { nodes })
    }

    pub fn segment(a: Point, b: Point) -> Result<Self> {
        Self::new(alloc::vec![a, b])
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }
}

/// Length of one straight segment under the Hessian metric, by 16-point
/// Gauss-Legendre quadrature. The integrand is analytic on the open
/// segment, so a fixed order suffices at these scales.
fn segment_length_raw(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    let velocity: Vec<Complex64> = b.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
    if vec_norm_sqr(&velocity) == 0.0 {
        return Ok(0.0);
    }
    let rule = gauss_legendre_16();
    let mut acc = 0.0;
    let mut x = alloc::vec![Complex64::new(0.0, 0.0); a.len()];
    for i in 0..16 {
        let tau = 0.5 * (rule.nodes[i] + 1.0);
        for (k, slot) in x.iter_mut().enumerate() {
            *slot = a[k] + (b[k] - a[k]) * tau;
        }
        // Segments between interior points stay interior by convexity; a
        // node escaping the ball signals corrupted inputs.
        let form = metric_form_raw(&x, &velocity).ok_or(Error::QuadratureDivergence)?;
        acc += rule.weights[i] * form.sqrt();
    }
    Ok(acc * 0.5)
}

/// Length of a polyline under the Hessian metric.
pub fn curve_length(gamma: &Polyline) -> Result<f64> {
    let mut total = 0.0;
    for pair in gamma.nodes.windows(2) {
        total += segment_length_raw(pair[0].coords(), pair[1].coords())?;
    }
    Ok(total)
}

/// Length of a chain of raw coordinate vectors (used by the descent).
pub(crate) fn chain_length(chain: &[Vec<Complex64>]) -> Result<f64> {
    let mut total = 0.0;
    for pair in chain.windows(2) {
        total += segment_length_raw(&pair[0], &pair[1])?;
    }
    Ok(total)
}

/// Outcome of the interior-node descent.
pub(crate) struct RefinedPath {
    pub length: f64,
    pub converged: bool,
}

/// Shortens the path from `a` to `b` by cyclic coordinate descent on the
/// interior nodes of a polyline, with backtracking step halving. Starts
/// from `initial_interior` nodes on the straight chord, doubling the node
/// count (up to `max_interior`) each time a stage converges while budget
/// remains. `budget` caps the number of chain-length evaluations;
/// `converged` is false when the budget cut the schedule short.
pub(crate) fn refine_path(
    a: &Point,
    b: &Point,
    budget: usize,
    initial_interior: usize,
    max_interior: usize,
) -> Result<RefinedPath> {
    let n = a.dim();
    let mut interior = initial_interior.max(1);
    let mut chain = straight_chain(a, b, interior);
    let mut best = chain_length(&chain)?;
    let mut evaluations = 1usize;

    loop {
        let scale = |x: &[Complex64]| 0.25 * (1.0 - vec_norm_sqr(x)).max(1e-6);
        let mut step = 1.0f64;
        let tol = 1e-4;
        // Descent cycles at the current resolution.
        loop {
            if evaluations >= budget {
                return Ok(RefinedPath { length: best, converged: false });
            }
            let mut improved = false;
            for node in 1..chain.len() - 1 {
                for coord in 0..2 * n {
                    let mut local_step = step * scale(&chain[node]);
                    while local_step > tol * scale(&chain[node]) && evaluations < budget {
                        let mut gained = false;
                        for sign in [1.0f64, -1.0] {
                            let original = chain[node][coord / 2];
                            let delta = sign * local_step;
                            let moved = if coord % 2 == 0 {
                                original + Complex64::new(delta, 0.0)
                            } else {
                                original + Complex64::new(0.0, delta)
                            };
                            chain[node][coord / 2] = moved;
                            if vec_norm_sqr(&chain[node]) < 1.0 {
                                let len = chain_length(&chain)?;
                                evaluations += 1;
                                if len < best {
                                    best = len;
                                    gained = true;
                                    improved = true;
                                    break;
                                }
                            }
                            chain[node][coord / 2] = original;
                        }
                        if gained {
                            break;
                        }
                        local_step *= 0.5;
                    }
                }
            }
            if !improved {
                break;
            }
            step = (step * 0.7).max(0.05);
        }
        if interior >= max_interior {
            return Ok(RefinedPath { length: best, converged: true });
        }
        if evaluations >= budget {
            return Ok(RefinedPath { length: best, converged: false });
        }
        // Refine resolution: double the interior nodes by midpoint insertion.
        interior *= 2;
        chain = subdivide_chain(&chain);
        best = best.min(chain_length(&chain)?);
        evaluations += 1;
    }
}

fn straight_chain(a: &Point, b: &Point, interior: usize) -> Vec<Vec<Complex64>> {
    let steps = interior + 1;
    (0..=steps)
        .map(|i| {
            let tau = i as f64 / steps as f64;
            a.coords()
                .iter()
                .zip(b.coords().iter())
                .map(|(x, y)| x + (y - x) * tau)
                .collect()
        })
        .collect()
}

fn subdivide_chain(chain: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut out = Vec::with_capacity(chain.len() * 2 - 1);
    for i in 0..chain.len() - 1 {
        out.push(chain[i].clone());
        let mid: Vec<Complex64> = chain[i]
            .iter()
            .zip(chain[i + 1].iter())
            .map(|(x, y)| (x + y) * 0.5)
            .collect();
        out.push(mid);
    }
    out.push(chain[chain.len() - 1].clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::psi;

    #[test]
    fn constant_curve_has_zero_length() {
        let z = Point::from_real_coords(&[0.3, 0.1]).unwrap();
        let gamma = Polyline::segment(z.clone(), z).unwrap();
        assert_eq!(curve_length(&gamma).unwrap(), 0.0);
    }

    /// Oracle: adaptive Simpson of the radial integrand
    /// `sqrt((1+t^2)/(1-t^2)^3)` on `[0, 1/2]`; frozen 30-digit value
    /// `0.603255211461784958`.
    #[test]
    fn radial_segment_matches_1d_quadrature() {
        let a = Point::origin(1);
        let b = Point::from_real_coords(&[0.5, 0.0]).unwrap();
        let gamma = Polyline::segment(a, b).unwrap();
        let got = curve_length(&gamma).unwrap();

        let f = |t: f64| ((1.0 + t * t) / (1.0 - t * t).powi(3)).sqrt();
        fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, depth: usize, whole: f64) -> f64 {
            let mid = 0.5 * (a + b);
            let rule = |x0: f64, x1: f64| {
                (x1 - x0) / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1))
            };
            let left = rule(a, mid);
            let right = rule(mid, b);
            if depth == 0 || (left + right - whole).abs() < 1e-13 {
                left + right
            } else {
                simpson(f, a, mid, depth - 1, left) + simpson(f, mid, b, depth - 1, right)
            }
        }
        let oracle = simpson(&f, 0.0, 0.5, 30, 0.0);
        assert!((got - oracle).abs() < 1e-9, "got {got}, oracle {oracle}");
        assert!((got - 0.603255211461784958).abs() < 1e-9);
    }

    #[test]
    fn length_dominates_conformal_length() {
        // Dropping the rank-one term bounds the integrand from below by
        // |gamma'| / (1 - |gamma|^2).
        let a = Point::from_real_coords(&[0.1, 0.2, -0.3, 0.0]).unwrap();
        let b = Point::from_real_coords(&[0.4, -0.1, 0.2, 0.3]).unwrap();
        let gamma = Polyline::segment(a.clone(), b.clone()).unwrap();
        let len = curve_length(&gamma).unwrap();
        // Conformal length of the same segment by dense sampling.
        let m = 20_000;
        let mut conformal = 0.0;
        let diff = b.sub(&a);
        let speed = diff.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..m {
            let tau = (i as f64 + 0.5) / m as f64;
            let x: Vec<Complex64> = a
                .coords()
                .iter()
                .zip(b.coords().iter())
                .map(|(x, y)| x + (y - x) * tau)
                .collect();
            conformal += speed / (1.0 - vec_norm_sqr(&x)) / m as f64;
        }
        assert!(len >= conformal * (1.0 - 1e-6), "{len} vs {conformal}");
    }

    #[test]
    fn refinement_never_lengthens() {
        let a = Point::from_real_coords(&[0.0, 0.0]).unwrap();
        let b = Point::from_real_coords(&[0.7, 0.2]).unwrap();
        let refined = refine_path(&a, &b, 4000, 8, 16).unwrap();
        let straight = curve_length(&Polyline::segment(a, b).unwrap()).unwrap();
        assert!(refined.length <= straight * (1.0 + 1e-12));
        let _ = psi(&Point::origin(1));
    }
}
