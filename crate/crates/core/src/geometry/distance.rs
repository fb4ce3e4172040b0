use num_complex::Complex64;

use super::curves::{chain_length, curve_length, refine_path, Polyline};
use super::metric::radial_projection;
use crate::point::Point;
use crate::Result;

#[allow(unused_imports)]
use num_traits::Float;
/// `C0 = (1/2) min{1, 1/L}` where `L = 2` is the Lipschitz norm of
/// `1 - |z|^2`; the comparability radius entering all sandwich estimates.
pub const C0: f64 = 0.25;

/// Largest ball radius for which the product-region sandwich constants
/// `(1/10, 18)` are derived: `C0/20 = 1/80`. Larger radii are usable but
/// are flagged by [`super::regions::RegionQuery`].
pub const VALIDATED_RADIUS: f64 = C0 / 20.0;

/// Where a point sits relative to a metric ball, as far as the certified
/// bounds can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateStatus {
    Resolved,
    BudgetExhausted,
}

/// A certified two-sided enclosure of the metric distance. The distance
/// itself has no closed form; every consumer works with the interval.
#[derive(Debug, Clone, Copy)]
pub struct DistanceEstimate {
    pub lower: f64,
    pub upper: f64,
    pub status: EstimateStatus,
}

/// Certified `inf 1/(1 - |x|^2)` over every point a curve of length `m`
/// starting where `1 - |x|^2` equals `1/g^2` can reach: the rank-one part
/// of the metric forces `sqrt(2) |Delta (1-|x|^2)^{-1/2}| <= m`.
fn kappa(g: f64, m: f64) -> f64 {
    let reach = g - m / core::f64::consts::SQRT_2;
    if reach <= 0.0 {
        0.0
    } else {
        reach * reach
    }
}

/// Largest `m` with `m <= f(m)` for a continuous nonincreasing `f`; any
/// curve with excursion parameter `m*` has length at least
/// `max(m*, f(m*)) >= ` this crossing value.
fn crossing<F: Fn(f64) -> f64>(f: F) -> f64 {
    let top = f(0.0);
    if !(top > 0.0) {
        return 0.0;
    }
    let mut lo = 0.0f64;
    let mut hi = top;
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > mid {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Combined radial/Euclidean certificate anchored at one endpoint. Along
/// any curve, the pair of pointwise-dominated densities
/// `(sqrt(2) d/dt (1-|x|^2)^{-1/2}, kappa |x'|)` integrates (by the
/// vector triangle inequality) to at least
/// `sqrt(r_net^2 + kappa(m)^2 |z-w|^2)`, where `m` caps the radial
/// excursion and is itself a lower bound for the length.
fn combined_bound(anchor_g: f64, dist: f64, r_net: f64) -> f64 {
    crossing(|m| {
        let k = kappa(anchor_g, m);
        (r_net * r_net + k * k * dist * dist).sqrt()
    })
}

/// Exact-conformal certificate for `n = 1`, where the metric is the
/// isotropic `sqrt((1+|x|^2)/(1-|x|^2)^3) |dx|`: curves confined by the
/// radial excursion `m` see a conformal factor of at least
/// `sqrt(1 + u_min) ((1-|z|^2)^{-1/2} - m/sqrt(2))^3`.
fn conformal_disk_bound(anchor_g: f64, dist: f64) -> f64 {
    crossing(|m| {
        let k = kappa(anchor_g, m);
        if k <= 0.0 {
            return 0.0;
        }
        let u_min = (1.0 - 1.0 / k).max(0.0);
        (1.0 + u_min).sqrt() * k.powf(1.5) * dist
    })
}

/// Line-projected certificate for `n >= 2`, anchored at `a != 0`. With
/// `p = <x, a/|a|>` the coordinate along the complex line through the
/// anchor, the rank-one term dominates the signed density
/// `sqrt(2) (1-|x|^2)^{-3/2} (|p| |p'| - |q| |x'|)` and the conformal term
/// dominates `kappa |x'|`; a curve of length below `r` keeps
/// `|x - a| < r/kappa(r)`, so the pair integrates (vector triangle
/// inequality) to at least
/// `sqrt(A(r)^2 + kappa(r)^2 |z-w|^2)` with
/// `A(r) = sqrt(2) kappa^{3/2} (|a| - r/kappa) |Delta p| -
///  sqrt(2) beta^3 r^2 / kappa^2`
/// (`beta` bounds `(1-|x|^2)^{-1/2}` from above on the excursion). In
/// mixed line/tangential directions both rates add in quadrature, which
/// matches the metric asymptotically.
fn projected_bound(anchor: &Point, other: &Point) -> f64 {
    let t = anchor.norm_sqr();
    if t == 0.0 {
        return 0.0;
    }
    let norm = t.sqrt();
    let g = anchor.one_minus_norm_sqr().sqrt().recip();
    let line = other.inner(anchor) / norm;
    let delta_p = (line - Complex64::new(norm, 0.0)).norm();
    let dist = anchor.dist(other);
    if dist == 0.0 {
        return 0.0;
    }
    // sigma >= r whenever certified(r) >= r; keep the largest such r.
    let certified = |r: f64| -> f64 {
        let k = kappa(g, r);
        if k <= 0.0 {
            return 0.0;
        }
        let reach = (norm - r / k).max(0.0);
        let beta = g + r / core::f64::consts::SQRT_2;
        let correction = core::f64::consts::SQRT_2 * beta.powi(3) * r * r / (k * k);
        let line_part =
            (core::f64::consts::SQRT_2 * k.powf(1.5) * reach * delta_p - correction).max(0.0);
        let euclid_part = k * dist;
        (line_part * line_part + euclid_part * euclid_part).sqrt()
    };
    let mut lo = 0.0f64;
    let mut hi = certified(0.0);
    if !(hi > 0.0) {
        return 0.0;
    }
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if certified(mid) >= mid {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Certified lower bound on the metric distance: the maximum of several
/// one-sided estimates, each obtained by discarding part of the metric
/// along an arbitrary connecting curve:
///
/// * escape bound `(1/2) min{s, C0/10}` with `s = |z-w|/(1-|z|^2)`;
/// * conformal bound `s/(1+2s)`: a curve either stays in the Euclidean
///   ball `B(z, |z-w|)`, where `1-|x|^2 <= (1-|z|^2)(1+2s)` by the
///   Lipschitz bound, or exits it — either way the conformal part of the
///   integrand alone yields this length;
/// * radial bound `sqrt(2) |(1-|w|^2)^{-1/2} - (1-|z|^2)^{-1/2}|`: the
///   rank-one part dominates the derivative of `sqrt(2) (1-|x|^2)^{-1/2}`;
/// * the excursion-limited bounds above ([`combined_bound`],
///   [`conformal_disk_bound`], [`projected_bound`]).
///
/// Anchored bounds are evaluated from both endpoints.
pub fn sigma_lower(z: &Point, w: &Point) -> f64 {
    sigma_lower_tiered(z, w, f64::INFINITY)
}

/// True when the certified lower bound reaches `threshold`; evaluates the
/// cheap certificates first and stops as soon as one suffices.
pub fn sigma_lower_exceeds(z: &Point, w: &Point, threshold: f64) -> bool {
    sigma_lower_tiered(z, w, threshold) >= threshold
}

fn sigma_lower_tiered(z: &Point, w: &Point, stop_at: f64) -> f64 {
    let dist = z.dist(w);
    if dist == 0.0 {
        return 0.0;
    }
    let mut best = 0.0f64;
    let g = |p: &Point| p.one_minus_norm_sqr().sqrt().recip();
    let gz = g(z);
    let gw = g(w);
    let r_net = core::f64::consts::SQRT_2 * (gz - gw).abs();
    best = best.max(r_net);
    for base in [z, w] {
        let s = dist / base.one_minus_norm_sqr();
        best = best.max(0.5 * s.min(C0 / 10.0));
        best = best.max(s / (1.0 + 2.0 * s));
    }
    if best >= stop_at {
        return best;
    }
    for anchor_g in [gz, gw] {
        best = best.max(combined_bound(anchor_g, dist, r_net));
        if best >= stop_at {
            return best;
        }
    }
    if z.dim() == 1 {
        for anchor_g in [gz, gw] {
            best = best.max(conformal_disk_bound(anchor_g, dist));
            if best >= stop_at {
                return best;
            }
        }
    } else {
        best = best.max(projected_bound(z, w));
        if best >= stop_at {
            return best;
        }
        best = best.max(projected_bound(w, z));
    }
    best
}

/// Cheap certified upper bound: the shorter of the straight segment and
/// the two-leg path through the radial projection of `w` onto the line
/// through `z`.
pub fn sigma_upper_quick(z: &Point, w: &Point) -> Result<f64> {
    let straight = curve_length(&Polyline::segment(z.clone(), w.clone())?)?;
    let mut best = straight;
    if z.norm_sqr() > 0.0 {
        let pivot = radial_projection(z, w);
        let two_leg = chain_length(&[z.coords().to_vec(), pivot, w.coords().to_vec()])?;
        best = best.min(two_leg);
    }
    Ok(best)
}

/// Certified enclosure of the metric distance.
///
/// The upper bound is the minimum over a candidate family: the straight
/// segment, the two-leg path through the radial projection, and (when
/// `budget > 0`) a polyline shortened by cyclic coordinate descent on its
/// interior nodes. `budget` caps the number of curve-length evaluations
/// spent by the descent; `BudgetExhausted` means the descent was still
/// improving when it ran out (the bounds remain valid).
pub fn sigma_estimate(z: &Point, w: &Point, budget: usize) -> Result<DistanceEstimate> {
    if z.dist(w) == 0.0 {
        return Ok(DistanceEstimate { lower: 0.0, upper: 0.0, status: EstimateStatus::Resolved });
    }
    let lower = sigma_lower(z, w);
    let mut upper = sigma_upper_quick(z, w)?;
    let mut status = EstimateStatus::Resolved;
    if budget > 0 {
        let refined = refine_path(z, w, budget, 8, 64)?;
        upper = upper.min(refined.length);
        if !refined.converged {
            status = EstimateStatus::BudgetExhausted;
        }
    }
    // The bounds enclose the true distance in exact arithmetic; quadrature
    // rounding can cross them only at machine scale.
    let lower = lower.min(upper);
    Ok(DistanceEstimate { lower, upper, status })
}

/// Three-valued membership of `w` in the metric ball `B(z, r)`, sound by
/// construction: `Inside` requires a certified upper bound below `r`,
/// `Outside` a certified lower bound at or above `r`.
pub fn ball_membership(z: &Point, w: &Point, r: f64, budget: usize) -> Result<Membership> {
    if sigma_lower_exceeds(z, w, r) {
        return Ok(Membership::Outside);
    }
    if sigma_upper_quick(z, w)? < r {
        return Ok(Membership::Inside);
    }
    if budget > 0 {
        let est = sigma_estimate(z, w, budget)?;
        if est.lower >= r {
            return Ok(Membership::Outside);
        }
        if est.upper < r {
            return Ok(Membership::Inside);
        }
    }
    Ok(Membership::Unknown)
}
