use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;

use super::distance::{ball_membership, Membership, VALIDATED_RADIUS};
use crate::point::{vec_inner, vec_norm_sqr, Point, BOUNDARY_EPSILON};
use crate::quadrature::sampler::{disk_point, real_ball_point, unit_direction};
use crate::{Error, Result};

/// Safety margin applied when the sandwich constants `(1/10, 18)` act as
/// test oracles; absorbs float slack in the strict inequalities.
pub const INCLUSION_MARGIN: f64 = 1.05;

/// A `(center, radius)` query. Radii above [`VALIDATED_RADIUS`] are legal
/// but outside the regime where the sandwich constants are derived;
/// callers surface that as a warning.
#[derive(Debug, Clone)]
pub struct RegionQuery {
    pub center: Point,
    pub radius: f64,
}

impl RegionQuery {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidConfig("region radius must be positive"));
        }
        Ok(Self { center, radius })
    }

    pub fn beyond_validated_radius(&self) -> bool {
        self.radius > VALIDATED_RADIUS
    }
}

/// The anisotropic product region `D(z, r)`: points `w` with
/// `|z - P_z w| < r (1-|z|^2)^{3/2}` and `|Q_z w| < r (1-|z|^2)`,
/// where `P_z` projects onto the complex line through `z`.
///
/// At `z = 0` the projector convention `P_0 = 0` degenerates the region
/// to the Euclidean ball of radius `r`.
#[derive(Debug, Clone)]
pub struct DRegion {
    center: Point,
    radial_semi_axis: f64,
    tangential_semi_axis: f64,
}

impl DRegion {
    pub fn new(center: &Point, scale: f64) -> Self {
        let one_minus = center.one_minus_norm_sqr();
        DRegion {
            center: center.clone(),
            radial_semi_axis: scale * one_minus.powf(1.5),
            tangential_semi_axis: scale * one_minus,
        }
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radial_semi_axis(&self) -> f64 {
        self.radial_semi_axis
    }

    pub fn tangential_semi_axis(&self) -> f64 {
        self.tangential_semi_axis
    }

    pub fn contains(&self, w: &Point) -> bool {
        self.contains_raw(w.coords())
    }

    pub(crate) fn contains_raw(&self, coords: &[Complex64]) -> bool {
        let t = self.center.norm_sqr();
        if t == 0.0 {
            return vec_norm_sqr(coords).sqrt() < self.tangential_semi_axis;
        }
        let h = vec_inner(coords, self.center.coords());
        let factor = h / t;
        let radial_offset = (Complex64::new(1.0, 0.0) - factor).norm() * t.sqrt();
        if radial_offset >= self.radial_semi_axis {
            return false;
        }
        // Off-line component formed explicitly: the norm-difference form
        // cancels catastrophically when w sits on the line through z.
        let tangential_sqr: f64 = coords
            .iter()
            .zip(self.center.coords().iter())
            .map(|(w, z)| (w - factor * z).norm_sqr())
            .sum();
        tangential_sqr.sqrt() < self.tangential_semi_axis
    }

    /// Lebesgue volume: a 2-real-dimensional disk times a
    /// `(2n-2)`-dimensional ball (a single `2n`-ball at the origin).
    pub fn volume(&self) -> f64 {
        let n = self.center.dim();
        if self.center.norm_sqr() == 0.0 {
            return real_ball_volume(2 * n, self.tangential_semi_axis);
        }
        core::f64::consts::PI
            * self.radial_semi_axis
            * self.radial_semi_axis
            * real_ball_volume(2 * n - 2, self.tangential_semi_axis)
    }

    /// Uniform sample of the product region, as raw coordinates (the
    /// region may spill outside the unit ball near the boundary).
    pub fn sample_raw(&self, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
        let n = self.center.dim();
        let t = self.center.norm_sqr();
        if t == 0.0 {
            return real_ball_point(rng, 2 * n, self.tangential_semi_axis);
        }
        let zeta = disk_point(rng, self.radial_semi_axis);
        let inv_norm = t.sqrt().recip();
        let mut coords: Vec<Complex64> = self
            .center
            .coords()
            .iter()
            .map(|c| c + zeta * c * inv_norm)
            .collect();
        if n > 1 {
            let tangential = tangential_ball_point(rng, &self.center, self.tangential_semi_axis);
            for (c, v) in coords.iter_mut().zip(tangential.iter()) {
                *c += v;
            }
        }
        coords
    }
}

/// Uniform point of the `(2n-2)`-ball inside the orthogonal complement of
/// the line through `z`.
fn tangential_ball_point(rng: &mut ChaCha8Rng, z: &Point, radius: f64) -> Vec<Complex64> {
    let n = z.dim();
    let t = z.norm_sqr();
    loop {
        let g = unit_direction(rng, n);
        let overlap = vec_inner(&g, z.coords()) / t;
        let mut v: Vec<Complex64> = g
            .iter()
            .zip(z.coords().iter())
            .map(|(gj, zj)| gj - overlap * zj)
            .collect();
        let norm_sqr = vec_norm_sqr(&v);
        if norm_sqr > 1e-200 {
            let d = 2 * n - 2;
            let r = radius * rng.gen_range(0.0..1.0f64).powf(1.0 / d as f64);
            let scale = r / norm_sqr.sqrt();
            for c in v.iter_mut() {
                *c *= scale;
            }
            return v;
        }
    }
}

use rand::Rng;

/// Volume of the real `d`-ball of radius `r`.
pub fn real_ball_volume(d: usize, r: f64) -> f64 {
    if d == 0 {
        return 1.0;
    }
    let half = 0.5 * d as f64;
    (half * core::f64::consts::PI.ln() + d as f64 * r.ln() - libm::lgamma(half + 1.0)).exp()
}

/// Membership in the product region `D(z, r)`.
pub fn in_d_region(z: &Point, w: &Point, r: f64) -> bool {
    DRegion::new(z, r).contains(w)
}

/// A sampling region certified to contain the metric ball `B(z, r)`.
///
/// The certified distance bounds give two a-priori localisations of the
/// ball: the conformal bound confines it to the Euclidean ball of radius
/// `b = r (1-|z|^2)/(1-2r)`, and the radial bound confines `|w|^2` to an
/// interval of width about `sqrt(2) r (1-|z|^2)^{3/2}`. Away from the
/// origin the two combine into a thin box-times-ball product; this keeps
/// Monte Carlo hit rates workable all the way to `|z| = 0.99`.
#[derive(Debug, Clone)]
pub(crate) struct BallBound {
    center: Point,
    /// Euclidean confinement radius `b`.
    euclid: f64,
    /// Window for `|w|^2` from the radial bound.
    w2_window: (f64, f64),
    /// Window for the real radial coordinate (box mode only).
    re_window: Option<(f64, f64)>,
}

impl BallBound {
    pub fn new(z: &Point, r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 0.3) {
            return Err(Error::InvalidConfig("ball-volume radius must lie in (0, 0.3)"));
        }
        let t = z.norm_sqr();
        let one_minus = 1.0 - t;
        let euclid = r * one_minus / (1.0 - 2.0 * r);
        let g = one_minus.sqrt().recip();
        let lo_w2 = (1.0 - (g - r / core::f64::consts::SQRT_2).powi(-2)).max(0.0);
        let hi_w2 = 1.0 - (g + r / core::f64::consts::SQRT_2).powi(-2);
        let re_window = if t >= 0.25 {
            let sqrt_t = t.sqrt();
            let lo = ((lo_w2 - t - 2.0 * euclid * euclid) / (2.0 * sqrt_t)).max(-euclid);
            let hi = ((hi_w2 - t) / (2.0 * sqrt_t)).min(euclid);
            if lo < hi {
                Some((lo, hi))
            } else {
                None
            }
        } else {
            None
        };
        Ok(BallBound { center: z.clone(), euclid, w2_window: (lo_w2, hi_w2), re_window })
    }

    pub fn volume(&self) -> f64 {
        let n = self.center.dim();
        match self.re_window {
            Some((lo, hi)) => {
                (hi - lo) * 2.0 * self.euclid * real_ball_volume(2 * n - 2, self.euclid)
            }
            None => real_ball_volume(2 * n, self.euclid),
        }
    }

    pub fn sample_raw(&self, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
        let n = self.center.dim();
        match self.re_window {
            Some((lo, hi)) => {
                let t = self.center.norm_sqr();
                let inv_norm = t.sqrt().recip();
                let re = rng.gen_range(lo..hi);
                let im = rng.gen_range(-self.euclid..self.euclid);
                let zeta = Complex64::new(re, im);
                let mut coords: Vec<Complex64> = self
                    .center
                    .coords()
                    .iter()
                    .map(|c| c + zeta * c * inv_norm)
                    .collect();
                if n > 1 {
                    let v = tangential_ball_point(rng, &self.center, self.euclid);
                    for (c, tv) in coords.iter_mut().zip(v.iter()) {
                        *c += tv;
                    }
                }
                coords
            }
            None => {
                let offset = real_ball_point(rng, 2 * n, self.euclid);
                self.center
                    .coords()
                    .iter()
                    .zip(offset.iter())
                    .map(|(c, o)| c + o)
                    .collect()
            }
        }
    }

    /// Quick certified rejections before any curve quadrature runs.
    pub fn certainly_outside(&self, coords: &[Complex64]) -> bool {
        let norm_sqr = vec_norm_sqr(coords);
        if norm_sqr.sqrt() >= 1.0 - BOUNDARY_EPSILON {
            return true;
        }
        norm_sqr < self.w2_window.0 || norm_sqr > self.w2_window.1
    }
}

/// Monte Carlo ball volume with its provenance.
#[derive(Debug, Clone, Copy)]
pub struct VolumeEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub unknown_fraction: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Monte Carlo volume of the metric ball `B(z, r)`.
///
/// Samples a certified bounding region and classifies each draw with the
/// certified membership test. Draws the bounds cannot classify are
/// escalated once with a descent budget; whatever remains is counted at
/// weight 1/2 and widens the error bar. More than 10% unresolved draws
/// aborts the estimate.
pub fn ball_volume(z: &Point, r: f64, samples: usize, seed: u64) -> Result<VolumeEstimate> {
    if samples < 100 {
        return Err(Error::InvalidConfig("ball volume needs at least 100 samples"));
    }
    let bound = BallBound::new(z, r)?;
    let mut rng = crate::quadrature::sampler::seeded_rng(seed, 0);
    let mut inside = 0usize;
    let mut unknown = 0usize;
    for _ in 0..samples {
        let coords = bound.sample_raw(&mut rng);
        if bound.certainly_outside(&coords) {
            continue;
        }
        let w = Point::new_unchecked(coords);
        match ball_membership(z, &w, r, 0)? {
            Membership::Inside => inside += 1,
            Membership::Outside => {}
            Membership::Unknown => match ball_membership(z, &w, r, 1200)? {
                Membership::Inside => inside += 1,
                Membership::Outside => {}
                Membership::Unknown => unknown += 1,
            },
        }
    }
    let nf = samples as f64;
    let unknown_fraction = unknown as f64 / nf;
    if unknown_fraction > 0.10 {
        return Err(Error::InsufficientResolution { unresolved_fraction: unknown_fraction });
    }
    let volume = bound.volume();
    let p_eff = (inside as f64 + 0.5 * unknown as f64) / nf;
    let estimate = volume * p_eff;
    let statistical = volume * (p_eff * (1.0 - p_eff) / nf).sqrt();
    let systematic = volume * 0.5 * unknown_fraction;
    let stderr = (statistical * statistical + systematic * systematic).sqrt();
    Ok(VolumeEstimate { estimate, stderr, unknown_fraction, samples, seed })
}

/// Sup of `||z|^2 - |w|^2| / |z - w|` over sampled pairs plus a
/// deterministic boundary-ray family; always at most 2, and the ray pairs
/// `((1-e) e_1, (1-2e) e_1)` push it to `2 - 3e`.
pub fn lipschitz_norm_probe(n: usize, samples: usize, seed: u64) -> f64 {
    let mut rng = crate::quadrature::sampler::seeded_rng(seed, 0);
    let mut sup = 0.0f64;
    for _ in 0..samples {
        let a = crate::quadrature::sampler::ball_shell_point(&mut rng, n, 0.0, 1.0, 0.999);
        let b = crate::quadrature::sampler::ball_shell_point(&mut rng, n, 0.0, 1.0, 0.999);
        let dist_sqr: f64 = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum();
        if dist_sqr > 0.0 {
            let ratio = (vec_norm_sqr(&a) - vec_norm_sqr(&b)).abs() / dist_sqr.sqrt();
            sup = sup.max(ratio);
        }
    }
    for eps in [0.1, 0.05, 0.02, 0.01, 0.008] {
        let mut a = alloc::vec![Complex64::new(0.0, 0.0); n];
        let mut b = a.clone();
        a[0] = Complex64::new(1.0 - eps, 0.0);
        b[0] = Complex64::new(1.0 - 2.0 * eps, 0.0);
        let ratio = (vec_norm_sqr(&a) - vec_norm_sqr(&b)).abs() / eps;
        sup = sup.max(ratio);
    }
    sup
}
