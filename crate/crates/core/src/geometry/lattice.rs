use alloc::vec::Vec;

use rand::Rng;

use super::distance::{sigma_lower_exceeds, sigma_upper_quick, sigma_estimate};
use crate::point::Point;
use crate::quadrature::sampler::{seeded_rng, unit_direction};
use crate::{Error, Result};

#[allow(unused_imports)]
use num_traits::Float;
/// Default covering slack: greedy maximal separation covers at the
/// separation radius in exact arithmetic; the certified lower bounds are
/// loose by up to ~1.45x in mixed radial/tangential directions and the
/// candidate cloud has finite resolution, so verification uses
/// `radius * (1 + slack)`.
pub const COVERING_SLACK: f64 = 0.75;

/// Parameters of the greedy lattice construction.
#[derive(Debug, Clone)]
pub struct LatticeConfig {
    pub n: usize,
    /// Certified pairwise separation and nominal covering radius.
    pub radius: f64,
    /// Candidate count in the innermost shell; outer shells scale like
    /// `(1-|z|^2)^{-(2n+1)}`.
    pub density_per_shell: usize,
    pub shells: usize,
    /// Candidates are drawn with `|z|` below this cap.
    pub max_center_norm: f64,
    pub seed: u64,
    /// Probe count for the empirical overlap bound (0 skips it).
    pub overlap_probes: usize,
}

impl LatticeConfig {
    /// Desk-scale defaults keeping the center count in the thousands.
    pub fn default_for_dim(n: usize, seed: u64) -> Self {
        let (radius, shells, density, max_norm) = match n {
            1 => (0.125, 24, 40, 0.95),
            2 => (0.3, 12, 24, 0.8),
            _ => (0.4, 8, 16, 0.65),
        };
        LatticeConfig {
            n,
            radius,
            density_per_shell: density,
            shells,
            max_center_norm: max_norm,
            seed,
            overlap_probes: 400,
        }
    }
}

/// A family of certified `radius`-separated centers with an empirically
/// measured overlap count at radius `4 * radius`.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub centers: Vec<Point>,
    pub radius: f64,
    pub overlap_bound: usize,
}

struct Cached {
    point: Point,
    rt: f64,
}

fn rt(p: &Point) -> f64 {
    core::f64::consts::SQRT_2 / p.one_minus_norm_sqr().sqrt()
}

/// Greedy maximal separated subset of a shell-stratified candidate cloud.
///
/// A candidate is kept only when its separation from every kept center is
/// certified (`sigma_lower >= radius`); ambiguous candidates are dropped,
/// which preserves the separation invariant and is absorbed by the
/// covering slack. The conformal lower bound saturates at 1/2, so radii
/// at 0.45 and beyond can never be certified between tangentially
/// separated pairs.
pub fn build_lattice(cfg: &LatticeConfig) -> Result<Lattice> {
    if cfg.n == 0 || cfg.shells == 0 || cfg.density_per_shell == 0 {
        return Err(Error::InvalidConfig("lattice shells and density must be positive"));
    }
    if !(cfg.radius > 0.0) || !(cfg.max_center_norm > 0.0 && cfg.max_center_norm < 1.0) {
        return Err(Error::InvalidConfig("lattice radius and extent must be positive"));
    }
    if cfg.radius >= 0.45 {
        return Err(Error::SeparationUncertain);
    }
    let mut rng = seeded_rng(cfg.seed, 0);
    let n = cfg.n;
    let exponent = 2 * n as i32 + 1;
    let width = cfg.max_center_norm / cfg.shells as f64;
    let inner_mid = 0.5 * width;
    let inner_weight = (1.0 - inner_mid * inner_mid).powi(-exponent);

    let mut kept: Vec<Cached> = Vec::new();
    let origin = Point::origin(n);
    kept.push(Cached { rt: rt(&origin), point: origin });

    for shell in 0..cfg.shells {
        let lo = shell as f64 * width;
        let hi = lo + width;
        let mid = 0.5 * (lo + hi);
        let weight = (1.0 - mid * mid).powi(-exponent) / inner_weight;
        let count = ((cfg.density_per_shell as f64) * weight).ceil() as usize;
        let lo_vol = lo.powi(2 * n as i32);
        let hi_vol = hi.powi(2 * n as i32);
        for _ in 0..count {
            let u: f64 = rng.gen();
            let radius_sample = (lo_vol + u * (hi_vol - lo_vol)).powf(1.0 / (2.0 * n as f64));
            let coords: Vec<_> = unit_direction(&mut rng, n)
                .into_iter()
                .map(|c| c * radius_sample)
                .collect();
            let candidate = Point::new_unchecked(coords);
            let cand_rt = rt(&candidate);
            let mut separated = true;
            for c in kept.iter().rev() {
                // Radial lower bound alone settles most pairs.
                if (c.rt - cand_rt).abs() >= cfg.radius {
                    continue;
                }
                if !sigma_lower_exceeds(&candidate, &c.point, cfg.radius) {
                    separated = false;
                    break;
                }
            }
            if separated {
                kept.push(Cached { rt: cand_rt, point: candidate });
            }
        }
    }

    let centers: Vec<Point> = kept.iter().map(|c| c.point.clone()).collect();
    let overlap_bound = if cfg.overlap_probes > 0 {
        measure_overlap(&kept, cfg)?
    } else {
        0
    };
    Ok(Lattice { centers, radius: cfg.radius, overlap_bound })
}

/// Empirical overlap count: the maximum, over probe points, of the number
/// of centers whose `4r`-ball certifiably contains the probe.
fn measure_overlap(kept: &[Cached], cfg: &LatticeConfig) -> Result<usize> {
    let mut rng = seeded_rng(cfg.seed, 1);
    let big = 4.0 * cfg.radius;
    let mut worst = 0usize;
    for _ in 0..cfg.overlap_probes {
        let u: f64 = rng.gen();
        let radius_sample = cfg.max_center_norm * u.powf(1.0 / (2.0 * cfg.n as f64));
        let coords: Vec<_> = unit_direction(&mut rng, cfg.n)
            .into_iter()
            .map(|c| c * radius_sample)
            .collect();
        let probe = Point::new_unchecked(coords);
        let probe_rt = rt(&probe);
        let mut count = 0usize;
        for c in kept {
            if (c.rt - probe_rt).abs() >= big {
                continue;
            }
            if sigma_upper_quick(&c.point, &probe)? < big {
                count += 1;
            }
        }
        worst = worst.max(count);
    }
    Ok(worst)
}

/// Number of probe points not certifiably covered by any center at radius
/// `lattice.radius * (1 + slack)`. Probes failing the cheap upper bound
/// get one descent attempt against their nearest centers.
pub fn covering_violations(
    lattice: &Lattice,
    probes: &[Point],
    slack: f64,
    budget: usize,
) -> Result<usize> {
    let target = lattice.radius * (1.0 + slack);
    let cached: Vec<Cached> = lattice
        .centers
        .iter()
        .map(|p| Cached { rt: rt(p), point: p.clone() })
        .collect();
    let mut violations = 0usize;
    for probe in probes {
        let probe_rt = rt(probe);
        let mut covered = false;
        for c in &cached {
            if (c.rt - probe_rt).abs() >= target {
                continue;
            }
            if sigma_upper_quick(&c.point, probe)? < target {
                covered = true;
                break;
            }
        }
        if !covered && budget > 0 {
            // Descent against the few Euclidean-nearest centers.
            let mut nearest: Vec<(f64, usize)> = cached
                .iter()
                .enumerate()
                .map(|(i, c)| (c.point.dist(probe), i))
                .collect();
            nearest.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for &(_, idx) in nearest.iter().take(3) {
                if sigma_estimate(&cached[idx].point, probe, budget)?.upper < target {
                    covered = true;
                    break;
                }
            }
        }
        if !covered {
            violations += 1;
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::distance::{ball_membership, sigma_lower, Membership};
    use crate::quadrature::sampler::ball_shell_point;

    fn small_config(seed: u64) -> LatticeConfig {
        LatticeConfig {
            n: 1,
            radius: 0.125,
            density_per_shell: 24,
            shells: 12,
            max_center_norm: 0.8,
            seed,
            overlap_probes: 120,
        }
    }

    #[test]
    fn separation_is_certified() {
        let lat = build_lattice(&small_config(3)).unwrap();
        assert!(lat.centers.len() > 30, "only {} centers", lat.centers.len());
        // Spot-check pairwise certificates.
        let mut rng = seeded_rng(4, 0);
        for _ in 0..300 {
            let i = rng.gen_range(0..lat.centers.len());
            let j = rng.gen_range(0..lat.centers.len());
            if i != j {
                assert!(sigma_lower(&lat.centers[i], &lat.centers[j]) >= lat.radius);
            }
        }
    }

    #[test]
    fn quarter_balls_are_disjoint() {
        // Certified separation >= r makes the r/4-balls disjoint by the
        // triangle inequality; verify on sampled points.
        let lat = build_lattice(&small_config(5)).unwrap();
        let mut rng = seeded_rng(6, 0);
        let quarter = lat.radius / 4.0;
        for _ in 0..100 {
            let i = rng.gen_range(0..lat.centers.len());
            let j = rng.gen_range(0..lat.centers.len());
            if i == j {
                continue;
            }
            // A point certifiably inside one quarter-ball must not be
            // certifiably inside another.
            let probe = Point::new_unchecked(ball_shell_point(&mut rng, 1, 0.0, 0.5, 0.9));
            let in_i = ball_membership(&lat.centers[i], &probe, quarter, 0).unwrap();
            let in_j = ball_membership(&lat.centers[j], &probe, quarter, 0).unwrap();
            assert!(
                !(in_i == Membership::Inside && in_j == Membership::Inside),
                "probe inside two quarter-balls"
            );
        }
    }

    #[test]
    fn covering_holds_with_slack() {
        let lat = build_lattice(&small_config(7)).unwrap();
        let mut rng = seeded_rng(8, 0);
        let probes: Vec<Point> = (0..400)
            .map(|_| {
                let u: f64 = rng.gen();
                let r = 0.7 * u.powf(0.5);
                Point::new_unchecked(
                    unit_direction(&mut rng, 1).into_iter().map(|c| c * r).collect(),
                )
            })
            .collect();
        let violations = covering_violations(&lat, &probes, COVERING_SLACK, 2000).unwrap();
        assert_eq!(violations, 0, "{violations} probes uncovered");
    }

    #[test]
    fn overlap_is_stable_under_reseeding() {
        // Small-radius lattice restricted to a compact part of the disk.
        let cfg = |seed| LatticeConfig {
            n: 1,
            radius: 1.0 / 80.0,
            density_per_shell: 600,
            shells: 8,
            max_center_norm: 0.5,
            seed,
            overlap_probes: 150,
        };
        let a = build_lattice(&cfg(11)).unwrap();
        let b = build_lattice(&cfg(12)).unwrap();
        assert!(a.overlap_bound > 0);
        assert!(b.overlap_bound > 0);
        let hi = a.overlap_bound.max(b.overlap_bound) as f64;
        let lo = a.overlap_bound.min(b.overlap_bound) as f64;
        assert!(hi / lo < 2.5, "overlap bounds {} vs {}", a.overlap_bound, b.overlap_bound);
        // Center counts should agree to ~10% across seeds.
        let ca = a.centers.len() as f64;
        let cb = b.centers.len() as f64;
        assert!((ca - cb).abs() / ca.max(cb) < 0.2);
    }

    #[test]
    fn oversized_radius_cannot_be_certified() {
        let mut cfg = small_config(1);
        cfg.radius = 0.5;
        assert!(matches!(build_lattice(&cfg), Err(Error::SeparationUncertain)));
    }
}
