//! Measures on the ball, the test-function averaged transform, ball-ratio
//! statistics, and trend-based Carleson / vanishing-Carleson verdicts.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::funcspace::{log_test_weight, MonomialFunction, TestFunction};
use crate::geometry::{
    ball_membership, ball_volume, BallBound, DRegion, Lattice, Membership, VALIDATED_RADIUS,
};
use crate::point::{psi, vec_norm_sqr, Point, BOUNDARY_EPSILON};
use crate::quadrature::sampler::{seeded_rng, unit_direction};
use crate::quadrature::{
    integrate_ball, integrate_in_region, IntegralResult, IntegrationConfig, Method,
};
use crate::{Error, Result};

/// Named density families; every member is finite at interior points.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityKind {
    Constant(f64),
    /// `(1 - |w|^2)^exponent`.
    BoundaryPower { exponent: f64 },
    /// `exp(-|w - center_norm * e_1|^2 / (2 width^2))`.
    GaussianBump { center_norm: f64, width: f64 },
}

impl DensityKind {
    pub fn eval(&self, w: &Point) -> f64 {
        match self {
            DensityKind::Constant(c) => *c,
            DensityKind::BoundaryPower { exponent } => w.one_minus_norm_sqr().powf(*exponent),
            DensityKind::GaussianBump { center_norm, width } => {
                let mut dist_sqr = 0.0;
                for (j, c) in w.coords().iter().enumerate() {
                    let target = if j == 0 {
                        Complex64::new(*center_norm, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    dist_sqr += (c - target).norm_sqr();
                }
                (-dist_sqr / (2.0 * width * width)).exp()
            }
        }
    }
}

/// A positive Borel measure: the Lebesgue volume, a density against it,
/// or a finite atomic list.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    LebesgueVolume,
    Density(DensityKind),
    Atomic(Vec<(Point, f64)>),
}

impl MeasureSpec {
    pub fn atomic(atoms: Vec<(Point, f64)>) -> Result<Self> {
        if atoms.iter().any(|(_, m)| !(*m > 0.0)) {
            return Err(Error::InvalidConfig("atomic masses must be positive"));
        }
        Ok(MeasureSpec::Atomic(atoms))
    }

    fn density_at(&self, w: &Point) -> f64 {
        match self {
            MeasureSpec::LebesgueVolume => 1.0,
            MeasureSpec::Density(d) => d.eval(w),
            MeasureSpec::Atomic(_) => 0.0,
        }
    }
}

/// Region argument of [`measure_of_region`].
#[derive(Debug, Clone)]
pub enum Region {
    /// Metric ball `B(center, radius)`.
    HessianBall { center: Point, radius: f64 },
    /// Product region `D(center, scale)`.
    Product { center: Point, scale: f64 },
}

/// Measure of a metric ball or product region. Absolutely continuous
/// parts go through Monte Carlo over a certified bounding region with
/// three-valued membership; atomic parts are summed exactly (unresolved
/// atoms at half mass, reflected in the error bar).
pub fn measure_of_region(
    mu: &MeasureSpec,
    region: &Region,
    samples: usize,
    seed: u64,
) -> Result<IntegralResult> {
    match region {
        Region::Product { center, scale } => {
            let d_region = DRegion::new(center, *scale);
            match mu {
                MeasureSpec::Atomic(atoms) => {
                    let mass: f64 = atoms
                        .iter()
                        .filter(|(p, _)| d_region.contains(p))
                        .map(|(_, m)| m)
                        .sum();
                    Ok(IntegralResult { value: mass, stderr: 0.0, method: Method::RadialProduct, seed })
                }
                _ => {
                    let mut rng = seeded_rng(seed, 0);
                    let mut sum = 0.0;
                    let mut sum_sq = 0.0;
                    for _ in 0..samples {
                        let coords = d_region.sample_raw(&mut rng);
                        let v = if vec_norm_sqr(&coords).sqrt() < 1.0 - BOUNDARY_EPSILON {
                            mu.density_at(&Point::new_unchecked(coords))
                        } else {
                            0.0
                        };
                        sum += v;
                        sum_sq += v * v;
                    }
                    let nf = samples as f64;
                    let mean = sum / nf;
                    let var = ((sum_sq / nf - mean * mean).max(0.0)) * nf / (nf - 1.0);
                    let volume = d_region.volume();
                    Ok(IntegralResult {
                        value: volume * mean,
                        stderr: volume * (var / nf).sqrt(),
                        method: Method::MonteCarlo,
                        seed,
                    })
                }
            }
        }
        Region::HessianBall { center, radius } => match mu {
            MeasureSpec::Atomic(atoms) => {
                let mut mass = 0.0;
                let mut uncertain = 0.0;
                for (p, m) in atoms {
                    match ball_membership(center, p, *radius, 1200)? {
                        Membership::Inside => mass += m,
                        Membership::Outside => {}
                        Membership::Unknown => {
                            mass += 0.5 * m;
                            uncertain += 0.5 * m;
                        }
                    }
                }
                Ok(IntegralResult { value: mass, stderr: uncertain, method: Method::RadialProduct, seed })
            }
            _ => {
                let stats = ball_weighted_sums(mu, center, *radius, samples, seed)?;
                Ok(IntegralResult {
                    value: stats.volume * stats.weighted_sum / samples as f64,
                    stderr: stats.weighted_err * stats.volume / samples as f64,
                    method: Method::MonteCarlo,
                    seed,
                })
            }
        },
    }
}

struct BallSums {
    volume: f64,
    /// `sum_i d_i w_i` with membership weights `w_i`.
    weighted_sum: f64,
    /// `sum_i w_i`.
    member_sum: f64,
    weighted_err: f64,
    ratio_err: f64,
}

/// One pass over the certified bounding region of `B(center, radius)`,
/// accumulating the density and plain membership sums together so ratio
/// statistics share their membership noise.
fn ball_weighted_sums(
    mu: &MeasureSpec,
    center: &Point,
    radius: f64,
    samples: usize,
    seed: u64,
) -> Result<BallSums> {
    if samples < 100 {
        return Err(Error::InvalidConfig("region sampling needs at least 100 samples"));
    }
    let bound = BallBound::new(center, radius)?;
    let mut rng = seeded_rng(seed, 0);
    let mut xs = 0.0f64;
    let mut ys = 0.0f64;
    let mut xx = 0.0f64;
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(samples / 4);
    let mut unknown = 0usize;
    for _ in 0..samples {
        let coords = bound.sample_raw(&mut rng);
        if bound.certainly_outside(&coords) {
            continue;
        }
        let w = Point::new_unchecked(coords);
        let weight = match ball_membership(center, &w, radius, 0)? {
            Membership::Inside => 1.0,
            Membership::Outside => 0.0,
            Membership::Unknown => {
                unknown += 1;
                0.5
            }
        };
        if weight > 0.0 {
            let d = mu.density_at(&w);
            let x = d * weight;
            xs += x;
            ys += weight;
            xx += x * x;
            pairs.push((x, weight));
        }
    }
    let unknown_fraction = unknown as f64 / samples as f64;
    if unknown_fraction > 0.10 {
        return Err(Error::InsufficientResolution { unresolved_fraction: unknown_fraction });
    }
    if ys == 0.0 {
        return Err(Error::InsufficientResolution { unresolved_fraction: 1.0 });
    }
    let ratio = xs / ys;
    let mut residual = 0.0f64;
    for (x, y) in &pairs {
        let r = x - ratio * y;
        residual += r * r;
    }
    // Ratio-estimator standard error plus the half-weight systematic term.
    let ratio_err = residual.sqrt() / ys + 0.5 * unknown as f64 / ys * ratio.abs().max(1.0);
    let nf = samples as f64;
    let mean = xs / nf;
    let var = ((xx / nf - mean * mean).max(0.0)) * nf / (nf - 1.0);
    let weighted_err = (var * nf).sqrt() + 0.5 * unknown as f64 * ratio.abs().max(1.0);
    Ok(BallSums {
        volume: bound.volume(),
        weighted_sum: xs,
        member_sum: ys,
        weighted_err,
        ratio_err,
    })
}

/// The averaged transform
/// `mu_hat(z) = (1/||Phi_{p,z}||_p^p) int |Phi_{p,z}|^p e^{-psi} dmu`.
///
/// The `p` inside the test function cancels against the `p`-th power, so
/// the statistic is the same function for every `p`; the exponent is kept
/// in the interface for fidelity with the transform's definition.
pub fn mu_hat(
    mu: &MeasureSpec,
    p: f64,
    z: &Point,
    cfg: &IntegrationConfig,
) -> Result<IntegralResult> {
    let t = TestFunction::new(p, z.clone())?;
    if let MeasureSpec::LebesgueVolume = mu {
        // Numerator and denominator are the same integral by definition.
        return Ok(IntegralResult { value: 1.0, stderr: 0.0, method: Method::MonteCarlo, seed: cfg.seed });
    }
    let denominator = crate::funcspace::test_norm(&t, cfg)?;
    let numerator = match mu {
        MeasureSpec::LebesgueVolume => unreachable!(),
        MeasureSpec::Density(d) => {
            let integrand = |w: &Point| log_test_weight(z, w).exp() * d.eval(w);
            if z.norm_sqr() >= 0.5 {
                integrate_in_region(&DRegion::new(z, 4.0), integrand, cfg)?
            } else {
                integrate_ball(integrand, cfg)?
            }
        }
        MeasureSpec::Atomic(atoms) => {
            let value = atoms
                .iter()
                .map(|(x, m)| m * log_test_weight(z, x).exp())
                .sum();
            IntegralResult { value, stderr: 0.0, method: Method::RadialProduct, seed: cfg.seed }
        }
    };
    if denominator.value <= 0.0 {
        return Err(Error::InsufficientResolution { unresolved_fraction: 1.0 });
    }
    let value = numerator.value / denominator.value;
    let rel_n = numerator.stderr / numerator.value.abs().max(1e-300);
    let rel_d = denominator.stderr / denominator.value;
    let stderr = value.abs() * (rel_n * rel_n + rel_d * rel_d).sqrt();
    Ok(IntegralResult { value, stderr, method: Method::MonteCarlo, seed: cfg.seed })
}

/// `mu(B(z,r)) / v(B(z,r))`, with both sides sharing one membership pass
/// so the certification noise cancels (the Lebesgue measure gives exactly
/// one). Atomic measures use the exact atom sum over a Monte Carlo
/// volume.
pub fn ball_ratio(
    mu: &MeasureSpec,
    z: &Point,
    r: f64,
    samples: usize,
    seed: u64,
) -> Result<IntegralResult> {
    match mu {
        MeasureSpec::Atomic(_) => {
            let num = measure_of_region(
                mu,
                &Region::HessianBall { center: z.clone(), radius: r },
                samples,
                seed,
            )?;
            let vol = ball_volume(z, r, samples, seed.wrapping_add(1))?;
            let value = num.value / vol.estimate;
            let rel_n = num.stderr / num.value.abs().max(1e-300);
            let rel_d = vol.stderr / vol.estimate;
            Ok(IntegralResult {
                value,
                stderr: value.abs() * (rel_n * rel_n + rel_d * rel_d).sqrt(),
                method: Method::MonteCarlo,
                seed,
            })
        }
        _ => {
            let sums = ball_weighted_sums(mu, z, r, samples, seed)?;
            Ok(IntegralResult {
                value: sums.weighted_sum / sums.member_sum,
                stderr: sums.ratio_err,
                method: Method::MonteCarlo,
                seed,
            })
        }
    }
}

/// `||f||_{p,mu}^p / ||f||_{p,psi}^p` for a nonzero polynomial. The two
/// integrals run on identical sample streams, so the Lebesgue measure
/// returns exactly one.
pub fn embedding_ratio(
    mu: &MeasureSpec,
    f: &MonomialFunction,
    p: f64,
    cfg: &IntegrationConfig,
) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::InvalidConfig("embedding ratio needs a nonzero function"));
    }
    let weighted = |w: &Point| -> f64 {
        let a = f.eval(w).norm();
        if a == 0.0 {
            0.0
        } else {
            (p * a.ln() - psi(w)).exp()
        }
    };
    let denominator = integrate_ball(weighted, cfg)?;
    if denominator.value <= 0.0 {
        return Err(Error::InsufficientResolution { unresolved_fraction: 1.0 });
    }
    let numerator = match mu {
        MeasureSpec::LebesgueVolume => denominator,
        MeasureSpec::Density(d) => integrate_ball(|w| weighted(w) * d.eval(w), cfg)?,
        MeasureSpec::Atomic(atoms) => {
            let value = atoms.iter().map(|(x, m)| m * weighted(x)).sum();
            IntegralResult { value, stderr: 0.0, method: Method::RadialProduct, seed: cfg.seed }
        }
    };
    Ok(numerator.value / denominator.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarlesonVerdict {
    Carleson,
    NotCarleson,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VanishingVerdict {
    Vanishing,
    NotVanishing,
    Inconclusive,
}

/// One boundary-trace row: the suprema over ray directions at one radius.
#[derive(Debug, Clone, Copy)]
pub struct TraceRow {
    pub z_norm: f64,
    pub mu_hat: f64,
    pub mu_hat_stderr: f64,
    pub ball_ratio: f64,
    pub ball_ratio_stderr: f64,
}

/// Outcome of [`carleson_check`]: raw boundary traces plus trend-based
/// verdicts, so callers can apply their own thresholds.
#[derive(Debug, Clone)]
pub struct CarlesonReport {
    pub sup_mu_hat: f64,
    pub sup_ball_ratio: f64,
    pub lattice_sup_ratio: Option<f64>,
    pub verdict: CarlesonVerdict,
    pub vanishing_verdict: VanishingVerdict,
    pub boundary_trace: Vec<TraceRow>,
}

/// Tuning of the verdict rules. Boundedness is undecidable from finitely
/// many samples; these are calibrated to separate power-law growth and
/// decay from flat statistics on a grid reaching `|z| = 0.99`.
#[derive(Debug, Clone)]
pub struct CarlesonConfig {
    pub p: f64,
    /// Ball radius for the ratio statistics.
    pub r: f64,
    pub samples: usize,
    pub seed: u64,
    pub boundary_grid: Vec<f64>,
    /// Ray directions (the first is always `e_1`).
    pub rays: usize,
    /// `NotCarleson` requires the statistic to exceed `cap_factor` times
    /// its innermost value with a strictly increasing tail.
    pub cap_factor: f64,
    /// `Vanishing` requires the last value below this fraction of the
    /// innermost one. At `|z| = 0.99` the suite's `(1-|z|^2)^{1/2}`
    /// density sits near 0.165, a constant near 1.
    pub vanish_threshold: f64,
    /// Minimum per-step growth counted as an increasing tail.
    pub tail_increase_factor: f64,
    /// Number of lattice centers included in the lattice supremum.
    pub lattice_centers: usize,
}

impl CarlesonConfig {
    pub fn new(p: f64, seed: u64) -> Self {
        CarlesonConfig {
            p,
            r: VALIDATED_RADIUS,
            samples: 20_000,
            seed,
            boundary_grid: alloc::vec![0.0, 0.5, 0.8, 0.9, 0.95, 0.99],
            rays: 5,
            cap_factor: 4.0,
            vanish_threshold: 0.25,
            tail_increase_factor: 1.1,
            lattice_centers: 48,
        }
    }
}

fn ray_directions(n: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>>
{
    let mut dirs = Vec::with_capacity(count);
    let mut e1 = alloc::vec![Complex64::new(0.0, 0.0); n];
    e1[0] = Complex64::new(1.0, 0.0);
    dirs.push(e1);
    let mut rng = seeded_rng(seed, 917);
    while dirs.len() < count {
        dirs.push(unit_direction(&mut rng, n));
    }
    dirs
}

/// Full Carleson diagnosis of a measure: `mu_hat` and ball ratios along
/// rays to the boundary and over lattice centers, with trend verdicts.
pub fn carleson_check(
    mu: &MeasureSpec,
    n: usize,
    cfg: &CarlesonConfig,
    lattice: Option<&Lattice>,
) -> Result<CarlesonReport> {
    if cfg.boundary_grid.len() < 3 {
        return Err(Error::InvalidConfig("boundary grid needs at least 3 radii"));
    }
    let dirs = ray_directions(n, cfg.rays.max(1), cfg.seed);
    let mut trace = Vec::with_capacity(cfg.boundary_grid.len());
    for (gi, &g) in cfg.boundary_grid.iter().enumerate() {
        if !(0.0..1.0).contains(&g) {
            return Err(Error::InvalidConfig("grid radii must lie in [0, 1)"));
        }
        let mut row = TraceRow {
            z_norm: g,
            mu_hat: 0.0,
            mu_hat_stderr: 0.0,
            ball_ratio: 0.0,
            ball_ratio_stderr: 0.0,
        };
        let ray_count = if g == 0.0 { 1 } else { dirs.len() };
        for (di, dir) in dirs.iter().take(ray_count).enumerate() {
            let coords: Vec<Complex64> = dir.iter().map(|c| c * g).collect();
            let z = Point::new_unchecked(coords);
            let stream = (gi * dirs.len() + di) as u64;
            let int_cfg = IntegrationConfig::new(n, cfg.samples, cfg.seed.wrapping_add(stream))?;
            let mh = mu_hat(mu, cfg.p, &z, &int_cfg)?;
            if mh.value > row.mu_hat {
                row.mu_hat = mh.value;
                row.mu_hat_stderr = mh.stderr;
            }
            let br = ball_ratio(mu, &z, cfg.r, cfg.samples, cfg.seed.wrapping_add(stream))?;
            if br.value > row.ball_ratio {
                row.ball_ratio = br.value;
                row.ball_ratio_stderr = br.stderr;
            }
        }
        trace.push(row);
    }

    let lattice_sup_ratio = match lattice {
        Some(lat) => {
            let step = (lat.centers.len() / cfg.lattice_centers.max(1)).max(1);
            let mut sup: f64 = 0.0;
            for (i, center) in lat.centers.iter().step_by(step).enumerate() {
                let br = ball_ratio(mu, center, cfg.r, cfg.samples, cfg.seed.wrapping_add(7000 + i as u64))?;
                sup = sup.max(br.value);
            }
            Some(sup)
        }
        None => None,
    };

    let stat: Vec<f64> = trace
        .iter()
        .map(|r| r.mu_hat.max(r.ball_ratio))
        .collect();
    let first = stat[0].max(1e-300);
    let last = stat[stat.len() - 1];
    let max = stat.iter().copied().fold(0.0f64, f64::max);
    let k = stat.len();
    let increasing_tail = k >= 3
        && stat[k - 1] > cfg.tail_increase_factor * stat[k - 2]
        && stat[k - 2] > cfg.tail_increase_factor * stat[k - 3];
    let verdict = if increasing_tail && last > cfg.cap_factor * first {
        CarlesonVerdict::NotCarleson
    } else if max <= cfg.cap_factor * first && last <= 1.5 * first {
        CarlesonVerdict::Carleson
    } else {
        CarlesonVerdict::Inconclusive
    };
    let vanishing_verdict = match verdict {
        CarlesonVerdict::NotCarleson => VanishingVerdict::NotVanishing,
        CarlesonVerdict::Inconclusive => VanishingVerdict::Inconclusive,
        CarlesonVerdict::Carleson => {
            if last < cfg.vanish_threshold * first {
                VanishingVerdict::Vanishing
            } else if last > 0.5 * first {
                VanishingVerdict::NotVanishing
            } else {
                VanishingVerdict::Inconclusive
            }
        }
    };
    Ok(CarlesonReport {
        sup_mu_hat: trace.iter().map(|r| r.mu_hat).fold(0.0, f64::max),
        sup_ball_ratio: trace.iter().map(|r| r.ball_ratio).fold(0.0, f64::max),
        lattice_sup_ratio,
        verdict,
        vanishing_verdict,
        boundary_trace: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64) -> CarlesonConfig {
        let mut c = CarlesonConfig::new(2.0, seed);
        c.samples = 8000;
        c
    }

    #[test]
    fn lebesgue_is_flat_carleson() {
        let report = carleson_check(&MeasureSpec::LebesgueVolume, 1, &cfg(3), None).unwrap();
        assert_eq!(report.verdict, CarlesonVerdict::Carleson);
        assert_eq!(report.vanishing_verdict, VanishingVerdict::NotVanishing);
        assert!((report.sup_mu_hat - 1.0).abs() < 1e-12);
        for row in &report.boundary_trace {
            assert!((row.mu_hat - 1.0).abs() < 1e-12);
            assert!((row.ball_ratio - 1.0).abs() < 0.05, "ball ratio {}", row.ball_ratio);
        }
    }

    #[test]
    fn mu_hat_of_lebesgue_is_exactly_one() {
        let z = Point::from_real_coords(&[0.9, 0.0]).unwrap();
        let int_cfg = IntegrationConfig::new(1, 2000, 5).unwrap();
        let r = mu_hat(&MeasureSpec::LebesgueVolume, 2.0, &z, &int_cfg).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.stderr, 0.0);
    }

    #[test]
    fn decaying_density_vanishes() {
        let mu = MeasureSpec::Density(DensityKind::BoundaryPower { exponent: 0.5 });
        let report = carleson_check(&mu, 1, &cfg(7), None).unwrap();
        assert_eq!(report.verdict, CarlesonVerdict::Carleson);
        assert_eq!(report.vanishing_verdict, VanishingVerdict::Vanishing);
        // Frozen oracle: mu_hat(0) = int e^{-1/u} sqrt(u) du / int e^{-1/u} du
        // = 0.851795602 in n = 1.
        let first = report.boundary_trace[0].mu_hat;
        assert!((first - 0.8518).abs() < 0.05, "mu_hat(0) = {first}");
    }

    #[test]
    fn growing_density_is_not_carleson() {
        let mu = MeasureSpec::Density(DensityKind::BoundaryPower { exponent: -0.5 });
        let report = carleson_check(&mu, 1, &cfg(9), None).unwrap();
        assert_eq!(report.verdict, CarlesonVerdict::NotCarleson);
        assert_eq!(report.vanishing_verdict, VanishingVerdict::NotVanishing);
        // Frozen oracle: mu_hat(0) = 1.19968 in n = 1.
        let first = report.boundary_trace[0].mu_hat;
        assert!((first - 1.1997).abs() < 0.07, "mu_hat(0) = {first}");
    }

    #[test]
    fn mu_hat_decay_rate_matches_density_power() {
        // mu_hat for (1-|w|^2)^a behaves like (1-|z|^2)^a; regression on
        // the boundary trace recovers the exponent.
        let mu = MeasureSpec::Density(DensityKind::BoundaryPower { exponent: 0.5 });
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for &g in &[0.8f64, 0.9, 0.95, 0.99] {
            let z = Point::from_real_coords(&[g, 0.0]).unwrap();
            let int_cfg = IntegrationConfig::new(1, 30_000, 31).unwrap();
            let v = mu_hat(&mu, 2.0, &z, &int_cfg).unwrap();
            xs.push(z.one_minus_norm_sqr().ln());
            ys.push(v.value.ln());
        }
        let n = xs.len() as f64;
        let sx: f64 = xs.iter().sum();
        let sy: f64 = ys.iter().sum();
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let sxy: f64 = xs.iter().zip(ys.iter()).map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!((slope - 0.5).abs() < 0.12, "decay slope {slope}");
    }

    #[test]
    fn atomic_measures() {
        let atom = Point::from_real_coords(&[0.3, 0.0]).unwrap();
        let mu = MeasureSpec::atomic(alloc::vec![(atom.clone(), 2.5)]).unwrap();
        // A product region holding the atom scores its mass exactly.
        let holding = measure_of_region(
            &mu,
            &Region::Product { center: atom.clone(), scale: 0.01 },
            1000,
            3,
        )
        .unwrap();
        assert_eq!(holding.value, 2.5);
        // A small ball far away excludes it.
        let far = Point::from_real_coords(&[-0.4, 0.0]).unwrap();
        let excluded = measure_of_region(
            &mu,
            &Region::HessianBall { center: far, radius: 0.01 },
            1000,
            3,
        )
        .unwrap();
        assert_eq!(excluded.value, 0.0);
        // Compactly supported atomic measures are vanishing: the averaged
        // transform dies exponentially at the boundary.
        let int_cfg = IntegrationConfig::new(1, 20_000, 5).unwrap();
        let near = mu_hat(&mu, 2.0, &Point::from_real_coords(&[0.9, 0.0]).unwrap(), &int_cfg)
            .unwrap()
            .value;
        let close = mu_hat(&mu, 2.0, &Point::from_real_coords(&[0.99, 0.0]).unwrap(), &int_cfg)
            .unwrap()
            .value;
        assert!(close < 0.01 * near.max(1e-300) || close < 1e-12, "{near} -> {close}");
    }

    #[test]
    fn rejects_nonpositive_masses() {
        let atom = Point::from_real_coords(&[0.1, 0.0]).unwrap();
        assert!(MeasureSpec::atomic(alloc::vec![(atom, 0.0)]).is_err());
    }

    #[test]
    fn embedding_ratio_basics() {
        let cfg = IntegrationConfig::new(1, 10_000, 11).unwrap();
        let f = MonomialFunction::from_terms(
            1,
            [
                (alloc::vec![0], Complex64::new(0.7, 0.0)),
                (alloc::vec![2], Complex64::new(0.0, 1.3)),
            ],
        )
        .unwrap();
        let lebesgue = embedding_ratio(&MeasureSpec::LebesgueVolume, &f, 2.0, &cfg).unwrap();
        assert_eq!(lebesgue, 1.0);
        // Homogeneity: f and 2f give the same ratio.
        let mu = MeasureSpec::Density(DensityKind::BoundaryPower { exponent: 0.5 });
        let a = embedding_ratio(&mu, &f, 2.0, &cfg).unwrap();
        let b = embedding_ratio(&mu, &f.scale(Complex64::new(2.0, 0.0)), 2.0, &cfg).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs());
    }

    #[test]
    fn density_region_measure_respects_comparability() {
        // (1-|w|^2)^a over B(z, r) is about (1-|z|^2)^a times the volume.
        let z = Point::from_real_coords(&[0.8, 0.0]).unwrap();
        let r = VALIDATED_RADIUS;
        let a = 1.0;
        let mu = MeasureSpec::Density(DensityKind::BoundaryPower { exponent: a });
        let m = measure_of_region(
            &mu,
            &Region::HessianBall { center: z.clone(), radius: r },
            20_000,
            13,
        )
        .unwrap();
        let vol = ball_volume(&z, r, 20_000, 14).unwrap();
        let predicted = z.one_minus_norm_sqr().powf(a) * vol.estimate;
        let ratio = m.value / predicted;
        assert!((0.5..=2.0).contains(&ratio), "comparability ratio {ratio}");
    }

    #[test]
    fn p_label_does_not_change_mu_hat() {
        // The p-th power cancels the 1/p in the exponent, so the transform
        // is the same function for every p.
        let mu = MeasureSpec::Density(DensityKind::BoundaryPower { exponent: 0.5 });
        let z = Point::from_real_coords(&[0.7, 0.0]).unwrap();
        let int_cfg = IntegrationConfig::new(1, 8000, 23).unwrap();
        let v1 = mu_hat(&mu, 1.0, &z, &int_cfg).unwrap().value;
        let v2 = mu_hat(&mu, 2.0, &z, &int_cfg).unwrap().value;
        let v4 = mu_hat(&mu, 4.0, &z, &int_cfg).unwrap().value;
        assert_eq!(v1, v2);
        assert_eq!(v2, v4);
    }
}
