//! Weighted integration over the unit ball: seeded stratified Monte Carlo,
//! an importance mixture for boundary-concentrated integrands, adaptive 1-D
//! quadrature, and the radial/angular factorisation of monomial norms.

pub mod adaptive;
pub mod gauss;
pub mod sampler;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::funcspace::MonomialFunction;
use crate::geometry::DRegion;
use crate::point::{psi, Point, BOUNDARY_EPSILON};
use crate::{Error, Result};

pub use adaptive::adaptive_integral;

/// How an [`IntegralResult`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    MonteCarlo,
    RadialProduct,
}

/// Configuration for seeded Monte Carlo over `B_n`.
#[derive(Debug, Clone)]
pub struct IntegrationConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub shells: usize,
    pub max_abs_coord: f64,
}

impl IntegrationConfig {
    /// `samples >= 1000` and `shells >= 8` keep the stratified estimator in
    /// its validated regime; smaller budgets are rejected.
    pub fn new(n: usize, samples: usize, seed: u64) -> Result<Self> {
        let cfg = Self {
            n,
            samples,
            seed,
            shells: 32,
            max_abs_coord: 1.0 - BOUNDARY_EPSILON,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_shells(mut self, shells: usize) -> Result<Self> {
        self.shells = shells;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("dimension must be at least 1"));
        }
        if self.samples < 1000 {
            return Err(Error::InvalidConfig("at least 1000 samples required"));
        }
        if self.shells < 8 {
            return Err(Error::InvalidConfig("at least 8 shells required"));
        }
        if !(self.max_abs_coord > 0.0 && self.max_abs_coord < 1.0) {
            return Err(Error::InvalidConfig("max_abs_coord must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// A Monte Carlo or product-quadrature value with its provenance.
#[derive(Debug, Clone, Copy)]
pub struct IntegralResult {
    pub value: f64,
    pub stderr: f64,
    pub method: Method,
    pub seed: u64,
}

/// Complex-valued counterpart of [`IntegralResult`].
#[derive(Debug, Clone, Copy)]
pub struct ComplexIntegralResult {
    pub value: Complex64,
    pub stderr: f64,
    pub method: Method,
    pub seed: u64,
}

/// Lebesgue volume of the unit ball of `C^n = R^{2n}`: `pi^n / n!`.
pub fn unit_ball_volume(n: usize) -> f64 {
    let mut v = 1.0f64;
    for k in 1..=n {
        v *= core::f64::consts::PI / k as f64;
    }
    v
}

/// Stratified Monte Carlo estimate of `int_{B_n} f dv` with equal-volume
/// radial shells, one deterministic substream per shell.
pub fn integrate_ball<F: Fn(&Point) -> f64>(f: F, cfg: &IntegrationConfig) -> Result<IntegralResult> {
    let r = integrate_ball_complex(|z| Complex64::new(f(z), 0.0), cfg)?;
    Ok(IntegralResult { value: r.value.re, stderr: r.stderr, method: r.method, seed: r.seed })
}

/// Complex-valued stratified Monte Carlo over `B_n`.
pub fn integrate_ball_complex<F: Fn(&Point) -> Complex64>(
    f: F,
    cfg: &IntegrationConfig,
) -> Result<ComplexIntegralResult> {
    cfg.validate()?;
    let shells = cfg.shells;
    let vol_shell = unit_ball_volume(cfg.n) / shells as f64;
    let base = cfg.samples / shells;
    let extra = cfg.samples % shells;

    let mut value = Complex64::new(0.0, 0.0);
    let mut variance = 0.0f64;
    for shell in 0..shells {
        let count = base + usize::from(shell < extra);
        if count == 0 {
            continue;
        }
        let lo = shell as f64 / shells as f64;
        let hi = (shell + 1) as f64 / shells as f64;
        let mut rng = sampler::seeded_rng(cfg.seed, shell as u64);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut sum_sq = 0.0f64;
        let mut sum_re_sq = 0.0f64;
        let mut sum_im_sq = 0.0f64;
        for _ in 0..count {
            let coords = sampler::ball_shell_point(&mut rng, cfg.n, lo, hi, cfg.max_abs_coord);
            let z = Point::new_unchecked(coords);
            let v = f(&z);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteSample);
            }
            sum += v;
            sum_sq += v.norm_sqr();
            sum_re_sq += v.re * v.re;
            sum_im_sq += v.im * v.im;
        }
        let nf = count as f64;
        let mean = sum / nf;
        value += mean * vol_shell;
        if count >= 2 {
            let _ = sum_sq;
            let var_re = (sum_re_sq / nf - mean.re * mean.re).max(0.0) * nf / (nf - 1.0);
            let var_im = (sum_im_sq / nf - mean.im * mean.im).max(0.0) * nf / (nf - 1.0);
            variance += vol_shell * vol_shell * (var_re + var_im) / nf;
        }
    }
    Ok(ComplexIntegralResult {
        value,
        stderr: variance.sqrt(),
        method: Method::MonteCarlo,
        seed: cfg.seed,
    })
}

/// Monte Carlo estimate of `int_{B_n} f dv` for integrands concentrated
/// near a product region: samples are drawn from an even mixture of the
/// uniform law on `region` and the uniform law on `B_n`, with the exact
/// mixture density providing the importance weights. The region may spill
/// outside `B_n`; such draws contribute zero.
pub fn integrate_in_region<F: Fn(&Point) -> f64>(
    region: &DRegion,
    f: F,
    cfg: &IntegrationConfig,
) -> Result<IntegralResult> {
    cfg.validate()?;
    let v_ball = unit_ball_volume(cfg.n);
    let v_region = region.volume();
    let mut rng = sampler::seeded_rng(cfg.seed, 0);
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    let n_samples = cfg.samples;
    for i in 0..n_samples {
        let coords = if i % 2 == 0 {
            region.sample_raw(&mut rng)
        } else {
            sampler::ball_shell_point(&mut rng, cfg.n, 0.0, 1.0, cfg.max_abs_coord)
        };
        let norm_sqr: f64 = coords.iter().map(|c| c.norm_sqr()).sum();
        let interior = norm_sqr.sqrt() < cfg.max_abs_coord;
        let weighted = if interior {
            let in_region = region.contains_raw(&coords);
            let mut q = 0.5 / v_ball;
            if in_region {
                q += 0.5 / v_region;
            }
            let z = Point::new_unchecked(coords);
            let v = f(&z);
            if !v.is_finite() {
                return Err(Error::NonFiniteSample);
            }
            v / q
        } else {
            0.0
        };
        sum += weighted;
        sum_sq += weighted * weighted;
    }
    let nf = n_samples as f64;
    let mean = sum / nf;
    let var = ((sum_sq / nf - mean * mean).max(0.0)) * nf / (nf - 1.0);
    Ok(IntegralResult {
        value: mean,
        stderr: (var / nf).sqrt(),
        method: Method::MonteCarlo,
        seed: cfg.seed,
    })
}

/// `int_0^1 r^exponent exp(-1/(1-r^2)) dr` to relative `1e-10`.
pub fn radial_power_integral(exponent: f64) -> f64 {
    adaptive_integral(
        &|r: f64| {
            if r <= 0.0 {
                if exponent == 0.0 {
                    (-1.0f64).exp()
                } else {
                    0.0
                }
            } else {
                let one_minus = 1.0 - r * r;
                if one_minus <= 0.0 {
                    0.0
                } else {
                    (exponent * r.ln() - 1.0 / one_minus).exp()
                }
            }
        },
        0.0,
        1.0,
        1e-11,
    )
}

/// `I_k = int_0^1 r^k exp(-1/(1-r^2)) dr`.
pub fn radial_integral(k: usize) -> f64 {
    radial_power_integral(k as f64)
}

/// `int_0^1 r^k g(r) exp(-1/(1-r^2)) dr` for a bounded radial factor `g`.
pub fn radial_weighted_integral<G: Fn(f64) -> f64>(k: f64, g: G) -> f64 {
    adaptive_integral(
        &|r: f64| {
            if r <= 0.0 {
                if k == 0.0 {
                    g(0.0) * (-1.0f64).exp()
                } else {
                    0.0
                }
            } else {
                let one_minus = 1.0 - r * r;
                if one_minus <= 0.0 {
                    0.0
                } else {
                    g(r) * (k * r.ln() - 1.0 / one_minus).exp()
                }
            }
        },
        0.0,
        1.0,
        1e-11,
    )
}

/// Angular factor `A_alpha` of the monomial `z^alpha` at power 2:
/// `int_{B_n} |z^alpha|^2 g(|z|) dv = A_alpha int_0^1 r^{2|alpha|+2n-1} g(r) dr`.
///
/// Derived from the surface-measure identity
/// `int_{S^{2n-1}} prod |xi_j|^{2a_j} dsigma = 2 pi^n prod a_j! / (n+|a|-1)!`.
pub fn angular_monomial_constant(n: usize, alpha: &[u32]) -> f64 {
    angular_power_constant(n, alpha, 2.0)
}

/// Angular factor for `|z^alpha|^p` against radial weights:
/// `int_{B_n} |z^alpha|^p g(|z|) dv = A int_0^1 r^{p|alpha|+2n-1} g(r) dr`
/// with `A = 2 pi^n prod Gamma(p a_j / 2 + 1) / Gamma(n + p |a| / 2)`.
pub fn angular_power_constant(n: usize, alpha: &[u32], p: f64) -> f64 {
    debug_assert_eq!(alpha.len(), n);
    let total: f64 = alpha.iter().map(|&a| a as f64).sum();
    let mut log = core::f64::consts::LN_2 + n as f64 * core::f64::consts::PI.ln();
    for &a in alpha {
        log += libm::lgamma(0.5 * p * a as f64 + 1.0);
    }
    log -= libm::lgamma(n as f64 + 0.5 * p * total);
    log.exp()
}

/// `||f||_{p,psi}^p` together with its `p`-th root.
#[derive(Debug, Clone, Copy)]
pub struct WeightedNorm {
    /// `int |f|^p e^{-psi} dv` with provenance.
    pub p_power: IntegralResult,
    /// `p`-th root of the integral.
    pub norm: f64,
}

/// Weighted norm of a polynomial: single monomials factor into a closed
/// angular constant times a radial integral; everything else goes through
/// stratified Monte Carlo with the integrand assembled in log space.
pub fn weighted_norm(f: &MonomialFunction, p: f64, cfg: &IntegrationConfig) -> Result<WeightedNorm> {
    if p < 1.0 {
        return Err(Error::InvalidConfig("norm exponent p must be at least 1"));
    }
    if f.dim() != cfg.n {
        return Err(Error::DimensionMismatch { expected: cfg.n, got: f.dim() });
    }
    let p_power = if f.term_count() == 1 {
        let (alpha, coeff) = f.terms().next().expect("single term");
        let degree: f64 = alpha.iter().map(|&a| a as f64).sum();
        let angular = angular_power_constant(cfg.n, alpha, p);
        let radial = radial_power_integral(p * degree + 2.0 * cfg.n as f64 - 1.0);
        let value = coeff.norm().powf(p) * angular * radial;
        IntegralResult { value, stderr: 0.0, method: Method::RadialProduct, seed: cfg.seed }
    } else {
        integrate_ball(
            |z| {
                let a = f.eval(z).norm();
                if a == 0.0 {
                    0.0
                } else {
                    (p * a.ln() - psi(z)).exp()
                }
            },
            cfg,
        )?
    };
    Ok(WeightedNorm { p_power, norm: p_power.value.max(0.0).powf(1.0 / p) })
}
