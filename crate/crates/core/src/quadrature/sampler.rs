use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

use crate::point::Point;

/// Deterministic generator for a `(seed, stream)` pair. Batches that must
/// be independent (shells, matrix entries, workers) get distinct streams.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One standard normal via Box-Muller (the sine branch is discarded; the
/// sample counts here make the waste irrelevant).
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u1: f64 = rng.gen::<f64>();
        if u1 <= 0.0 {
            continue;
        }
        let u2: f64 = rng.gen::<f64>();
        return (-2.0 * u1.ln()).sqrt() * (2.0 * core::f64::consts::PI * u2).cos();
    }
}

/// Uniform direction on the unit sphere of `R^d`, returned as complex
/// coordinates of `C^{d/2}` (`d` must be even).
pub fn unit_direction(rng: &mut ChaCha8Rng, n_complex: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n_complex)
            .map(|_| Complex64::new(standard_normal(rng), standard_normal(rng)))
            .collect();
        let norm_sqr: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if norm_sqr > 1e-290 {
            let inv = norm_sqr.sqrt().recip();
            return v.into_iter().map(|c| c * inv).collect();
        }
    }
}

/// Uniform point of the complex unit disk scaled by `radius`.
pub fn disk_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = 2.0 * core::f64::consts::PI * rng.gen::<f64>();
    Complex64::new(r * theta.cos(), r * theta.sin())
}

/// Uniform point of the real `d`-ball of radius `radius`, as complex
/// coordinates when `d` is even. For `d = 0` returns an empty vector.
pub fn real_ball_point(rng: &mut ChaCha8Rng, d_real: usize, radius: f64) -> Vec<Complex64> {
    if d_real == 0 {
        return Vec::new();
    }
    debug_assert!(d_real % 2 == 0);
    let dir = unit_direction(rng, d_real / 2);
    let r = radius * rng.gen::<f64>().powf(1.0 / d_real as f64);
    dir.into_iter().map(|c| c * r).collect()
}

/// Radius drawn so the point is uniform in the volume fraction band
/// `[lo_frac, hi_frac]` of the unit ball of `R^{2n}`.
pub fn shell_radius(rng: &mut ChaCha8Rng, n: usize, lo_frac: f64, hi_frac: f64) -> f64 {
    let u: f64 = rng.gen();
    let frac = lo_frac + u * (hi_frac - lo_frac);
    frac.powf(1.0 / (2.0 * n as f64))
}

/// Uniform interior point with `|z|` capped at `r_cap < 1`.
pub fn interior_point(rng: &mut ChaCha8Rng, n: usize, r_cap: f64) -> Point {
    debug_assert!(r_cap < 1.0);
    let frac = r_cap.powi(2 * n as i32);
    Point::new_unchecked(ball_shell_point(rng, n, 0.0, frac, r_cap))
}

/// Uniform raw coordinates in the shell of `B_n` between the volume
/// fractions, with the radius capped at `r_cap`.
pub fn ball_shell_point(
    rng: &mut ChaCha8Rng,
    n: usize,
    lo_frac: f64,
    hi_frac: f64,
    r_cap: f64,
) -> Vec<Complex64> {
    let r = shell_radius(rng, n, lo_frac, hi_frac).min(r_cap);
    unit_direction(rng, n).into_iter().map(|c| c * r).collect()
}
