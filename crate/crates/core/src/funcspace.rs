//! Computable holomorphic functions: monomial expansions, the ball
//! automorphisms, exponential test functions, and the weighted
//! sub-mean-value statistic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{ball_membership, BallBound, DRegion, Membership};
use crate::point::{psi, vec_norm_sqr, Point, BOUNDARY_EPSILON};
use crate::quadrature::sampler::{seeded_rng, standard_normal};
use crate::quadrature::{integrate_ball, integrate_in_region, IntegralResult, IntegrationConfig};
use crate::{Error, Result};

/// A polynomial on `C^n` stored as a finite monomial expansion
/// `sum_alpha c_alpha z^alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialFunction {
    n: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl MonomialFunction {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        let mut f = Self::zero(n);
        if c != Complex64::new(0.0, 0.0) {
            f.terms.insert(alloc::vec![0; n], c);
        }
        f
    }

    /// The coordinate function `z_j`.
    pub fn coordinate(n: usize, j: usize) -> Self {
        assert!(j < n);
        let mut alpha = alloc::vec![0u32; n];
        alpha[j] = 1;
        let mut f = Self::zero(n);
        f.terms.insert(alpha, Complex64::new(1.0, 0.0));
        f
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Complex64)>,
    {
        let mut f = Self::zero(n);
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: alpha.len() });
            }
            f.add_term(alpha, c);
        }
        Ok(f)
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, c: Complex64) {
        debug_assert_eq!(alpha.len(), self.n);
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(alpha).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, v)| **v == Complex64::new(0.0, 0.0))
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|a| a.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|(a, c)| (a.as_slice(), *c))
    }

    pub fn coefficient(&self, alpha: &[u32]) -> Complex64 {
        self.terms.get(alpha).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, w: &Point) -> Complex64 {
        debug_assert_eq!(w.dim(), self.n);
        let coords = w.coords();
        let mut acc = Complex64::new(0.0, 0.0);
        for (alpha, c) in &self.terms {
            let mut m = *c;
            for (j, &a) in alpha.iter().enumerate() {
                if a > 0 {
                    m *= coords[j].powu(a);
                }
            }
            acc += m;
        }
        acc
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.n);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, v) in &other.terms {
            out.add_term(a.clone(), *v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let sum: Vec<u32> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                out.add_term(sum, u * v);
            }
        }
        out
    }

    /// A seeded random polynomial with standard complex Gaussian
    /// coefficients on `num_terms` distinct multi-indices of degree at
    /// most `max_degree`.
    pub fn random(n: usize, max_degree: u32, num_terms: usize, rng: &mut ChaCha8Rng) -> Self {
        use rand::Rng;
        let mut f = Self::zero(n);
        for _ in 0..num_terms {
            let mut alpha = alloc::vec![0u32; n];
            let degree = rng.gen_range(0..=max_degree);
            for _ in 0..degree {
                alpha[rng.gen_range(0..n)] += 1;
            }
            let c = Complex64::new(standard_normal(rng), standard_normal(rng));
            f.add_term(alpha, c);
        }
        if f.is_zero() {
            f.add_term(alloc::vec![0; n], Complex64::new(1.0, 0.0));
        }
        f
    }
}

/// Radial derivative `R f = sum_j z_j df/dz_j`: multiplies each monomial
/// by its total degree.
pub fn radial_derivative(f: &MonomialFunction) -> MonomialFunction {
    let mut out = MonomialFunction::zero(f.dim());
    for (alpha, c) in f.terms() {
        let degree: u32 = alpha.iter().sum();
        if degree > 0 {
            out.add_term(alpha.to_vec(), c * degree as f64);
        }
    }
    out
}

/// Involutive automorphism of the ball exchanging `z` and the origin:
/// `phi_z(w) = (z - P_z w - sqrt(1-|z|^2) Q_z w) / (1 - <w, z>)`.
///
/// The image is strictly interior in exact arithmetic but can sit closer
/// to the boundary than either argument.
pub fn mobius(z: &Point, w: &Point) -> Point {
    debug_assert_eq!(z.dim(), w.dim());
    let t = z.norm_sqr();
    let h = w.inner(z);
    let denom = Complex64::new(1.0, 0.0) - h;
    let root = z.one_minus_norm_sqr().sqrt();
    let coords: Vec<Complex64> = if t == 0.0 {
        w.coords().iter().map(|wj| -wj / denom).collect()
    } else {
        let factor = h / t;
        z.coords()
            .iter()
            .zip(w.coords().iter())
            .map(|(zj, wj)| {
                let radial = factor * zj;
                let tangential = wj - radial;
                (zj - radial - tangential * root) / denom
            })
            .collect()
    };
    Point::new_unchecked(coords)
}

/// Residual of the identity
/// `1 - |phi_z(w)|^2 = (1-|z|^2)(1-|w|^2)/|1-<w,z>|^2`.
pub fn automorphism_identity_residual(z: &Point, w: &Point) -> f64 {
    let image = mobius(z, w);
    let lhs = image.one_minus_norm_sqr();
    let denom = (Complex64::new(1.0, 0.0) - w.inner(z)).norm_sqr();
    let rhs = z.one_minus_norm_sqr() * w.one_minus_norm_sqr() / denom;
    (lhs - rhs).abs()
}

/// The exponential test function anchored at `center`:
/// `Phi(w) = exp((2/p)/(1 - <w, center>) - psi(center)/p)`.
#[derive(Debug, Clone)]
pub struct TestFunction {
    pub p: f64,
    pub center: Point,
}

impl TestFunction {
    pub fn new(p: f64, center: Point) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::InvalidConfig("test-function exponent p must be at least 1"));
        }
        Ok(Self { p, center })
    }

    /// Complex exponent of the test function at `w`.
    pub fn exponent(&self, w: &Point) -> Complex64 {
        let h = w.inner(&self.center);
        let inv = (Complex64::new(1.0, 0.0) - h).inv();
        (2.0 / self.p) * inv - Complex64::new(psi(&self.center) / self.p, 0.0)
    }

    /// Pointwise value, evaluated in log space.
    pub fn eval(&self, w: &Point) -> Result<Complex64> {
        let e = self.exponent(w);
        if e.re > 700.0 {
            return Err(Error::OverflowGuard { exponent: e.re });
        }
        Ok(e.exp())
    }
}

/// `log(|Phi_{p,z}(w)|^p e^{-psi(w)}) = 2 Re(1/(1-<w,z>)) - psi(z) - psi(w)`.
///
/// The `p` in the exponent and the `p`-th power cancel exactly, so this is
/// the weighted density of every test-function power and the integrand of
/// the averaged transform for every `p`.
pub fn log_test_weight(z: &Point, w: &Point) -> f64 {
    let h = w.inner(z);
    let inv = (Complex64::new(1.0, 0.0) - h).inv();
    2.0 * inv.re - psi(z) - psi(w)
}

/// Sampled sup of `|2 Re(1/(1-<w,z>)) - psi(z) - psi(w)|` over the product
/// region `D(z, r)`; bounded uniformly in `z` for fixed small `r`.
pub fn key_inequality_constant(z: &Point, r: f64, samples: usize, seed: u64) -> f64 {
    let region = DRegion::new(z, r);
    let mut rng = seeded_rng(seed, 0);
    let mut sup = 0.0f64;
    let mut drawn = 0usize;
    while drawn < samples {
        let coords = region.sample_raw(&mut rng);
        if vec_norm_sqr(&coords).sqrt() >= 1.0 - BOUNDARY_EPSILON {
            continue;
        }
        drawn += 1;
        let w = Point::new_unchecked(coords);
        sup = sup.max(log_test_weight(z, &w).abs());
    }
    sup
}

/// `||Phi_{p,z}||_{p,psi}^p = int exp(log_test_weight) dv`, independent of
/// `p`. Near the boundary the integrand concentrates on a product region
/// of volume `(1-|z|^2)^{2n+1}`, so the importance mixture takes over.
pub fn test_norm(t: &TestFunction, cfg: &IntegrationConfig) -> Result<IntegralResult> {
    let z = &t.center;
    if z.dim() != cfg.n {
        return Err(Error::DimensionMismatch { expected: cfg.n, got: z.dim() });
    }
    let integrand = |w: &Point| log_test_weight(z, w).exp();
    if z.norm_sqr() >= 0.5 {
        let region = DRegion::new(z, 4.0);
        integrate_in_region(&region, integrand, cfg)
    } else {
        integrate_ball(integrand, cfg)
    }
}

/// Log-magnitude of the normalized test function at `w`, given the value
/// of `||Phi||_{p}^p`.
pub fn normalized_log_abs(t: &TestFunction, w: &Point, norm_p_power: f64) -> f64 {
    let e = t.exponent(w);
    e.re - norm_p_power.ln() / t.p
}

/// Sub-mean-value statistic: the ratio of `|f(z)|^p e^{-s psi(z)}` to
/// `(1-|z|^2)^{-(2n+1)} int_{B(z,r)} |f|^p e^{-s psi} dv`, Monte Carlo
/// over a certified bounding region with three-valued membership
/// (unresolved draws at weight 1/2).
pub fn submeanvalue_ratio(
    f: &MonomialFunction,
    p: f64,
    s: f64,
    r: f64,
    z: &Point,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if samples < 100 {
        return Err(Error::InvalidConfig("sub-mean-value needs at least 100 samples"));
    }
    let weighted = |w: &Point| -> f64 {
        let a = f.eval(w).norm();
        if a == 0.0 {
            0.0
        } else {
            (p * a.ln() - s * psi(w)).exp()
        }
    };
    let bound = BallBound::new(z, r)?;
    let mut rng = seeded_rng(seed, 0);
    let mut sum = 0.0f64;
    let mut unknown = 0usize;
    for _ in 0..samples {
        let coords = bound.sample_raw(&mut rng);
        if bound.certainly_outside(&coords) {
            continue;
        }
        let w = Point::new_unchecked(coords);
        let weight = match ball_membership(z, &w, r, 0)? {
            Membership::Inside => 1.0,
            Membership::Outside => 0.0,
            Membership::Unknown => {
                unknown += 1;
                0.5
            }
        };
        if weight > 0.0 {
            sum += weight * weighted(&w);
        }
    }
    let unresolved = unknown as f64 / samples as f64;
    if unresolved > 0.10 {
        return Err(Error::InsufficientResolution { unresolved_fraction: unresolved });
    }
    let integral = bound.volume() * sum / samples as f64;
    let n = z.dim() as i32;
    let rhs = z.one_minus_norm_sqr().powi(-(2 * n + 1)) * integral;
    let lhs = {
        let a = f.eval(z).norm();
        if a == 0.0 {
            0.0
        } else {
            (p * a.ln() - s * psi(z)).exp()
        }
    };
    if rhs <= 0.0 {
        return Err(Error::InsufficientResolution { unresolved_fraction: 1.0 });
    }
    Ok(lhs / rhs)
}
