//! Operators on the weighted space: Cesaro operators and their boundary
//! statistics, the truncated-basis reproducing kernel, Toeplitz matrices,
//! and the Berezin-style symbol transform.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::carleson::{mu_hat, DensityKind, MeasureSpec};
use crate::funcspace::{radial_derivative, MonomialFunction};
use crate::point::{psi, Point};
use crate::quadrature::sampler::{ball_shell_point, seeded_rng, unit_direction};
use crate::quadrature::{
    angular_monomial_constant, radial_integral, radial_weighted_integral, IntegralResult,
    IntegrationConfig, Method,
};
use crate::{Error, Result};

/// Monomial orthonormal basis of the truncated space: the radial weight is
/// unitarily invariant, so distinct monomials are orthogonal and
/// `h_alpha = ||z^alpha||^2` factors into an angular constant times a
/// radial integral. Radial integrals are cached here for every index the
/// truncation needs.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    n: usize,
    max_degree: u32,
    indices: Vec<Vec<u32>>,
    norms: Vec<f64>,
    lookup: BTreeMap<Vec<u32>, usize>,
}

impl OrthonormalBasis {
    pub fn new(n: usize, max_degree: u32) -> Self {
        let indices = enumerate_indices(n, max_degree);
        // Radial integrals I_k for every k this truncation touches.
        let max_k = 2 * max_degree as usize + 2 * n - 1;
        let radial: Vec<f64> = (0..=max_k).map(radial_integral).collect();
        let mut norms = Vec::with_capacity(indices.len());
        let mut lookup = BTreeMap::new();
        for (i, alpha) in indices.iter().enumerate() {
            let degree: u32 = alpha.iter().sum();
            let k = 2 * degree as usize + 2 * n - 1;
            norms.push(angular_monomial_constant(n, alpha) * radial[k]);
            lookup.insert(alpha.clone(), i);
        }
        OrthonormalBasis { n, max_degree, indices, norms, lookup }
    }

    pub fn dim_space(&self) -> usize {
        self.indices.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn indices(&self) -> &[Vec<u32>] {
        &self.indices
    }

    /// Squared norm `h_alpha` of the monomial `z^alpha`.
    pub fn norm_sqr_of(&self, alpha: &[u32]) -> Option<f64> {
        self.lookup.get(alpha).map(|&i| self.norms[i])
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// Values of all normalized basis elements at `w`.
    fn normalized_values(&self, w: &Point) -> Vec<Complex64> {
        let coords = w.coords();
        self.indices
            .iter()
            .zip(self.norms.iter())
            .map(|(alpha, h)| {
                let mut m = Complex64::new(1.0, 0.0);
                for (j, &a) in alpha.iter().enumerate() {
                    if a > 0 {
                        m *= coords[j].powu(a);
                    }
                }
                m / h.sqrt()
            })
            .collect()
    }
}

/// Graded lexicographic enumeration of multi-indices with `|alpha| <= max`.
fn enumerate_indices(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for degree in 0..=max_degree {
        let mut stack = alloc::vec![(Vec::<u32>::new(), degree)];
        while let Some((prefix, remaining)) = stack.pop() {
            if prefix.len() == n - 1 {
                let mut alpha = prefix;
                alpha.push(remaining);
                out.push(alpha);
                continue;
            }
            // Push in reverse so the pop order is lexicographic.
            for take in (0..=remaining).rev() {
                let mut next = prefix.clone();
                next.push(take);
                stack.push((next, remaining - take));
            }
        }
    }
    out
}

/// Volterra-type operator with holomorphic symbol `g`:
/// termwise, a term `c_a z^a` of `f` against a term of the radial
/// derivative of `g` with index `b` contributes `z^{a+b} / (|a|+|b|)`.
/// Per output index the products are summed first and divided once, so
/// the radial-derivative identity below holds to rounding.
pub fn cesaro_apply(
    g: &MonomialFunction,
    f: &MonomialFunction,
    max_degree: u32,
) -> Result<MonomialFunction> {
    let n = f.dim();
    if g.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: g.dim() });
    }
    let rg = radial_derivative(g);
    let mut sums: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
    for (alpha, ca) in f.terms() {
        for (beta, cb) in rg.terms() {
            let gamma: Vec<u32> = alpha.iter().zip(beta.iter()).map(|(x, y)| x + y).collect();
            let degree: u32 = gamma.iter().sum();
            if degree > max_degree {
                return Err(Error::DegreeOverflow {
                    degree: degree as usize,
                    max_degree: max_degree as usize,
                });
            }
            *sums.entry(gamma).or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
        }
    }
    let mut out = MonomialFunction::zero(n);
    for (gamma, total) in sums {
        let degree: u32 = gamma.iter().sum();
        debug_assert!(degree > 0, "the radial derivative kills constants");
        out.add_term(gamma, total / degree as f64);
    }
    Ok(out)
}

/// Cesaro symbols: polynomials, plus the non-polynomial witness whose
/// radial derivative is `(1 - <z, anchor>)^{-2}` (bounded but
/// non-vanishing boundary statistic).
#[derive(Debug, Clone)]
pub enum CesaroSymbol {
    Polynomial(MonomialFunction),
    InverseSquare { anchor: Point },
}

impl CesaroSymbol {
    /// Pointwise value of the radial derivative of the symbol.
    pub fn radial_derivative_at(&self, z: &Point) -> Complex64 {
        match self {
            CesaroSymbol::Polynomial(g) => radial_derivative(g).eval(z),
            CesaroSymbol::InverseSquare { anchor } => {
                let h = z.inner(anchor);
                let d = Complex64::new(1.0, 0.0) - h;
                (d * d).inv()
            }
        }
    }
}

/// Boundary trace of the boundedness statistic
/// `|Rg(z)| (1-|z|^2)^2` over rays times a radius grid.
pub fn cesaro_symbol_statistic(
    symbol: &CesaroSymbol,
    n: usize,
    grid: &[f64],
    rays: usize,
    seed: u64,
) -> (f64, Vec<(f64, f64)>) {
    let mut dirs = Vec::with_capacity(rays.max(1));
    let mut e1 = alloc::vec![Complex64::new(0.0, 0.0); n];
    e1[0] = Complex64::new(1.0, 0.0);
    dirs.push(e1);
    let mut rng = seeded_rng(seed, 411);
    while dirs.len() < rays.max(1) {
        dirs.push(unit_direction(&mut rng, n));
    }
    let mut sup: f64 = 0.0;
    let mut trace = Vec::with_capacity(grid.len());
    for &g in grid {
        let mut row: f64 = 0.0;
        for dir in &dirs {
            let coords: Vec<Complex64> = dir.iter().map(|c| c * g).collect();
            let z = Point::new_unchecked(coords);
            let weight = z.one_minus_norm_sqr().powi(2);
            row = row.max(symbol.radial_derivative_at(&z).norm() * weight);
        }
        sup = sup.max(row);
        trace.push((g, row));
    }
    (sup, trace)
}

/// Ratio of `||f||_{p,psi}^p` to
/// `|f(0)|^p + int |Rf|^p (1-|z|^2)^{2p} e^{-psi} dv`; the two-sided norm
/// equivalence predicts a fixed bracket over polynomial suites.
pub fn norm_equivalence_ratio(
    f: &MonomialFunction,
    p: f64,
    cfg: &IntegrationConfig,
) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::InvalidConfig("norm equivalence needs a nonzero function"));
    }
    let numerator = crate::quadrature::weighted_norm(f, p, cfg)?.p_power.value;
    let rf = radial_derivative(f);
    let origin = Point::origin(f.dim());
    let at_zero = f.eval(&origin).norm().powf(p);
    let derivative_term = if rf.is_zero() {
        0.0
    } else {
        crate::quadrature::integrate_ball(
            |w| {
                let a = rf.eval(w).norm();
                if a == 0.0 {
                    0.0
                } else {
                    (p * a.ln() + 2.0 * p * w.one_minus_norm_sqr().ln() - psi(w)).exp()
                }
            },
            cfg,
        )?
        .value
    };
    let denominator = at_zero + derivative_term;
    if denominator <= 0.0 {
        return Err(Error::InsufficientResolution { unresolved_fraction: 1.0 });
    }
    Ok(numerator / denominator)
}

/// Truncated reproducing kernel `K_N(z, w) = sum_alpha z^alpha
/// conj(w^alpha) / h_alpha` over the basis truncation.
pub fn bergman_kernel_truncated(basis: &OrthonormalBasis, z: &Point, w: &Point) -> Complex64 {
    let paired: Vec<Complex64> = z
        .coords()
        .iter()
        .zip(w.coords().iter())
        .map(|(a, b)| a * b.conj())
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (alpha, h) in basis.indices.iter().zip(basis.norms.iter()) {
        let mut m = Complex64::new(1.0, 0.0);
        for (j, &a) in alpha.iter().enumerate() {
            if a > 0 {
                m *= paired[j].powu(a);
            }
        }
        acc += m / h;
    }
    acc
}

/// One row of the diagonal-bound trace: the normalized diagonal
/// `K_N(z,z) (1-|z|^2)^{2n+1} e^{-2 psi(z)}` for each truncation degree in
/// the schedule.
#[derive(Debug, Clone)]
pub struct DiagonalTraceRow {
    pub z_norm: f64,
    pub normalized: Vec<f64>,
}

/// Normalized kernel diagonal along a radial grid for an increasing
/// truncation schedule; the values must plateau in `N` and stay below a
/// uniform cap.
pub fn kernel_diagonal_trace(
    n: usize,
    radial_grid: &[f64],
    degree_schedule: &[u32],
) -> Result<Vec<DiagonalTraceRow>> {
    if degree_schedule.is_empty() {
        return Err(Error::InvalidConfig("empty truncation schedule"));
    }
    let max_degree = *degree_schedule.iter().max().unwrap();
    let basis = OrthonormalBasis::new(n, max_degree);
    let mut rows = Vec::with_capacity(radial_grid.len());
    for &x in radial_grid {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::InvalidConfig("radial grid must lie in [0, 1)"));
        }
        let mut coords = alloc::vec![Complex64::new(0.0, 0.0); n];
        coords[0] = Complex64::new(x, 0.0);
        let z = Point::new_unchecked(coords);
        let t = z.norm_sqr();
        let weight = (1.0 - t).powi(2 * n as i32 + 1) * (-2.0 * psi(&z)).exp();
        // Partial sums of the diagonal by total degree.
        let mut by_degree = alloc::vec![0.0f64; max_degree as usize + 1];
        for (alpha, h) in basis.indices.iter().zip(basis.norms.iter()) {
            let degree: u32 = alpha.iter().sum();
            let mut m = 1.0f64;
            for (j, &a) in alpha.iter().enumerate() {
                if a > 0 {
                    m *= z.coords()[j].norm_sqr().powi(a as i32);
                }
            }
            by_degree[degree as usize] += m / h;
        }
        let mut cumulative = 0.0;
        let mut partial = alloc::vec![0.0f64; max_degree as usize + 1];
        for (d, v) in by_degree.iter().enumerate() {
            cumulative += v;
            partial[d] = cumulative;
        }
        let normalized = degree_schedule
            .iter()
            .map(|&nd| partial[nd as usize] * weight)
            .collect();
        rows.push(DiagonalTraceRow { z_norm: x, normalized });
    }
    Ok(rows)
}

/// A finite section of an operator in the normalized monomial basis.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
    stderr: Vec<f64>,
    pub method: Method,
    pub seed: u64,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn stderr_of(&self, row: usize, col: usize) -> f64 {
        self.stderr[row * self.dim + col]
    }

    pub fn hermitian_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.dim {
            for k in j..self.dim {
                worst = worst.max((self.get(j, k) - self.get(k, j).conj()).norm());
            }
        }
        worst
    }

    pub fn max_stderr(&self) -> f64 {
        self.stderr.iter().copied().fold(0.0, f64::max)
    }
}

/// Finite section of the Toeplitz operator with symbol density `u`:
/// entries `<T_u e_a, e_b> = int e_a conj(e_b) u e^{-psi} dv`.
///
/// Radial symbols factor through the cached radial integrals and produce
/// an exactly diagonal section; general symbols go through stratified
/// Monte Carlo with all entries sharing one sample stream (the section is
/// then Hermitian by construction).
pub fn toeplitz_matrix(
    basis: &OrthonormalBasis,
    u: &DensityKind,
    cfg: &IntegrationConfig,
) -> Result<OperatorMatrix> {
    if cfg.n != basis.n {
        return Err(Error::DimensionMismatch { expected: basis.n, got: cfg.n });
    }
    let m = basis.dim_space();
    if let Some(radial) = radial_profile(u) {
        let mut entries = alloc::vec![Complex64::new(0.0, 0.0); m * m];
        for (i, alpha) in basis.indices.iter().enumerate() {
            let degree: u32 = alpha.iter().sum();
            let k = (2 * degree as usize + 2 * basis.n - 1) as f64;
            let weighted = radial_weighted_integral(k, &radial);
            let value = angular_monomial_constant(basis.n, alpha) * weighted / basis.norms[i];
            entries[i * m + i] = Complex64::new(value, 0.0);
        }
        return Ok(OperatorMatrix {
            dim: m,
            entries,
            stderr: alloc::vec![0.0; m * m],
            method: Method::RadialProduct,
            seed: cfg.seed,
        });
    }

    // Monte Carlo Gram accumulation over stratified shells.
    let shells = cfg.shells;
    let vol_shell = crate::quadrature::unit_ball_volume(cfg.n) / shells as f64;
    let base = cfg.samples / shells;
    let extra = cfg.samples % shells;
    let mut sum = alloc::vec![Complex64::new(0.0, 0.0); m * m];
    let mut sum_sq = alloc::vec![0.0f64; m * m];
    let mut total = 0usize;
    for shell in 0..shells {
        let count = base + usize::from(shell < extra);
        let lo = shell as f64 / shells as f64;
        let hi = (shell + 1) as f64 / shells as f64;
        let mut rng = seeded_rng(cfg.seed, shell as u64);
        for _ in 0..count {
            let coords = ball_shell_point(&mut rng, cfg.n, lo, hi, cfg.max_abs_coord);
            let w = Point::new_unchecked(coords);
            let q = u.eval(&w) * (-psi(&w)).exp();
            if !q.is_finite() {
                return Err(Error::NonFiniteSample);
            }
            let values = basis.normalized_values(&w);
            for j in 0..m {
                let vj = values[j] * q;
                for k in 0..m {
                    let contrib = vj * values[k].conj();
                    sum[j * m + k] += contrib;
                    sum_sq[j * m + k] += contrib.norm_sqr();
                }
            }
            total += 1;
        }
    }
    // Equal-count shells make the overall draw uniform, so the Gram sums
    // scale by the ball volume over the total count.
    let nf = total as f64;
    let scale = vol_shell * shells as f64;
    let mut entries = alloc::vec![Complex64::new(0.0, 0.0); m * m];
    let mut stderr = alloc::vec![0.0f64; m * m];
    for idx in 0..m * m {
        let mean = sum[idx] / nf;
        entries[idx] = mean * scale;
        let var = ((sum_sq[idx] / nf - mean.norm_sqr()).max(0.0)) * nf / (nf - 1.0);
        stderr[idx] = scale * (var / nf).sqrt();
    }
    Ok(OperatorMatrix { dim: m, entries, stderr, method: Method::MonteCarlo, seed: cfg.seed })
}

/// Radial profile of a symbol when it has one.
fn radial_profile(u: &DensityKind) -> Option<impl Fn(f64) -> f64> {
    enum Profile {
        Const(f64),
        Power(f64),
    }
    let profile = match u {
        DensityKind::Constant(c) => Profile::Const(*c),
        DensityKind::BoundaryPower { exponent } => Profile::Power(*exponent),
        DensityKind::GaussianBump { .. } => return None,
    };
    Some(move |r: f64| match profile {
        Profile::Const(c) => c,
        Profile::Power(a) => (1.0 - r * r).powf(a),
    })
}

/// Berezin-style transform of a symbol: the averaged transform of the
/// measure `u dv` at exponent 2, computed by the direct integral.
pub fn u_hat(u: &DensityKind, z: &Point, cfg: &IntegrationConfig) -> Result<IntegralResult> {
    mu_hat(&MeasureSpec::Density(u.clone()), 2.0, z, cfg)
}

/// Largest-magnitude eigenvalue of a Hermitian finite section by power
/// iteration. Rejects sections whose symmetry residual exceeds ten times
/// the largest entry error bar.
pub fn toeplitz_norm_probe(matrix: &OperatorMatrix) -> Result<f64> {
    let residual = matrix.hermitian_residual();
    let tolerance = 10.0 * matrix.max_stderr() + 1e-12;
    if residual > tolerance {
        return Err(Error::NonHermitian { residual });
    }
    let m = matrix.dim;
    let mut v: Vec<Complex64> = (0..m)
        .map(|i| Complex64::new(1.0 + 0.01 * (i as f64 + 1.0).sin(), 0.0))
        .collect();
    normalize(&mut v);
    let mut eigen = 0.0f64;
    for _ in 0..1000 {
        let mut next = alloc::vec![Complex64::new(0.0, 0.0); m];
        for j in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..m {
                acc += matrix.get(j, k) * v[k];
            }
            next[j] = acc;
        }
        // Rayleigh quotient.
        let mut quotient = Complex64::new(0.0, 0.0);
        for j in 0..m {
            quotient += next[j] * v[j].conj();
        }
        let lambda = quotient.re;
        normalize(&mut next);
        v = next;
        if (lambda - eigen).abs() <= 1e-12 * lambda.abs().max(1.0) {
            eigen = lambda;
            break;
        }
        eigen = lambda;
    }
    Ok(eigen.abs())
}

fn normalize(v: &mut [Complex64]) {
    let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for c in v.iter_mut() {
            *c /= norm;
        }
    }
}
