use num_complex::Complex64;
use psiball::carleson::{carleson_check, CarlesonConfig, CarlesonVerdict, VanishingVerdict};
use psiball::funcspace::{key_inequality_constant, test_norm, MonomialFunction, TestFunction};
use psiball::geometry::{
    ball_membership, ball_volume, build_lattice, covering_violations, hessian, hessian_det,
    hessian_inverse, hessian_spectral, in_d_region, sigma_estimate, DRegion, EstimateStatus,
    LatticeConfig, Membership, COVERING_SLACK, INCLUSION_MARGIN,
};
use psiball::operators::{
    cesaro_apply, cesaro_symbol_statistic, kernel_diagonal_trace, norm_equivalence_ratio,
    toeplitz_matrix, toeplitz_norm_probe, u_hat, CesaroSymbol, OrthonormalBasis,
};
use psiball::quadrature::sampler::{interior_point, seeded_rng, unit_direction, ChaCha8Rng};
use psiball::quadrature::{weighted_norm, IntegrationConfig, Method};
use psiball::{HermitianForm, Point};

use crate::args::{Command, CommonArgs};
use crate::parse;
use crate::table::{Cell, Table};
use crate::CliError;

pub fn dispatch(command: &Command) -> Result<Table, CliError> {
    match command {
        Command::Hessian { common } => hessian_cmd(common),
        Command::Distance { common, budget } => distance_cmd(common, *budget),
        Command::Ball { common, r, grid } => ball_cmd(common, *r, grid.as_deref()),
        Command::Lattice { common, r, density, probes, slack } => {
            lattice_cmd(common, *r, *density, *probes, *slack)
        }
        Command::Testfn { common, p, r, grid } => testfn_cmd(common, *p, *r, grid.as_deref()),
        Command::Carleson { common, p, r, measure, grid } => {
            carleson_cmd(common, *p, *r, measure, grid.as_deref())
        }
        Command::Cesaro { common, p, symbol, grid, max_degree } => {
            cesaro_cmd(common, *p, symbol, grid.as_deref(), *max_degree)
        }
        Command::Toeplitz { common, symbol, max_degree, grid } => {
            toeplitz_cmd(common, symbol, *max_degree, grid.as_deref())
        }
        Command::Kernel { common, grid, schedule } => {
            kernel_cmd(common, grid.as_deref(), schedule.as_deref())
        }
    }
}

fn validate_common(common: &CommonArgs) -> Result<(), CliError> {
    if common.n == 0 || common.n > 8 {
        return Err(CliError::Config("dimension must lie in 1..=8".into()));
    }
    if common.samples < 1000 {
        return Err(CliError::Config("at least 1000 samples required".into()));
    }
    Ok(())
}

fn base_params(table: &mut Table, common: &CommonArgs) {
    table.param("n", common.n);
    table.param("seed", common.seed);
    table.param("samples", common.samples);
}

fn method_tag(method: Method) -> &'static str {
    match method {
        Method::MonteCarlo => "monte-carlo",
        Method::RadialProduct => "radial-product",
    }
}

fn default_boundary_grid() -> Vec<f64> {
    vec![0.0, 0.5, 0.8, 0.9, 0.95, 0.99]
}

fn grid_or(grid: Option<&str>, fallback: Vec<f64>) -> Result<Vec<f64>, CliError> {
    match grid {
        Some(spec) => parse::parse_grid(spec),
        None => Ok(fallback),
    }
}

fn ray_point(n: usize, g: f64) -> Result<Point, CliError> {
    let mut coords = vec![0.0f64; 2 * n];
    coords[0] = g;
    Point::from_real_coords(&coords).map_err(CliError::Numeric)
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, cap: f64) -> Point {
    interior_point(rng, n, cap)
}

fn hessian_cmd(common: &CommonArgs) -> Result<Table, CliError> {
    validate_common(common)?;
    let mut rng = seeded_rng(common.seed, 0);
    let n = common.n;
    let identity = HermitianForm::identity(n);
    let mut max_inverse = 0.0f64;
    let mut max_det = 0.0f64;
    let mut max_spectral = 0.0f64;
    for _ in 0..common.samples {
        let z = random_point(&mut rng, n, 0.99);
        let h = hessian(&z);
        let inv_residual = h.mul_mat(&hessian_inverse(&z)).sub(&identity).max_abs();
        max_inverse = max_inverse.max(inv_residual);
        let closed = hessian_det(&z);
        max_det = max_det.max((h.det_lu() - closed).abs() / closed);
        let spec = hessian_spectral(&z);
        let rebuilt = spec
            .radial_projector
            .scale(spec.radial_eigenvalue)
            .add(&spec.tangential_projector.scale(spec.tangential_eigenvalue));
        max_spectral = max_spectral.max(rebuilt.sub(&h).max_abs() / h.max_abs().max(1.0));
    }
    let mut table = Table::new(
        "hessian",
        vec![
            "samples",
            "seed",
            "max_inverse_residual",
            "max_det_rel_error",
            "max_spectral_rel_residual",
            "method",
        ],
    );
    base_params(&mut table, common);
    table.push(vec![
        common.samples.into(),
        common.seed.into(),
        max_inverse.into(),
        max_det.into(),
        max_spectral.into(),
        "closed-form".into(),
    ]);
    Ok(table)
}

fn distance_cmd(common: &CommonArgs, budget: usize) -> Result<Table, CliError> {
    validate_common(common)?;
    let pairs = (common.samples / 400).clamp(10, 200);
    let mut rng = seeded_rng(common.seed, 0);
    let mut table = Table::new(
        "distance",
        vec![
            "index", "z_norm", "w_norm", "euclidean", "lower", "upper", "status", "budget",
            "seed", "method",
        ],
    );
    base_params(&mut table, common);
    table.param("budget", budget);
    table.param("pairs", pairs);
    for index in 0..pairs {
        let z = random_point(&mut rng, common.n, 0.99);
        let w = random_point(&mut rng, common.n, 0.99);
        let est = sigma_estimate(&z, &w, budget).map_err(CliError::Numeric)?;
        let status = match est.status {
            EstimateStatus::Resolved => "resolved",
            EstimateStatus::BudgetExhausted => "budget-exhausted",
        };
        table.push(vec![
            index.into(),
            z.norm().into(),
            w.norm().into(),
            z.dist(&w).into(),
            est.lower.into(),
            est.upper.into(),
            status.into(),
            budget.into(),
            common.seed.into(),
            "certified-bounds".into(),
        ]);
    }
    Ok(table)
}

fn ball_cmd(common: &CommonArgs, r: f64, grid: Option<&str>) -> Result<Table, CliError> {
    validate_common(common)?;
    let grid = grid_or(grid, default_boundary_grid())?;
    let n = common.n;
    let mut table = Table::new(
        "ball",
        vec![
            "z_norm",
            "r",
            "beyond_validated_radius",
            "volume",
            "stderr",
            "unknown_fraction",
            "normalized_ratio",
            "inner_violations",
            "outer_violations",
            "soundness_samples",
            "samples",
            "seed",
            "method",
        ],
    );
    base_params(&mut table, common);
    table.param("r", r);
    let beyond = r > psiball::geometry::VALIDATED_RADIUS;
    for (i, &g) in grid.iter().enumerate() {
        let z = ray_point(n, g)?;
        let vol = ball_volume(&z, r, common.samples, common.seed.wrapping_add(i as u64))
            .map_err(CliError::Numeric)?;
        let scale = z.one_minus_norm_sqr().powi(2 * n as i32 + 1);
        // Inclusion soundness around this center.
        let mut rng = seeded_rng(common.seed, 100 + i as u64);
        let soundness_samples = (common.samples / 10).max(200);
        let mut inner_violations = 0usize;
        let mut outer_violations = 0usize;
        let inner_region = DRegion::new(&z, r / 10.0 / INCLUSION_MARGIN);
        for _ in 0..soundness_samples {
            let coords = inner_region.sample_raw(&mut rng);
            if let Ok(w) = Point::new(coords) {
                if inner_region.contains(&w)
                    && ball_membership(&z, &w, r, 0).map_err(CliError::Numeric)?
                        == Membership::Outside
                {
                    inner_violations += 1;
                }
            }
            let w = random_point(&mut rng, n, 0.99);
            if !in_d_region(&z, &w, 18.0 * r * INCLUSION_MARGIN)
                && ball_membership(&z, &w, r, 0).map_err(CliError::Numeric)? == Membership::Inside
            {
                outer_violations += 1;
            }
        }
        table.push(vec![
            g.into(),
            r.into(),
            if beyond { "yes" } else { "no" }.into(),
            vol.estimate.into(),
            vol.stderr.into(),
            vol.unknown_fraction.into(),
            (vol.estimate / scale).into(),
            inner_violations.into(),
            outer_violations.into(),
            soundness_samples.into(),
            common.samples.into(),
            common.seed.into(),
            "monte-carlo".into(),
        ]);
    }
    Ok(table)
}

fn lattice_cmd(
    common: &CommonArgs,
    r: Option<f64>,
    density: Option<usize>,
    probes: usize,
    slack: Option<f64>,
) -> Result<Table, CliError> {
    validate_common(common)?;
    let mut cfg = LatticeConfig::default_for_dim(common.n, common.seed);
    if let Some(r) = r {
        cfg.radius = r;
    }
    if let Some(d) = density {
        cfg.density_per_shell = d;
    }
    let slack = slack.unwrap_or(COVERING_SLACK);
    let lattice = build_lattice(&cfg).map_err(CliError::Numeric)?;
    let mut rng = seeded_rng(common.seed, 55);
    let probe_cap = cfg.max_center_norm * 0.9;
    let probe_points: Vec<Point> = (0..probes)
        .map(|_| random_point(&mut rng, common.n, probe_cap))
        .collect();
    let violations =
        covering_violations(&lattice, &probe_points, slack, 2000).map_err(CliError::Numeric)?;
    let mut table = Table::new(
        "lattice",
        vec![
            "radius",
            "centers",
            "overlap_bound",
            "covering_violations",
            "probes",
            "probe_cap",
            "slack",
            "seed",
            "method",
        ],
    );
    base_params(&mut table, common);
    table.param("radius", cfg.radius);
    table.param("density_per_shell", cfg.density_per_shell);
    table.param("max_center_norm", cfg.max_center_norm);
    table.push(vec![
        lattice.radius.into(),
        lattice.centers.len().into(),
        lattice.overlap_bound.into(),
        violations.into(),
        probes.into(),
        probe_cap.into(),
        slack.into(),
        common.seed.into(),
        "greedy-certified".into(),
    ]);
    Ok(table)
}

fn testfn_cmd(common: &CommonArgs, p: f64, r: f64, grid: Option<&str>) -> Result<Table, CliError> {
    validate_common(common)?;
    let grid = grid_or(grid, default_boundary_grid())?;
    let mut table = Table::new(
        "testfn",
        vec![
            "z_norm",
            "p",
            "r",
            "norm_p_power",
            "stderr",
            "normalized_ratio",
            "key_inequality_sup",
            "samples",
            "seed",
            "method",
        ],
    );
    base_params(&mut table, common);
    table.param("p", p);
    table.param("r", r);
    for (i, &g) in grid.iter().enumerate() {
        let z = ray_point(common.n, g)?;
        let t = TestFunction::new(p, z.clone()).map_err(CliError::Numeric)?;
        let cfg = IntegrationConfig::new(common.n, common.samples, common.seed.wrapping_add(i as u64))
            .map_err(CliError::Numeric)?;
        let norm = test_norm(&t, &cfg).map_err(CliError::Numeric)?;
        let scale = z.one_minus_norm_sqr().powi(2 * common.n as i32 + 1);
        let kic = key_inequality_constant(&z, r, (common.samples / 5).max(1000), common.seed);
        table.push(vec![
            g.into(),
            p.into(),
            r.into(),
            norm.value.into(),
            norm.stderr.into(),
            (norm.value / scale).into(),
            kic.into(),
            common.samples.into(),
            common.seed.into(),
            method_tag(norm.method).into(),
        ]);
    }
    Ok(table)
}

/// A coarse lattice for the Carleson lattice statistic: the sup over its
/// centers only needs a spread of probe locations.
fn carleson_lattice(n: usize, seed: u64) -> LatticeConfig {
    let (radius, shells, density, max_norm) = match n {
        1 => (0.2, 10, 12, 0.8),
        2 => (0.3, 8, 10, 0.7),
        _ => (0.4, 6, 8, 0.6),
    };
    LatticeConfig {
        n,
        radius,
        density_per_shell: density,
        shells,
        max_center_norm: max_norm,
        seed,
        overlap_probes: 0,
    }
}

fn carleson_cmd(
    common: &CommonArgs,
    p: f64,
    r: f64,
    measure: &str,
    grid: Option<&str>,
) -> Result<Table, CliError> {
    validate_common(common)?;
    let mu = parse::parse_measure(measure)?;
    let mut cfg = CarlesonConfig::new(p, common.seed);
    cfg.samples = common.samples;
    cfg.r = r;
    cfg.boundary_grid = grid_or(grid, default_boundary_grid())?;
    let lattice =
        build_lattice(&carleson_lattice(common.n, common.seed)).map_err(CliError::Numeric)?;
    let report = carleson_check(&mu, common.n, &cfg, Some(&lattice)).map_err(CliError::Numeric)?;
    let verdict = match report.verdict {
        CarlesonVerdict::Carleson => "carleson",
        CarlesonVerdict::NotCarleson => "not-carleson",
        CarlesonVerdict::Inconclusive => "inconclusive",
    };
    let vanishing = match report.vanishing_verdict {
        VanishingVerdict::Vanishing => "vanishing",
        VanishingVerdict::NotVanishing => "not-vanishing",
        VanishingVerdict::Inconclusive => "inconclusive",
    };
    let mut table = Table::new(
        "carleson",
        vec![
            "z_norm",
            "mu_hat",
            "mu_hat_stderr",
            "ball_ratio",
            "ball_ratio_stderr",
            "sup_mu_hat",
            "sup_ball_ratio",
            "lattice_sup_ratio",
            "verdict",
            "vanishing_verdict",
            "p",
            "r",
            "samples",
            "seed",
            "method",
        ],
    );
    base_params(&mut table, common);
    table.param("p", p);
    table.param("r", r);
    table.param("measure", measure);
    table.param("lattice_centers", lattice.centers.len());
    let lattice_sup = report
        .lattice_sup_ratio
        .map(Cell::Float)
        .unwrap_or(Cell::Null);
    for row in &report.boundary_trace {
        table.push(vec![
            row.z_norm.into(),
            row.mu_hat.into(),
            row.mu_hat_stderr.into(),
            row.ball_ratio.into(),
            row.ball_ratio_stderr.into(),
            report.sup_mu_hat.into(),
            report.sup_ball_ratio.into(),
            lattice_sup.clone(),
            verdict.into(),
            vanishing.into(),
            p.into(),
            r.into(),
            common.samples.into(),
            common.seed.into(),
            "monte-carlo".into(),
        ]);
    }
    Ok(table)
}

fn cesaro_cmd(
    common: &CommonArgs,
    p: f64,
    symbol: &str,
    grid: Option<&str>,
    max_degree: u32,
) -> Result<Table, CliError> {
    validate_common(common)?;
    let symbol = parse::parse_cesaro_symbol(symbol, common.n)?;
    let grid = grid_or(grid, default_boundary_grid())?;
    let (sup, trace) = cesaro_symbol_statistic(&symbol, common.n, &grid, 5, common.seed);
    let mut table = Table::new(
        "cesaro",
        vec![
            "kind", "index", "z_norm", "p", "value", "sup_statistic", "samples", "seed", "method",
        ],
    );
    base_params(&mut table, common);
    table.param("p", p);
    table.param("max_degree", max_degree);
    for (g, v) in &trace {
        table.push(vec![
            "symbol_statistic".into(),
            Cell::Null,
            (*g).into(),
            Cell::Null,
            (*v).into(),
            sup.into(),
            common.samples.into(),
            common.seed.into(),
            "grid".into(),
        ]);
    }
    // Norm-equivalence suite over seeded random polynomials, plus the
    // operator norm-ratio when the symbol is polynomial.
    let mut rng = seeded_rng(common.seed, 3000);
    let suite = 20usize;
    for index in 0..suite {
        let f = MonomialFunction::random(common.n, max_degree.min(6), 6, &mut rng);
        let cfg = IntegrationConfig::new(
            common.n,
            common.samples,
            common.seed.wrapping_add(4000 + index as u64),
        )
        .map_err(CliError::Numeric)?;
        let ratio = norm_equivalence_ratio(&f, p, &cfg).map_err(CliError::Numeric)?;
        table.push(vec![
            "norm_equivalence".into(),
            index.into(),
            Cell::Null,
            p.into(),
            ratio.into(),
            sup.into(),
            common.samples.into(),
            common.seed.into(),
            "monte-carlo".into(),
        ]);
        if let CesaroSymbol::Polynomial(g) = &symbol {
            let vgf = cesaro_apply(g, &f, 2 * max_degree.max(6) + 2).map_err(CliError::Numeric)?;
            let num = weighted_norm(&vgf, p, &cfg).map_err(CliError::Numeric)?;
            let den = weighted_norm(&f, p, &cfg).map_err(CliError::Numeric)?;
            let value = if den.norm > 0.0 { num.norm / den.norm } else { f64::NAN };
            table.push(vec![
                "cesaro_norm_ratio".into(),
                index.into(),
                Cell::Null,
                p.into(),
                value.into(),
                sup.into(),
                common.samples.into(),
                common.seed.into(),
                "monte-carlo".into(),
            ]);
        }
    }
    Ok(table)
}

fn default_truncation(n: usize) -> u32 {
    match n {
        1 => 30,
        2 => 10,
        _ => 6,
    }
}

fn toeplitz_cmd(
    common: &CommonArgs,
    symbol: &str,
    max_degree: Option<u32>,
    grid: Option<&str>,
) -> Result<Table, CliError> {
    validate_common(common)?;
    let u = parse::parse_density(symbol)?;
    let degree = max_degree.unwrap_or_else(|| default_truncation(common.n));
    let basis = OrthonormalBasis::new(common.n, degree);
    let cfg = IntegrationConfig::new(common.n, common.samples, common.seed)
        .map_err(CliError::Numeric)?;
    let matrix = toeplitz_matrix(&basis, &u, &cfg).map_err(CliError::Numeric)?;
    let probe = toeplitz_norm_probe(&matrix).map_err(CliError::Numeric)?;
    let grid = grid_or(grid, default_boundary_grid())?;
    let mut table = Table::new(
        "toeplitz",
        vec![
            "kind", "index", "degree", "z_norm", "value", "stderr", "samples", "seed", "method",
        ],
    );
    base_params(&mut table, common);
    table.param("symbol", symbol);
    table.param("truncation_degree", degree);
    table.param("basis_size", basis.dim_space());
    let tag = method_tag(matrix.method);
    for (i, alpha) in basis.indices().iter().enumerate() {
        let deg: u32 = alpha.iter().sum();
        table.push(vec![
            "diagonal".into(),
            i.into(),
            (deg as usize).into(),
            Cell::Null,
            matrix.get(i, i).re.into(),
            matrix.stderr_of(i, i).into(),
            common.samples.into(),
            common.seed.into(),
            tag.into(),
        ]);
    }
    let mut sup_u_hat = 0.0f64;
    for (i, &g) in grid.iter().enumerate() {
        let z = ray_point(common.n, g)?;
        let cfg = IntegrationConfig::new(
            common.n,
            common.samples,
            common.seed.wrapping_add(600 + i as u64),
        )
        .map_err(CliError::Numeric)?;
        let value = u_hat(&u, &z, &cfg).map_err(CliError::Numeric)?;
        sup_u_hat = sup_u_hat.max(value.value);
        table.push(vec![
            "u_hat".into(),
            Cell::Null,
            Cell::Null,
            g.into(),
            value.value.into(),
            value.stderr.into(),
            common.samples.into(),
            common.seed.into(),
            method_tag(value.method).into(),
        ]);
    }
    for (kind, value) in [
        ("norm_probe", probe),
        ("hermitian_residual", matrix.hermitian_residual()),
        ("sup_u_hat", sup_u_hat),
    ] {
        table.push(vec![
            kind.into(),
            Cell::Null,
            Cell::Null,
            Cell::Null,
            value.into(),
            Cell::Null,
            common.samples.into(),
            common.seed.into(),
            tag.into(),
        ]);
    }
    Ok(table)
}

fn kernel_cmd(
    common: &CommonArgs,
    grid: Option<&str>,
    schedule: Option<&str>,
) -> Result<Table, CliError> {
    validate_common(common)?;
    let radial_grid = grid_or(grid, vec![0.0, 0.2, 0.4, 0.5, 0.6, 0.7, 0.8])?;
    let schedule = match schedule {
        Some(spec) => parse::parse_schedule(spec)?,
        None => match common.n {
            1 => vec![10, 20, 30],
            2 => vec![4, 7, 10],
            _ => vec![2, 4, 6],
        },
    };
    let rows = kernel_diagonal_trace(common.n, &radial_grid, &schedule).map_err(CliError::Numeric)?;
    let mut table = Table::new(
        "kernel",
        vec!["z_norm", "truncation_degree", "value", "seed", "method"],
    );
    base_params(&mut table, common);
    table.param("schedule", schedule.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
    for row in &rows {
        for (deg, value) in schedule.iter().zip(row.normalized.iter()) {
            table.push(vec![
                row.z_norm.into(),
                (*deg as usize).into(),
                (*value).into(),
                common.seed.into(),
                "truncated-basis".into(),
            ]);
        }
    }
    Ok(table)
}

/// Ray directions are deterministic for a seed; exposed for tests that
/// need the same sweep the commands use.
pub fn seeded_directions(n: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut dirs = Vec::with_capacity(count);
    let mut e1 = vec![Complex64::new(0.0, 0.0); n];
    e1[0] = Complex64::new(1.0, 0.0);
    dirs.push(e1);
    let mut rng = seeded_rng(seed, 917);
    while dirs.len() < count {
        dirs.push(unit_direction(&mut rng, n));
    }
    dirs
}
