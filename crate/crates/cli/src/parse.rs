use num_complex::Complex64;
use psiball::carleson::{DensityKind, MeasureSpec};
use psiball::operators::CesaroSymbol;
use psiball::Point;

use crate::CliError;

/// Parses `--measure`: `lebesgue`, `power:A`, `const:C`,
/// `gauss:WIDTH[,CENTER]`, or a path to a JSON atom list
/// (`[{"point": [re1, im1, ...], "mass": m}, ...]`).
pub fn parse_measure(spec: &str) -> Result<MeasureSpec, CliError> {
    if spec.ends_with(".json") {
        return load_atoms(spec);
    }
    if spec == "lebesgue" || spec == "volume" {
        return Ok(MeasureSpec::LebesgueVolume);
    }
    Ok(MeasureSpec::Density(parse_density(spec)?))
}

/// Parses a density symbol: `const:C`, `power:A`, `gauss:WIDTH[,CENTER]`.
pub fn parse_density(spec: &str) -> Result<DensityKind, CliError> {
    let (name, args) = split_spec(spec);
    match name {
        "const" => Ok(DensityKind::Constant(parse_f64(args.first(), "const:C needs C")?)),
        "power" => Ok(DensityKind::BoundaryPower {
            exponent: parse_f64(args.first(), "power:A needs the exponent A")?,
        }),
        "gauss" => {
            let width = parse_f64(args.first(), "gauss:WIDTH[,CENTER] needs WIDTH")?;
            let center_norm = match args.get(1) {
                Some(v) => parse_f64(Some(v), "bad gauss center")?,
                None => 0.0,
            };
            if !(width > 0.0) {
                return Err(CliError::Config("gaussian width must be positive".into()));
            }
            Ok(DensityKind::GaussianBump { center_norm, width })
        }
        other => Err(CliError::Config(format!("unknown density '{other}'"))),
    }
}

/// Parses `--symbol` for the Cesaro command: `coord:J` (1-based) or
/// `invsq[:ANCHOR]` with the anchor at `ANCHOR * e_1`.
pub fn parse_cesaro_symbol(spec: &str, n: usize) -> Result<CesaroSymbol, CliError> {
    use psiball::funcspace::MonomialFunction;
    let (name, args) = split_spec(spec);
    match name {
        "coord" => {
            let j = args
                .first()
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| CliError::Config("coord:J needs a coordinate index".into()))?;
            if j == 0 || j > n {
                return Err(CliError::Config(format!("coordinate index {j} out of 1..={n}")));
            }
            Ok(CesaroSymbol::Polynomial(MonomialFunction::coordinate(n, j - 1)))
        }
        "invsq" => {
            let anchor_norm = match args.first() {
                Some(v) => parse_f64(Some(v), "bad invsq anchor")?,
                None => 1.0 - 1e-9,
            };
            let mut coords = vec![0.0f64; 2 * n];
            coords[0] = anchor_norm;
            let anchor = Point::from_real_coords(&coords).map_err(CliError::Numeric)?;
            Ok(CesaroSymbol::InverseSquare { anchor })
        }
        other => Err(CliError::Config(format!("unknown cesaro symbol '{other}'"))),
    }
}

/// Comma-separated float grid.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("bad grid value '{s}'")))
        })
        .collect()
}

/// Comma-separated integer schedule.
pub fn parse_schedule(spec: &str) -> Result<Vec<u32>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Config(format!("bad schedule value '{s}'")))
        })
        .collect()
}

fn split_spec(spec: &str) -> (&str, Vec<&str>) {
    match spec.split_once(':') {
        Some((name, rest)) => (name, rest.split(',').collect()),
        None => (spec, Vec::new()),
    }
}

fn parse_f64(value: Option<&&str>, msg: &str) -> Result<f64, CliError> {
    value
        .and_then(|v| v.trim().parse::<f64>().ok())
        .ok_or_else(|| CliError::Config(msg.into()))
}

fn load_atoms(path: &str) -> Result<MeasureSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read atom file '{path}': {e}")))?;
    let parsed: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("bad atom JSON in '{path}': {e}")))?;
    let list = parsed
        .as_array()
        .ok_or_else(|| CliError::Config("atom file must hold a JSON array".into()))?;
    let mut atoms = Vec::with_capacity(list.len());
    for entry in list {
        let point = entry
            .get("point")
            .and_then(|p| p.as_array())
            .ok_or_else(|| CliError::Config("atom entry needs a 'point' array".into()))?;
        let reals: Option<Vec<f64>> = point.iter().map(|v| v.as_f64()).collect();
        let reals = reals.ok_or_else(|| CliError::Config("atom point must be numeric".into()))?;
        if reals.len() % 2 != 0 {
            return Err(CliError::Config(
                "atom point needs interleaved [re, im, ...] coordinates".into(),
            ));
        }
        let coords: Vec<Complex64> = reals.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
        let mass = entry
            .get("mass")
            .and_then(|m| m.as_f64())
            .ok_or_else(|| CliError::Config("atom entry needs a numeric 'mass'".into()))?;
        let p = Point::new(coords).map_err(CliError::Numeric)?;
        atoms.push((p, mass));
    }
    MeasureSpec::atomic(atoms).map_err(CliError::Numeric)
}
