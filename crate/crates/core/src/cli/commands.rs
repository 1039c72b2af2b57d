use std::path::Path;

use serde_json::{json, Value};

use super::args::{
    Band, Command, ConvergentArgs, FileConfig, Grid, Kind, ParamArgs, PhiArgs, SimulateArgs,
    SpectrumArgs, TaperArg,
};
use super::{Cell, Failure, Report};
use crate::goldmean::{convergent, convergent_evolution, GOLDEN_MEAN};
use crate::params::Params;
use crate::scalefun::eval_phi;
use crate::spectra::{default_band, fit_exponent, periodogram, Taper};
use crate::stochproc::{cascade_path, spectral_path, SamplePath};
use crate::verify;

const DEFAULT_N_MAX: u32 = 10;
const DEFAULT_SIM_LEN: usize = 1 << 16;
const DEFAULT_ALPHA: f64 = 1.0;
/// Epoch growth used by the cascade when `k = 0` leaves `1/|k|` undefined.
const FALLBACK_LAMBDA: f64 = 10.0;

type Dispatched = (&'static str, Params, Value, Report);

pub(super) fn dispatch(cmd: &Command, cfg: &FileConfig) -> Result<Dispatched, Failure> {
    match cmd {
        Command::Phi(a) => phi(a, cfg),
        Command::Convergents(a) => convergents(a, cfg),
        Command::Simulate(a) => simulate(a, cfg),
        Command::Spectrum(a) => spectrum(a, cfg),
        Command::Verify => Ok((
            "verify",
            resolve_params(&ParamArgs::default(), cfg, None)?,
            json!({}),
            run_verify(),
        )),
    }
}

fn resolve_params(a: &ParamArgs, cfg: &FileConfig, seed: Option<u64>) -> Result<Params, Failure> {
    let base = Params::default();
    let mut p = Params::new(
        a.k.or(cfg.k).unwrap_or(base.k),
        a.depth.or(cfg.depth).unwrap_or(base.depth),
    )?;
    if let Some(eps) = a.eps_one.or(cfg.eps_one) {
        p = p.with_eps_one(eps)?;
    }
    Ok(p.with_seed(seed.or(cfg.seed).unwrap_or(base.seed)))
}

fn from_config<T: std::str::FromStr<Err = String>>(
    flag: Option<T>,
    text: &Option<String>,
    key: &str,
) -> Result<Option<T>, Failure> {
    match (flag, text) {
        (Some(v), _) => Ok(Some(v)),
        (None, Some(s)) => s
            .parse()
            .map(Some)
            .map_err(|e| Failure::Usage(format!("config key `{key}`: {e}"))),
        (None, None) => Ok(None),
    }
}

fn table(columns: Vec<&'static str>, rows: Vec<Vec<Cell>>, results: Value) -> Report {
    Report {
        columns,
        rows,
        results,
        text: None,
        exit_code: 0,
    }
}

fn phi(a: &PhiArgs, cfg: &FileConfig) -> Result<Dispatched, Failure> {
    let p = resolve_params(&a.params, cfg, None)?;
    let t = a.t.or(cfg.t);
    let grid: Option<Grid> = from_config(a.grid, &cfg.grid, "grid")?;
    let points = match (t, grid) {
        (Some(t), None) => vec![t],
        (None, Some(g)) => g.points(),
        (Some(_), Some(_)) => {
            return Err(Failure::Usage("give either --t or --grid, not both".into()))
        }
        (None, None) => return Err(Failure::Usage("phi needs --t or --grid".into())),
    };
    let mut rows = Vec::with_capacity(points.len());
    let mut max_bound = 0.0f64;
    let mut max_depth = 0;
    for t in points {
        let v = eval_phi(t, &p)?;
        max_bound = max_bound.max(v.bound);
        max_depth = max_depth.max(v.depth_used);
        rows.push(vec![
            Cell::Real(t),
            Cell::Real(v.value),
            Cell::Real(v.bound),
        ]);
    }
    let results = json!({
        "points": rows.len(),
        "max_bound": max_bound,
        "max_depth_used": max_depth,
    });
    let options = json!({ "t": t, "grid": grid });
    Ok((
        "phi",
        p,
        options,
        table(vec!["t", "phi", "bound"], rows, results),
    ))
}

fn convergents(a: &ConvergentArgs, cfg: &FileConfig) -> Result<Dispatched, Failure> {
    let p = resolve_params(&a.params, cfg, None)?;
    let n_max = a.n_max.or(cfg.n_max).unwrap_or(DEFAULT_N_MAX);
    let evolve = a.evolve || cfg.evolve.unwrap_or(false);
    let options = json!({ "n_max": n_max, "evolve": evolve });

    if evolve {
        let seq = convergent_evolution(&p, n_max as usize)?;
        let rows: Vec<Vec<Cell>> = seq
            .iter()
            .enumerate()
            .map(|(n, &v)| {
                vec![
                    Cell::Int(n as i64),
                    Cell::Real(v),
                    Cell::Real(v - GOLDEN_MEAN),
                ]
            })
            .collect();
        let last = *seq.last().expect("sequence starts with ν_0");
        let results = json!({
            "initial_gap": (seq[0] - GOLDEN_MEAN).abs(),
            "terminal_gap": (last - GOLDEN_MEAN).abs(),
            "terminal_value": last,
        });
        return Ok((
            "convergents",
            p,
            options,
            table(vec!["n", "nu", "gap"], rows, results),
        ));
    }

    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut last_gap = 0.0;
    for n in 1..=n_max {
        let c = convergent(n)?;
        last_gap = c.gap;
        rows.push(vec![
            Cell::Int(n as i64),
            Cell::Int(c.p as i64),
            Cell::Int(c.q as i64),
            Cell::Real(c.value),
            Cell::Real(c.gap),
        ]);
    }
    let results = json!({ "count": rows.len(), "last_gap": last_gap });
    Ok((
        "convergents",
        p,
        options,
        table(vec!["n", "p", "q", "value", "gap"], rows, results),
    ))
}

fn simulate(a: &SimulateArgs, cfg: &FileConfig) -> Result<Dispatched, Failure> {
    let p = resolve_params(&a.params, cfg, a.seed)?;
    let kind = a
        .kind
        .or(cfg.kind)
        .ok_or_else(|| Failure::Usage("simulate needs --kind cascade|spectral".into()))?;
    let n = a.n.or(cfg.n).unwrap_or(DEFAULT_SIM_LEN);

    let (path, options): (SamplePath, Value) = match kind {
        Kind::Cascade => {
            let lambda = a.lambda.or(cfg.lambda).unwrap_or(if p.k == 0.0 {
                FALLBACK_LAMBDA
            } else {
                1.0 / p.k.abs()
            });
            let path = cascade_path(&p, n, lambda)?;
            (path, json!({ "kind": kind, "n": n, "lambda": lambda }))
        }
        Kind::Spectral => {
            let alpha = a.alpha.or(cfg.alpha).unwrap_or(DEFAULT_ALPHA);
            let path = spectral_path(alpha, n, p.seed)?;
            (path, json!({ "kind": kind, "n": n, "alpha": alpha }))
        }
    };

    let mean = path.values.iter().sum::<f64>() / n as f64;
    let rms = (path.values.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
    let results = json!({
        "n": path.n,
        "t0": path.t0,
        "dt": path.dt,
        "epochs": path.epochs,
        "signs": path.signs,
        "mean": mean,
        "rms": rms,
    });
    let rows = path
        .times()
        .zip(&path.values)
        .map(|(t, &x)| vec![Cell::Real(t), Cell::Real(x)])
        .collect();
    Ok(("simulate", p, options, table(vec!["t", "x"], rows, results)))
}

/// Reads the signal column of a CSV file: `x` if present, else the last one.
pub fn read_signal(path: &Path) -> Result<Vec<f64>, Failure> {
    if !path.is_file() {
        return Err(Failure::Usage(format!(
            "input file {} not found",
            path.display()
        )));
    }
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Failure::Runtime(format!("cannot read {}: {e}", path.display())))?;
    let headers = rdr
        .headers()
        .map_err(|e| Failure::Runtime(format!("bad header in {}: {e}", path.display())))?
        .clone();
    if headers.is_empty() {
        return Err(Failure::Runtime(format!(
            "{} has no columns",
            path.display()
        )));
    }
    let col = headers
        .iter()
        .position(|h| h == "x")
        .unwrap_or(headers.len() - 1);
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Failure::Runtime(format!("row {}: {e}", i + 2)))?;
        let field = rec.get(col).unwrap_or("");
        let v: f64 = field
            .parse()
            .map_err(|_| Failure::Runtime(format!("row {}: malformed value `{field}`", i + 2)))?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(Failure::Runtime(format!(
            "{} has no data rows",
            path.display()
        )));
    }
    Ok(values)
}

fn spectrum(a: &SpectrumArgs, cfg: &FileConfig) -> Result<Dispatched, Failure> {
    let p = resolve_params(&ParamArgs::default(), cfg, None)?;
    let input = a
        .input
        .clone()
        .or_else(|| cfg.input.clone())
        .ok_or_else(|| Failure::Usage("spectrum needs --input".into()))?;
    let segments = a.segments.or(cfg.segments).unwrap_or(1);
    let band: Option<Band> = from_config(a.band, &cfg.band, "band")?;
    let taper = match a.taper.or(cfg.taper).unwrap_or(TaperArg::Hann) {
        TaperArg::Hann => Taper::Hann,
        TaperArg::Rectangular => Taper::Rectangular,
    };

    let values = read_signal(&input)?;
    let est = periodogram(&values, segments, taper)?;
    let (lo, hi) = band.map_or_else(|| default_band(est.segment_len), |b| (b.lo, b.hi));
    let est = fit_exponent(&est, lo, hi)?;

    let results = json!({
        "n": values.len(),
        "segments": est.segments,
        "segment_len": est.segment_len,
        "exponent": est.exponent,
        "stderr": est.stderr,
        "fit_lo": est.fit_lo,
        "fit_hi": est.fit_hi,
        "fitted_bins": est.fitted_bins,
        "excluded_bins": est.excluded_bins,
    });
    let options = json!({
        "input": input,
        "segments": segments,
        "band": [lo, hi],
        "taper": taper,
    });
    let rows = est
        .freqs
        .iter()
        .zip(&est.powers)
        .map(|(&f, &s)| vec![Cell::Real(f), Cell::Real(s)])
        .collect();
    Ok((
        "spectrum",
        p,
        options,
        table(vec!["freq", "power"], rows, results),
    ))
}

fn run_verify() -> Report {
    let checks = verify::run_all();
    let passed = verify::all_passed(&checks);
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for c in &checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{mark}  {:<width$}  {}\n", c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                Cell::Text(c.name.to_string()),
                Cell::Text(if c.passed { "pass" } else { "fail" }.to_string()),
                Cell::Text(c.detail.clone()),
            ]
        })
        .collect();
    Report {
        columns: vec!["check", "status", "detail"],
        rows,
        results: json!({ "checks": checks.len(), "failed": failed, "all_passed": passed }),
        text: Some(text),
        exit_code: if passed { 0 } else { 1 },
    }
}
