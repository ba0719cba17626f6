//! Sweep drivers behind the command-line interface. Each driver evaluates a
//! parameter grid twice, once through the matrix pipeline and once through
//! the scalar formulas in [`closed_form`], writes a CSV with a reproducible
//! header plus a gnuplot script next to it, and enforces the cross-check
//! tolerances while it goes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use realitykit::harness::{fnv1a64, run_all, suite_passes, HarnessConfig, PropertyReport};
use realitykit::reality::{reality, reality_vn, Mode, RealityKind};
use realitykit::state::{parity_family, werner, ProjectiveObservable};

use crate::closed_form::{self, ChiVariant, LN_2};

/// Agreement required between the matrix pipeline and the scalar formulas.
pub const CLOSED_FORM_TOL: f64 = 1e-10;
/// Slack for inequality checks evaluated on sweep grids.
pub const ORDER_TOL: f64 = 1e-9;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Assertion(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Config(msg) => write!(f, "config error: {msg}"),
            Self::Assertion(msg) => write!(f, "assertion failure: {msg}"),
            Self::Io(err) => write!(f, "io error: {err}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::Io(err)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn assertion_err(msg: impl Into<String>) -> CliError {
    CliError::Assertion(msg.into())
}

/// CSV writer that pins the output format: a comment header carrying the
/// tool version, seed, and config hash, then rows at 17 significant digits
/// with comma delimiters and LF line endings.
struct CsvSink {
    buffer: String,
    path: PathBuf,
    rows: usize,
}

impl CsvSink {
    fn new(path: &Path, seed: u64, config: &str, columns: &[&str]) -> Self {
        let mut buffer = String::new();
        let _ = writeln!(buffer, "# realitykit {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(buffer, "# seed={seed}");
        let _ = writeln!(buffer, "# config=fnv1a:{:016x}", fnv1a64(config.as_bytes()));
        let _ = writeln!(buffer, "{}", columns.join(","));
        Self {
            buffer,
            path: path.to_path_buf(),
            rows: 0,
        }
    }

    fn row(&mut self, values: &[CsvValue]) {
        let mut line = String::new();
        for (k, value) in values.iter().enumerate() {
            if k > 0 {
                line.push(',');
            }
            match value {
                CsvValue::Number(x) => {
                    let _ = write!(line, "{x:.16e}");
                }
                CsvValue::Text(s) => line.push_str(s),
            }
        }
        let _ = writeln!(self.buffer, "{line}");
        self.rows += 1;
    }

    fn finish(self) -> CliResult<(PathBuf, usize)> {
        std::fs::write(&self.path, self.buffer)?;
        Ok((self.path, self.rows))
    }
}

enum CsvValue {
    Number(f64),
    Text(&'static str),
}

fn num(x: f64) -> CsvValue {
    CsvValue::Number(x)
}

fn write_plot_script(csv: &Path, body: &str) -> CliResult<PathBuf> {
    let path = csv.with_extension("gp");
    let csv_name = csv
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| config_err("output path has no file name"))?;
    let script = format!(
        "set datafile separator ','\nset datafile commentschars '#'\ncsv = '{csv_name}'\n{body}"
    );
    std::fs::write(&path, script)?;
    Ok(path)
}

fn grid(steps: usize) -> impl Iterator<Item = f64> {
    let denom = (steps - 1) as f64;
    (0..steps).map(move |j| j as f64 / denom)
}

fn check_steps(steps: usize) -> CliResult<()> {
    if steps < 2 {
        return Err(config_err(format!("steps must be at least 2, got {steps}")));
    }
    Ok(())
}

fn check_orders(label: &str, orders: &[f64], mode: Mode, kind: fn(f64) -> RealityKind) -> CliResult<()> {
    if orders.is_empty() {
        return Err(config_err(format!("{label} list is empty")));
    }
    for &order in orders {
        if !(order.is_finite() && order > 0.0) {
            return Err(config_err(format!("{label} {order} is not a positive number")));
        }
        if mode == Mode::Monotone && !kind(order).in_monotone_range() {
            return Err(config_err(format!(
                "{label} {order} has no monotonicity guarantee; rerun with --mode exploratory"
            )));
        }
    }
    Ok(())
}

fn z_observable() -> ProjectiveObservable {
    ProjectiveObservable::computational(0, 2)
}

/// Werner-state reality through the matrix pipeline, with orders near 1
/// routed to the von Neumann evaluation exactly like the scalar path.
fn numeric_werner(eps: f64, kind: RealityKind) -> CliResult<f64> {
    let state = werner(eps).map_err(|e| config_err(e.to_string()))?;
    let value = match kind {
        RealityKind::RenyiDown(a) if closed_form::near_one(a) => {
            reality_vn(&state, &z_observable())
        }
        RealityKind::Tsallis(q) if closed_form::near_one(q) => reality_vn(&state, &z_observable()),
        other => reality(&state, &z_observable(), other, Mode::Exploratory),
    };
    value
        .map(|r| r.value)
        .map_err(|e| assertion_err(format!("evaluation failed at eps={eps}: {e}")))
}

pub struct WernerConfig {
    pub alphas: Vec<f64>,
    pub steps: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub mode: Mode,
}

impl Default for WernerConfig {
    fn default() -> Self {
        Self {
            alphas: vec![0.125, 0.25, 0.5, 1.0 - 1e-6],
            steps: 201,
            seed: 7,
            out: PathBuf::from("werner_sweep.csv"),
            mode: Mode::Monotone,
        }
    }
}

pub struct SweepSummary {
    pub csv: PathBuf,
    pub script: PathBuf,
    pub rows: usize,
    pub max_abs_diff: f64,
}

/// Reality of one qubit of the Werner state across the purity grid, for each
/// requested Renyi order plus the two order-limit curves, cross-checked
/// against the scalar formulas and the concavity floor `(1-eps) ln 2`.
pub fn run_werner_sweep(cfg: &WernerConfig) -> CliResult<SweepSummary> {
    check_steps(cfg.steps)?;
    check_orders("alpha", &cfg.alphas, cfg.mode, RealityKind::RenyiDown)?;
    let config_line = format!(
        "werner-sweep;alphas={:?};steps={};seed={};mode={:?}",
        cfg.alphas, cfg.steps, cfg.seed, cfg.mode
    );
    let columns = ["eps", "alpha", "r_numeric", "r_closed_form", "abs_diff", "monotone"];
    let mut sink = CsvSink::new(&cfg.out, cfg.seed, &config_line, &columns);
    let mut max_abs_diff: f64 = 0.0;

    for eps in grid(cfg.steps) {
        for &alpha in &cfg.alphas {
            let kind = RealityKind::RenyiDown(alpha);
            let numeric = numeric_werner(eps, kind)?;
            let closed = closed_form::werner_down(alpha, eps);
            let diff = (numeric - closed).abs();
            if diff > CLOSED_FORM_TOL {
                return Err(assertion_err(format!(
                    "closed-form mismatch {diff:.3e} at eps={eps} alpha={alpha}"
                )));
            }
            if kind.in_monotone_range() && numeric < (1.0 - eps) * LN_2 - ORDER_TOL {
                return Err(assertion_err(format!(
                    "concavity floor violated at eps={eps} alpha={alpha}: {numeric}"
                )));
            }
            max_abs_diff = max_abs_diff.max(diff);
            sink.row(&[
                num(eps),
                num(alpha),
                num(numeric),
                num(closed),
                num(diff),
                CsvValue::Text(if kind.in_monotone_range() { "true" } else { "false" }),
            ]);
        }
        for (kind, closed) in [
            (RealityKind::MinRelative, closed_form::werner_alpha_zero_limit(eps)),
            (RealityKind::MaxRelative, closed_form::werner_alpha_infinity_limit(eps)),
        ] {
            let numeric = numeric_werner(eps, kind)?;
            let diff = (numeric - closed).abs();
            if diff > CLOSED_FORM_TOL {
                return Err(assertion_err(format!(
                    "closed-form mismatch {diff:.3e} at eps={eps} for {}",
                    kind.label()
                )));
            }
            max_abs_diff = max_abs_diff.max(diff);
            let alpha_tag = if kind == RealityKind::MinRelative { "0" } else { "inf" };
            sink.row(&[
                num(eps),
                CsvValue::Text(alpha_tag),
                num(numeric),
                num(closed),
                num(diff),
                CsvValue::Text("false"),
            ]);
        }
    }

    let (csv, rows) = sink.finish()?;
    let mut body = String::from(
        "set xlabel 'eps'\nset ylabel 'reality'\nset key bottom left\nplot \\\n",
    );
    for (k, &alpha) in cfg.alphas.iter().enumerate() {
        let _ = writeln!(
            body,
            "  csv using 1:(abs($2 - {alpha}) < 1e-12 ? $3 : 1/0) with lines title 'alpha = {alpha}',{}",
            if k + 1 < cfg.alphas.len() { " \\" } else { ""}
        );
    }
    let script = write_plot_script(&csv, &body)?;
    Ok(SweepSummary {
        csv,
        script,
        rows,
        max_abs_diff,
    })
}

pub struct MuConfig {
    pub alphas: Vec<f64>,
    pub polar_angles: Vec<f64>,
    pub steps: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub mode: Mode,
}

impl Default for MuConfig {
    fn default() -> Self {
        Self {
            alphas: vec![0.125, 0.25, 0.5, 1.0 - 1e-6],
            polar_angles: vec![0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2],
            steps: 201,
            seed: 7,
            out: PathBuf::from("mu_sweep.csv"),
            mode: Mode::Monotone,
        }
    }
}

pub struct MuSummary {
    pub csv: PathBuf,
    pub script: PathBuf,
    pub rows: usize,
    pub max_azimuth_spread: f64,
}

/// Reality of spin observables on the first qubit of the parity family
/// across `mu`, one curve per (polar angle, order). Every grid point is
/// checked for azimuth independence and for the order hierarchy.
pub fn run_mu_sweep(cfg: &MuConfig) -> CliResult<MuSummary> {
    check_steps(cfg.steps)?;
    check_orders("alpha", &cfg.alphas, cfg.mode, RealityKind::RenyiDown)?;
    for &polar in &cfg.polar_angles {
        if !polar.is_finite() {
            return Err(config_err(format!("polar angle {polar} is not finite")));
        }
    }
    let config_line = format!(
        "mu-sweep;alphas={:?};polar={:?};steps={};seed={};mode={:?}",
        cfg.alphas, cfg.polar_angles, cfg.steps, cfg.seed, cfg.mode
    );
    let columns = ["mu", "phi", "alpha", "r"];
    let mut sink = CsvSink::new(&cfg.out, cfg.seed, &config_line, &columns);
    let mut max_spread: f64 = 0.0;

    let evaluate = |mu: f64, azimuth: f64, polar: f64, alpha: f64| -> CliResult<f64> {
        let state = parity_family(mu).map_err(|e| config_err(e.to_string()))?;
        let obs = ProjectiveObservable::spin(0, azimuth, polar);
        let result = if closed_form::near_one(alpha) {
            reality_vn(&state, &obs)
        } else {
            reality(&state, &obs, RealityKind::RenyiDown(alpha), Mode::Exploratory)
        };
        result
            .map(|r| r.value)
            .map_err(|e| assertion_err(format!("evaluation failed at mu={mu}: {e}")))
    };

    for mu in grid(cfg.steps) {
        for &polar in &cfg.polar_angles {
            let mut ordered: Vec<(f64, f64)> = Vec::with_capacity(cfg.alphas.len());
            for &alpha in &cfg.alphas {
                let value = evaluate(mu, 0.0, polar, alpha)?;
                for azimuth in [0.9, 2.1] {
                    let rotated = evaluate(mu, azimuth, polar, alpha)?;
                    let spread = (rotated - value).abs();
                    if spread > ORDER_TOL {
                        return Err(assertion_err(format!(
                            "azimuth dependence {spread:.3e} at mu={mu} phi={polar} alpha={alpha}"
                        )));
                    }
                    max_spread = max_spread.max(spread);
                }
                ordered.push((alpha, value));
                sink.row(&[num(mu), num(polar), num(alpha), num(value)]);
            }
            ordered.sort_by(|a, b| a.0.total_cmp(&b.0));
            for pair in ordered.windows(2) {
                if pair[1].1 > pair[0].1 + ORDER_TOL {
                    return Err(assertion_err(format!(
                        "order hierarchy broken at mu={mu} phi={polar}: \
                         r({}) = {} < r({}) = {}",
                        pair[0].0, pair[0].1, pair[1].0, pair[1].1
                    )));
                }
            }
            if (mu - 1.0).abs() < 1e-12 {
                for &(alpha, value) in &ordered {
                    if value.abs() > 1e-8 {
                        return Err(assertion_err(format!(
                            "pure endpoint should carry no reality, got {value} at alpha={alpha}"
                        )));
                    }
                }
            }
        }
    }

    let (csv, rows) = sink.finish()?;
    let body = "set xlabel 'mu'\nset ylabel 'reality'\nset key bottom right\n\
                phis = '0 0.7853981633974483 1.5707963267948966'\n\
                set multiplot layout 1,3\n\
                do for [p in phis] {\n\
                  set title sprintf('phi = %s', p)\n\
                  plot csv using 1:(abs($2 - real(p)) < 1e-9 ? $4 : 1/0) with points pt 7 ps 0.2 notitle\n\
                }\n\
                unset multiplot\n"
        .to_string();
    let script = write_plot_script(&csv, &body)?;
    Ok(MuSummary {
        csv,
        script,
        rows,
        max_azimuth_spread: max_spread,
    })
}

pub struct GapConfig {
    pub steps: usize,
    pub seed: u64,
    pub out: PathBuf,
}

impl Default for GapConfig {
    fn default() -> Self {
        Self {
            steps: 99,
            seed: 7,
            out: PathBuf::from("updown_gap.csv"),
        }
    }
}

pub struct GapSummary {
    pub csv: PathBuf,
    pub script: PathBuf,
    pub rows: usize,
    pub max_gap: f64,
    pub argmax: (f64, f64),
    pub min_gap: f64,
    pub plus_max_gap: f64,
    pub plus_argmax: (f64, f64),
}

/// Surface of the optimized-minus-plain Renyi reality gap over an interior
/// `(alpha, eps)` grid, with both chi variants recorded and the matrix
/// pipeline consulted on a subsample of points.
pub fn run_updown_gap(cfg: &GapConfig) -> CliResult<GapSummary> {
    if cfg.steps < 2 {
        return Err(config_err(format!("steps must be at least 2, got {}", cfg.steps)));
    }
    let config_line = format!("updown-gap;steps={};seed={}", cfg.steps, cfg.seed);
    let columns = ["alpha", "eps", "r_up", "r_up_plus", "r_down", "gap", "gap_plus"];
    let mut sink = CsvSink::new(&cfg.out, cfg.seed, &config_line, &columns);

    let denom = (cfg.steps + 1) as f64;
    let mut max_gap = f64::NEG_INFINITY;
    let mut argmax = (0.0, 0.0);
    let mut plus_max_gap = f64::NEG_INFINITY;
    let mut plus_argmax = (0.0, 0.0);
    let mut min_gap = f64::INFINITY;

    for i in 1..=cfg.steps {
        let alpha = i as f64 / denom;
        for j in 1..=cfg.steps {
            let eps = j as f64 / denom;
            let up = closed_form::werner_up(alpha, eps, ChiVariant::MinusEps);
            let up_plus = closed_form::werner_up(alpha, eps, ChiVariant::PlusEps);
            let down = closed_form::werner_down(alpha, eps);
            let gap = up - down;
            let gap_plus = up_plus - down;
            if gap > max_gap {
                max_gap = gap;
                argmax = (alpha, eps);
            }
            if gap_plus > plus_max_gap {
                plus_max_gap = gap_plus;
                plus_argmax = (alpha, eps);
            }
            min_gap = min_gap.min(gap);
            if gap < -ORDER_TOL {
                return Err(assertion_err(format!(
                    "ordering broken at alpha={alpha} eps={eps}: gap={gap:.3e}"
                )));
            }
            if i % 7 == 3 && j % 11 == 5 {
                let numeric_up = numeric_werner(eps, RealityKind::RenyiUp(alpha))?;
                let numeric_down = numeric_werner(eps, RealityKind::RenyiDown(alpha))?;
                if (numeric_up - up).abs() > CLOSED_FORM_TOL
                    || (numeric_down - down).abs() > CLOSED_FORM_TOL
                {
                    return Err(assertion_err(format!(
                        "matrix pipeline disagrees at alpha={alpha} eps={eps}"
                    )));
                }
            }
            sink.row(&[
                num(alpha),
                num(eps),
                num(up),
                num(up_plus),
                num(down),
                num(gap),
                num(gap_plus),
            ]);
        }
    }

    let (csv, rows) = sink.finish()?;
    let body = format!(
        "set xlabel 'alpha'\nset ylabel 'eps'\nset view map\nset dgrid3d {n},{n}\n\
         splot csv using 1:2:6 with pm3d notitle\n",
        n = cfg.steps
    );
    let script = write_plot_script(&csv, &body)?;
    Ok(GapSummary {
        csv,
        script,
        rows,
        max_gap,
        argmax,
        min_gap,
        plus_max_gap,
        plus_argmax,
    })
}

pub struct TsallisConfig {
    pub qs: Vec<f64>,
    pub steps: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub mode: Mode,
}

impl Default for TsallisConfig {
    fn default() -> Self {
        Self {
            qs: vec![0.5, 1.0 - 1e-6, 1.5, 2.0],
            steps: 201,
            seed: 7,
            out: PathBuf::from("tsallis_sweep.csv"),
            mode: Mode::Monotone,
        }
    }
}

/// Tsallis reality of the Werner state across the purity grid, one curve per
/// order, cross-checked against the scalar formulas and nonincreasing in `q`
/// at every grid point.
pub fn run_tsallis_sweep(cfg: &TsallisConfig) -> CliResult<SweepSummary> {
    check_steps(cfg.steps)?;
    check_orders("q", &cfg.qs, cfg.mode, RealityKind::Tsallis)?;
    let config_line = format!(
        "tsallis-sweep;qs={:?};steps={};seed={};mode={:?}",
        cfg.qs, cfg.steps, cfg.seed, cfg.mode
    );
    let columns = ["eps", "q", "r_numeric", "r_closed_form", "abs_diff"];
    let mut sink = CsvSink::new(&cfg.out, cfg.seed, &config_line, &columns);
    let mut max_abs_diff: f64 = 0.0;

    let mut sorted_qs = cfg.qs.clone();
    sorted_qs.sort_by(f64::total_cmp);

    for eps in grid(cfg.steps) {
        let mut by_q: Vec<(f64, f64)> = Vec::with_capacity(sorted_qs.len());
        for &q in &cfg.qs {
            let numeric = numeric_werner(eps, RealityKind::Tsallis(q))?;
            let closed = closed_form::werner_tsallis(q, eps);
            let diff = (numeric - closed).abs();
            if diff > CLOSED_FORM_TOL {
                return Err(assertion_err(format!(
                    "closed-form mismatch {diff:.3e} at eps={eps} q={q}"
                )));
            }
            max_abs_diff = max_abs_diff.max(diff);
            by_q.push((q, numeric));
            sink.row(&[num(eps), num(q), num(numeric), num(closed), num(diff)]);
        }
        by_q.sort_by(|a, b| a.0.total_cmp(&b.0));
        for pair in by_q.windows(2) {
            if pair[1].1 > pair[0].1 + ORDER_TOL {
                return Err(assertion_err(format!(
                    "q-monotonicity broken at eps={eps}: r({}) < r({})",
                    pair[0].0, pair[1].0
                )));
            }
        }
    }

    let (csv, rows) = sink.finish()?;
    let mut body = String::from(
        "set xlabel 'eps'\nset ylabel 'reality'\nset key bottom left\nplot \\\n",
    );
    for (k, &q) in cfg.qs.iter().enumerate() {
        let _ = writeln!(
            body,
            "  csv using 1:(abs($2 - {q}) < 1e-12 ? $3 : 1/0) with lines title 'q = {q}',{}",
            if k + 1 < cfg.qs.len() { " \\" } else { "" }
        );
    }
    let script = write_plot_script(&csv, &body)?;
    Ok(SweepSummary {
        csv,
        script,
        rows,
        max_abs_diff,
    })
}

pub struct SuiteConfig {
    pub seed: u64,
    pub batch: Option<usize>,
    pub filter: Option<String>,
    pub out: PathBuf,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            batch: None,
            filter: None,
            out: PathBuf::from("axiom_suite.jsonl"),
        }
    }
}

pub struct SuiteSummary {
    pub jsonl: PathBuf,
    pub reports: Vec<PropertyReport>,
    pub all_pass: bool,
}

/// Runs the property-check registry and writes one JSON report per line.
pub fn run_axiom_suite(cfg: &SuiteConfig) -> CliResult<SuiteSummary> {
    if let Some(batch) = cfg.batch {
        if batch == 0 {
            return Err(config_err("batch must be positive"));
        }
    }
    let harness_cfg = HarnessConfig {
        seed: cfg.seed,
        batch: cfg.batch,
        filter: cfg.filter.clone(),
    };
    let reports = run_all(&harness_cfg);
    if reports.is_empty() {
        return Err(config_err(format!(
            "filter {:?} matches no registered check",
            cfg.filter.as_deref().unwrap_or("")
        )));
    }
    let mut buffer = String::new();
    for report in &reports {
        let _ = writeln!(buffer, "{}", report.to_json_line());
    }
    std::fs::write(&cfg.out, buffer)?;
    let all_pass = suite_passes(&reports);
    Ok(SuiteSummary {
        jsonl: cfg.out.clone(),
        reports,
        all_pass,
    })
}
