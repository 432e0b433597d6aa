//! `tavis` command line: `series`, `sweep` and `validate`.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 I/O error,
//! 4 analytic-vs-oracle validation failure.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use thiserror::Error;

use crate::dynamics::{Family, WStateSpec};
use crate::entanglement::{
    concurrence_xstate, sample_amplitudes, scan_esd, scan_state, ConcurrenceSeries,
    DEFAULT_MIN_WINDOW, DEFAULT_ZERO_THRESHOLD,
};
use crate::grid;
use crate::kernels::MiddleTerm;
use crate::oracle::{validate_analytic_with, ORACLE_TOL};

pub const DEFAULT_GT_MAX: f64 = 25.0;
pub const DEFAULT_STEPS: usize = 2001;
pub const DEFAULT_VALIDATE_STEPS: usize = 200;
pub const DEFAULT_ALPHA_GRID: &str = "0:6:1";
/// Coefficients closer than this to unit norm are rescaled with a warning.
pub const AUTO_NORMALIZE_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("validation failed: analytic propagator deviates from the oracle")]
    Validation,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Validation => 4,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tavis",
    version,
    about = "Atom-atom entanglement in the two-photon two-mode Tavis-Cummings model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Concurrence and amplitudes on a uniform time grid (CSV).
    Series(RunArgs),
    /// Death-window statistics over a grid of dipole strengths (CSV).
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// `start:end:step`, or a comma-separated list.
        #[arg(long, allow_hyphen_values = true)]
        alpha_grid: Option<String>,
    },
    /// Compare the analytic block propagators with exp(-iHt).
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// a = b = c = 1/sqrt(3)
    Equal,
    /// a = sqrt(2/3), b = c = 1/sqrt(6)
    HeavyA,
    /// b = sqrt(2/3), a = c = 1/sqrt(6)
    HeavyB,
    /// c = sqrt(2/3), a = b = 1/sqrt(6)
    HeavyC,
}

impl Preset {
    pub fn coeffs(self) -> [Complex64; 3] {
        let big = (2.0f64 / 3.0).sqrt();
        let small = 1.0 / 6f64.sqrt();
        let eq = 1.0 / 3f64.sqrt();
        let [a, b, c] = match self {
            Preset::Equal => [eq, eq, eq],
            Preset::HeavyA => [big, small, small],
            Preset::HeavyB => [small, big, small],
            Preset::HeavyC => [small, small, big],
        };
        [a.into(), b.into(), c.into()]
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        <Preset as ValueEnum>::from_str(s.trim(), true)
            .map_err(|_| CliError::Usage(format!("unknown preset `{s}`")))
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Initial-state family, 1 or 2.
    #[arg(long)]
    pub family: Option<u8>,
    /// Coefficients `a,b,c`; each is `re`, `imj` or `re+imj`.
    #[arg(long, conflicts_with = "preset", allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Named coefficient set.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Dipole strength over coupling constant.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub gt_max: Option<f64>,
    /// Number of grid points, both endpoints included.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub zero_threshold: Option<f64>,
    #[arg(long)]
    pub min_window: Option<f64>,
    /// Output file (standard output when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `key = value` file with the same keys as the long flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Comma-separated families.
    #[arg(long, default_value = "1,2")]
    pub families: String,
    /// Comma-separated dipole strengths.
    #[arg(long, default_value = "0,1,6")]
    pub alpha_list: String,
    #[arg(long, default_value_t = DEFAULT_GT_MAX)]
    pub gt_max: f64,
    #[arg(long, default_value_t = DEFAULT_VALIDATE_STEPS)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = MiddleTermArg::Derived, hide = true)]
    pub middle_term: MiddleTermArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MiddleTermArg {
    Derived,
    BracketLiteral,
    SignFlipped,
}

impl From<MiddleTermArg> for MiddleTerm {
    fn from(m: MiddleTermArg) -> Self {
        match m {
            MiddleTermArg::Derived => MiddleTerm::Derived,
            MiddleTermArg::BracketLiteral => MiddleTerm::BracketLiteral,
            MiddleTermArg::SignFlipped => MiddleTerm::SignFlipped,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Stdout,
    Path(PathBuf),
}

/// Fully resolved settings for `series` and `sweep`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub spec: WStateSpec,
    pub alpha: f64,
    pub gt_max: f64,
    pub steps: usize,
    pub zero_threshold: f64,
    pub min_window: f64,
    pub output: Output,
    pub alpha_grid: Option<Vec<f64>>,
    /// Diagnostics produced while resolving (e.g. auto-normalization).
    pub warnings: Vec<String>,
}

impl RunConfig {
    pub fn grid(&self) -> Vec<f64> {
        grid::uniform(0.0, self.gt_max, self.steps).expect("validated at resolve time")
    }
}

/// Parses `re`, `imj`, `re+imj` or `re-imj` (`i` is accepted for `j`).
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Usage(format!("cannot parse complex literal `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
        return Ok(Complex64::new(num(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(x),
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

pub fn parse_coeffs(s: &str) -> Result<[Complex64; 3], CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "expected three coefficients a,b,c, got `{s}`"
        )));
    }
    Ok([
        parse_complex(parts[0])?,
        parse_complex(parts[1])?,
        parse_complex(parts[2])?,
    ])
}

/// `start:end:step`, a single value, or a comma-separated list.
pub fn parse_alpha_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let s = s.trim();
    let num = |x: &str| {
        x.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("bad number `{x}` in alpha grid `{s}`")))
    };
    let values = if s.contains(':') {
        let p: Vec<&str> = s.split(':').collect();
        if p.len() != 3 {
            return Err(CliError::Usage(format!(
                "alpha grid must be start:end:step, got `{s}`"
            )));
        }
        grid::inclusive_range(num(p[0])?, num(p[1])?, num(p[2])?)?
    } else {
        parse_number_list(s)?
    };
    if values.is_empty() {
        return Err(CliError::Usage("alpha grid is empty".into()));
    }
    check_alphas(&values)?;
    Ok(values)
}

fn parse_number_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number `{x}`")))
        })
        .collect()
}

fn check_alphas(values: &[f64]) -> Result<(), CliError> {
    match values.iter().find(|a| !(a.is_finite() && **a >= 0.0)) {
        Some(a) => Err(CliError::Usage(format!(
            "alpha must be finite and >= 0, got {a}"
        ))),
        None => Ok(()),
    }
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<HashMap<String, String>, CliError> {
    const KEYS: [&str; 10] = [
        "family",
        "coeffs",
        "preset",
        "alpha",
        "alpha-grid",
        "gt-max",
        "steps",
        "zero-threshold",
        "min-window",
        "out",
    ];
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key = value", lineno + 1))
        })?;
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key `{}`",
                lineno + 1,
                k.trim()
            )));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse::<T>()
        .map_err(|_| CliError::Usage(format!("invalid value `{v}` for {key}")))
}

/// Merges flags over the config file over defaults and validates the result.
pub fn resolve(args: &RunArgs, alpha_grid: Option<&str>) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(p) => read_config_file(p)?,
        None => HashMap::new(),
    };
    let from_file = |key: &str| file.get(key).map(String::as_str);

    let family_num = match args.family {
        Some(f) => f,
        None => from_file("family")
            .map(|v| parse_value("family", v))
            .transpose()?
            .unwrap_or(1),
    };
    let family = Family::from_number(family_num)?;

    let coeffs = if let Some(c) = &args.coeffs {
        parse_coeffs(c)?
    } else if let Some(p) = args.preset {
        p.coeffs()
    } else if let Some(c) = from_file("coeffs") {
        parse_coeffs(c)?
    } else if let Some(p) = from_file("preset") {
        Preset::parse(p)?.coeffs()
    } else {
        Preset::Equal.coeffs()
    };
    let mut warnings = Vec::new();
    let (spec, deviation) = WStateSpec::normalizing(family, coeffs, AUTO_NORMALIZE_TOL)
        .map_err(|e| CliError::Usage(format!("coefficients rejected: {e}")))?;
    if deviation > crate::dynamics::SPEC_NORM_TOL {
        warnings.push(format!(
            "warning: coefficients were off unit norm by {deviation:e}; rescaled"
        ));
    }

    let get_f64 = |flag: Option<f64>, key: &str, default: f64| -> Result<f64, CliError> {
        match flag {
            Some(v) => Ok(v),
            None => from_file(key)
                .map(|v| parse_value(key, v))
                .transpose()
                .map(|v| v.unwrap_or(default)),
        }
    };
    let alpha = get_f64(args.alpha, "alpha", 0.0)?;
    let gt_max = get_f64(args.gt_max, "gt-max", DEFAULT_GT_MAX)?;
    let zero_threshold = get_f64(
        args.zero_threshold,
        "zero-threshold",
        DEFAULT_ZERO_THRESHOLD,
    )?;
    let min_window = get_f64(args.min_window, "min-window", DEFAULT_MIN_WINDOW)?;
    let steps = match args.steps {
        Some(s) => s,
        None => from_file("steps")
            .map(|v| parse_value("steps", v))
            .transpose()?
            .unwrap_or(DEFAULT_STEPS),
    };

    check_alphas(&[alpha])?;
    if !(gt_max.is_finite() && gt_max > 0.0) {
        return Err(CliError::Usage(format!(
            "gt-max must be positive, got {gt_max}"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    if !(zero_threshold.is_finite() && zero_threshold > 0.0) {
        return Err(CliError::Usage(format!(
            "zero-threshold must be positive, got {zero_threshold}"
        )));
    }
    if !(min_window.is_finite() && min_window >= 0.0) {
        return Err(CliError::Usage(format!(
            "min-window must be >= 0, got {min_window}"
        )));
    }

    let output = match (&args.out, from_file("out")) {
        (Some(p), _) => Output::Path(p.clone()),
        (None, Some(p)) if p != "-" => Output::Path(PathBuf::from(p)),
        _ => Output::Stdout,
    };
    let alpha_grid = match alpha_grid.or_else(|| from_file("alpha-grid")) {
        Some(g) => Some(parse_alpha_grid(g)?),
        None => None,
    };

    Ok(RunConfig {
        spec,
        alpha,
        gt_max,
        steps,
        zero_threshold,
        min_window,
        output,
        alpha_grid,
        warnings,
    })
}

/// Fixed 17-significant-digit decimal rendering used in every CSV cell.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..=16).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else {
        let p = point as usize;
        if p >= digits.len() {
            format!("{}{}.0", digits, "0".repeat(p - digits.len()))
        } else {
            format!("{}.{}", &digits[..p], &digits[p..])
        }
    };
    format!("{sign}{body}")
}

fn open_output<'a>(
    output: &Output,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CliError> {
    match output {
        Output::Stdout => Ok(Box::new(stdout)),
        Output::Path(p) => {
            let f = File::create(p)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io(format!("write failed: {e}"))
}

/// Writes the `series` CSV.
pub fn write_series(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let grid = cfg.grid();
    let samples = sample_amplitudes(&cfg.spec, cfg.alpha, &grid)?;
    let dim = cfg.spec.family().dim();
    let mut header = String::from("gt,concurrence");
    for k in 1..=dim {
        header.push_str(&format!(",x{k}_re,x{k}_im"));
    }
    writeln!(out, "{header}").map_err(io_err)?;
    for (gt, x) in grid.iter().zip(&samples) {
        let c = concurrence_xstate(x)?;
        let mut row = format!("{},{}", format_float(*gt), format_float(c));
        for z in x.amps() {
            row.push(',');
            row.push_str(&format_float(z.re));
            row.push(',');
            row.push_str(&format_float(z.im));
        }
        writeln!(out, "{row}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// One row of the `sweep` table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub n_windows: usize,
    pub total_dark_time: f64,
    pub mean_concurrence: f64,
}

pub fn sweep_rows(cfg: &RunConfig, alphas: &[f64]) -> Result<Vec<SweepRow>, CliError> {
    if alphas.is_empty() {
        return Err(CliError::Usage("alpha grid is empty".into()));
    }
    let grid = cfg.grid();
    alphas
        .iter()
        .map(|&alpha| {
            let (series, report) =
                scan_state(&cfg.spec, alpha, &grid, cfg.zero_threshold, cfg.min_window)?;
            Ok(SweepRow {
                alpha,
                n_windows: report.count(),
                total_dark_time: report.total_dark_time(),
                mean_concurrence: series.time_average()?,
            })
        })
        .collect()
}

pub fn write_sweep(cfg: &RunConfig, alphas: &[f64], out: &mut dyn Write) -> Result<(), CliError> {
    let rows = sweep_rows(cfg, alphas)?;
    writeln!(out, "alpha,n_windows,total_dark_time,mean_concurrence").map_err(io_err)?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            format_float(r.alpha),
            r.n_windows,
            format_float(r.total_dark_time),
            format_float(r.mean_concurrence)
        )
        .map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// Maximum deviation per `(family, alpha)`.
pub fn validation_table(
    families: &[Family],
    alphas: &[f64],
    gt_max: f64,
    steps: usize,
    middle: MiddleTerm,
) -> Result<Vec<(Family, f64, f64)>, CliError> {
    if families.is_empty() {
        return Err(CliError::Usage("no families to validate".into()));
    }
    if alphas.is_empty() {
        return Err(CliError::Usage("alpha list is empty".into()));
    }
    check_alphas(alphas)?;
    let grid = grid::uniform(0.0, gt_max, steps)?;
    let mut rows = Vec::new();
    for &family in families {
        for &alpha in alphas {
            rows.push((
                family,
                alpha,
                validate_analytic_with(family, alpha, &grid, middle)?,
            ));
        }
    }
    Ok(rows)
}

pub fn run_validate(args: &ValidateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let families = args
        .families
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u8>()
                .map_err(|_| CliError::Usage(format!("bad family `{s}`")))
                .and_then(|n| Family::from_number(n).map_err(CliError::from))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let alphas = parse_number_list(&args.alpha_list)?;
    if !(args.gt_max.is_finite() && args.gt_max >= 0.0) || args.steps == 0 {
        return Err(CliError::Usage(
            "validation grid needs gt-max >= 0 and steps >= 1".into(),
        ));
    }
    let rows = validation_table(
        &families,
        &alphas,
        args.gt_max,
        args.steps,
        args.middle_term.into(),
    )?;
    let mut all_ok = true;
    for (family, alpha, dev) in &rows {
        let ok = *dev <= ORACLE_TOL;
        all_ok &= ok;
        writeln!(
            out,
            "family={} alpha={} max_deviation={:.3e} {}",
            family.number(),
            alpha,
            dev,
            if ok { "ok" } else { "FAIL" }
        )
        .map_err(io_err)?;
    }
    writeln!(out, "{}", if all_ok { "PASS" } else { "FAIL" }).map_err(io_err)?;
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Validation)
    }
}

/// Parses a `series` CSV back into a concurrence series.
pub fn read_series_csv<R: BufRead>(reader: R) -> Result<ConcurrenceSeries, CliError> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Usage("empty CSV".into()))?
        .map_err(|e| CliError::Io(e.to_string()))?;
    if !header.starts_with("gt,concurrence") {
        return Err(CliError::Usage(format!("unexpected header `{header}`")));
    }
    let (mut gts, mut values) = (Vec::new(), Vec::new());
    for line in lines {
        let line = line.map_err(|e| CliError::Io(e.to_string()))?;
        let mut cells = line.split(',');
        let mut next = |name: &str| -> Result<f64, CliError> {
            cells
                .next()
                .ok_or_else(|| CliError::Usage(format!("missing {name} in `{line}`")))
                .and_then(|c| parse_value(name, c))
        };
        gts.push(next("gt")?);
        values.push(next("concurrence")?);
    }
    Ok(ConcurrenceSeries::new(gts, values)?)
}

/// Re-derives the unrefined death-window report from a `series` CSV.
pub fn report_from_csv<R: BufRead>(
    reader: R,
    zero_threshold: f64,
    min_window: f64,
) -> Result<crate::EsdReport, CliError> {
    let series = read_series_csv(reader)?;
    Ok(scan_esd(&series, zero_threshold, min_window)?)
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Series(args) => {
            let cfg = resolve(&args, None)?;
            for w in &cfg.warnings {
                let _ = writeln!(stderr, "{w}");
            }
            let mut out = open_output(&cfg.output, stdout)?;
            write_series(&cfg, &mut out)
        }
        Command::Sweep { run, alpha_grid } => {
            let cfg = resolve(&run, alpha_grid.as_deref())?;
            for w in &cfg.warnings {
                let _ = writeln!(stderr, "{w}");
            }
            let alphas = match &cfg.alpha_grid {
                Some(g) => g.clone(),
                None => parse_alpha_grid(DEFAULT_ALPHA_GRID)?,
            };
            let mut out = open_output(&cfg.output, stdout)?;
            write_sweep(&cfg, &alphas, &mut out)
        }
        Command::Validate(args) => run_validate(&args, stdout),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "tavis: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(
            parse_complex("0.5+0.25j").unwrap(),
            Complex64::new(0.5, 0.25)
        );
        assert_eq!(
            parse_complex("-0.5-0.25j").unwrap(),
            Complex64::new(-0.5, -0.25)
        );
        assert_eq!(parse_complex("0.3j").unwrap(), Complex64::new(0.0, 0.3));
        assert_eq!(parse_complex("-j").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(
            parse_complex("1e-3+2E-1i").unwrap(),
            Complex64::new(1e-3, 0.2)
        );
        assert_eq!(parse_complex(" 1 + 2j ").unwrap(), Complex64::new(1.0, 2.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+xj").is_err());
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_coeffs("1,0,0").unwrap()[0], Complex64::new(1.0, 0.0));
        assert!(parse_coeffs("1,0").is_err());
    }

    #[test]
    fn alpha_grids() {
        assert_eq!(
            parse_alpha_grid("0:6:1").unwrap(),
            vec![0., 1., 2., 3., 4., 5., 6.]
        );
        assert_eq!(parse_alpha_grid("6").unwrap(), vec![6.0]);
        assert_eq!(parse_alpha_grid("0, 2.5").unwrap(), vec![0.0, 2.5]);
        assert!(parse_alpha_grid("").is_err());
        assert!(parse_alpha_grid("0:1").is_err());
        assert!(parse_alpha_grid("-1").is_err());
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(0.0), "0.0");
        assert_eq!(format_float(2.0 / 3.0), "0.66666666666666663");
        assert_eq!(format_float(25.0), "25.000000000000000");
        assert_eq!(format_float(-0.0125), "-0.012500000000000001");
        assert_eq!(format_float(1.5e-7), "1.4999999999999999e-7");
        for x in [2.0 / 3.0, 1e-4, -3.25, 12345.678, 1.5e-7, 3e20] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn config_parsing() {
        let m = parse_config("# comment\nfamily = 2\nzero_threshold=1e-8 # trailing\n\n").unwrap();
        assert_eq!(m["family"], "2");
        assert_eq!(m["zero-threshold"], "1e-8");
        assert!(parse_config("bogus = 1").is_err());
        assert!(parse_config("family").is_err());
    }

    #[test]
    fn resolution_defaults_and_errors() {
        let cfg = resolve(&RunArgs::default(), None).unwrap();
        assert_eq!(cfg.spec.family(), Family::Family1);
        assert_eq!(cfg.steps, DEFAULT_STEPS);
        assert_eq!(cfg.gt_max, DEFAULT_GT_MAX);
        assert!(cfg.warnings.is_empty());

        let near = RunArgs {
            coeffs: Some("0.5773,0.5773,0.5773".into()),
            ..Default::default()
        };
        assert!(resolve(&near, None).is_err());
        let near = RunArgs {
            coeffs: Some("0.5773503,0.5773503,0.5773503".into()),
            ..Default::default()
        };
        let cfg = resolve(&near, None).unwrap();
        assert_eq!(cfg.warnings.len(), 1);

        let bad = RunArgs {
            family: Some(3),
            ..Default::default()
        };
        assert_eq!(resolve(&bad, None).unwrap_err().exit_code(), 2);
        let bad = RunArgs {
            steps: Some(1),
            ..Default::default()
        };
        assert!(resolve(&bad, None).is_err());
        // min-window below the grid spacing only matters when scanning
        let fine = RunArgs {
            min_window: Some(0.001),
            ..Default::default()
        };
        let cfg = resolve(&fine, None).unwrap();
        assert_eq!(sweep_rows(&cfg, &[0.0]).unwrap_err().exit_code(), 2);
        let bad = RunArgs {
            min_window: Some(-1.0),
            ..Default::default()
        };
        assert!(resolve(&bad, None).is_err());
        let bad = RunArgs {
            alpha: Some(-1.0),
            ..Default::default()
        };
        assert!(resolve(&bad, None).is_err());
    }
}
