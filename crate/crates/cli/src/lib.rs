//! Command-line frontend: every subcommand builds a [`Table`] and renders it
//! as CSV or as JSON with a run manifest.

pub mod range;
pub mod suites;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use sobwidth_core::envelopes::{
    count_upper_bound, piecewise_envelope, strong_equiv_bracket,
};
use sobwidth_core::limitspace::{limit_approx_number, limit_count, limit_shell_index};
use sobwidth_core::tractability::{info_complexity, limit_info_complexity, TractabilityReport};
use sobwidth_core::volumetrics::log_scaled_volume;
use sobwidth_core::{Error as CoreError, SmoothnessProfile, Spectrum};

use range::{IndexList, Reals};
use suites::{run_suite, Suite};
use table::{Cell, Format, Manifest, Table};

pub const DEFAULT_MAX_POINTS: u64 = 1_000_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sobwidth", version, about = "Approximation numbers of periodic Sobolev embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Refuse work whose lattice population estimate exceeds this.
    #[arg(long, default_value_t = DEFAULT_MAX_POINTS, global = true)]
    pub max_points: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// a_n with its shell budget and rank range.
    Spectrum {
        /// Smoothness exponents, e.g. `1,2` or `1^5`.
        #[arg(long = "R")]
        r: SmoothnessProfile,
        #[arg(long)]
        n: IndexList,
    },
    /// a_n of the limit space W^∞ with its shell index m.
    LimitSpectrum {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: IndexList,
    },
    /// Volume of {x : Σ |x_j|^{r_j} <= t}.
    Volume {
        /// Ball exponents r (or smoothness R with --exp2R).
        #[arg(long = "R")]
        r: Reals,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Double the exponents, giving B_{2R}.
        #[arg(long = "exp2R")]
        exp2r: bool,
        /// Report only the natural log of the volume.
        #[arg(long)]
        log: bool,
    },
    /// Regime, comparison value and explicit bounds per n.
    Envelope {
        #[arg(long = "R")]
        r: SmoothnessProfile,
        #[arg(long)]
        n: IndexList,
    },
    /// n^g a_n against its bracket and limit for n = 10, 100, ..., 10^k.
    Sweep {
        #[arg(long = "R")]
        r: SmoothnessProfile,
        #[arg(long)]
        decades: u32,
    },
    /// Information complexity n(eps, d).
    Complexity {
        #[arg(long = "R", conflicts_with_all = ["limit_space", "d"])]
        r: Option<SmoothnessProfile>,
        #[arg(long, requires = "d")]
        limit_space: bool,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        eps: f64,
    },
    /// Weak-tractability ratios along eps_d = (2 + d)^{-1/2} for the limit space.
    Tractability {
        #[arg(long, required = true)]
        limit_space: bool,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1)]
        d_min: u32,
        #[arg(long)]
        d_max: u32,
    },
    /// Seeded property suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: u64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("resource guard: {0}")]
    Guard(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SizeGuard(_) | CoreError::InsufficientBox { .. } => CliError::Guard(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Guard(_) => EXIT_GUARD,
        }
    }
}

/// A rendered command: the table, its manifest, and the exit status it implies.
pub struct Output {
    pub table: Table,
    pub manifest: Manifest,
    pub status: i32,
    pub diagnostics: Vec<String>,
}

fn guard(what: &str, estimate: f64, max_points: u64) -> Result<(), CliError> {
    if estimate > max_points as f64 {
        Err(CliError::Guard(format!(
            "{what} needs about {estimate:.3e} lattice points, above --max-points {max_points}"
        )))
    } else {
        Ok(())
    }
}

fn spectrum(p: &SmoothnessProfile, n: &IndexList, max_points: u64) -> Result<Table, CliError> {
    let mut t = Table::new(&["n", "a_n", "shell", "rank_lo", "rank_hi", "exact"]);
    let sp = Spectrum::new(p);
    for &k in &n.items {
        guard(&format!("a_{k}"), k as f64, max_points)?;
        let e = sp.approx_number(k)?;
        t.push(vec![
            k.into(),
            e.value.into(),
            e.shell.into(),
            e.shell_rank_lo.into(),
            e.shell_rank_hi.into(),
            e.exact.into(),
        ]);
    }
    Ok(t)
}

fn limit_spectrum(d: u32, n: &IndexList) -> Result<Table, CliError> {
    let mut t = Table::new(&["n", "m", "a_n", "c_prev", "c_m"]);
    for &k in &n.items {
        let big = BigUint::from(k);
        let a = limit_approx_number(d, &big)?;
        let row = match limit_shell_index(d, &big)? {
            Some(m) => {
                let prev = match m {
                    0 => BigUint::from(0u8),
                    _ => limit_count(d, m - 1)?.cumulative,
                };
                vec![k.into(), m.into(), a.into(), prev.into(), limit_count(d, m)?.cumulative.into()]
            }
            None => vec![k.into(), Cell::Empty, a.into(), Cell::Empty, Cell::Empty],
        };
        t.push(row);
    }
    Ok(t)
}

fn volume(r: &[f64], scale: f64, exp2r: bool, log: bool) -> Result<Table, CliError> {
    let exponents: Vec<f64> = if exp2r { r.iter().map(|x| 2.0 * x).collect() } else { r.to_vec() };
    let v = log_scaled_volume(&exponents, scale)?;
    let shown: Vec<String> = exponents.iter().map(|x| format!("{x:?}")).collect();
    let mut cols = vec!["d", "exponents", "scale", "log_volume"];
    let mut row: Vec<Cell> = vec![
        (v.d as u64).into(),
        shown.join(";").into(),
        scale.into(),
        v.log_value.into(),
    ];
    if !log {
        cols.push("volume");
        row.push(v.value().into());
    }
    let mut t = Table::new(&cols);
    t.push(row);
    Ok(t)
}

fn envelope(p: &SmoothnessProfile, n: &IndexList, max_points: u64) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "n",
        "regime",
        "comparison",
        "boundary_regime",
        "boundary_comparison",
        "lower",
        "upper",
        "upper_tight",
        "guaranteed",
        "a_n",
        "ratio",
    ]);
    let sp = Spectrum::new(p);
    for &k in &n.items {
        let e = piecewise_envelope(p, k)?;
        let a = if k as f64 <= max_points as f64 {
            Some(sp.approx_number(k)?.value)
        } else {
            None
        };
        t.push(vec![
            k.into(),
            e.regime.as_str().into(),
            e.comparison.into(),
            e.boundary.map(|(r, _)| r.as_str()).into(),
            e.boundary.map(|(_, v)| v).into(),
            e.lower.into(),
            e.upper.into(),
            e.upper_tight.into(),
            e.guaranteed.into(),
            a.into(),
            a.map(|a| a / e.comparison).into(),
        ]);
    }
    Ok(t)
}

fn sweep(p: &SmoothnessProfile, decades: u32, max_points: u64) -> Result<Table, CliError> {
    if decades == 0 || decades > 19 {
        return Err(CliError::Usage(format!("--decades {decades} must lie in 1..=19")));
    }
    guard(&format!("n = 10^{decades}"), 10f64.powi(decades as i32), max_points)?;
    let mut t = Table::new(&[
        "n",
        "m",
        "scaled",
        "bracket_lo",
        "bracket_hi",
        "volume_lo",
        "volume_hi",
        "limit",
        "ratio",
    ]);
    let sp = Spectrum::new(p);
    let g = p.harmonic();
    for j in 1..=decades {
        let n = 10u64.pow(j);
        let br = strong_equiv_bracket(p, n)?;
        let scaled = (n as f64).powf(g) * sp.approx_number(n)?.value;
        t.push(vec![
            n.into(),
            br.m.into(),
            scaled.into(),
            br.lower.into(),
            br.upper.into(),
            br.volume_lower.into(),
            br.volume_upper.into(),
            br.limit.into(),
            (scaled / br.limit).into(),
        ]);
    }
    Ok(t)
}

fn complexity(
    r: Option<&SmoothnessProfile>,
    limit_space: bool,
    d: Option<u32>,
    eps: f64,
    max_points: u64,
) -> Result<Table, CliError> {
    let mut t = Table::new(&["space", "d", "eps", "n_eps"]);
    match (r, limit_space, d) {
        (Some(p), false, None) => {
            if eps > 0.0 && eps < 1.0 {
                guard("n(eps, d)", count_upper_bound(p, eps.powi(-2) - 1.0), max_points)?;
            }
            let n = info_complexity(p, eps)?;
            t.push(vec![format!("aniso({p})").into(), (p.dim() as u64).into(), eps.into(), n.into()]);
        }
        (None, true, Some(d)) => {
            let n = limit_info_complexity(d, eps)?;
            t.push(vec!["limit".into(), d.into(), eps.into(), n.into()]);
        }
        _ => {
            return Err(CliError::Usage(
                "complexity needs either --R <list> or --limit-space --d <int>".into(),
            ))
        }
    }
    Ok(t)
}

fn tractability(alpha: f64, beta: f64, d_min: u32, d_max: u32) -> Result<Table, CliError> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(CliError::Usage("--alpha and --beta must be positive".into()));
    }
    if d_min == 0 || d_min > d_max {
        return Err(CliError::Usage(format!("need 1 <= --d-min <= --d-max, got {d_min}..{d_max}")));
    }
    let mut t = Table::new(&["d", "eps_d", "n_eps", "ratio"]);
    for d in d_min..=d_max {
        let r = TractabilityReport::limit_witness(d, alpha, beta)?;
        t.push(vec![d.into(), r.eps.into(), r.n_eps.into(), r.ratio.into()]);
    }
    Ok(t)
}

/// Runs a parsed command without touching the terminal.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let fmt = cli.format;
    let mut status = EXIT_OK;
    let mut diagnostics = Vec::new();
    let (table, manifest) = match &cli.command {
        Command::Spectrum { r, n } => (
            spectrum(r, n, cli.max_points)?,
            Manifest::new("spectrum", fmt).param("R", r).param("n", &n.source),
        ),
        Command::LimitSpectrum { d, n } => (
            limit_spectrum(*d, n)?,
            Manifest::new("limit-spectrum", fmt).param("d", d).param("n", &n.source),
        ),
        Command::Volume { r, scale, exp2r, log } => (
            volume(&r.0, *scale, *exp2r, *log)?,
            Manifest::new("volume", fmt)
                .param("R", r.0.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(","))
                .param("scale", format!("{scale:?}"))
                .param("exp2R", exp2r)
                .param("log", log),
        ),
        Command::Envelope { r, n } => (
            envelope(r, n, cli.max_points)?,
            Manifest::new("envelope", fmt).param("R", r).param("n", &n.source),
        ),
        Command::Sweep { r, decades } => (
            sweep(r, *decades, cli.max_points)?,
            Manifest::new("sweep", fmt).param("R", r).param("decades", decades),
        ),
        Command::Complexity { r, limit_space, d, eps } => {
            let mut m = Manifest::new("complexity", fmt).param("eps", format!("{eps:?}"));
            if let Some(p) = r {
                m = m.param("R", p);
            }
            if let Some(d) = d {
                m = m.param("d", d).param("limit-space", limit_space);
            }
            (complexity(r.as_ref(), *limit_space, *d, *eps, cli.max_points)?, m)
        }
        Command::Tractability { limit_space: _, alpha, beta, d_min, d_max } => (
            tractability(*alpha, *beta, *d_min, *d_max)?,
            Manifest::new("tractability", fmt)
                .param("space", "limit")
                .param("alpha", format!("{alpha:?}"))
                .param("beta", format!("{beta:?}"))
                .param("d-min", d_min)
                .param("d-max", d_max),
        ),
        Command::Verify { suite, seed, cases } => {
            let report = run_suite(*suite, *seed, *cases);
            let mut t = Table::new(&["suite", "seed", "cases", "passed", "failed", "summary"]);
            t.push(vec![
                suite.name().into(),
                report.seed.into(),
                report.cases.into(),
                report.passed().into(),
                (report.failures.len() as u64).into(),
                report.summary().into(),
            ]);
            if !report.failures.is_empty() {
                status = EXIT_VERIFY;
            }
            diagnostics.extend(report.failures.iter().cloned());
            let mut m = Manifest::new("verify", fmt)
                .param("suite", suite.name())
                .param("cases", cases);
            m.seed = Some(*seed);
            (t, m)
        }
    };
    let manifest = manifest.param("max-points", cli.max_points);
    Ok(Output {
        table,
        manifest,
        status,
        diagnostics,
    })
}

/// Parses `args` (program name first), runs the command and writes the table
/// to `out` (or `--out`) and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cli).and_then(|o| {
        let text = o.table.render(&o.manifest);
        match &cli.out {
            Some(path) => std::fs::write(path, text)?,
            None => out.write_all(text.as_bytes())?,
        }
        for line in &o.diagnostics {
            writeln!(err, "{line}")?;
        }
        Ok(o.status)
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "sobwidth: {e}");
            e.exit_code()
        }
    }
}
