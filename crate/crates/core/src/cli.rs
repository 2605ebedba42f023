//! `symchar` command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid flags or input,
//! 3 resource cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::characters::{self, CharacterTable};
use crate::error::{Error, Result};
use crate::exact::{self, human};
use crate::generic_group::{self, ClassData};
use crate::limits::{Limits, CAP_ENV_VAR};
use crate::sampling::{SampleSummary, DEFAULT_SEED};
use crate::table_stats::{self, TableStats};
use crate::theorem_stats::{self, default_c, BoundReport, FMode, OmegaSpec};

/// Largest n for which `bound` computes Pₙ exactly unless told otherwise.
pub const DEFAULT_EXACT_MAX_N: usize = 20;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "symchar", version, about = "Exact symmetric-group characters and vanishing statistics")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Largest number of partitions a full enumeration may produce.
    #[arg(long, global = true, env = CAP_ENV_VAR, default_value_t = Limits::DEFAULT_MAX_PARTITIONS)]
    pub cap: u64,

    /// Largest number of entries a character table may have.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_MAX_TABLE_ENTRIES)]
    pub table_cap: u64,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactMode {
    /// Compute Pₙ when n is at most 20.
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Export the character table of S_n.
    Table { n: usize },
    /// Exact probability that a random character vanishes at a random element.
    Pzero { n: usize },
    /// Lower bound on P_n from the largest-part class set, checked against P_n.
    Bound {
        n: usize,
        /// Threshold constant C.
        #[arg(long = "C", visible_alias = "c", default_value_t = default_c())]
        c: f64,
        /// f(n): `log` for ln n, or a constant.
        #[arg(long = "f", default_value = "log", value_parser = parse_f_mode)]
        f: FModeArg,
        /// Require the largest part to exceed the threshold strictly.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = ExactMode::Auto)]
        exact: ExactMode,
    },
    /// Monte Carlo estimate of P_n.
    McPzero {
        n: usize,
        #[command(flatten)]
        sampling: SampleArgs,
    },
    /// Normalised cycle counts of random permutations against the limit law.
    Goncharov {
        n: usize,
        #[command(flatten)]
        sampling: SampleArgs,
        /// Include every normalised value in JSON output.
        #[arg(long)]
        values: bool,
    },
    /// Frequency of a cycle of length at least n/(2 ln n).
    LongCycle {
        n: usize,
        #[command(flatten)]
        sampling: SampleArgs,
    },
    /// Zero density and sign ratio of the tables for n_min..=n_max.
    TableStats { n_min: usize, n_max: usize },
    /// Class-set bound for a group read from a JSON file.
    Group {
        file: PathBuf,
        /// Check the default class set against every subset.
        #[arg(long)]
        exhaustive_omega: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Emit S_n in the group JSON format.
    ExportGroup { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct FModeArg(pub FMode);

fn parse_f_mode(s: &str) -> std::result::Result<FModeArg, String> {
    match s.trim() {
        "log" | "ln" => Ok(FModeArg(FMode::Log)),
        other => other
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(|v| FModeArg(FMode::Constant(v)))
            .ok_or_else(|| format!("expected `log` or a finite number, got {other:?}")),
    }
}

/// Everything that determines a run's output, embedded in JSON reports.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub cap: u64,
    pub table_cap: u64,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let cfg = RunConfig {
            command: cli.command,
            format: cli.global.format,
            output: cli.global.output,
            cap: cli.global.cap,
            table_cap: cli.global.table_cap,
            threads: cli.global.threads,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn limits(&self) -> Limits {
        Limits {
            max_partitions: self.cap,
            max_table_entries: self.table_cap,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.threads == Some(0) {
            return Err(Error::invalid("--threads must be at least 1"));
        }
        let positive = |n: usize, what: &str| {
            if n == 0 {
                Err(Error::invalid(format!("{what} needs n >= 1")))
            } else {
                Ok(())
            }
        };
        let samples = |s: &SampleArgs| {
            if s.samples == 0 {
                Err(Error::invalid("--samples must be at least 1"))
            } else {
                Ok(())
            }
        };
        match &self.command {
            Command::Table { n } | Command::Pzero { n } | Command::ExportGroup { n } => {
                positive(*n, "this command")
            }
            Command::Bound { n, c, f, strict, .. } => {
                if *n < 2 {
                    return Err(Error::invalid("bound needs n >= 2"));
                }
                OmegaSpec::new(*c, f.0, *strict).map(|_| ())
            }
            Command::McPzero { n, sampling } => {
                positive(*n, "mc-pzero")?;
                samples(sampling)
            }
            Command::Goncharov { n, sampling, .. } => {
                if *n < 2 {
                    return Err(Error::invalid("goncharov needs n >= 2"));
                }
                samples(sampling)
            }
            Command::LongCycle { n, sampling } => {
                if *n < 3 {
                    return Err(Error::invalid("long-cycle needs n >= 3"));
                }
                samples(sampling)
            }
            Command::TableStats { n_min, .. } => positive(*n_min, "table-stats"),
            Command::Group { .. } => Ok(()),
        }
    }
}

/// Parses `argv`, runs the command, writes the report and returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let outcome = RunConfig::from_cli(cli).and_then(|cfg| {
        let report = execute(&cfg)?;
        match &cfg.output {
            Some(path) => std::fs::write(path, report)?,
            None => print!("{report}"),
        }
        Ok(())
    });
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

/// Runs the configured command and renders its report.
pub fn execute(cfg: &RunConfig) -> Result<String> {
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(|| dispatch(cfg)),
        None => dispatch(cfg),
    }
}

fn dispatch(cfg: &RunConfig) -> Result<String> {
    let limits = cfg.limits();
    match &cfg.command {
        Command::Table { n } => {
            let table = characters::character_table(*n, &limits)?;
            Ok(render_table(cfg, &table))
        }
        Command::Pzero { n } => {
            let p = theorem_stats::exact_pzero(*n, &limits)?;
            Ok(render_pzero(cfg, *n, &p))
        }
        Command::Bound { n, c, f, strict, exact } => {
            let spec = OmegaSpec::new(*c, f.0, *strict)?;
            let compute = match exact {
                ExactMode::Always => true,
                ExactMode::Never => false,
                ExactMode::Auto => *n <= DEFAULT_EXACT_MAX_N,
            };
            let report = theorem_stats::lemma_bound(*n, &spec, compute, &limits)?;
            Ok(render_bound(cfg, &spec, &report))
        }
        Command::McPzero { n, sampling } => {
            let s = theorem_stats::montecarlo_pzero(*n, sampling.samples, sampling.seed)?;
            Ok(render_summary(cfg, "P_n (Monte Carlo)", &s))
        }
        Command::Goncharov { n, sampling, values } => {
            let g = theorem_stats::goncharov_experiment(*n, sampling.samples, sampling.seed)?;
            Ok(render_goncharov(cfg, &g, *values))
        }
        Command::LongCycle { n, sampling } => {
            let s = theorem_stats::long_cycle_frequency(*n, sampling.samples, sampling.seed)?;
            Ok(render_summary(cfg, "long-cycle frequency", &s))
        }
        Command::TableStats { n_min, n_max } => {
            let series = table_stats::stats_series(*n_min, *n_max, &limits)?;
            Ok(render_series(cfg, &series))
        }
        Command::Group { file, exhaustive_omega, seed } => {
            let f = std::fs::File::open(file).map_err(|e| {
                Error::invalid(format!("cannot read {}: {e}", file.display()))
            })?;
            let data = generic_group::load_class_data(std::io::BufReader::new(f))?;
            let omega = generic_group::default_omega(&data);
            let report = generic_group::proposition_bound(&data, &omega)?;
            let check = exhaustive_omega.then(|| generic_group::best_omega_check(&data, *seed));
            Ok(render_group(cfg, &data, &report, check.as_ref()))
        }
        Command::ExportGroup { n } => {
            let table = characters::character_table(*n, &limits)?;
            let data = ClassData::from_symmetric_table(&table)?;
            Ok(to_json_line(&data.to_json()))
        }
    }
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn with_config<T: Serialize>(cfg: &RunConfig, result: &T) -> String {
    to_json_line(&json!({ "config": cfg, "result": result }))
}

fn fraction_json(r: &BigRational) -> serde_json::Value {
    serde_json::to_value(exact::FractionJson::from(r)).expect("fractions serialize")
}

fn key_value_csv(rows: &[(&str, String)]) -> String {
    let mut out = String::from("field,value\n");
    for (k, v) in rows {
        let _ = writeln!(out, "{k},{v}");
    }
    out
}

fn render_table(cfg: &RunConfig, table: &CharacterTable) -> String {
    match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => with_config(cfg, &table.to_json()),
        Format::Text => {
            let labels: Vec<String> = table.partitions().iter().map(|p| p.label()).collect();
            let cells: Vec<Vec<String>> = table
                .rows()
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect();
            let label_w = labels.iter().map(String::len).max().unwrap_or(1);
            let col_w: Vec<usize> = (0..labels.len())
                .map(|j| {
                    cells
                        .iter()
                        .map(|r| r[j].len())
                        .chain([labels[j].len()])
                        .max()
                        .unwrap_or(1)
                })
                .collect();
            let mut out = format!("Character table of S_{} (rows: characters, columns: classes)\n", table.n());
            let _ = write!(out, "{:label_w$}", "");
            for (j, l) in labels.iter().enumerate() {
                let _ = write!(out, "  {:>w$}", l, w = col_w[j]);
            }
            out.push('\n');
            for (label, row) in labels.iter().zip(&cells) {
                let _ = write!(out, "{label:label_w$}");
                for (j, v) in row.iter().enumerate() {
                    let _ = write!(out, "  {:>w$}", v, w = col_w[j]);
                }
                out.push('\n');
            }
            out
        }
    }
}

fn render_pzero(cfg: &RunConfig, n: usize, p: &BigRational) -> String {
    match cfg.format {
        Format::Json => with_config(cfg, &json!({ "n": n, "p_zero": fraction_json(p) })),
        Format::Csv => key_value_csv(&[("n", n.to_string()), ("p_zero", exact::fraction_string(p))]),
        Format::Text => format!("{}\n", human(p)),
    }
}

fn render_bound(cfg: &RunConfig, spec: &OmegaSpec, r: &BoundReport) -> String {
    let verdict = match r.inequality_holds() {
        Some(true) => "OK",
        Some(false) => "VIOLATED",
        None => "not checked (P_n not computed)",
    };
    match cfg.format {
        Format::Json => with_config(cfg, r),
        Format::Csv => key_value_csv(&[
            ("n", r.n.to_string()),
            ("p_n", r.p_n.to_string()),
            ("omega_count", r.omega_count.to_string()),
            ("q_n", exact::fraction_string(&r.q_n)),
            ("r_n", exact::fraction_string(&r.r_n)),
            ("lower_bound", exact::fraction_string(&r.lower_bound)),
            ("exact_p", r.exact_p.as_ref().map(exact::fraction_string).unwrap_or_default()),
        ]),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "n               {}", r.n);
            let _ = writeln!(
                out,
                "threshold       {}·√n·(ln n + f(n)) = {:.6}{}",
                spec.c,
                spec.threshold(r.n),
                if spec.strict { " (strict)" } else { "" }
            );
            let _ = writeln!(out, "p_n             {}", r.p_n);
            let _ = writeln!(out, "|Omega_n|       {}", r.omega_count);
            let _ = writeln!(out, "Q_n             {}", human(&r.q_n));
            let _ = writeln!(out, "|Omega_n|/p_n   {}", human(&r.r_n));
            let _ = writeln!(out, "lower_bound     {}", human(&r.lower_bound));
            if let Some(p) = &r.exact_p {
                let _ = writeln!(out, "exact P_n       {}", human(p));
            }
            let _ = writeln!(out, "check 1 >= P_n >= Q_n - |Omega_n|/p_n: {verdict}");
            out
        }
    }
}

fn render_summary(cfg: &RunConfig, label: &str, s: &SampleSummary) -> String {
    match cfg.format {
        Format::Json => with_config(cfg, s),
        Format::Csv => {
            let mut rows = vec![
                ("estimate", s.estimate.to_string()),
                ("samples", s.samples.to_string()),
                ("std_error", s.std_error.to_string()),
                ("seed", s.seed.to_string()),
            ];
            rows.extend(s.extra.iter().map(|(k, v)| (k.as_str(), v.to_string())));
            key_value_csv(&rows)
        }
        Format::Text => {
            let mut out = format!(
                "{label}: {:.6} ± {:.6} (samples {}, seed {})\n",
                s.estimate, s.std_error, s.samples, s.seed
            );
            for (k, v) in &s.extra {
                let _ = writeln!(out, "  {k}: {v}");
            }
            out
        }
    }
}

fn render_goncharov(cfg: &RunConfig, g: &theorem_stats::GoncharovSample, values: bool) -> String {
    match cfg.format {
        Format::Json if values => with_config(cfg, g),
        Format::Json => with_config(
            cfg,
            &json!({
                "n": g.n,
                "sample_count": g.sample_count,
                "seed": g.seed,
                "ks_distance": g.ks_distance,
                "mean_cycles": g.mean_cycles,
            }),
        ),
        Format::Csv => {
            let mut out = String::from("normalized_value\n");
            for v in &g.normalized_values {
                let _ = writeln!(out, "{v}");
            }
            out
        }
        Format::Text => format!(
            "n {}  samples {}  seed {}\nmean cycle count  {:.6}  (ln n = {:.6})\nKS distance to limit law  {:.6}\n",
            g.n,
            g.sample_count,
            g.seed,
            g.mean_cycles,
            (g.n as f64).ln(),
            g.ks_distance
        ),
    }
}

fn render_series(cfg: &RunConfig, series: &[TableStats]) -> String {
    match cfg.format {
        Format::Csv => table_stats::series_csv(series),
        Format::Json => with_config(cfg, &series),
        Format::Text => {
            let mut out = format!(
                "{:>3} {:>6} {:>10} {:>10} {:>10} {:>14} {:>10} {:>12} {:>12} {:>16}\n",
                "n", "p_n", "zeros", "positive", "negative", "zero_density", "sign_ratio",
                "|d - 1/e|", "|d - 1/3|", "P_n (classes)"
            );
            for s in series {
                let _ = writeln!(
                    out,
                    "{:>3} {:>6} {:>10} {:>10} {:>10} {:>14} {:>10} {:>12.10} {:>12.10} {:>16}",
                    s.n,
                    s.p_n,
                    s.zero_entries,
                    s.positive_entries,
                    s.negative_entries,
                    exact::to_fixed(&s.zero_density, 10),
                    s.sign_ratio
                        .as_ref()
                        .map_or_else(|| "undefined".to_string(), |r| exact::to_significant(r, 8)),
                    s.distance_to_inverse_e(),
                    s.distance_to_one_third(),
                    exact::to_fixed(&s.class_weighted_pzero, 10),
                );
            }
            out
        }
    }
}

fn render_group(
    cfg: &RunConfig,
    data: &ClassData,
    r: &generic_group::PropositionReport,
    check: Option<&generic_group::OmegaCheck>,
) -> String {
    match cfg.format {
        Format::Json => with_config(
            cfg,
            &json!({
                "group": data.group,
                "order": data.order.to_string(),
                "num_classes": data.num_classes(),
                "bound": r,
                "omega_check": check,
                "warnings": data.warnings,
            }),
        ),
        Format::Csv => key_value_csv(&[
            ("group", data.group.clone()),
            ("q", exact::fraction_string(&r.q)),
            ("r", exact::fraction_string(&r.r)),
            ("lower_bound", exact::fraction_string(&r.lower_bound)),
            ("exact_p", r.exact_p.as_ref().map(exact::fraction_string).unwrap_or_default()),
        ]),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "group {}  order {}  classes {}", data.group, data.order, data.num_classes());
            let _ = writeln!(out, "Omega (larger than average): {}", r.omega_names.join(", "));
            let _ = writeln!(out, "Q            {}", human(&r.q));
            let _ = writeln!(out, "R            {}", human(&r.r));
            let _ = writeln!(out, "lower_bound  {}", human(&r.lower_bound));
            match (&r.exact_p, r.inequality_holds()) {
                (Some(p), Some(ok)) => {
                    let _ = writeln!(out, "exact P(G)   {}", human(p));
                    let _ = writeln!(out, "check 1 >= P(G) >= Q - R: {}", if ok { "OK" } else { "VIOLATED" });
                }
                _ => {
                    let _ = writeln!(out, "exact P(G)   unavailable (no character table)");
                }
            }
            if let Some(c) = check {
                let _ = writeln!(
                    out,
                    "best Q - R over {} subsets{}: {}; default set attains it: {}",
                    c.subsets_checked,
                    if c.exhaustive { "" } else { " (sampled)" },
                    human(&c.max_value),
                    c.default_attains_max
                );
            }
            for w in &data.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            out
        }
    }
}
