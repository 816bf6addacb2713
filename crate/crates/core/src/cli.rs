//! The `monetary-lens` command line.
//!
//! Exit codes: 0 on success, 1 for data or invariant failures, 2 for usage
//! errors. Everything runs offline against local files.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::chart::{self, ChartSpec};
use crate::error::{Error, Result};
use crate::exchange::{self, Economy};
use crate::ingest;
use crate::normalize;
use crate::report;
use crate::series::Period;

pub const FIXTURES_ENV: &str = "MONETARY_LENS_FIXTURES";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const CHART_WIDTH: u32 = 560;
const CHART_HEIGHT: u32 = 380;

/// Directory of the bundled datasets, unless overridden by
/// `MONETARY_LENS_FIXTURES`.
pub fn fixtures_dir() -> PathBuf {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

fn local_path(s: &str) -> std::result::Result<PathBuf, String> {
    if let Some((scheme, _)) = s.split_once("://") {
        if !scheme.is_empty() && scheme.chars().all(|c| c.is_ascii_alphanumeric() || "+.-".contains(c)) {
            return Err(format!("`{s}` looks like a URL; only local files are read"));
        }
    }
    Ok(PathBuf::from(s))
}

#[derive(Debug, Parser)]
#[command(name = "monetary-lens", version, about = "Equation-of-exchange simulator and money-supply normalizer")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    /// The bread/coal/cloth reference economy.
    Fisher,
    /// The reference economy with all production doubled.
    Doubled,
    /// The reference economy (or `--economy`) with exchanges moved between goods.
    Shift,
    /// An economy read from `--economy <file>`.
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one period of an economy and report both sides of MV = PT.
    Simulate {
        scenario: Scenario,
        /// Verify the simulator's invariants; exit 1 on any violation.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_parser = local_path)]
        economy: Option<PathBuf>,
        #[arg(long, default_value = "coal")]
        from: String,
        #[arg(long, default_value = "bread")]
        to: String,
        #[arg(long, default_value_t = 2)]
        count: u32,
    },
    /// Normalize a GDP series by money-supply growth since a base year.
    Normalize {
        #[arg(long, value_parser = local_path)]
        manifest: Option<PathBuf>,
        /// May be given more than once; countries are processed concurrently.
        #[arg(long, required = true)]
        country: Vec<String>,
        #[arg(long)]
        money: String,
        #[arg(long)]
        gdp: String,
        #[arg(long)]
        base: i32,
        #[arg(long)]
        svg: bool,
        #[arg(long, value_parser = local_path)]
        out: PathBuf,
    },
    /// Normalize government debt levels by money-supply multipliers.
    DebtTable {
        #[arg(long, value_parser = local_path)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let outcome = match cli.command {
        Command::Simulate {
            scenario,
            check,
            format,
            economy,
            from,
            to,
            count,
        } => simulate(scenario, check, format, economy.as_deref(), &from, &to, count, stdout),
        Command::Normalize {
            manifest,
            country,
            money,
            gdp,
            base,
            svg,
            out,
        } => {
            let manifest = manifest.unwrap_or_else(|| fixtures_dir().join("manifest.ini"));
            normalize_countries(&manifest, &country, &money, &gdp, Period(base), svg, &out, stdout, stderr)
        }
        Command::DebtTable { input, format } => {
            let input = input.unwrap_or_else(|| fixtures_dir().join("debt_1999_2009.csv"));
            debt_table(&input, format, stdout, stderr)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DATA
        }
    }
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(Error::io("<stdout>", e))
    }
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    scenario: Scenario,
    check: bool,
    format: Format,
    economy_file: Option<&Path>,
    from: &str,
    to: &str,
    count: u32,
    out: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let base = || -> std::result::Result<Economy, Failure> {
        match economy_file {
            Some(p) => Ok(ingest::load_economy(p)?),
            None => Ok(exchange::fisher_economy()),
        }
    };
    let economy = match scenario {
        Scenario::Fisher | Scenario::Doubled if economy_file.is_some() => {
            return Err(Failure::Usage("--economy is only accepted by the shift and custom scenarios".into()));
        }
        Scenario::Fisher => exchange::fisher_economy(),
        Scenario::Doubled => exchange::scale_production(&exchange::fisher_economy(), 2.0)?,
        Scenario::Shift => exchange::shift_flows(&base()?, from, to, count)?,
        Scenario::Custom => {
            if economy_file.is_none() {
                return Err(Failure::Usage("the custom scenario needs --economy <file>".into()));
            }
            base()?
        }
    };

    match format {
        Format::Csv => write!(out, "{}", report::economy_csv(&economy))?,
        Format::Text => {
            let summary = exchange::summarize(&economy)?;
            writeln!(out, "scenario: {}", scenario_name(scenario))?;
            if scenario == Scenario::Shift {
                writeln!(out, "shifted {count} exchanges from {from} to {to}")?;
            }
            writeln!(out)?;
            write!(out, "{}", report::economy_text(&economy))?;
            writeln!(out)?;
            write!(out, "{}", report::summary_text(&summary))?;
        }
    }

    if check {
        let checks = exchange::verify(&economy)?;
        if format == Format::Text {
            writeln!(out)?;
        }
        let mut failed = false;
        for c in &checks {
            failed |= !c.passed;
            if format == Format::Text || !c.passed {
                let status = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {}: {}", c.name, c.detail)?;
            }
        }
        if failed {
            return Ok(EXIT_DATA);
        }
    }
    Ok(EXIT_OK)
}

fn scenario_name(s: Scenario) -> &'static str {
    match s {
        Scenario::Fisher => "fisher",
        Scenario::Doubled => "doubled",
        Scenario::Shift => "shift",
        Scenario::Custom => "custom",
    }
}

/// `Russia` -> `russia`, `New Zealand` -> `new_zealand`.
pub fn file_stem(country: &str, label: &str) -> String {
    let clean = |s: &str| -> String {
        s.chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '+' { c } else { '_' })
            .collect()
    };
    format!("{}_{}_normalized", clean(&country.to_lowercase()), clean(label))
}

struct CountryOutput {
    lines: Vec<String>,
    warnings: Vec<String>,
}

fn normalize_one(
    manifest: &ingest::Manifest,
    country: &str,
    money: &str,
    gdp: &str,
    base: Period,
    svg: bool,
    out_dir: &Path,
) -> Result<CountryOutput> {
    let money_series = manifest.resolve(country, money)?;
    let gdp_series = manifest.resolve(country, gdp)?;
    let n = normalize::normalize(&gdp_series.series, &money_series.series, base)?;

    let stem = file_stem(country, money);
    let csv_path = out_dir.join(format!("{stem}.csv"));
    fs::write(&csv_path, report::normalized_csv(&n)).map_err(|e| Error::io(&csv_path, e))?;
    let mut lines = vec![format!(
        "{country}: {gdp} normalized by {money} (base {base}), {} periods -> {}",
        n.values.len(),
        csv_path.display()
    )];

    if svg {
        let svg_path = out_dir.join(format!("{stem}.svg"));
        let left = ChartSpec::new(format!("{country}: GDP and money supply"), CHART_WIDTH, CHART_HEIGHT)
            .with_series(gdp, n.raw.clone())
            .with_series(money, n.money.clone())
            .with_marker(base);
        let right = ChartSpec::new(format!("{country}: GDP normalized by {money}"), CHART_WIDTH, CHART_HEIGHT)
            .with_series(format!("{gdp} / {money}"), n.values.clone())
            .with_marker(base);
        let doc = chart::render_row(&[left, right])?;
        fs::write(&svg_path, doc).map_err(|e| Error::io(&svg_path, e))?;
        lines.push(format!("{country}: chart -> {}", svg_path.display()));
    }

    let warnings = money_series
        .warnings
        .iter()
        .chain(&gdp_series.warnings)
        .map(|w| format!("warning: {country} {} is negative in {} ({})", w.aggregate, w.period, w.value))
        .collect();
    Ok(CountryOutput { lines, warnings })
}

#[allow(clippy::too_many_arguments)]
fn normalize_countries(
    manifest_path: &Path,
    countries: &[String],
    money: &str,
    gdp: &str,
    base: Period,
    svg: bool,
    out_dir: &Path,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let manifest = ingest::load_manifest(manifest_path)?;
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let results: Vec<Result<CountryOutput>> = std::thread::scope(|scope| {
        let handles: Vec<_> = countries
            .iter()
            .map(|c| {
                let manifest = &manifest;
                scope.spawn(move || normalize_one(manifest, c, money, gdp, base, svg, out_dir))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("normalization thread panicked"))
            .collect()
    });

    let mut code = EXIT_OK;
    for (country, result) in countries.iter().zip(results) {
        match result {
            Ok(o) => {
                for w in &o.warnings {
                    writeln!(stderr, "{w}")?;
                }
                for l in &o.lines {
                    writeln!(stdout, "{l}")?;
                }
            }
            Err(e) => {
                writeln!(stderr, "error: {country}: {e}")?;
                code = EXIT_DATA;
            }
        }
    }
    Ok(code)
}

fn debt_table(
    input: &Path,
    format: Format,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let inputs = ingest::load_debt_inputs(input)?;
    let mut rows = Vec::with_capacity(inputs.len());
    for i in &inputs {
        let row = normalize::normalize_debt_row(&i.country, i.debt_start, i.debt_end, i.multiplier, i.alt_multiplier)
            .map_err(|e| Error::Parse {
                path: input.to_path_buf(),
                line: i.line,
                message: e.to_string(),
            })?;
        rows.push(report::check_debt_row(row, i));
    }
    match format {
        Format::Text => write!(stdout, "{}", report::debt_text(&rows))?,
        Format::Csv => write!(stdout, "{}", report::debt_csv(&rows))?,
    }
    for r in rows.iter().filter(|r| r.mismatch.is_some()) {
        writeln!(
            stderr,
            "note: {} does not match its printed figures ({})",
            r.row.country,
            r.mismatch.as_deref().unwrap_or_default()
        )?;
    }
    Ok(EXIT_OK)
}
