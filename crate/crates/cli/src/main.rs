use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qseries_core::arith::{r2_brute, r2_formula, t2_table};
use qseries_core::catalog::{named_side, Catalog, Status, VerificationReport, SIDE_NAMES};
use qseries_core::numerics::{self, ClassicalSeries, LimitConfig, LIMIT_IDS};
use qseries_core::wz::{telescope_check, wz_grid};
use qseries_core::{Error, ExponentQ};

const ORDER_ENV: &str = "QSERIES_ORDER";

/// Exact verification of q-series identities.
///
/// Order precedence: --order, then $QSERIES_ORDER, then the config file,
/// then each identity's default order.
#[derive(Parser, Debug)]
#[command(name = "qseries", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation order (exclusive bound on q-exponents).
    #[arg(long, global = true, env = ORDER_ENV, value_parser = clap::value_parser!(i64).range(1..))]
    order: Option<i64>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// TOML file with defaults for any of the flags (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify one catalog identity.
    Verify { id: String },
    /// Verify every catalog identity (in parallel, reported in registration order).
    VerifyAll,
    /// List catalog identities and expandable side names.
    List,
    /// Expand a named side, e.g. `qid.lhs` or `pi2.rhs`.
    Expand { name: String },
    /// Check the WZ pair relation on a grid, and the telescoped sums for a > 0.
    WzCheck {
        /// Index offset, as p/q.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        nmax: Option<u64>,
        #[arg(long)]
        kmax: Option<u64>,
        /// Grid size as NMAXxKMAX, e.g. 25x25.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Evaluate an expression at q = 1 - eps along a schedule.
    Limit {
        id: String,
        /// Strictly decreasing comma list, e.g. 0.1,0.03,0.01.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        /// Also report a linear extrapolation to eps = 0.
        #[arg(long)]
        richardson: bool,
    },
    /// Partial sum of a classical series for π.
    Classical {
        name: String,
        #[arg(long, default_value_t = 40)]
        terms: u32,
    },
    /// Brute-force counts against divisor-sum formulas.
    Arith {
        #[arg(value_enum)]
        table: ArithTable,
        #[arg(long, default_value_t = 100)]
        count: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ArithTable {
    T2,
    R2,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    order: Option<i64>,
    format: Option<Format>,
    out: Option<PathBuf>,
    eps: Option<Vec<f64>>,
    a: Option<String>,
    nmax: Option<u64>,
    kmax: Option<u64>,
}

/// Everything a subcommand needs after merging flags with the config file.
struct Settings {
    order: Option<i64>,
    format: Format,
    file: FileConfig,
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

/// Failures that map to a specific exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Builder(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownName(_) | Error::Parse(_) | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            other => Failure::Builder(other.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(format!("{e:#}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Builder(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> anyhow::Result<FileConfig> {
    let Some(path) = path else { return Ok(FileConfig::default()) };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let file = load_config(&cli.config)?;
    if let Some(o) = file.order {
        if o < 1 {
            return Err(Failure::Usage(format!("config order {o} must be positive")));
        }
    }
    let out = cli.out.clone().or_else(|| file.out.clone());
    let settings = Settings {
        order: cli.order.or(file.order),
        format: cli.format.or(file.format).unwrap_or(Format::Text),
        file,
    };
    let outcome = match cli.command {
        Command::Verify { id } => verify(&settings, Some(&id))?,
        Command::VerifyAll => verify(&settings, None)?,
        Command::List => list(&settings),
        Command::Expand { name } => expand(&settings, &name)?,
        Command::WzCheck { a, nmax, kmax, grid } => wz_check(&settings, a, nmax, kmax, grid)?,
        Command::Limit { id, eps, richardson } => limit(&settings, &id, eps, richardson)?,
        Command::Classical { name, terms } => classical(&settings, &name, terms)?,
        Command::Arith { table, count } => arith(&settings, table, count)?,
    };
    match out {
        Some(path) => fs::write(&path, &outcome.text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(|e| Failure::Builder(format!("{e:#}")))?,
        None => print!("{}", outcome.text),
    }
    Ok(outcome.code)
}

fn verify(s: &Settings, id: Option<&str>) -> Result<Outcome, Failure> {
    let catalog = Catalog::builtin();
    let reports = match id {
        Some(id) => vec![catalog.verify(id, s.order)?],
        None => catalog.verify_all(s.order),
    };
    let code = if reports.iter().any(|r| r.status == Status::Error) {
        3
    } else if reports.iter().all(VerificationReport::is_verified) {
        0
    } else {
        1
    };
    let text = match s.format {
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
        Format::Json => {
            let v = if id.is_some() { serde_json::to_string(&reports[0]) } else { serde_json::to_string(&reports) };
            v.expect("reports serialize") + "\n"
        }
        Format::Csv => {
            let mut t = format!("{}\n", VerificationReport::CSV_HEADER);
            for r in &reports {
                t.push_str(&r.csv_row());
                t.push('\n');
            }
            t
        }
    };
    Ok(Outcome { text, code })
}

fn list(s: &Settings) -> Outcome {
    let catalog = Catalog::builtin();
    let mut t = String::new();
    match s.format {
        Format::Json => {
            let ids: Vec<_> = catalog
                .entries()
                .iter()
                .map(|e| serde_json::json!({"id": e.id, "default_order": e.default_order, "description": e.description}))
                .collect();
            t = serde_json::json!({"identities": ids, "sides": SIDE_NAMES, "limits": LIMIT_IDS}).to_string() + "\n";
        }
        _ => {
            for e in catalog.entries() {
                let _ = writeln!(t, "{:<14} {:>5}  {}", e.id, e.default_order, e.description);
            }
            let _ = writeln!(t, "\nsides: {}", SIDE_NAMES.join(" "));
            let _ = writeln!(t, "limits: {}", LIMIT_IDS.join(" "));
        }
    }
    Outcome::ok(t)
}

fn expand(s: &Settings, name: &str) -> Result<Outcome, Failure> {
    let order = s.order.unwrap_or(20);
    let series = named_side(name, order)?;
    let coeffs = series.q_coeffs_upto(order);
    let text = match s.format {
        Format::Text => {
            let t = order * series.scale() as i64;
            format!("{}\n", series.truncated(t))
        }
        Format::Json => {
            let c: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            serde_json::json!({"name": name, "order": order, "coeffs": c}).to_string() + "\n"
        }
        Format::Csv => {
            let mut t = String::from("exponent,coeff\n");
            for (e, c) in coeffs.iter().enumerate() {
                let _ = writeln!(t, "{e},{c}");
            }
            t
        }
    };
    Ok(Outcome::ok(text))
}

fn parse_grid(g: &str) -> anyhow::Result<(u64, u64)> {
    let (n, k) = g.split_once(['x', 'X', ',']).context("grid must look like NMAXxKMAX")?;
    Ok((n.trim().parse()?, k.trim().parse()?))
}

fn wz_check(
    s: &Settings,
    a: Option<String>,
    nmax: Option<u64>,
    kmax: Option<u64>,
    grid: Option<String>,
) -> Result<Outcome, Failure> {
    let a_text = a.or_else(|| s.file.a.clone()).unwrap_or_else(|| "0".into());
    let a: ExponentQ = a_text.parse()?;
    let (gn, gk) = match grid {
        Some(g) => {
            let (n, k) = parse_grid(&g)?;
            (Some(n), Some(k))
        }
        None => (None, None),
    };
    let nmax = nmax.or(gn).or(s.file.nmax).unwrap_or(10);
    let kmax = kmax.or(gk).or(s.file.kmax).unwrap_or(10);
    let order = s.order.unwrap_or(60);
    let report = wz_grid(a.value(), nmax, kmax, order)?;
    let telescope = if a.is_positive() {
        Some(telescope_check(a.value(), usize::MAX, usize::MAX, order)?.comparison.is_equal())
    } else {
        None
    };
    let code = if report.all_equal() && telescope != Some(false) { 0 } else { 1 };
    let text = match s.format {
        Format::Json => {
            serde_json::json!({"grid": report, "telescope_equal": telescope}).to_string() + "\n"
        }
        Format::Csv => {
            let mut t = String::from("n,k,exponent,lhs,rhs\n");
            for f in &report.failures {
                let _ = writeln!(t, "{},{},{},{},{}", f.n, f.k, f.exponent, f.lhs, f.rhs);
            }
            t
        }
        Format::Text => {
            let mut t = format!(
                "a = {}: {} grid points (n ≤ {}, k ≤ {}) at order {}, {} failures\n",
                report.a,
                report.checked,
                nmax,
                kmax,
                order,
                report.failures.len()
            );
            for f in &report.failures {
                let _ = writeln!(t, "  (n, k) = ({}, {}): q^{} {} vs {}", f.n, f.k, f.exponent, f.lhs, f.rhs);
            }
            if let Some(eq) = telescope {
                let _ = writeln!(t, "telescoped sums equal: {eq}");
            }
            t
        }
    };
    Ok(Outcome { text, code })
}

fn limit(s: &Settings, id: &str, eps: Vec<f64>, richardson: bool) -> Result<Outcome, Failure> {
    let eps = if eps.is_empty() {
        s.file.eps.clone().unwrap_or_else(|| vec![0.1, 0.03, 0.01, 0.003, 0.001])
    } else {
        eps
    };
    let cfg = LimitConfig { richardson, ..LimitConfig::default() };
    let e = numerics::q_limit_with(id, &eps, &cfg)?;
    let text = match s.format {
        Format::Json => serde_json::to_string(&e).expect("experiment serializes") + "\n",
        Format::Text | Format::Csv => {
            let mut t = String::from("eps,value,abs_error\n");
            for i in 0..e.eps.len() {
                let _ = writeln!(t, "{},{:.15e},{:.3e}", e.eps[i], e.values[i], e.errors[i]);
            }
            if let Some(x) = e.extrapolated {
                let _ = writeln!(t, "0,{x:.15e},{:.3e}", (x - e.target).abs());
            }
            t
        }
    };
    Ok(Outcome::ok(text))
}

fn classical(s: &Settings, name: &str, terms: u32) -> Result<Outcome, Failure> {
    let series: ClassicalSeries = name.parse()?;
    let value = numerics::classical_series(name, terms)?;
    let target = series.target();
    let err = (value - target).abs();
    let text = match s.format {
        Format::Json => {
            serde_json::json!({"name": name, "terms": terms, "value": value, "target": target, "abs_error": err})
                .to_string()
                + "\n"
        }
        Format::Csv => format!("name,terms,value,target,abs_error\n{name},{terms},{value:.17e},{target:.17e},{err:.3e}\n"),
        Format::Text => format!("{name} ({terms} terms) = {value:.17} target {target:.17} error {err:.3e}\n"),
    };
    Ok(Outcome::ok(text))
}

fn arith(s: &Settings, table: ArithTable, count: u64) -> Result<Outcome, Failure> {
    if count == 0 {
        return Err(Failure::Usage("count must be positive".into()));
    }
    let rows: Vec<(u64, i64, i64)> = match table {
        ArithTable::T2 => t2_table(count).into_iter().map(|r| (r.n, r.brute as i64, r.formula)).collect(),
        ArithTable::R2 => (0..count).map(|m| (m, r2_brute(m) as i64, r2_formula(m))).collect(),
    };
    let bad = rows.iter().filter(|r| r.1 != r.2).count();
    let text = match s.format {
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|r| serde_json::json!({"n": r.0, "brute": r.1, "formula": r.2})).collect();
            serde_json::json!({"rows": v, "mismatches": bad}).to_string() + "\n"
        }
        _ => {
            let mut t = String::from("n,brute,formula\n");
            for r in &rows {
                let _ = writeln!(t, "{},{},{}", r.0, r.1, r.2);
            }
            t
        }
    };
    Ok(Outcome { text, code: u8::from(bad > 0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec() {
        assert_eq!(parse_grid("25x30").unwrap(), (25, 30));
        assert_eq!(parse_grid("3,4").unwrap(), (3, 4));
        assert!(parse_grid("7").is_err());
    }

    #[test]
    fn config_keys() {
        let c: FileConfig = toml::from_str("order = 12\nformat = \"json\"\neps = [0.1, 0.01]").unwrap();
        assert_eq!(c.order, Some(12));
        assert_eq!(c.format, Some(Format::Json));
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
    }

    #[test]
    fn error_mapping() {
        assert!(matches!(Failure::from(Error::UnknownName("x".into())), Failure::Usage(_)));
        assert!(matches!(Failure::from(Error::Nontermination("x".into())), Failure::Builder(_)));
    }
}
