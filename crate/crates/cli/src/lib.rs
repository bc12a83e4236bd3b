//! Command-line front end. [`run`] parses arguments, executes one subcommand
//! and returns the process exit status:
//!
//! | status | meaning |
//! |--------|---------|
//! | 0 | success |
//! | 1 | usage error (bad flags, malformed input, precondition violated) |
//! | 2 | verification failure (bad codebook file, failed gate) |
//! | 3 | resource cap exceeded |
//!
//! With `--format structured` every report is a JSON object with a fixed
//! key order; integers are rendered as decimal strings.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use rankperm::bounds::bounds_report;
use rankperm::construction::{build_code, codebook, RankCode};
use rankperm::enumeration::{
    brute_q_count, brute_weight_distribution, exact_optimal_size, h_ball_volume,
    kendall_ball_volume, q_count, weight_distribution,
};
use rankperm::perm::{
    cayley_distance, footrule, from_inversion_vector, inversion_count, kendall_distance,
    l1_distance, max_distance, to_inversion_vector, InversionVector, Permutation,
};
use rankperm::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_CAP: u8 = 3;

/// Largest `n` accepted by `construct`.
pub const CONSTRUCT_MAX_N: usize = 12;
/// Largest `n` accepted by exhaustive (`--brute`) paths.
pub const BRUTE_MAX_N: usize = 8;
/// Largest `n` accepted by `optimal`.
pub const OPTIMAL_MAX_N: usize = rankperm::enumeration::OPTIMAL_MAX_N;
/// Largest `n` accepted by `volume` and `bounds`.
pub const ANALYTIC_MAX_N: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "rankperm", version, about = "Kendall tau permutation codes")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kendall, inversion-vector l1, footrule and Cayley distances.
    Dist {
        /// First permutation, e.g. 2,1,4,3
        first: String,
        /// Second permutation of the same size
        second: String,
    },
    /// Convert between a permutation and its inversion vector.
    Invvec {
        /// Permutation to encode
        #[arg(long, required_unless_present = "vector", conflicts_with = "vector")]
        perm: Option<String>,
        /// Inversion vector to decode
        #[arg(long)]
        vector: Option<String>,
    },
    /// Inversion counts and ball volumes. Without --k or --r the full
    /// distribution is printed.
    Volume {
        #[arg(long)]
        n: usize,
        /// Number of permutations with exactly k inversions
        #[arg(long)]
        k: Option<u64>,
        /// Radius for ball volumes and composition counts
        #[arg(long)]
        r: Option<u64>,
        /// Cross-check against exhaustive enumeration
        #[arg(long)]
        brute: bool,
    },
    /// Upper and lower bounds on the largest code with minimum distance d.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
    },
    /// Build a t-error-correcting code and write its codebook file.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reload a codebook file and rerun every gate.
    Verify { file: PathBuf },
    /// Decode a received permutation against a codebook file.
    Decode { file: PathBuf, received: String },
    /// Exact largest code size by maximum-clique search.
    Optimal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
    },
}

/// A failed command: exit status and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub status: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn cap(param: &str, value: usize, cap: usize) -> Self {
        Failure {
            status: EXIT_CAP,
            message: format!("{param} = {value} exceeds the cap of {cap}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Verification(_) | Error::Format(_) | Error::Internal(_) => EXIT_VERIFICATION,
            Error::InvalidPermutation(_)
            | Error::SizeMismatch { .. }
            | Error::CoordinateOutOfRange { .. }
            | Error::Parse { .. }
            | Error::Domain(_) => EXIT_USAGE,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Field {
    Int(String),
    Text(String),
    Flag(bool),
    List(Vec<String>),
    Null,
}

/// Ordered key/value output of one command.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, Field)>,
}

impl Report {
    fn int(mut self, key: &str, value: impl ToString) -> Self {
        self.fields
            .push((key.into(), Field::Int(value.to_string())));
        self
    }

    fn text(mut self, key: &str, value: impl ToString) -> Self {
        self.fields
            .push((key.into(), Field::Text(value.to_string())));
        self
    }

    fn flag(mut self, key: &str, value: bool) -> Self {
        self.fields.push((key.into(), Field::Flag(value)));
        self
    }

    fn list(mut self, key: &str, values: impl IntoIterator<Item = impl ToString>) -> Self {
        let values = values.into_iter().map(|v| v.to_string()).collect();
        self.fields.push((key.into(), Field::List(values)));
        self
    }

    fn opt_int(mut self, key: &str, value: Option<impl ToString>) -> Self {
        let field = value.map_or(Field::Null, |v| Field::Int(v.to_string()));
        self.fields.push((key.into(), field));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut out = String::new();
                for (key, field) in &self.fields {
                    let value = match field {
                        Field::Int(s) | Field::Text(s) => s.clone(),
                        Field::Flag(b) => b.to_string(),
                        Field::List(items) => items.join(","),
                        Field::Null => "-".into(),
                    };
                    out.push_str(&format!("{key:<width$}  {value}\n"));
                }
                out
            }
            Format::Structured => {
                let map: Map<String, Value> = self
                    .fields
                    .iter()
                    .map(|(key, field)| {
                        let value = match field {
                            Field::Int(s) | Field::Text(s) => Value::String(s.clone()),
                            Field::Flag(b) => Value::Bool(*b),
                            Field::List(items) => {
                                Value::Array(items.iter().cloned().map(Value::String).collect())
                            }
                            Field::Null => Value::Null,
                        };
                        (key.clone(), value)
                    })
                    .collect();
                let mut out =
                    serde_json::to_string_pretty(&Value::Object(map)).expect("strings serialise");
                out.push('\n');
                out
            }
        }
    }
}

fn parse_perm(s: &str, what: &str) -> Result<Permutation, Failure> {
    s.parse::<Permutation>()
        .map_err(|e| Failure::usage(format!("{what}: {e}")))
}

fn check_cap(param: &str, value: usize, cap: usize) -> Result<(), Failure> {
    if value > cap {
        Err(Failure::cap(param, value, cap))
    } else {
        Ok(())
    }
}

fn cmd_dist(first: &str, second: &str) -> Result<Report, Failure> {
    let a = parse_perm(first, "first permutation")?;
    let b = parse_perm(second, "second permutation")?;
    let kendall = kendall_distance(&a, &b)?;
    // a single symbol has an empty inversion vector
    let (x, y) = if a.len() >= 2 {
        (
            to_inversion_vector(&a)?.coords().to_vec(),
            to_inversion_vector(&b)?.coords().to_vec(),
        )
    } else {
        (Vec::new(), Vec::new())
    };
    let l1: u64 = x.iter().zip(&y).map(|(&p, &q)| p.abs_diff(q) as u64).sum();
    let report = Report::default()
        .int("n", a.len())
        .int("kendall", kendall)
        .int("l1", l1)
        .list("inversion_vector_first", &x)
        .list("inversion_vector_second", &y);
    Ok(report
        .int("footrule", footrule(&a, &b)?)
        .int("cayley", cayley_distance(&a, &b)?))
}

fn cmd_invvec(perm: Option<&str>, vector: Option<&str>) -> Result<Report, Failure> {
    let (p, x) = match (perm, vector) {
        (Some(p), None) => {
            let p = parse_perm(p, "permutation")?;
            let x = to_inversion_vector(&p)?;
            (p, x)
        }
        (None, Some(v)) => {
            let x: InversionVector = v
                .parse()
                .map_err(|e: Error| Failure::usage(format!("inversion vector: {e}")))?;
            if x.coords().is_empty() {
                return Err(Failure::usage(
                    "inversion vector: needs at least one coordinate",
                ));
            }
            (from_inversion_vector(&x), x)
        }
        _ => return Err(Failure::usage("give exactly one of --perm and --vector")),
    };
    Ok(Report::default()
        .int("n", p.len())
        .list("permutation", p.entries())
        .list("inversion_vector", x.coords())
        .int("inversions", inversion_count(&p)))
}

fn cmd_volume(n: usize, k: Option<u64>, r: Option<u64>, brute: bool) -> Result<Report, Failure> {
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    check_cap("n", n, ANALYTIC_MAX_N)?;
    if brute {
        check_cap("n", n, BRUTE_MAX_N)?;
    }
    let dist = weight_distribution(n)?;
    let exhaustive = if brute {
        let b = brute_weight_distribution(n)?;
        if b != dist {
            return Err(Failure {
                status: EXIT_VERIFICATION,
                message: "distribution differs from exhaustive enumeration".into(),
            });
        }
        Some(b)
    } else {
        None
    };
    let mut report = Report::default()
        .int("n", n)
        .int("max_distance", max_distance(n));
    if let Some(k) = k {
        report = report.int("k", k).int("inversions", dist.get(k));
    }
    if let Some(r) = r {
        let q = q_count(n, r)?;
        if brute && brute_q_count(n, r)? != q {
            return Err(Failure {
                status: EXIT_VERIFICATION,
                message: "composition count differs from exhaustive enumeration".into(),
            });
        }
        report = report
            .int("r", r)
            .int("kendall_ball", kendall_ball_volume(n, r)?)
            .int("compositions", q)
            .int("footrule_ball", h_ball_volume(n, r)?);
    }
    if k.is_none() && r.is_none() {
        report = report.list("distribution", dist.counts());
    }
    if exhaustive.is_some() {
        report = report.flag("brute_checked", true);
    }
    Ok(report)
}

fn cmd_bounds(n: usize, d: u64) -> Result<Report, Failure> {
    check_cap("n", n, ANALYTIC_MAX_N)?;
    let report = bounds_report(n, d)?;
    Ok(report
        .to_record()
        .into_iter()
        .fold(Report::default(), |acc, (key, value)| acc.text(key, value)))
}

fn code_summary(code: &RankCode) -> Report {
    Report::default()
        .int("n", code.n())
        .int("t", code.t())
        .opt_int("q", code.q())
        .opt_int("m", code.m())
        .int("m_t", code.m_t())
        .int("coset", code.coset())
        .int("size", code.len())
        .int("guaranteed_size", code.guaranteed_size())
        .text(
            "packing_efficiency",
            format!("{:.6}", code.packing_efficiency()),
        )
}

fn cmd_construct(n: usize, t: u32, out: &Path) -> Result<Report, Failure> {
    check_cap("n", n, CONSTRUCT_MAX_N)?;
    let code = build_code(n, t)?;
    let checked = code.has_min_distance_at_least(2 * t as u64 + 1);
    if !checked {
        return Err(Failure {
            status: EXIT_VERIFICATION,
            message: format!("built code has minimum distance below {}", 2 * t + 1),
        });
    }
    std::fs::write(out, codebook::to_string(&code))
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(code_summary(&code).flag("min_distance_checked", checked))
}

fn load_code(path: &Path) -> Result<RankCode, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(codebook::from_str(&text)?)
}

fn cmd_verify(path: &Path) -> Result<Report, Failure> {
    let code = load_code(path)?;
    code.verify()?;
    Ok(code_summary(&code).text("status", "ok"))
}

fn cmd_decode(path: &Path, received: &str) -> Result<Report, Failure> {
    let code = load_code(path)?;
    let received = parse_perm(received, "received permutation")?;
    let decoded = code.decode(&received)?;
    let report = Report::default().list("received", received.entries());
    Ok(match decoded {
        Some(c) => report
            .text("status", "decoded")
            .list("codeword", c.entries())
            .int("distance", kendall_distance(&c, &received)?)
            .int(
                "l1_distance",
                l1_distance(&to_inversion_vector(&c)?, &to_inversion_vector(&received)?)?,
            ),
        None => report.text("status", "uncorrectable"),
    })
}

fn cmd_optimal(n: usize, d: u64) -> Result<Report, Failure> {
    check_cap("n", n, OPTIMAL_MAX_N)?;
    let size = exact_optimal_size(n, d)?;
    Ok(Report::default()
        .int("n", n)
        .int("d", d)
        .int("optimal_size", size))
}

fn execute(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Dist { first, second } => cmd_dist(first, second),
        Command::Invvec { perm, vector } => cmd_invvec(perm.as_deref(), vector.as_deref()),
        Command::Volume { n, k, r, brute } => cmd_volume(*n, *k, *r, *brute),
        Command::Bounds { n, d } => cmd_bounds(*n, *d),
        Command::Construct { n, t, out } => cmd_construct(*n, *t, out),
        Command::Verify { file } => cmd_verify(file),
        Command::Decode { file, received } => cmd_decode(file, received),
        Command::Optimal { n, d } => cmd_optimal(*n, *d),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let _ = write!(out, "{}", report.render(cli.format));
            EXIT_OK
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            failure.status
        }
    }
}
