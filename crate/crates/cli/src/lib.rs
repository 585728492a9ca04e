//! Command-line surface over `eulerian-core`.
//!
//! Every command produces a [`Report`]: a JSON envelope `{meta, result}`
//! plus an aligned-text rendering. Exit status 0 means success, 1 a failed
//! check (witnesses are in the result), 2 a usage or configuration error.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulerian_core::families::{Enumerator, FamilyName, FamilySpec};
use eulerian_core::Rational;
use serde_json::{json, Value};

mod commands;
pub mod formats;
mod selftest;
mod text;

pub use selftest::selftest;

/// Environment variable naming a directory that receives a copy of each
/// report as `<command>.json` or `<command>.txt`.
pub const OUTPUT_DIR_ENV: &str = "EULERIAN_OUTPUT_DIR";

/// Largest `nmax` accepted by the generating-function routes.
pub const NMAX_CAP: usize = 40;

/// Largest `--order` accepted by `prodmat`; the Riordan array has rational
/// function entries and its inverse grows quickly.
pub const PRODMAT_ORDER_CAP: usize = 20;

/// Largest `n` reached through the general-family recurrence in `selftest`.
pub const GENERAL_SELFTEST_CAP: usize = 10;

#[derive(Parser, Debug, Clone)]
#[command(name = "eulerian", version, about = "Exact Eulerian polynomials of Coxeter groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Rows T_0(q)..T_{nmax-1}(q) of a family by one route.
    Table {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Route::Egf)]
        route: Route,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Jacobi continued fraction coefficients s_i, t_i of a family.
    Cfrac {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Also emit this many moments.
        #[arg(long)]
        moments: Option<usize>,
    },
    /// Production matrix of the family's exponential Riordan array.
    Prodmat {
        #[command(flatten)]
        family: FamilyArgs,
        /// Order of the Riordan array; the matrix has order - 1 rows.
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = ProdRoute::Direct)]
        route: ProdRoute,
        /// Include every matrix entry, not only the bands.
        #[arg(long)]
        full: bool,
    },
    /// q-log-convexity checks on a family.
    Check {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Does an Eulerian transformation keep a sequence log-convex?
    Conjecture {
        #[arg(long, value_enum, ignore_case = true)]
        triangle: TriangleArg,
        /// Builtin name (ones, powers-of-two, factorials, catalan, motzkin)
        /// or a JSON file holding an array of rationals.
        #[arg(long)]
        seq: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Recover s_i, t_i from a JSON moment sequence.
    InvertMoments {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to half the number of moments.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Three-way agreement matrix over every family.
    Selftest {
        #[command(flatten)]
        caps: CapArgs,
        /// Negate t_1 on the continued-fraction route.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Table { .. } => "table",
            Command::Cfrac { .. } => "cfrac",
            Command::Prodmat { .. } => "prodmat",
            Command::Check { .. } => "check",
            Command::Conjecture { .. } => "conjecture",
            Command::InvertMoments { .. } => "invert-moments",
            Command::Selftest { .. } => "selftest",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// TypeA_shifted, TypeA, TypeA_qt, TypeB, TypeB_qt or General.
    #[arg(long, value_parser = parse_family)]
    pub family: FamilyName,
    #[arg(long, value_parser = formats::parse_rational, allow_hyphen_values = true)]
    pub t: Option<Rational>,
    #[arg(long, value_parser = formats::parse_rational, allow_hyphen_values = true)]
    pub a: Option<Rational>,
    #[arg(long, value_parser = formats::parse_rational, allow_hyphen_values = true)]
    pub d: Option<Rational>,
}

impl FamilyArgs {
    pub fn spec(&self) -> Result<FamilySpec, UsageError> {
        FamilySpec::new(self.family, self.t.clone(), self.a.clone(), self.d.clone()).map_err(UsageError::from)
    }
}

fn parse_family(s: &str) -> Result<FamilyName, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = FamilyName::ALL.iter().map(|f| f.as_str()).collect();
        format!("unknown family {s:?}, expected one of {}", names.join(", "))
    })
}

#[derive(Args, Debug, Clone, Default)]
pub struct CapArgs {
    /// Largest n enumerated over the symmetric group.
    #[arg(long)]
    pub max_symmetric: Option<usize>,
    /// Largest n enumerated over the signed permutations.
    #[arg(long)]
    pub max_signed: Option<usize>,
}

impl CapArgs {
    pub fn enumerator(&self) -> Enumerator {
        let default = Enumerator::default();
        Enumerator {
            max_symmetric: self.max_symmetric.unwrap_or(default.max_symmetric),
            max_signed: self.max_signed.unwrap_or(default.max_signed),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Egf,
    Cfrac,
    Enum,
    Recurrence,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProdRoute {
    Direct,
    Formula,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Qlcx,
    Strong,
    Zhu,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

/// Bad flags, missing parameters, unreadable input: exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<eulerian_core::Error> for UsageError {
    fn from(e: eulerian_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<String> for UsageError {
    fn from(s: String) -> Self {
        UsageError(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Ok
        } else {
            Status::CheckFailed
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    /// Echo of the effective configuration.
    pub config: Value,
    pub result: Value,
    pub text: String,
}

impl Report {
    pub fn envelope(&self) -> Value {
        json!({
            "meta": {
                "tool": "eulerian",
                "version": env!("CARGO_PKG_VERSION"),
                "command": self.command,
                "config": self.config,
                "exit_code": self.status.code(),
            },
            "result": self.result,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.envelope()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }

    /// Writes the rendering into `dir` as `<command>.json` or `.txt`.
    pub fn write_to_dir(&self, format: Format, dir: &Path) -> std::io::Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let ext = match format {
            Format::Json => "json",
            Format::Text => "txt",
        };
        let path = dir.join(format!("{}.{ext}", self.command));
        fs::write(&path, self.render(format))?;
        Ok(path)
    }
}

pub fn run(cli: &Cli) -> Result<Report, UsageError> {
    match &cli.command {
        Command::Table {
            family,
            nmax,
            route,
            caps,
        } => commands::table(&family.spec()?, *nmax, *route, caps.enumerator()),
        Command::Cfrac { family, depth, moments } => commands::cfrac(&family.spec()?, *depth, *moments),
        Command::Prodmat {
            family,
            order,
            route,
            full,
        } => commands::prodmat(&family.spec()?, *order, *route, *full),
        Command::Check { family, nmax, mode } => commands::check(&family.spec()?, *nmax, *mode),
        Command::Conjecture { triangle, seq, nmax } => commands::conjecture(*triangle, seq, *nmax),
        Command::InvertMoments { input, depth } => commands::invert_moments(input, *depth),
        Command::Selftest { caps, inject_fault } => selftest(caps.enumerator(), *inject_fault),
    }
}
