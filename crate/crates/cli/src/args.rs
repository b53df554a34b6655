use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "double-a", version, about = "Hilbert-point semistability toolkit for the balanced double A_{2k+1}-curve")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide semistability of the m-th Hilbert point (genus g = 2k).
    Certify(CertifyArgs),
    /// A χ-basis of non-positive weight for the given ρ.
    ChiBasis(ChiBasisArgs),
    /// Build one explicit χ-basis family and check it.
    Family(FamilyArgs),
    /// Pluricanonical basis sections and the scroll, cotangent and torus checks.
    Sections(SectionsArgs),
    /// Bielliptic destabilization bound (single point or table).
    Bielliptic(BiellipticArgs),
    /// Slope of the Hilbert-point polarization and the trigonal comparison.
    Slope(SlopeArgs),
    /// Random trace-zero ρ against the exact minimum basis weight.
    Fuzz(FuzzArgs),
    /// Kempf's bound on the rational normal curve for one λ.
    Kempf(KempfArgs),
    /// Certify every (k, m) of a grid.
    Sweep(SweepArgs),
    /// Re-check a certificate produced by `certify --format json`.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Lp,
    Constructive,
    Both,
}

impl Mode {
    pub fn lp(self) -> bool {
        matches!(self, Mode::Lp | Mode::Both)
    }

    pub fn constructive(self) -> bool {
        matches!(self, Mode::Constructive | Mode::Both)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    #[value(name = "B1", alias = "b1")]
    B1,
    #[value(name = "B2", alias = "b2")]
    B2,
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "T-primed", alias = "t-primed")]
    TPrimed,
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "S-mirrored", alias = "s-mirrored")]
    SMirrored,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads for parallel sections (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_enum, default_value = "lp")]
    pub mode: Mode,
    /// Trace-zero ρ (2k integers, λ then ν): inline csv or a file with one per line.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Sampled ρ for the constructive mode when no weights are given.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Entry bound for sampled ρ (default 10·k·m).
    #[arg(long)]
    pub bound: Option<i64>,
    /// Use the synthetic non-semistable class system instead.
    #[arg(long)]
    pub toy: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ChiBasisArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub weights: String,
    /// Also report the exact minimum over all χ-bases.
    #[arg(long)]
    pub optimal: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Split index, 1 ≤ s ≤ k−1 (T and S families).
    #[arg(long)]
    pub s: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SectionsArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BiellipticArgs {
    /// Genus or inclusive range `a..b`.
    #[arg(long)]
    pub g: Span,
    /// Order or inclusive range `a..b`.
    #[arg(long)]
    pub m: Span,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SlopeArgs {
    #[arg(long)]
    pub g: u64,
    #[arg(long, default_value_t = 3)]
    pub m: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub bound: Option<i64>,
    /// ρ placed in the first trial slot.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    #[arg(long)]
    pub toy: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct KempfArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: u32,
    /// λ: k integers, inline csv or file.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "2..5")]
    pub k: Span,
    #[arg(long, default_value = "2..6")]
    pub m: Span,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Certificate JSON file (`-` for standard input).
    pub certificate: String,
    /// The certificate is for the synthetic toy system.
    #[arg(long)]
    pub toy: bool,
    #[command(flatten)]
    pub output: Output,
}

/// An inclusive integer range written `n` or `a..b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Integers from a file (one per line) if `source` names one, else from an
/// inline comma- or whitespace-separated list.
pub fn read_integers(source: &str) -> anyhow::Result<Vec<i64>> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading weights file {source}"))?;
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v = line
                .parse::<i64>()
                .with_context(|| format!("{source}:{}: not an integer: {line:?}", i + 1))?;
            out.push(v);
        }
        if out.is_empty() {
            bail!("weights file {source} is empty");
        }
        return Ok(out);
    }
    let out = source
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .with_context(|| format!("weights: {t:?} is not an integer (and no such file)"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if out.is_empty() {
        bail!("no weights given");
    }
    Ok(out)
}
