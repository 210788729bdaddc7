use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Deserialize;

use infsubst::EventuallyConstantSeq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Spectral,
    Count,
    Discrepancy,
    CatalanCheck,
    Twist,
    Asymptotics,
    Figures,
}

/// Tile counts, discrepancies and spectral data for substitutions on an infinite alphabet.
#[derive(Debug, Parser)]
#[command(name = "infsubst", version)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Prefix a_0,...,a_{k-1} of the sequence, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub prefix: Option<Vec<u64>>,
    /// Eventual constant value a.
    #[arg(long)]
    pub tail: Option<u64>,
    /// Largest iteration n.
    #[arg(long = "n")]
    pub n_max: Option<usize>,
    /// Working precision in bits (default: ceil(n log2 lambda) + 128).
    #[arg(long)]
    pub bits: Option<u32>,
    /// Significant digits for decimal output (at least 6).
    #[arg(long)]
    pub digits: Option<usize>,
    /// Output file (figures: output directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with keys prefix, tail, n_max, bits, digits.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    prefix: Option<Vec<u64>>,
    tail: Option<u64>,
    n_max: Option<usize>,
    bits: Option<u32>,
    digits: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// `None` only for `figures`, which uses its own sequences.
    pub seq: Option<EventuallyConstantSeq>,
    pub n_max: usize,
    pub bits: Option<u32>,
    pub digits: usize,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_N: usize = 200;
pub const DEFAULT_DIGITS: usize = 30;

/// Merges the config file (if any) with the flags; flags win.
pub fn parse_config(args: Args) -> Result<RunConfig, String> {
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            serde_json::from_str::<FileConfig>(&text).map_err(|e| format!("malformed config {}: {e}", path.display()))?
        }
        None => FileConfig::default(),
    };
    let prefix = args.prefix.or(file.prefix).unwrap_or_default();
    let tail = args.tail.or(file.tail);
    let seq = match tail {
        Some(t) => Some(EventuallyConstantSeq::new(prefix, t).map_err(|e| e.to_string())?),
        None if args.command == Command::Figures => None,
        None => return Err("--tail is required".into()),
    };
    let digits = args.digits.or(file.digits).unwrap_or(DEFAULT_DIGITS);
    if digits < 6 {
        return Err(format!("--digits must be at least 6, got {digits}"));
    }
    let bits = args.bits.or(file.bits);
    if let Some(b) = bits {
        if b < 64 {
            return Err(format!("--bits must be at least 64, got {b}"));
        }
    }
    Ok(RunConfig {
        command: args.command,
        seq,
        n_max: args.n_max.or(file.n_max).unwrap_or(DEFAULT_N),
        bits,
        digits,
        out: args.out,
    })
}
