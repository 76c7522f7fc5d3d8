use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Secure repairable fountain codes: generate, encode, repair, decode,
/// audit against an (l1, l2) eavesdropper, and compare secure rates.
///
/// Node numbers on the command line are 1-based. Exit status is 0 on
/// success, 1 on a domain failure and 2 on a usage error.
#[derive(Debug, Parser)]
#[command(name = "srfc", version)]
pub struct Cli {
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a secure RFC and write its spec file.
    Gen(GenArgs),
    /// Encode a file into one shard per node.
    Encode(EncodeArgs),
    /// Recover the original file from the shards present.
    Decode(DecodeArgs),
    /// Rebuild one missing shard from a local group.
    Repair(RepairArgs),
    /// Audit one eavesdropper attack.
    Audit(AuditArgs),
    /// Search all attacks of a given size for the maximum leakage.
    AuditWorst(AuditWorstArgs),
    /// Tabulate achievable secure rates as CSV.
    Rates(RatesArgs),
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// RNG seed; falls back to $SRFC_SEED, then 0.
    #[arg(long, env = "SRFC_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Base field characteristic (prime).
    #[arg(long)]
    pub q: u32,
    /// Extension degree; must be at least k_tilde.
    #[arg(long)]
    pub p: usize,
    /// Number of storage nodes.
    #[arg(long)]
    pub n: Option<usize>,
    /// Inner code dimension.
    #[arg(long = "k-tilde")]
    pub k_tilde: Option<usize>,
    /// Locality; defaults to ceil(log2 k_tilde).
    #[arg(long)]
    pub xi: Option<usize>,
    /// Provisioned number of observed nodes.
    #[arg(long, default_value_t = 0)]
    pub l1: usize,
    /// Provisioned number of observed repairs.
    #[arg(long, default_value_t = 0)]
    pub l2: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Use a fixed parity topology instead of a random one.
    #[arg(long, value_parser = ["small-6-4", "reference-20-10"])]
    pub topology: Option<String>,
    /// Drop the q > k_tilde and l1 + l2 < k conditions.
    #[arg(long)]
    pub relaxed: bool,
    /// Output spec file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Input file.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Shard output directory (created if missing).
    #[arg(long)]
    pub outdir: PathBuf,
    /// Accept any file size by splitting it into stripes.
    #[arg(long)]
    pub chunked: bool,
    /// Do not keep the random padding next to the shards.
    #[arg(long = "discard-secret")]
    pub discard_secret: bool,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Directory holding the shards.
    #[arg(long)]
    pub shards: PathBuf,
    /// Output file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RepairArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub shards: PathBuf,
    /// Node to rebuild.
    #[arg(long)]
    pub failed: usize,
    /// Repair through this parity node instead of the lowest usable one.
    #[arg(long)]
    pub via: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Default,
    Worst,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Nodes whose storage is observed, e.g. 1,4,7.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub s1: Vec<usize>,
    /// Nodes whose repair is observed.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub s2: Vec<usize>,
    /// Repair-group policy for S2 nodes.
    #[arg(long, value_enum, default_value_t = PolicyArg::Default)]
    pub policy: PolicyArg,
    /// Pin the repair of NODE to parity PARITY, as NODE:PARITY.
    #[arg(long, value_parser = parse_pin)]
    pub pin: Vec<(usize, usize)>,
    /// Also compute the mutual information by exhaustive enumeration.
    #[arg(long)]
    pub oracle: bool,
    /// Maximum (message, padding) pairs the oracle may enumerate.
    #[arg(long, default_value_t = 1 << 24)]
    pub budget: u128,
    /// Audit stored shards instead of a freshly encoded random message.
    #[arg(long)]
    pub shards: Option<PathBuf>,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Args)]
pub struct AuditWorstArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Attack storage budget; defaults to the provisioned l1.
    #[arg(long)]
    pub l1: Option<usize>,
    /// Attack repair budget; defaults to the provisioned l2.
    #[arg(long)]
    pub l2: Option<usize>,
    /// Configurations to evaluate before falling back to sampling.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Args)]
pub struct RatesArgs {
    /// Models: msr, rfc, lrc.
    #[arg(long, value_delimiter = ',', default_value = "msr,rfc,lrc")]
    pub models: Vec<String>,
    /// Inner code rates k_tilde/n, as decimals or fractions.
    #[arg(long = "inner-rate", value_delimiter = ',', default_value = "0.5,0.8")]
    pub inner_rate: Vec<String>,
    #[arg(long, default_value_t = 2)]
    pub l1: u64,
    #[arg(long, default_value_t = 2)]
    pub l2: u64,
    /// RFC locality.
    #[arg(long, default_value_t = 3)]
    pub xi: u64,
    /// LRC locality.
    #[arg(long, default_value_t = 3)]
    pub r: u64,
    /// LRC local distance; only 2 is supported.
    #[arg(long, default_value_t = 2)]
    pub delta: u32,
    /// k_tilde range as START:END:STEP (inclusive) or a single value.
    #[arg(long, default_value = "10:100:10")]
    pub ktilde: String,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_pin(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected NODE:PARITY")?;
    let a = a.trim().parse().map_err(|_| format!("bad node {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad parity {b:?}"))?;
    Ok((a, b))
}

/// Parses `a:b:step` or a single value into an inclusive range.
pub fn parse_range(s: &str) -> Result<Vec<u64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad number {t:?} in range {s:?}"));
    match parts.as_slice() {
        [one] => Ok(vec![num(one)?]),
        [a, b] => Ok((num(a)?..=num(b)?).collect()),
        [a, b, step] => {
            let step = num(step)?;
            if step == 0 {
                return Err("range step must be positive".into());
            }
            Ok((num(a)?..=num(b)?).step_by(step as usize).collect())
        }
        _ => Err(format!("bad range {s:?}; expected START:END:STEP")),
    }
}
