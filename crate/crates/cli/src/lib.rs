//! Library half of the `srfc` binary: argument definitions, persistence
//! formats and the command implementations.

pub mod args;
pub mod chunk;
pub mod commands;
pub mod error;
pub mod shard;
pub mod spec_file;

pub use args::{Cli, Command};
pub use error::CliError;

/// Runs one parsed invocation inside a rayon pool of `cli.jobs` threads.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", cli.jobs)))?;
    pool.install(|| match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Encode(a) => commands::encode(a),
        Command::Decode(a) => commands::decode(a),
        Command::Repair(a) => commands::repair(a),
        Command::Audit(a) => commands::audit_cmd(a),
        Command::AuditWorst(a) => commands::audit_worst(a),
        Command::Rates(a) => commands::rates_cmd(a),
    })
}
