//! Command-line front end: sweeps, distributions, sign summaries and oracle
//! runs, written as CSV or JSON.

pub mod args;
pub mod dist;
pub mod error;
pub mod oracle;
pub mod output;
pub mod source;
pub mod summary;
pub mod sweep;

use args::{Cli, Command, PresetsCommand};
pub use error::{CliError, Result};

/// Run a parsed command line and write its output.
pub fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be >= 1".into()));
        }
        // a pool may already exist when called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let text = match &cli.command {
        Command::Witness(a) => sweep::run(a, cli.format, cli.minus_one)?,
        Command::Dist(a) => dist::run(a, cli.format)?,
        Command::Summary(a) => summary::run(a, cli.format)?,
        Command::Oracle(a) => oracle::run(a, cli.format)?,
        Command::Presets(a) => match &a.command {
            PresetsCommand::List => source::list_presets(cli.format)?,
            PresetsCommand::Show { name } => source::show_preset(name)?,
        },
    };
    output::emit(cli.out.as_deref(), &text)
}
