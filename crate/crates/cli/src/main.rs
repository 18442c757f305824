//! chaff: hide a real document among algorithmically generated fakes, and
//! rank a corpus the way an attacker would to see how well it hides.
//!
//! Exit codes: 0 success, 2 validation error (bad flags, config, or
//! arguments), 3 authentication or IO error.

mod commands;
mod config;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CliError;
use config::{parse_detector_name, parse_weights, Settings};

#[derive(Parser)]
#[command(
    name = "chaff",
    version,
    about = "Decoy-document vault: generate fakes, hide the real file, rank like an attacker",
    after_help = "Settings come from defaults, then --config FILE (flat `key = value` lines), \
                  then flags. Run `chaff generate notes.txt` and keep the printed share safe."
)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

/// Flag-level settings accepted by every command; each one shadows the same
/// config-file key.
#[derive(Args)]
struct Overrides {
    /// Flat `key = value` settings file
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Master seed for fake content (names draw fresh system entropy)
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Fraction of the real document each fake keeps, in [0, 1]
    #[arg(long, global = true, value_name = "FRACTION")]
    overlap: Option<f64>,

    /// How many fakes to generate
    #[arg(long, global = true, value_name = "N")]
    fakes: Option<usize>,

    /// Prime modulus for the share arithmetic
    #[arg(long, global = true, value_name = "P")]
    prime: Option<u64>,

    /// Detector weights as name=value pairs, e.g. ngram=2,svd=0.5
    #[arg(long, global = true, value_name = "LIST")]
    weights: Option<String>,

    /// Rank by a single detector: ngram, zipf, benford, timestamp, svd, bump
    #[arg(long, global = true, value_name = "DETECTOR")]
    only: Option<String>,

    /// Where to put the vault (generate) or the reports (rank, plot)
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    /// Paragraph and sentence bank mixed into fakes
    #[arg(long, global = true, value_name = "FILE")]
    bank: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, settings: &mut Settings) -> Result<(), CliError> {
        if let Some(v) = self.seed {
            settings.seed = v;
        }
        if let Some(v) = self.overlap {
            settings.overlap = v;
        }
        if let Some(v) = self.fakes {
            settings.fakes = v;
        }
        if let Some(v) = self.prime {
            settings.prime = v;
        }
        if let Some(spec) = &self.weights {
            settings.weights = parse_weights(spec, settings.weights)
                .map_err(|e| CliError::Config(format!("--weights: {e}")))?;
        }
        if let Some(name) = &self.only {
            settings.only = Some(
                parse_detector_name(name).map_err(|e| CliError::Config(format!("--only: {e}")))?,
            );
        }
        if let Some(v) = &self.out_dir {
            settings.out_dir = Some(v.clone());
        }
        if let Some(v) = &self.bank {
            settings.bank = Some(v.clone());
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate fakes of a document into a vault; prints the user share
    Generate {
        /// The real document
        real: PathBuf,
    },
    /// Print the document a share opens (real or fake, indistinguishably)
    Open {
        vault_dir: PathBuf,
        /// User share as printed by generate, x:y:p
        share: String,
    },
    /// Replace the vault's real content with a file's content
    Save {
        vault_dir: PathBuf,
        /// User share as printed by generate, x:y:p
        share: String,
        /// File holding the new content
        content: PathBuf,
    },
    /// Score every .txt in a directory and write CSV reports
    Rank { corpus_dir: PathBuf },
    /// Render vocabulary-growth curves and the embedding scatter as SVG
    Plot { corpus_dir: PathBuf },
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut settings = Settings::default();
    if let Some(path) = &cli.overrides.config {
        settings.apply_file(path)?;
    }
    cli.overrides.apply(&mut settings)?;
    settings.validate()?;

    match &cli.command {
        Command::Generate { real } => commands::generate(real, &settings),
        Command::Open { vault_dir, share } => commands::open(vault_dir, share),
        Command::Save { vault_dir, share, content } => {
            commands::save(vault_dir, share, content, &settings)
        }
        Command::Rank { corpus_dir } => commands::rank(corpus_dir, &settings),
        Command::Plot { corpus_dir } => commands::plot(corpus_dir, &settings),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_override_config_values() {
        let cli = Cli::parse_from([
            "chaff", "rank", "corpus", "--fakes", "9", "--seed", "3", "--only", "zipf",
            "--weights", "ngram=4",
        ]);
        let mut settings = Settings::default();
        cli.overrides.apply(&mut settings).unwrap();
        assert_eq!(settings.fakes, 9);
        assert_eq!(settings.seed, 3);
        assert_eq!(settings.only.as_deref(), Some("zipf"));
        assert_eq!(settings.weights.ngram, 4.0);
    }

    #[test]
    fn bad_flag_values_are_config_errors() {
        let cli = Cli::parse_from(["chaff", "rank", "corpus", "--only", "sorcery"]);
        let err = cli.overrides.apply(&mut Settings::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("--only"));
    }
}
