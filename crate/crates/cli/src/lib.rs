//! Front end for `coalg-format 1` definition files: parsing, serialization
//! and the subcommands behind the `comono` binary.
//!
//! Exit statuses: 0 success (or mono), 1 the checked property fails, 2 usage
//! or input error.

pub mod commands;
pub mod document;
pub mod error;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use document::{parse_document, serialize_document, DefinitionDocument};
pub use error::CliError;

/// Definitions shipped inside the binary.
pub const BUILTINS: &[(&str, &str)] = &[
    ("paper-example", include_str!("../fixtures/paper-example.coalg")),
    ("grouplike-counit", include_str!("../fixtures/grouplike-counit.coalg")),
    ("comatrix-3", include_str!("../fixtures/comatrix-3.coalg")),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Parser, Debug)]
#[command(name = "comono", version, about = "Coalgebra definitions, cotensor products and monomorphism checks")]
pub struct Cli {
    /// Definition file in `coalg-format 1`.
    #[arg(short, long, global = true, conflicts_with = "builtin")]
    pub file: Option<PathBuf>,

    /// Use a definition shipped with the binary: paper-example, grouplike-counit, comatrix-3.
    #[arg(short, long, global = true)]
    pub builtin: Option<String>,

    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every axiom of every object in the document.
    Validate,
    /// Decide whether a morphism is a monomorphism of coalgebras.
    MonoCheck {
        morphism: String,
        /// Only evaluate the counit identity on C□_D C.
        #[arg(long)]
        skip_crosscheck: bool,
    },
    /// Cotensor product of a right and a left comodule. A coalgebra name
    /// stands for the coalgebra over itself.
    Cotensor {
        left: String,
        right: String,
        /// Corestrict both factors along this morphism first.
        #[arg(long)]
        along: Option<String>,
    },
    /// Invariant functionals of a bicomodule.
    H0 {
        bicomodule: String,
        coalgebra: String,
        /// Corestrict the bicomodule along this morphism first.
        #[arg(long)]
        via: Option<String>,
    },
    /// Quotient of a coalgebra by a subspace, if it is a coideal.
    Quotient { coalgebra: String, subspace: String },
    /// Trivial coextension of a coalgebra by a bicomodule.
    Coextend { coalgebra: String, bicomodule: String },
    /// Dual algebra of a coalgebra.
    Dualize { coalgebra: String },
    /// Run a shipped example end to end.
    Demo {
        #[arg(value_parser = ["paper-example"])]
        example: String,
    },
    /// Batch of generated morphisms with all criteria compared.
    Fuzz {
        /// Seed range, e.g. 0..500.
        #[arg(long, default_value = "0..100")]
        seeds: String,
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        /// Q or Fp<p>, e.g. Fp7.
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

/// Result of one invocation: exit status and the text for stdout/stderr.
pub struct Invocation {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

fn load(cli: &Cli) -> Result<DefinitionDocument, CliError> {
    let text = match (&cli.file, &cli.builtin) {
        (Some(path), _) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        (None, Some(name)) => builtin(name)
            .ok_or_else(|| CliError::Usage(format!("unknown builtin `{name}`")))?
            .to_string(),
        (None, None) => return Err(CliError::Usage("pass --file PATH or --builtin NAME".into())),
    };
    parse_document(&text)
}

fn dispatch(cli: &Cli) -> Result<commands::Outcome, CliError> {
    match &cli.command {
        Command::Demo { .. } => {
            let doc = parse_document(builtin("paper-example").expect("shipped"))?;
            commands::demo_comatrix_quotient(&doc)
        }
        Command::Fuzz { seeds, max_dim, field } => {
            if *max_dim == 0 {
                return Err(CliError::Usage("--max-dim must be positive".into()));
            }
            commands::fuzz(commands::parse_seed_range(seeds)?, *max_dim, commands::parse_field(field)?)
        }
        other => {
            let doc = load(cli)?;
            match other {
                Command::Validate => commands::validate(&doc),
                Command::MonoCheck {
                    morphism,
                    skip_crosscheck,
                } => commands::mono_check(&doc, morphism, *skip_crosscheck),
                Command::Cotensor { left, right, along } => {
                    commands::cotensor_cmd(&doc, left, right, along.as_deref())
                }
                Command::H0 {
                    bicomodule,
                    coalgebra,
                    via,
                } => commands::h0_cmd(&doc, bicomodule, coalgebra, via.as_deref()),
                Command::Quotient { coalgebra, subspace } => commands::quotient_cmd(&doc, coalgebra, subspace),
                Command::Coextend { coalgebra, bicomodule } => commands::coextend(&doc, coalgebra, bicomodule),
                Command::Dualize { coalgebra } => commands::dualize(&doc, coalgebra),
                Command::Demo { .. } | Command::Fuzz { .. } => unreachable!(),
            }
        }
    }
}

/// Parses arguments and runs one command without touching the process.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if status == 0 {
                Invocation {
                    status,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Invocation {
                    status,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&outcome.json).expect("values serialize");
                s.push('\n');
                s
            } else {
                outcome.text
            };
            Invocation {
                status: outcome.status,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stdout = if cli.json {
                let v = serde_json::json!({ "error": e.to_string(), "status": e.exit_code() });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize"))
            } else {
                String::new()
            };
            Invocation {
                status: e.exit_code(),
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}
