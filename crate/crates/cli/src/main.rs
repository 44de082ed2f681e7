use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lie_frobenius_cli::{
    cmd_analyze, cmd_catalog, cmd_embed, cmd_validate, CatalogEntry, FieldName, Format,
    FunctionalOptions, Source, Status,
};

/// Frobenius Lie algebras from structure constants.
///
/// Exit codes: 0 ok, 1 parse or usage error, 2 Jacobi identity fails,
/// 3 verification failure, 4 no Frobenius functional.
#[derive(Parser)]
#[command(name = "frobenius", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check antisymmetry and the Jacobi identity of an algebra file.
    Validate {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Principal element, left-symmetric product, spectrum, derivations and embedding.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        functional: FunctionalArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Write the verified embedding into sl(dim+1).
    Embed {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        functional: FunctionalArgs,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a catalog algebra as an algebra file.
    Catalog {
        #[command(subcommand)]
        entry: CatalogCommand,
        #[arg(long, value_enum, default_value_t = FieldArg::Rational, global = true)]
        field: FieldArg,
    },
}

#[derive(Args)]
struct SourceArgs {
    /// Algebra file.
    path: Option<PathBuf>,
    /// Named example: aff1, g7a, g7b or g7c.
    #[arg(long)]
    preset: Option<String>,
    /// Parameter of the g7c preset (default 1).
    #[arg(long, allow_hyphen_values = true)]
    k_tilde: Option<String>,
}

#[derive(Args)]
struct FunctionalArgs {
    /// Functional coordinates, e.g. 0,1,0,0; overrides the file or preset functional.
    #[arg(long, allow_hyphen_values = true)]
    functional: Option<String>,
    /// Seed for the random stage of the functional search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Rational,
    Complex64,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// gl(n) ⋉ K^n.
    Aff {
        #[arg(long)]
        n: usize,
    },
    /// gl(n) ⋉ M(n, p), p dividing n.
    Gl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// G_{k,xi} with diagonal xi.
    Gkxi {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// The 2n diagonal entries of xi.
        #[arg(long, allow_hyphen_values = true)]
        diag: String,
    },
    /// G_{1,xi} with golden-ratio blocks.
    Golden {
        #[arg(long)]
        n: usize,
    },
    /// G_{1,xi} with xi = diag(rates, 1 - rates).
    Diagonal {
        #[arg(long, allow_hyphen_values = true)]
        rates: String,
    },
    /// A named example with its canonical functional.
    Preset {
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        k_tilde: Option<String>,
    },
}

impl From<SourceArgs> for Source {
    fn from(a: SourceArgs) -> Self {
        Source {
            path: a.path,
            preset: a.preset,
            k_tilde: a.k_tilde,
        }
    }
}

impl From<FunctionalArgs> for FunctionalOptions {
    fn from(a: FunctionalArgs) -> Self {
        FunctionalOptions {
            functional: a.functional,
            seed: a.seed,
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> lie_frobenius_cli::CliResult<Status> {
    match cli.command {
        Command::Validate { path, format } => cmd_validate(&path, format, out),
        Command::Analyze {
            source,
            functional,
            format,
        } => cmd_analyze(&source.into(), &functional.into(), format, out),
        Command::Embed {
            source,
            functional,
            out: path,
        } => cmd_embed(&source.into(), &functional.into(), path.as_deref(), out),
        Command::Catalog { entry, field } => {
            let entry = match entry {
                CatalogCommand::Aff { n } => CatalogEntry::Aff { n },
                CatalogCommand::Gl { n, p } => CatalogEntry::Gl { n, p },
                CatalogCommand::Gkxi { n, k, diag } => CatalogEntry::Gkxi { n, k, diag },
                CatalogCommand::Golden { n } => CatalogEntry::Golden { n },
                CatalogCommand::Diagonal { rates } => CatalogEntry::Diagonal { rates },
                CatalogCommand::Preset { name, k_tilde } => CatalogEntry::Preset { name, k_tilde },
            };
            let field = match field {
                FieldArg::Rational => FieldName::Rational,
                FieldArg::Complex64 => FieldName::Complex64,
            };
            cmd_catalog(&entry, field, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                Status::Parse.code()
            } else {
                0
            });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let status = match run(cli, &mut out) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            e.status()
        }
    };
    let _ = out.flush();
    ExitCode::from(status.code())
}
