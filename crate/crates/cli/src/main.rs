use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use koszul_cli::commands::{run, Command, Failure, Input, Options, Report};
use koszul_cli::parse::{parse, parse_set};

/// Strong Koszul algebras over path algebras: variety ideals, Buchberger
/// checks and the invariants shared by a variety.
#[derive(Parser)]
#[command(name = "koszul", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// A coordinate `t -> n = c`, e.g. "z.y->y.z=1"; overrides the file.
    #[arg(long = "set", global = true, value_name = "T->N=C")]
    sets: Vec<String>,
    /// Comma-separated names for the variables in canonical order.
    #[arg(long, global = true, value_delimiter = ',', value_name = "NAMES")]
    rename: Option<Vec<String>>,
    /// Worker threads for the parallel computations.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generators of the variety's defining ideal.
    Ideal { file: PathBuf },
    /// Buchberger's criterion at a point; unset coordinates are zero.
    Check { file: PathBuf },
    /// The nontip basis.
    Basis {
        file: PathBuf,
        /// Longest path listed when the basis is infinite.
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Cartan matrix, its determinant and the total dimension.
    Cartan { file: PathBuf },
    /// Betti numbers, projective and injective dimensions of the simples.
    Betti {
        file: PathBuf,
        /// Highest homological degree shown.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Global dimension.
    Gldim { file: PathBuf },
    /// The ideal restricted to the coordinates that are not `set`.
    Specialize { file: PathBuf },
    /// The opposite scheme, with the point carried across.
    Op { file: PathBuf },
    /// Tensor product of two presented algebras, or the enveloping algebra of one.
    Tensor { file: PathBuf, other: Option<PathBuf> },
}

fn read(path: &Path) -> Result<Input, Failure> {
    let name = path.display().to_string();
    let text = if name == "-" { std::io::read_to_string(std::io::stdin()) } else { std::fs::read_to_string(path) }
        .map_err(|e| Failure::Input(format!("{name}: {e}")))?;
    let file = parse(&text).map_err(|e| Failure::Input(format!("{name}:{e}")))?;
    Ok(Input { name, file })
}

fn execute(cli: Cli) -> Result<Report, Failure> {
    let (command, files, max_length, max_degree) = match cli.command {
        Cmd::Ideal { file } => (Command::Ideal, vec![file], None, None),
        Cmd::Check { file } => (Command::Check, vec![file], None, None),
        Cmd::Basis { file, max_length } => (Command::Basis, vec![file], max_length, None),
        Cmd::Cartan { file } => (Command::Cartan, vec![file], None, None),
        Cmd::Betti { file, max_degree } => (Command::Betti, vec![file], None, max_degree),
        Cmd::Gldim { file } => (Command::Gldim, vec![file], None, None),
        Cmd::Specialize { file } => (Command::Specialize, vec![file], None, None),
        Cmd::Op { file } => (Command::Op, vec![file], None, None),
        Cmd::Tensor { file, other } => {
            (Command::Tensor, [Some(file), other].into_iter().flatten().collect(), None, None)
        }
    };
    let sets = cli
        .sets
        .iter()
        .map(|s| parse_set(s).map_err(|e| Failure::Input(format!("--set {s:?}: {}", e.message))))
        .collect::<Result<Vec<_>, _>>()?;
    let inputs = files.iter().map(|f| read(f)).collect::<Result<Vec<_>, _>>()?;
    let opts = Options { json: cli.json, sets, rename: cli.rename, max_length, max_degree };
    with_threads(cli.threads, || run(command, &inputs, &opts))
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<T, Failure> + Send) -> Result<T, Failure> {
    match threads {
        None => f(),
        Some(0) => Err(Failure::Input("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Input(format!("--threads: {e}")))?
            .install(f),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T>(threads: Option<usize>, f: impl FnOnce() -> Result<T, Failure>) -> Result<T, Failure> {
    // built without rayon: everything runs on the calling thread
    match threads {
        Some(0) => Err(Failure::Input("--threads must be at least 1".into())),
        _ => f(),
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(report) => {
            println!("{}", report.text);
            ExitCode::from(if report.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
