use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use segre::cli::{self, Command, Invocation, Settings};

/// Segre numbers, polar multiplicities and Lê numbers at the origin.
///
/// Reads a job file (`-` for standard input) and prints a JSON report.
/// Exit status: 0 success, 2 negative verdict, 1 error.
#[derive(Parser, Debug)]
#[command(name = "segre", version)]
struct Args {
    /// What to compute; `run` uses the job's `cmd` line.
    #[arg(value_enum)]
    command: Command,

    /// Job file.
    job: PathBuf,

    /// Names of the job's ideals or polynomials, in argument order
    /// (defaults: I X, I J X for rees, f for hypersurface commands, f H for
    /// tangent-hyperplane).
    names: Vec<String>,

    #[arg(long)]
    seed: Option<u64>,

    /// Independent random trials; they must agree.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: Option<u64>,

    /// Coefficient field: `qq` or `fp:P` with P a prime above 2^20.
    #[arg(long)]
    field: Option<String>,

    /// Parameter samples for `family`, e.g. "t=0;t=1".
    #[arg(long)]
    samples: Option<String>,

    /// Slice level for `slice-check`.
    #[arg(long)]
    k: Option<usize>,

    /// Include per-trial pipeline traces.
    #[arg(long)]
    verbose_trace: bool,

    /// Spaces per indentation level; 0 prints one line.
    #[arg(long, default_value_t = 2)]
    json_indent: usize,

    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,

    #[arg(long)]
    max_degree: Option<u32>,

    #[arg(long)]
    max_basis_size: Option<usize>,

    #[arg(long)]
    max_reductions: Option<u64>,
}

fn read_job(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match read_job(&args.job) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("segre: {}: {e}", args.job.display());
            return ExitCode::from(1);
        }
    };
    let inv = Invocation {
        command: Some(args.command),
        names: args.names,
        field: args.field,
        settings: Settings {
            seed: args.seed,
            trials: args.trials.map(|t| t as usize),
            k: args.k,
            samples: args.samples,
            max_degree: args.max_degree,
            max_basis_size: args.max_basis_size,
            max_reductions: args.max_reductions,
        },
        verbose_trace: args.verbose_trace,
        json_indent: args.json_indent,
        sequential: args.sequential,
    };
    match cli::run(&text, &inv) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.json.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            eprintln!("segre: {}: {e}", args.job.display());
            ExitCode::from(1)
        }
    }
}
