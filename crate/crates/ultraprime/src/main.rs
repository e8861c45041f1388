use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ultraprime::commands::error_exit_code;
use ultraprime::{run, Command, Options};

#[derive(Parser)]
#[command(name = "ultraprime", version, about = "Prime ideals of rings of functions, computed on finite models")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Norm form of F_{p^k} over F_p
    Normform(Opts),
    /// Combine f and g into one function with the common zero set mod M
    Combine(Opts),
    /// Element of the ideal of an M-unit-valued g that is 1 mod M
    Unitlift(Opts),
    /// Zero-locus family of an ideal
    Zerolocus(Opts),
    /// Filter generated by a family, and its ultrafilter refinements
    Filters(Opts),
    /// Primes of the image ring against the principal ultrafilters
    Spectrum(Opts),
    /// Dichotomy for the maximal ideals of a finite model
    Dichotomy(Opts),
    /// Ultraproduct of finite rings at a principal ultrafilter
    Ultraproduct(Opts),
    /// Membership of an integer-valued polynomial at a p-adic argument
    Chabert(Opts),
    /// Division of an integer-valued polynomial by a constant
    Divide(Opts),
    /// Run the acceptance suite
    VerifyAll(Opts),
}

#[derive(Args)]
struct Opts {
    /// Config file (JSON)
    #[arg(value_name = "CONFIG", conflicts_with = "config")]
    config_path: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Override enumeration caps
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    k: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Cmd::Normform(o) => (Command::Normform, o),
        Cmd::Combine(o) => (Command::Combine, o),
        Cmd::Unitlift(o) => (Command::Unitlift, o),
        Cmd::Zerolocus(o) => (Command::Zerolocus, o),
        Cmd::Filters(o) => (Command::Filters, o),
        Cmd::Spectrum(o) => (Command::Spectrum, o),
        Cmd::Dichotomy(o) => (Command::Dichotomy, o),
        Cmd::Ultraproduct(o) => (Command::Ultraproduct, o),
        Cmd::Chabert(o) => (Command::Chabert, o),
        Cmd::Divide(o) => (Command::Divide, o),
        Cmd::VerifyAll(o) => (Command::VerifyAll, o),
    };
    let options = Options { seed: opts.seed, cap: opts.cap, p: opts.p, k: opts.k, ..Options::default() };
    let outcome = match opts.config_path.or(opts.config) {
        Some(path) => options.with_config_file(&path),
        None => Ok(options),
    }
    .and_then(|options| run(command, &options));
    match outcome {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(err) => {
            eprintln!("ultraprime {command}: {err:#}");
            ExitCode::from(error_exit_code(&err) as u8)
        }
    }
}
