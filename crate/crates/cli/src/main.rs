use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galmodel::pipeline::{render_text, run, Command};
use galmodel::scheme_builder::parse_model_input;
use galmodel::Config;

/// Builds and certifies geometric models X -> Y for finite Galois
/// extensions of function fields.
#[derive(Parser)]
#[command(name = "galmodel", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify that L/K is Galois and print Gal(L/K).
    VerifyGalois(Opts),
    /// Run the construction of X over Y.
    BuildModel(Opts),
    /// Decide quasi-galois closedness of the (built or supplied) X over Y.
    CheckQgc(Opts),
    /// Compute Aut(X/Y) and compare it with Gal(L/K).
    AutGroup(Opts),
    /// build-model plus the invariant-subring and essential-equality probes.
    Report(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Opts {
    /// Input model description (JSON).
    input: PathBuf,
    #[arg(long, default_value_t = 6)]
    degree_bound: u32,
    #[arg(long, default_value_t = 100_000)]
    gb_budget: usize,
    #[arg(long, default_value_t = 24)]
    factor_degree_cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(short = 'o')]
    output: Option<PathBuf>,
    /// Include per-stage timings (makes the output run-dependent).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Cmd::VerifyGalois(o) => (Command::VerifyGalois, o),
        Cmd::BuildModel(o) => (Command::BuildModel, o),
        Cmd::CheckQgc(o) => (Command::CheckQgc, o),
        Cmd::AutGroup(o) => (Command::AutGroup, o),
        Cmd::Report(o) => (Command::Report, o),
    };
    let text = match std::fs::read_to_string(&opts.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", opts.input.display());
            return ExitCode::from(2);
        }
    };
    let spec = match parse_model_input(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", opts.input.display());
            return ExitCode::from(2);
        }
    };
    let cfg = Config { degree_bound: opts.degree_bound, gb_budget: opts.gb_budget, factor_degree_cap: opts.factor_degree_cap, seed: opts.seed };
    let report = run(&spec, &cfg, command, opts.timings);
    let out = match opts.format {
        Format::Json => report.to_json(),
        Format::Text => render_text(&report),
    };
    match &opts.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, out) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{out}"),
    }
    if report.exit_code() != 0 {
        eprintln!("{}", report.status.message);
    }
    ExitCode::from(report.exit_code() as u8)
}
