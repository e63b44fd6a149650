use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tmod_lvalues::cli::{apply_overrides, error_code, execute, parse_config, Format, Overrides, RunConfig, COMMANDS};

/// Equivariant special L-values of t-modules and the identities they satisfy.
#[derive(Parser, Debug)]
#[command(name = "tmodl", version, after_help = commands_help())]
struct Args {
    /// One of the commands listed below.
    command: String,
    /// Run configuration; defaults to Carlitz over F_2 with N = 4.
    #[arg(long, value_name = "PATH")]
    config: Option<std::path::PathBuf>,
    /// Precision N: results are exact modulo t^-(N+1).
    #[arg(long, value_name = "N")]
    precision: Option<usize>,
    /// Largest prime degree the Euler-product cutoff may reach.
    #[arg(long, value_name = "D")]
    max_prime_degree: Option<usize>,
    /// The finite set S, as comma-separated monic irreducibles.
    #[arg(long, value_name = "P1,P2")]
    set: Option<String>,
    /// Twist for theta-m and cs-check.
    #[arg(long, value_name = "M")]
    m: Option<usize>,
    /// text or jsonl.
    #[arg(long, value_name = "FORMAT")]
    format: Option<String>,
}

fn commands_help() -> String {
    format!("Commands: {}", COMMANDS.join(", "))
}

fn load(args: &Args) -> tmod_lvalues::Result<RunConfig> {
    let base = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| tmod_lvalues::Error::Config(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => RunConfig::default(),
    };
    let ov = Overrides {
        precision: args.precision,
        max_prime_degree: args.max_prime_degree,
        set: args.set.clone(),
        m: args.m,
        format: args.format.as_deref().map(Format::parse).transpose()?,
    };
    apply_overrides(base, &ov)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (code, out, err) = match load(&args) {
        Ok(cfg) => execute(&args.command, &cfg),
        Err(e) => (error_code(&e), String::new(), format!("error: {e}\n")),
    };
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    ExitCode::from(code as u8)
}
