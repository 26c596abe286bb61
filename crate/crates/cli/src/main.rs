use std::process::ExitCode;

use clap::Parser;
use starchains_cli::{run, CliError, Command, Format, Report, Request, Session};

/// Frobenius closures, minimal reductions and closed-ideal chains over F_p.
#[derive(Parser, Debug)]
#[command(name = "starchains", version)]
struct Args {
    /// Session file describing the ring and named ideals.
    #[arg(long)]
    session: std::path::PathBuf,
    #[arg(long, value_enum)]
    command: Command,
    /// Smaller ideal of the pair (default: the zero ideal).
    #[arg(long = "J")]
    j: Option<String>,
    #[arg(long = "I")]
    i: Option<String>,
    /// Ideals whose generators, concatenated, form the candidate set.
    #[arg(long = "K", value_delimiter = ',')]
    k: Vec<String>,
    /// A polynomial, for `swap`.
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    e_max: Option<u32>,
    #[arg(long)]
    degree_cap: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn execute(args: &Args) -> Result<Report, CliError> {
    let path = args.session.display().to_string();
    let text = std::fs::read_to_string(&args.session).map_err(|source| CliError::Io { path, source })?;
    let ws = Session::parse(&text)?.build()?;
    let req = Request {
        command: args.command,
        j: args.j.clone(),
        i: args.i.clone(),
        k: args.k.clone(),
        f: args.f.clone(),
        e_max: args.e_max,
        degree_cap: args.degree_cap,
    };
    run(&ws, &req)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = execute(&args).unwrap_or_else(|e| {
        eprintln!("starchains: {e}");
        Report::failure(args.command.name(), &e)
    });
    print!("{}", report.render(args.format));
    ExitCode::from(report.exit_status)
}
