mod args;
mod commands;
mod error;
mod manifest;
mod output;
mod repro;

use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult};
use manifest::RunManifest;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::try_parse_from(&argv).unwrap_or_else(|e| parse_failure(e));
    if let Err(e) = run(cli, argv[1..].to_vec()) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

/// Help and version exit through clap; an unknown subcommand gets its own
/// code, every other parse failure is a usage error.
fn parse_failure(e: clap::Error) -> ! {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => e.exit(),
        kind => {
            let _ = e.print();
            let code = if kind == ErrorKind::InvalidSubcommand {
                error::EXIT_UNKNOWN_COMMAND
            } else {
                error::EXIT_USAGE
            };
            std::process::exit(code)
        }
    }
}

/// Swaps a replay request for the command it recorded. The replay's own
/// `--out` and `--threads` win over the recorded ones.
fn resolve_replay(cli: Cli, args: Vec<String>) -> CliResult<(Cli, Vec<String>)> {
    let Command::Replay(r) = &cli.command else {
        return Ok((cli, args));
    };
    let m = RunManifest::read(&r.manifest)?;
    let argv = std::iter::once("stopset".to_string()).chain(m.args.iter().cloned());
    let mut recorded = Cli::try_parse_from(argv)
        .map_err(|e| CliError::Usage(format!("{}: recorded arguments do not parse: {e}", r.manifest.display())))?;
    if matches!(recorded.command, Command::Replay(_)) {
        return Err(CliError::Usage("a manifest cannot record a replay".into()));
    }
    recorded.out = cli.out;
    recorded.threads = cli.threads.or(recorded.threads);
    Ok((recorded, m.args))
}

fn run(cli: Cli, args: Vec<String>) -> CliResult<()> {
    let (cli, args) = resolve_replay(cli, args)?;
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {t} threads: {e}")))?;
    }

    let start = Instant::now();
    let out = cli.out.as_deref();
    let mut repro_diff = None;
    let bytes = match &cli.command {
        Command::Dist(a) => commands::dist(a)?,
        Command::Bounds(a) => commands::bounds(a)?,
        Command::Qlw(a) => commands::qlw(a)?,
        Command::Growth(a) => commands::growth(a)?,
        Command::Exponent(a) => commands::exponent(a)?,
        Command::Extend(a) => commands::extend(a, out)?,
        Command::Stopdist(a) => commands::stopdist(a)?,
        Command::Simulate(a) => commands::simulate(a, cli.seed)?,
        Command::ExactFer(a) => commands::exact_fer(a)?,
        Command::Repro(a) => {
            let rep = repro::run(a, cli.seed)?;
            let name = format!("{:?}", a.target).to_lowercase();
            eprintln!("repro {name}: {} value(s) compared, {} diff(s)", rep.items, rep.diffs);
            if rep.diffs > 0 {
                repro_diff = Some(CliError::ReproDiff {
                    target: name,
                    diffs: rep.diffs,
                });
            }
            rep.finish()?
        }
        Command::Replay(_) => unreachable!("resolved above"),
    };
    output::emit(&bytes, out)?;
    RunManifest::new(&cli, args, start.elapsed().as_secs_f64()).write()?;
    repro_diff.map_or(Ok(()), Err)
}
