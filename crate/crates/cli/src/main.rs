use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fibercone::run::EXIT_INPUT;
use fibercone::{catalog_session, run_session, CliError, Session};
use fibercone_core::catalog;

#[derive(Parser)]
#[command(name = "fibercone", version, about = "Hilbert data, filtration complexes and identity checks for I1 I2^n")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a session file; TSV goes to stdout.
    Run {
        session: PathBuf,
        /// Write the machine-readable report (JSON) here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Parse a session file and print it back in normal form.
    Check { session: PathBuf },
    /// Print a session for a built-in instance, or list the instances.
    Catalog {
        name: Option<String>,
        /// Commands appended to the session (repeatable).
        #[arg(long = "command", short = 'c')]
        commands: Vec<String>,
    },
}

fn read(path: &PathBuf) -> Result<Session, CliError> {
    Session::parse(&fs::read_to_string(path)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Run { session, report } => read(&session).and_then(|s| {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            let r = run_session(&s, &mut out)?;
            out.flush()?;
            if let Some(path) = report {
                fs::write(path, serde_json::to_string_pretty(&r)?)?;
            }
            Ok(r.exit_code)
        }),
        Cmd::Check { session } => read(&session).map(|s| {
            print!("{}", s);
            0
        }),
        Cmd::Catalog { name: None, .. } => {
            for e in catalog::entries() {
                println!("{}\t{}", e.name, e.summary);
            }
            Ok(0)
        }
        Cmd::Catalog { name: Some(n), commands } => match catalog::entry(&n) {
            Some(e) => {
                let cmds: Vec<&str> = commands.iter().map(|s| s.as_str()).collect();
                print!("{}", catalog_session(e, &cmds));
                Ok(0)
            }
            None => {
                eprintln!("unknown instance `{}`", n);
                Ok(EXIT_INPUT)
            }
        },
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
