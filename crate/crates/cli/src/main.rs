use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hahnfield::cli::{run_args, Session, EXIT_SYNTAX};

#[derive(Parser)]
#[command(name = "hahnfield", version, about = "Exact arithmetic in generalized power series fields")]
struct Cli {
    #[command(subcommand)]
    mode: Option<Mode>,
}

#[derive(Subcommand)]
enum Mode {
    /// Interactive session (the default).
    Repl,
    /// Run a single command, e.g. `run val "3*t^{-1/2}+2"`.
    Run {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, required = true)]
        args: Vec<String>,
    },
    /// Run every line of a file; exits with the largest code seen.
    Script { file: PathBuf },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c.clamp(0, 255) as u8)
}

fn repl() -> ExitCode {
    let mut session = Session::default();
    let stdin = io::stdin();
    let mut out = io::stdout();
    loop {
        print!("hahnfield> ");
        let _ = out.flush();
        let mut line = String::new();
        match stdin.lock().read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                eprintln!("error: {e}");
                return code(1);
            }
        }
        let trimmed = line.trim();
        if trimmed == "quit" || trimmed == "exit" {
            break;
        }
        if let Some(result) = session.execute_line(&line) {
            println!("{}", result.text);
        }
    }
    println!();
    code(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.mode.unwrap_or(Mode::Repl) {
        Mode::Repl => repl(),
        Mode::Run { args } => {
            let session = Session::default();
            let result = run_args(args, &session.ctx);
            if result.code == 0 {
                println!("{}", result.text);
            } else {
                eprintln!("{}", result.text);
            }
            code(result.code)
        }
        Mode::Script { file } => match std::fs::read_to_string(&file) {
            Ok(src) => {
                let result = Session::default().run_script(&src);
                print!("{}", result.text);
                code(result.code)
            }
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", file.display());
                code(EXIT_SYNTAX)
            }
        },
    }
}
