use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rotor_cli::commands::{self, parse_b, CommandError, HarmonicKind};
use rotor_cli::verify::{self, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "rotor", version, about = "Spectra, wavefunctions and checks for the cotangent-hindered rotor")]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Energies ε_t, degeneracies and exact values for t = 0..=tmax.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        tmax: usize,
    },
    /// Neighbouring-level splittings against the free rotor.
    Splittings {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        tmax: usize,
    },
    /// Normalized U and F on a uniform interior θ grid.
    Wavefunction {
        #[arg(long)]
        t: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Exact expansion in associated Legendre functions, as JSON.
    Decompose {
        #[arg(long)]
        t: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Damping factors e^{−bθ/(t+1/2)} for several t.
    Damping {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        t: Vec<usize>,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// |Y| of the regular or damped spherical harmonic.
    Harmonic {
        #[arg(long)]
        t: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = HarmonicKind::Regular)]
        kind: HarmonicKind,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Runs every check and prints a JSON report; exit status 2 on failure.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        tmax: usize,
        #[arg(long, default_value_t = 4000)]
        grid: usize,
        /// Negative control: build states with β − 1.
        #[arg(long, hide = true)]
        debug_misread_beta: bool,
    },
}

enum Outcome {
    Done(String),
    Failed(String),
}

fn dispatch(command: Command) -> Result<Outcome, CommandError> {
    use Outcome::Done;
    Ok(match command {
        Command::Spectrum { b, tmax } => Done(commands::spectrum(&parse_b(&b)?, tmax)),
        Command::Splittings { b, tmax } => Done(commands::splittings(&parse_b(&b)?, tmax)?),
        Command::Wavefunction { t, m, b, samples } => {
            Done(commands::wavefunction(t, m, &parse_b(&b)?, samples)?)
        }
        Command::Decompose { t, m, b } => Done(commands::decompose(t, m, &parse_b(&b)?)?),
        Command::Damping { b, t, samples } => Done(commands::damping(&parse_b(&b)?, &t, samples)?),
        Command::Harmonic { t, m, b, kind, samples } => {
            Done(commands::harmonic(t, m, &parse_b(&b)?, kind, samples)?)
        }
        Command::Verify { b, tmax, grid, debug_misread_beta } => {
            if grid < rotor_core::oracle::MIN_FD_GRID {
                return Err(CommandError::Usage(format!(
                    "--grid must be at least {}",
                    rotor_core::oracle::MIN_FD_GRID
                )));
            }
            let opts = VerifyOptions {
                gridsize: grid,
                misread_beta: debug_misread_beta,
                ..VerifyOptions::new(parse_b(&b)?, tmax)
            };
            let report = verify::run(&opts);
            if report.all_passed() {
                Done(report.to_json())
            } else {
                Outcome::Failed(report.to_json())
            }
        }
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, code) = match dispatch(cli.command) {
        Ok(Outcome::Done(text)) => (text, 0),
        Ok(Outcome::Failed(text)) => (text, 2),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&cli.out, &text) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
