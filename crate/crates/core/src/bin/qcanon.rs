use clap::{Parser, Subcommand};
use qcanon::cli::{self, Check, VerifyConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qcanon", version, about = "PBW and canonical bases of U_q^- in small rank")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical basis elements in the PBW basis of a reduced word, as JSON.
    Basis {
        #[arg(long = "type")]
        tag: String,
        /// Comma-separated labels or 1-based indices, e.g. 1,2,1.
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        max_height: i32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Runs verification suites and reports counterexamples.
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        checks: Vec<Check>,
        /// A type such as B2, or a folding such as A3:B2.
        #[arg(long = "type")]
        tag: Option<String>,
        #[arg(long)]
        max_height: Option<i32>,
        #[arg(long)]
        grid: Option<u32>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Writes the JSON report here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Prints the JSON report instead of the summary.
        #[arg(long)]
        json: bool,
    },
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), ExitCode> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            ExitCode::from(cli::EXIT_USAGE as u8)
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn fail(e: qcanon::Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(cli::exit_code(&e) as u8)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_USAGE as u8 } else { 0 });
        }
    };
    let threads = match cli::threads_from_env() {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    match args.cmd {
        Cmd::Basis { tag, word, max_height, output } => {
            let doc = match cli::basis_document(&tag, &word, max_height) {
                Ok(d) => d,
                Err(e) => return fail(e),
            };
            let text = serde_json::to_string_pretty(&doc).expect("serializable");
            match write_out(&output, &text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(c) => c,
            }
        }
        Cmd::Verify { checks, tag, max_height, grid, seed, output, json } => {
            let cfg = VerifyConfig { checks, tag, max_height, grid, seed };
            let jobs = match cli::plan(&cfg) {
                Ok(j) => j,
                Err(e) => return fail(e),
            };
            let results = cli::run_jobs(&jobs, threads);
            let (report, code) = cli::verify_report(&jobs, results);
            let text = serde_json::to_string_pretty(&report).expect("serializable");
            if let Some(p) = &output {
                if let Err(c) = write_out(&Some(p.clone()), &text) {
                    return c;
                }
            }
            if json {
                println!("{text}");
            } else {
                print!("{}", cli::summary(&report));
            }
            ExitCode::from(code as u8)
        }
    }
}
