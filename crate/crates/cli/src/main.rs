//! `qsp`: generate the defining relation tables of quantum symmetric pair
//! coideal subalgebras (and generalized q-Onsager algebras), and run the
//! verification battery against the embedded golden data.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use qsp_cli::render::{render, Format};
use qsp_cli::verify;
use qsp_core::qring::QContext;
use qsp_cli::parallel::assemble_parallel;
use qsp_core::relations::CaseTag;

#[derive(Parser)]
#[command(
    name = "qsp",
    version,
    about = "Exact defining relations of quantum symmetric pair coideal subalgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug)]
struct CaseArg(CaseTag);

impl FromStr for CaseArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(CaseArg(match s {
            "1" | "case1" => CaseTag::Case1,
            "2" | "case2" => CaseTag::Case2,
            "tau" => CaseTag::Tau,
            "split" => CaseTag::Split,
            "classical" => CaseTag::Classical,
            other => {
                return Err(format!(
                    "unknown case {other:?} (expected 1, 2, tau, split, classical)"
                ))
            }
        }))
    }
}

#[derive(Args)]
struct CartanArgs {
    /// Off-diagonal Cartan entry a_ij (non-positive)
    #[arg(long, allow_hyphen_values = true)]
    aij: i64,
    /// Off-diagonal Cartan entry a_ji (defaults to a_ij)
    #[arg(long, allow_hyphen_values = true)]
    aji: Option<i64>,
    /// Symmetrizer eps_i (q_i = q^eps_i)
    #[arg(long, default_value_t = 1)]
    epsi: i64,
    /// Symmetrizer eps_j (q_j = q^eps_j)
    #[arg(long, default_value_t = 1)]
    epsj: i64,
}

impl CartanArgs {
    fn context(&self) -> Result<QContext, String> {
        QContext::new(self.aij, self.aji.unwrap_or(self.aij), self.epsi, self.epsj)
            .map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute and render one relation table
    Relations {
        /// Which relation family: 1, 2, tau, split, classical
        #[arg(long)]
        case: CaseArg,
        #[command(flatten)]
        cartan: CartanArgs,
        /// Output format: text, json, latex
        #[arg(long, default_value = "text")]
        format: Format,
        /// Write the rendered document here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = library default)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run the verification battery
    Verify {
        /// Largest |a_ij| to cover
        #[arg(long, default_value_t = 4)]
        depth: i64,
        /// Worker threads (0 = library default)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn configure_pool(jobs: usize) {
    if jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Relations {
            case,
            cartan,
            format,
            out,
            jobs,
        } => {
            configure_pool(jobs);
            let ctx = match cartan.context() {
                Ok(ctx) => ctx,
                Err(msg) => return usage_error(&msg),
            };
            let table = assemble_parallel(case.0, &ctx);
            let text = render(&table, format);
            if let Err(e) = emit(&text, out.as_ref()) {
                return usage_error(&format!("cannot write output: {e}"));
            }
            ExitCode::SUCCESS
        }
        Command::Verify { depth, jobs, out } => {
            configure_pool(jobs);
            if depth < 1 {
                return usage_error("verify depth must be at least 1");
            }
            let report = verify::run(depth);
            let text = report.render();
            if let Err(e) = emit(&text, out.as_ref()) {
                return usage_error(&format!("cannot write output: {e}"));
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
