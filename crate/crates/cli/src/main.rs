use std::path::PathBuf;
use std::process::ExitCode;

use algint::corpus::{corpus_document, corpus_table, parse_corpus, run_corpus, BUNDLED};
use algint::run::{render_text, run, Mode, ProblemSpec, EXIT_VERIFICATION};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "algint", version, about = "Exact integration and creative telescoping of algebraic functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lazy Hermite reduction: f = g' + h with h of pole order one.
    Reduce(ProblemArgs),
    /// Additive decomposition f = g' + remainder; the remainder is zero iff f is integrable.
    Decompose(ProblemArgs),
    /// Antiderivative in the function field, or a certificate that none exists.
    Integrate(ProblemArgs),
    /// Minimal telescoper L with L(f) = d/dx(g); needs the parameter t.
    Telescope(ProblemArgs),
    /// Check L(f) = d/dx(g) for a given operator and certificate.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Operator coefficients c0, c1, ... of c0 + c1 D_t + ..., comma-separated.
        #[arg(long)]
        operator: String,
        #[arg(long)]
        certificate: String,
    },
    /// Run every record of a corpus file (the bundled corpus by default).
    Corpus {
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct ProblemArgs {
    /// Defining polynomial m(x, y), e.g. "y^2 - x".
    #[arg(long)]
    curve: String,
    /// Integrand, a fraction of polynomials in x, y (and t).
    #[arg(long)]
    integrand: String,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 20)]
    max_order: usize,
    /// Report wall times (makes output run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

fn emit(doc: &serde_json::Value, text: String, format: Format) {
    match format {
        Format::Text => print!("{text}"),
        Format::Structured => println!("{}", serde_json::to_string_pretty(doc).expect("documents serialize")),
    }
}

fn problem(mode: Mode, p: ProblemArgs, operator: Option<String>, certificate: Option<String>) -> ExitCode {
    let spec = ProblemSpec {
        curve: p.curve,
        integrand: p.integrand,
        mode,
        max_order: p.out.max_order,
        seed: p.seed,
        operator,
        certificate,
        timings: p.out.timings,
    };
    let out = run(&spec);
    emit(&out.doc, render_text(&out.doc), p.out.format);
    ExitCode::from(out.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Reduce(p) => problem(Mode::Reduce, p, None, None),
        Command::Decompose(p) => problem(Mode::Decompose, p, None, None),
        Command::Integrate(p) => problem(Mode::Integrate, p, None, None),
        Command::Telescope(p) => problem(Mode::Telescope, p, None, None),
        Command::Verify { problem: p, operator, certificate } => problem(Mode::Verify, p, Some(operator), Some(certificate)),
        Command::Corpus { path, jobs, out } => {
            let text = match &path {
                Some(p) => match std::fs::read_to_string(p) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("algint: cannot read {}: {e}", p.display());
                        return ExitCode::from(algint::run::EXIT_PRECONDITION as u8);
                    }
                },
                None => BUNDLED.to_string(),
            };
            let rows = run_corpus(&parse_corpus(&text), jobs, out.max_order);
            emit(&corpus_document(&rows, out.timings), corpus_table(&rows, out.timings), out.format);
            if rows.iter().all(|r| r.is_ok()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION as u8)
            }
        }
    }
}
