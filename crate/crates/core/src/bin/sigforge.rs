//! Command line front end: parse, elaborate, emit interpretations, and
//! evaluate simple-profile terms. Exit codes: 0 success, 1 well-formed
//! diagnostics, 2 usage errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sigforge::inner::Style;
use sigforge::pipeline;

#[derive(Parser)]
#[command(name = "sigforge", version, about = "Signature elaborator and interpretation compiler")]
struct Cli {
    /// Seed forwarded to randomized property-test binaries; accepted
    /// everywhere for a uniform interface.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and elaborate signature files, reporting diagnostics.
    Check(CheckArgs),
    /// Emit interpretations of signatures.
    Emit(EmitArgs),
    /// Evaluate a closed term of a simple signature in an algebra.
    Eval(EvalArgs),
    /// Enumerate the term algebra of a simple signature.
    Enumerate(EnumArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Signature files (.sig).
    #[arg(required = true)]
    inputs: Vec<String>,
    /// Report diagnostics as JSON objects on stdout.
    #[arg(long)]
    diag_json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Agda,
    Ascii,
}

#[derive(Args)]
struct EmitArgs {
    /// Interpretations to emit: a,m,d,s,ind,rec.
    #[arg(long, default_value = "a,m,d,s,ind,rec")]
    what: String,
    /// Output dialect.
    #[arg(long, value_enum, default_value = "ascii")]
    style: StyleArg,
    /// Output file, or `stdout`.
    #[arg(long, default_value = "stdout")]
    out: String,
    #[arg(long)]
    diag_json: bool,
    #[arg(required = true)]
    inputs: Vec<String>,
}

#[derive(Args)]
struct EvalArgs {
    /// Algebra specification (JSON) for recursor evaluation.
    #[arg(long)]
    algebra: Option<String>,
    /// Displayed-algebra specification (JSON) for eliminator evaluation.
    #[arg(long)]
    dalgebra: Option<String>,
    /// The closed term to evaluate, e.g. "suc (suc zero)".
    #[arg(long)]
    term: String,
    /// Evaluation budget in visited nodes.
    #[arg(long, default_value_t = sigforge::term_algebra::DEFAULT_NODE_BUDGET)]
    budget: usize,
    #[arg(long)]
    diag_json: bool,
    input: String,
}

#[derive(Args)]
struct EnumArgs {
    /// Maximum spine depth.
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long)]
    diag_json: bool,
    input: String,
}

fn report(file: &str, source: &str, d: &sigforge::Diagnostic, json: bool) {
    if json {
        println!("{}", pipeline::render_diag_json(file, source, d));
    } else {
        eprintln!(
            "{}",
            pipeline::render_diag_line(file, source, d, pipeline::color_enabled())
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check(args) => {
            let mut failed = false;
            let outputs = process_parallel(&args.inputs, move |path| {
                match pipeline::compile_path(path) {
                    Ok(c) => match pipeline::verify(&c) {
                        Ok(()) => Ok(format!(
                            "{}: ok ({} entries, profile {})\n",
                            path,
                            c.ctx.len(),
                            c.ctx.profile
                        )),
                        Err(d) => Err((c.source, d)),
                    },
                    Err(d) => {
                        let source = std::fs::read_to_string(path).unwrap_or_default();
                        Err((source, d))
                    }
                }
            });
            for (path, res) in outputs {
                match res {
                    Ok(line) => print!("{line}"),
                    Err((source, d)) => {
                        report(&path, &source, &d, args.diag_json);
                        failed = true;
                    }
                }
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Emit(args) => {
            let kinds = match pipeline::parse_what(&args.what) {
                Ok(k) => k,
                Err(m) => {
                    eprintln!("sigforge: usage error: {m}");
                    return ExitCode::from(2);
                }
            };
            let style = match args.style {
                StyleArg::Agda => Style::Agda,
                StyleArg::Ascii => Style::Ascii,
            };
            let kinds2 = kinds.clone();
            let outputs = process_parallel(&args.inputs, move |path| {
                let c = match pipeline::compile_path(path) {
                    Ok(c) => c,
                    Err(d) => {
                        let source = std::fs::read_to_string(path).unwrap_or_default();
                        return Err((source, d));
                    }
                };
                pipeline::emit(&c, &kinds2, style).map_err(|d| (c.source.clone(), d))
            });
            let mut failed = false;
            let mut combined = String::new();
            for (path, res) in outputs {
                match res {
                    Ok(block) => combined.push_str(&block),
                    Err((source, d)) => {
                        report(&path, &source, &d, args.diag_json);
                        failed = true;
                    }
                }
            }
            if failed {
                return ExitCode::from(1);
            }
            if args.out == "stdout" {
                print!("{combined}");
            } else if let Err(e) = std::fs::write(&args.out, combined.as_bytes()) {
                eprintln!("sigforge: cannot write {}: {e}", args.out);
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Command::Eval(args) => {
            if args.algebra.is_some() == args.dalgebra.is_some() {
                eprintln!("sigforge: usage error: pass exactly one of --algebra or --dalgebra");
                return ExitCode::from(2);
            }
            let c = match pipeline::compile_path(&args.input) {
                Ok(c) => c,
                Err(d) => {
                    let source = std::fs::read_to_string(&args.input).unwrap_or_default();
                    report(&args.input, &source, &d, args.diag_json);
                    return ExitCode::from(1);
                }
            };
            let read_json = |path: &Option<String>| -> Result<Option<String>, std::io::Error> {
                match path {
                    Some(p) => Ok(Some(std::fs::read_to_string(p)?)),
                    None => Ok(None),
                }
            };
            let (alg, dalg) = match (read_json(&args.algebra), read_json(&args.dalgebra)) {
                (Ok(a), Ok(d)) => (a, d),
                (Err(e), _) | (_, Err(e)) => {
                    eprintln!("sigforge: cannot read algebra file: {e}");
                    return ExitCode::from(2);
                }
            };
            match pipeline::eval_term_with_budget(
                &c,
                alg.as_deref(),
                dalg.as_deref(),
                &args.term,
                args.budget,
            ) {
                Ok(v) => {
                    let mut stdout = std::io::stdout();
                    let _ = writeln!(stdout, "{v}");
                    ExitCode::SUCCESS
                }
                Err(d) => {
                    report(&args.input, &c.source, &d, args.diag_json);
                    ExitCode::from(1)
                }
            }
        }
        Command::Enumerate(args) => {
            let c = match pipeline::compile_path(&args.input) {
                Ok(c) => c,
                Err(d) => {
                    let source = std::fs::read_to_string(&args.input).unwrap_or_default();
                    report(&args.input, &source, &d, args.diag_json);
                    return ExitCode::from(1);
                }
            };
            match pipeline::enumerate(&c, args.depth) {
                Ok(terms) => {
                    for t in terms {
                        println!("{t}");
                    }
                    ExitCode::SUCCESS
                }
                Err(d) => {
                    report(&args.input, &c.source, &d, args.diag_json);
                    ExitCode::from(1)
                }
            }
        }
    }
}

type FileResult<T> = Result<T, (String, sigforge::Diagnostic)>;

/// Per-file pipelines run on their own threads with buffered output,
/// results reassembled in input order.
fn process_parallel<T: Send + 'static>(
    inputs: &[String],
    job: impl Fn(&str) -> FileResult<T> + Sync,
) -> Vec<(String, FileResult<T>)> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|path| {
                let job = &job;
                scope.spawn(move || (path.clone(), job(path)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}
