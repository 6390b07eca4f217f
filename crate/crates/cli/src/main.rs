use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wcon_core::cli::{self, Binding, Report, Workspace};
use wcon_core::Error;

#[derive(Parser)]
#[command(name = "wcon", version, about = "Reducibility queries, operator expressions and law suites for containers")]
struct Args {
    /// Largest code size tried by PAsm searches.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Reduction steps allowed per evaluation.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide or search for a reduction `A ≤ B`.
    Reduce {
        workspace: PathBuf,
        a: String,
        b: String,
        /// Check this witness (or `--json` report) instead of searching.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Evaluate an expression over `+`, `x`, `par`, `star`, `star_p[b]`.
    Expr {
        workspace: PathBuf,
        expression: String,
        /// Store the result under this name in `--out`.
        #[arg(long, requires = "out")]
        name: Option<String>,
        /// Workspace file to write with the new binding added.
        #[arg(long, requires = "name")]
        out: Option<PathBuf>,
    },
    /// Run a law suite, or `all`.
    Laws {
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Carrier cap for generated data.
        #[arg(long, default_value_t = 3)]
        sizes: usize,
    },
    /// Degree poset of the named bindings (all comparable ones by default).
    Poset {
        workspace: PathBuf,
        names: Vec<String>,
        /// Write Graphviz output here (`-` for standard output).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn load(path: &Path, args: &Args) -> Result<Workspace, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
    Ok(Workspace::parse(&text)?.with_overrides(args.bound, args.budget))
}

fn run(args: &Args) -> Report {
    let fail = |e: Error| cli::error_report(&e, args.json);
    match &args.cmd {
        Cmd::Reduce { workspace, a, b, verify } => {
            let ws = match load(workspace, args) {
                Ok(ws) => ws,
                Err(e) => return fail(e),
            };
            match verify {
                None => cli::cmd_reduce(&ws, a, b, args.json),
                Some(path) => match fs::read_to_string(path) {
                    Ok(w) => cli::cmd_verify(&ws, a, b, &w, args.json),
                    Err(e) => fail(Error::Json(format!("{}: {e}", path.display()))),
                },
            }
        }
        Cmd::Expr {
            workspace,
            expression,
            name,
            out,
        } => {
            let mut ws = match load(workspace, args) {
                Ok(ws) => ws,
                Err(e) => return fail(e),
            };
            let report = cli::cmd_expr(&ws, expression, args.json);
            if let (0, Some(name), Some(out)) = (report.code, name, out) {
                let c = match cli::eval_expr(&ws, expression) {
                    Ok(c) => c,
                    Err(e) => return fail(e),
                };
                ws.bindings.insert(name.clone(), Binding::Container(c));
                let text = serde_json::to_string_pretty(&ws.to_data()).expect("serializable");
                if let Err(e) = fs::write(out, text + "\n") {
                    return fail(Error::Json(format!("{}: {e}", out.display())));
                }
            }
            report
        }
        Cmd::Laws { suite, seed, sizes } => cli::cmd_laws(suite, *seed, *sizes, args.json),
        Cmd::Poset { workspace, names, dot } => {
            let ws = match load(workspace, args) {
                Ok(ws) => ws,
                Err(e) => return fail(e),
            };
            let Some(path) = dot else {
                return cli::cmd_poset(&ws, names, false);
            };
            let (text, graph) = cli::cmd_poset_both(&ws, names);
            let Some(graph) = graph else {
                return text;
            };
            if path.as_os_str() == "-" {
                return Report { text: graph, code: 0 };
            }
            if let Err(e) = fs::write(path, graph) {
                return fail(Error::Json(format!("{}: {e}", path.display())));
            }
            text
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = run(&args);
    if report.code == cli::EXIT_ERROR {
        eprint!("{}", report.text);
    } else {
        print!("{}", report.text);
    }
    ExitCode::from(report.code as u8)
}
