//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so it can be driven in-process by tests.

mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use format::{GraftFile, ParseError, SolutionDisplay, SolutionFile};

use crate::euler;
use crate::linkage;
use crate::menger;
use crate::packing::{self, PackingError};
use crate::toolkit::{self, GenParams, OracleError};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for a failure predicted by the mathematics.
pub const EXIT_SEMANTIC: i32 = 1;
/// Exit status for I/O, parse and usage errors.
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "tpaths",
    version,
    about = "Edge-disjoint T-paths in inner-Eulerian grafts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report parity and linkability.
    Check { file: PathBuf },
    /// Print half the sum of the terminal cut values.
    Minimax { file: PathBuf },
    /// Print a perfect linkage; needs every terminal linked.
    Pack { file: PathBuf },
    /// Print T-paths with one orthogonal cut per terminal.
    Certify { file: PathBuf },
    /// Check a solution file against a graft.
    Verify { graft: PathBuf, solution: PathBuf },
    /// Brute-force a maximum packing.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = toolkit::DEFAULT_CAP)]
        cap: usize,
    },
    /// Generate a random inner-Eulerian graft.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        terminals: usize,
        #[arg(long)]
        cycles: usize,
        #[arg(long)]
        tpaths: usize,
        /// Longest cycle or T-path, in edges.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

/// Failure carrying its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn semantic(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_SEMANTIC,
            message: message.into(),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_graft(path: &PathBuf) -> Result<GraftFile, Failure> {
    GraftFile::parse(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::input(format!("cannot write output: {e}")))
}

/// Maps solver errors to messages that use the file's vertex names.
fn explain(file: &GraftFile, err: PackingError) -> Failure {
    let g = &file.graft;
    match err {
        PackingError::NotInnerEulerian(v) => Failure::semantic(format!(
            "not inner-Eulerian: vertex {} has odd degree {}",
            file.name(v),
            g.degree(v)
        )),
        PackingError::LinkabilityFails(t) => {
            let others = linkage::other_terminals(g, t);
            let lambda = menger::lambda(g, &menger::single(t), &others).unwrap_or(0);
            Failure::semantic(format!(
                "linkability fails: terminal {} has {} edges but only {lambda} edge-disjoint paths to the other terminals",
                file.name(t),
                g.degree(t)
            ))
        }
        other => Failure::semantic(other.to_string()),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Check { file } => {
            let f = load_graft(&file)?;
            let mut text = String::new();
            match euler::odd_inner_vertex(&f.graft) {
                None => text.push_str("inner-eulerian: yes\n"),
                Some(v) => {
                    text.push_str(&format!("inner-eulerian: no (odd vertex {})\n", f.name(v)))
                }
            }
            match linkage::first_unlinked(&f.graft) {
                None => text.push_str("linkable: yes\n"),
                Some(t) => text.push_str(&format!("linkable: no (terminal {})\n", f.name(t))),
            }
            write_out(out, &text)?;
        }
        Command::Minimax { file } => {
            let f = load_graft(&file)?;
            write_out(out, &format!("{}\n", toolkit::minimax_value(&f.graft)))?;
        }
        Command::Pack { file } => {
            let f = load_graft(&file)?;
            let paths = packing::perfect_linkage(&f.graft).map_err(|e| explain(&f, e))?;
            let shown = SolutionDisplay {
                file: &f,
                paths: &paths,
                cuts: None,
            };
            write_out(out, &shown.to_string())?;
        }
        Command::Certify { file } => {
            let f = load_graft(&file)?;
            let cert = packing::lovcher_certificate(&f.graft).map_err(|e| explain(&f, e))?;
            let shown = SolutionDisplay {
                file: &f,
                paths: &cert.paths,
                cuts: Some(&cert.cuts),
            };
            write_out(out, &shown.to_string())?;
        }
        Command::Verify { graft, solution } => {
            let f = load_graft(&graft)?;
            let sol = SolutionFile::parse(&read(&solution)?, &f)
                .map_err(|e| Failure::input(format!("{}: {e}", solution.display())))?;
            let report = match sol.certificate(&f.graft) {
                Some(cert) => toolkit::verify_certificate(&f.graft, &cert),
                None => toolkit::verify_linkage(&f.graft, &sol.path_system()),
            };
            if !report.ok {
                let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                return Err(Failure::semantic(lines.join("\n")));
            }
            write_out(out, "ok\n")?;
        }
        Command::Oracle { file, cap } => {
            let f = load_graft(&file)?;
            let (count, paths) = toolkit::brute_force_max_packing(&f.graft, cap).map_err(
                |OracleError::CapExceeded(c)| {
                    Failure::semantic(format!("more than {c} T-paths; raise --cap"))
                },
            )?;
            let shown = SolutionDisplay {
                file: &f,
                paths: &paths,
                cuts: None,
            };
            write_out(out, &format!("# maximum packing: {count}\n{shown}"))?;
        }
        Command::Gen {
            seed,
            vertices,
            terminals,
            cycles,
            tpaths,
            max_len,
            output,
        } => {
            let params = GenParams {
                seed,
                vertex_count: vertices,
                terminal_count: terminals,
                cycle_count: cycles,
                tpath_count: tpaths,
                max_piece_length: max_len,
            };
            let graft = toolkit::generate_inner_eulerian(&params)
                .map_err(|e| Failure::input(e.to_string()))?;
            let names = (0..vertices)
                .map(|i| {
                    if i < terminals {
                        format!("t{i}")
                    } else {
                        format!("v{i}")
                    }
                })
                .collect();
            let header = format!(
                "seed={seed} vertices={vertices} terminals={terminals} cycles={cycles} tpaths={tpaths} max-len={max_len}"
            );
            let text = GraftFile { names, graft }.render(Some(&header));
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
                None => write_out(out, &text)?,
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}
