//! Command-line front end for the `jscc-bounds` library.
//!
//! [`run`] parses an argument vector, evaluates the command and encodes the
//! result. It never touches process state, so tests can drive it directly.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::Path;

use clap::{CommandFactory, Parser};

mod args;
mod commands;
pub mod table;

pub use args::{Cli, Format};
use commands::Status;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATIONS: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Exit code plus whatever should go to standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(stderr: String) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ if text.contains("Usage:") => Outcome::usage(text),
                _ => Outcome::usage(format!("{text}\n{}", usage_for(&argv))),
            };
        }
    };

    let report = match commands::dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(format!("error: {e}\n\n{}", usage_for(&argv))),
    };
    let mut table = report.table;
    if cli.bits {
        table.to_bits();
    }
    let body = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };

    if let Some(path) = &cli.plot_data {
        let Some(plot) = table.to_plot_data() else {
            return Outcome::usage(format!(
                "error: --plot-data is not available for this command\n\n{}",
                usage_for(&argv)
            ));
        };
        if let Err(e) = write_file(path, &plot) {
            return Outcome::usage(e);
        }
    }
    let stdout = match &cli.out {
        Some(path) => match write_file(path, &body) {
            Ok(()) => String::new(),
            Err(e) => return Outcome::usage(e),
        },
        None => body,
    };
    let (code, stderr) = status_exit(report.status);
    Outcome {
        code,
        stdout,
        stderr: stderr.to_string(),
    }
}

fn status_exit(status: Status) -> (i32, &'static str) {
    match status {
        Status::Ok => (EXIT_OK, ""),
        Status::Violations => (
            EXIT_VIOLATIONS,
            "verification found violations beyond tolerance\n",
        ),
        Status::Infeasible => (EXIT_INFEASIBLE, "the bound query has no feasible point\n"),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("error: cannot write {}: {e}\n", path.display()))
}

/// Usage line of the deepest subcommand named in `argv`.
fn usage_for(argv: &[std::ffi::OsString]) -> String {
    let mut cmd = Cli::command();
    cmd.build();
    let mut current = &mut cmd;
    for word in argv.iter().skip(1).filter_map(|w| w.to_str()) {
        if word.starts_with('-') {
            continue;
        }
        let Some(pos) = current.get_subcommands().position(|s| s.get_name() == word) else {
            continue;
        };
        current = current
            .get_subcommands_mut()
            .nth(pos)
            .expect("position is in range");
    }
    format!("{}\n", current.render_usage())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("jscc").chain(args.iter().copied()))
    }

    #[test]
    fn eval_entropy_at_half() {
        let o = run_args(&["eval", "--fn", "h_b", "--x", "0.5"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "fn,x,q,delta,value\nh_b,0.5,,,0.69314718056\n");
        let bits = run_args(&["eval", "--fn", "h_b", "--x", "0.5", "--bits"]);
        assert!(bits.stdout.ends_with(",1\n"));
    }

    #[test]
    fn unknown_flag_is_a_usage_error() {
        let o = run_args(&["eval", "--fn", "h_b", "--x", "0.5", "--nope"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("--nope"));
        assert!(o.stderr.contains("Usage"));
    }

    #[test]
    fn library_errors_name_the_argument_and_grammar() {
        let o = run_args(&["eval", "--fn", "h_b", "--x", "1.5"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("x = 1.5"), "{}", o.stderr);
        assert!(o.stderr.contains("jscc eval"), "{}", o.stderr);
    }

    #[test]
    fn statuses_map_to_exit_codes() {
        assert_eq!(status_exit(Status::Ok).0, 0);
        assert_eq!(status_exit(Status::Violations).0, 2);
        assert_eq!(status_exit(Status::Infeasible).0, 3);
    }

    #[test]
    fn help_exits_cleanly() {
        let o = run_args(&["--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("oracle"));
    }
}
