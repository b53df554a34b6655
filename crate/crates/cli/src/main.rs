//! `double-a`: command-line front end. Exit status 0 on success or a
//! semistable verdict, 2 on a non-semistable verdict, 1 on usage errors,
//! internal errors and rejected certificates.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use args::{Cli, Command, Format, Output};
use clap::error::ErrorKind;
use clap::Parser;

fn output(cmd: &Command) -> &Output {
    match cmd {
        Command::Certify(a) => &a.output,
        Command::ChiBasis(a) => &a.output,
        Command::Family(a) => &a.output,
        Command::Sections(a) => &a.output,
        Command::Bielliptic(a) => &a.output,
        Command::Slope(a) => &a.output,
        Command::Fuzz(a) => &a.output,
        Command::Kempf(a) => &a.output,
        Command::Sweep(a) => &a.output,
        Command::Verify(a) => &a.output,
    }
}

fn run(cmd: &Command) -> anyhow::Result<commands::Report> {
    match cmd {
        Command::Certify(a) => commands::certify(a),
        Command::ChiBasis(a) => commands::chi_basis(a),
        Command::Family(a) => commands::family(a),
        Command::Sections(a) => commands::sections(a),
        Command::Bielliptic(a) => commands::bielliptic(a),
        Command::Slope(a) => commands::slope(a),
        Command::Fuzz(a) => commands::fuzz(a),
        Command::Kempf(a) => commands::kempf(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Verify(a) => commands::verify(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let opts = output(&cli.command);
    if opts.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    }
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let rendered = match opts.format {
        Format::Json => match serde_json::to_string_pretty(&report.json) {
            Ok(s) => s + "\n",
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        Format::Text => report.text,
    };
    if std::io::stdout().lock().write_all(rendered.as_bytes()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(report.status.code())
}
