use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lefschetz::cli::{analyze_text, emit, Format, Options, Section};

#[derive(Parser)]
#[command(name = "lefschetz", version, about = "Quantum and symplectic cohomology of toric negative bundles and their surgeries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a model expression such as "O(-1)^2 -> P^3" or "Bl(3, C^2)".
    Analyze {
        expr: String,
        /// Emit JSON instead of the text summary.
        #[arg(long)]
        json: bool,
        /// Level j to certify (repeatable); defaults to every 1 <= j <= n-1.
        #[arg(long = "level", value_name = "J")]
        levels: Vec<u32>,
        /// Comma-separated subset of qh,sh,lefschetz,mirror,bounds.
        #[arg(long, value_delimiter = ',')]
        sections: Option<Vec<Section>>,
    },
}

fn main() -> ExitCode {
    let Command::Analyze { expr, json, levels, sections } = Cli::parse().command;
    let options = Options {
        levels,
        sections: match sections {
            Some(s) => s.into_iter().collect(),
            None => BTreeSet::from(Section::ALL),
        },
    };
    match analyze_text(&expr, &options) {
        Ok(report) => {
            let out = emit(&report, if json { Format::Json } else { Format::Text });
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
