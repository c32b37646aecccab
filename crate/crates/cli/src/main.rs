use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dimpoly::error::{CliError, Kind};
use dimpoly::problem::parse_problem;
use dimpoly::report::render_text;
use dimpoly::run::{run, PartitionMode, RunOptions, VerifyOverride};

/// Dimension polynomials of difference-differential field extensions.
#[derive(Parser)]
#[command(name = "dimpoly", version)]
struct Args {
    /// Problem file (TOML).
    file: PathBuf,
    /// Oracle window: an r_max, or "off".
    #[arg(long, value_name = "R|off")]
    verify: Option<VerifyOverride>,
    /// Write the JSON report here ("-" for stdout, replacing the text report).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Largest r in the value tables.
    #[arg(long, value_name = "R")]
    table: Option<i64>,
    /// total, blockwise or both.
    #[arg(long, value_name = "MODE", default_value = "both")]
    partition_mode: PartitionMode,
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.kind.exit_code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let bytes = match std::fs::read(&args.file) {
        Ok(b) => b,
        Err(e) => return fail(&CliError::new(Kind::Io, format!("{}: {}", args.file.display(), e))),
    };
    let src = match std::str::from_utf8(&bytes) {
        Ok(s) => s,
        Err(e) => return fail(&CliError::new(Kind::ParseError, format!("problem file is not UTF-8: {}", e))),
    };
    let spec = match parse_problem(src) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let opts = RunOptions {
        verify: args.verify.unwrap_or_default(),
        r_table: args.table,
        partition_mode: args.partition_mode,
    };
    let outcome = match run(&spec, &bytes, &opts) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let json = serde_json::to_string_pretty(&outcome.document).expect("report serializes") + "\n";
    match &args.json {
        Some(p) if p.as_os_str() == "-" => print!("{}", json),
        Some(p) => {
            if let Err(e) = std::fs::write(p, &json) {
                return fail(&CliError::new(Kind::Io, format!("{}: {}", p.display(), e)));
            }
            print!("{}", render_text(&outcome.document));
        }
        None => print!("{}", render_text(&outcome.document)),
    }
    match &outcome.failure {
        Some(e) => fail(e),
        None => ExitCode::SUCCESS,
    }
}
