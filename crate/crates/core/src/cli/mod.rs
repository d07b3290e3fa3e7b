//! Command-line interface.

mod args;
mod config;
mod row;
mod validate;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

use clap::Parser;
use rayon::prelude::*;

pub use args::{Cli, Command, LevelArg, PointArgs, SweepArgs, Units, ValidateArgs};
pub use config::CONFIG_ENV;
pub use row::{evaluate, grid, select_columns, Row, Setup, COLUMNS};
pub use validate::{run_suite, Check, Criterion, Level, SuiteOptions};

use crate::error::{Error, Result};
use crate::model::{Validity, BOHR_RADIUS_M};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs the program on `args` (including the program name) and returns the
/// process exit code.
pub fn run(args: Vec<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = match config::expand(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Point(a) => point(a, out, err),
        Command::Sweep(a) => sweep(a, out),
        Command::Validate(a) => validate_cmd(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Domain(format!("output: {e}"))
}

fn point(a: &PointArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let setup = Setup::from_args(&a.atoms)?;
    let x = match (a.x, a.r) {
        (Some(x), _) => x,
        (None, Some(r)) => {
            let scales = setup.atomic.ok_or_else(|| {
                Error::Domain("--r needs --preset or --omega0 with dipoles; use --x with --mu".into())
            })?;
            let r_bohr = match a.units {
                Units::Atomic => r,
                Units::Si => r / BOHR_RADIUS_M,
            };
            scales.k0 * r_bohr
        }
        (None, None) => return Err(Error::Domain("one of --x or --r is required".into())),
    };
    let row = evaluate(&setup, x)?;
    for line in setup.describe() {
        writeln!(out, "# {line}").map_err(io)?;
    }
    write!(out, "{row}").map_err(io)?;
    if row.validity == Validity::Invalid {
        let _ = writeln!(
            err,
            "warning: perturbation theory is not valid at x = {x} (mu = {})",
            setup.mu
        );
    }
    Ok(EXIT_OK)
}

fn sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let setup = Setup::from_args(&a.atoms)?;
    let columns = select_columns(a.columns.as_deref())?;
    let xs = grid(a.xmin, a.xmax, a.points, a.scale == args::Scale::Log)?;
    let rows: Vec<Row> = xs
        .par_iter()
        .map(|&x| evaluate(&setup, x))
        .collect::<Result<_>>()?;

    let mut file;
    let sink: &mut dyn Write = if a.output == "-" {
        out
    } else {
        file = BufWriter::new(
            File::create(&a.output)
                .map_err(|e| Error::Domain(format!("cannot create {}: {e}", a.output)))?,
        );
        &mut file
    };
    for line in setup.describe() {
        writeln!(sink, "# {line}").map_err(io)?;
    }
    writeln!(sink, "{}", columns.join(",")).map_err(io)?;
    for r in &rows {
        writeln!(sink, "{}", r.to_csv(&columns)).map_err(io)?;
    }
    sink.flush().map_err(io)?;
    Ok(EXIT_OK)
}

fn validate_cmd(a: &ValidateArgs, out: &mut dyn Write) -> Result<i32> {
    let level = match a.level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let scale = match a.perturb_tau_trans {
        Some(p) if !p.is_finite() => {
            return Err(Error::Domain("--perturb-tau-trans must be finite".into()))
        }
        Some(p) => 1.0 + p,
        None => 1.0,
    };
    let checks = run_suite(SuiteOptions {
        level,
        tau_trans_scale: scale,
    });
    for c in &checks {
        writeln!(out, "{c}").map_err(io)?;
    }
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    writeln!(
        out,
        "{} of {} checks passed",
        checks.len() - failed.len(),
        checks.len()
    )
    .map_err(io)?;
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        writeln!(out, "failed:").map_err(io)?;
        for c in failed {
            writeln!(out, "  {}", c.name).map_err(io)?;
        }
        Ok(EXIT_VALIDATION)
    }
}
