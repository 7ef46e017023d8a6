//! Command-line front end for the `isoptic` library: analysis reports,
//! generation listings, the invariant suite, SVG figures and
//! reconstructions.
//!
//! Exit codes: 0 success, 1 usage, parse or I/O error, 2 degenerate
//! geometry, 3 failed invariants in `verify`.

pub mod args;
pub mod commands;
pub mod error;
pub mod json;
pub mod svg;

use std::io::Read;
use std::path::Path;

use isoptic::verify::Conditioning;

pub use args::{Cli, Command};
pub use commands::Output;
pub use error::{CliError, CliResult};
pub use json::QuadFile;

fn read_input(path: &Path) -> CliResult<String> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn write_output(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn to_file(out: Output, path: Option<&Path>) -> CliResult<Output> {
    match path {
        Some(p) => {
            write_output(p, &out.text)?;
            Ok(Output { text: String::new(), ..out })
        }
        None => Ok(out),
    }
}

fn load(path: &Path) -> CliResult<QuadFile> {
    QuadFile::parse(&read_input(path)?)
}

pub fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Analyze { file, tol, out } => {
            let res = commands::cmd_analyze(&load(&file)?, tol)?;
            to_file(res, out.as_deref())
        }
        Command::Iterate { file, generations, direction, tol, out } => {
            let res = commands::cmd_iterate(&load(&file)?, generations, direction.into(), tol)?;
            to_file(res, out.as_deref())
        }
        Command::Verify { cases, seed, class, tol, min_angle, max_aspect, out } => {
            let res = commands::cmd_verify(cases, seed, class, tol, Conditioning { min_angle, max_aspect })?;
            to_file(res, out.as_deref())
        }
        Command::Render { file, out, layers, tol } => {
            let layers = svg::parse_layers(&layers)?;
            let q = load(&file)?.quadrilateral(commands::check_tol(tol)?)?;
            write_output(&out, &svg::render(&q, &layers))?;
            Ok(Output { text: String::new(), code: 0, note: None })
        }
        Command::Reconstruct { mode, a, b, c, w, s, feet } => {
            let input = commands::ReconstructInput { a, b, c, w, s, feet };
            commands::cmd_reconstruct(mode.into(), &input)
        }
    }
}
