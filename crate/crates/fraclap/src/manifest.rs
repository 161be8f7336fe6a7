//! Run manifests: every parameter that determines the output, and nothing
//! that varies between runs.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use fraclap_core::domain::QuadratureParams;
use fraclap_core::special::ConstantMode;

use crate::error::CliResult;

pub const NOTES: [&str; 4] = [
    "Green identity surface term uses phi where a separate symbol u could be read",
    "augmented form uses the kernels obtained from Green's identity; augmented-asprinted keeps exponent d+s and prefactor 1/h on both surface kernels",
    "boundary data names D, N are the Dirichlet and Neumann traces R, Q",
    "discrete Laplacian K uses homogeneous Dirichlet conditions",
];

pub fn quadrature(params: &QuadratureParams) -> Value {
    json!({
        "levels": params.levels,
        "ratio": params.ratio,
        "gauss_order": params.gauss_order,
        "subdivisions": params.subdivisions,
    })
}

pub fn constant_mode(mode: ConstantMode) -> &'static str {
    match mode {
        ConstantMode::HalfOrder => "half-order",
        ConstantMode::StandardRiesz => "standard",
    }
}

pub fn build(command: &str, parameters: Value) -> Value {
    json!({
        "tool": "fraclap",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "parameters": parameters,
        "notes": NOTES,
    })
}

pub fn path_for(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Next to `out` as `OUT.manifest.json`, or as one line on stderr when the
/// data goes to stdout.
pub fn emit(out: Option<&Path>, manifest: &Value) -> CliResult<()> {
    match out {
        Some(path) => {
            let mut text = serde_json::to_string_pretty(manifest)?;
            text.push('\n');
            std::fs::write(path_for(path), text)?;
        }
        None => {
            let mut err = std::io::stderr().lock();
            writeln!(err, "{}", serde_json::to_string(manifest)?)?;
        }
    }
    Ok(())
}
