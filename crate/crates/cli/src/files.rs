//! File access with errors that carry the path.

use std::path::Path;

use cycledecomp::io::{parse_certificate, parse_edge_list, write_certificate, write_edge_list};
use cycledecomp::{CycleDecomposition, Graph};

use crate::error::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_error(path: &Path, message: impl ToString) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_edge_list(&read(path)?).map_err(|e| parse_error(path, e))
}

pub fn read_certificate(path: &Path) -> Result<CycleDecomposition, CliError> {
    parse_certificate(&read(path)?).map_err(|e| parse_error(path, e))
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<(), CliError> {
    write(path, &write_edge_list(g))
}

pub fn write_cert(path: &Path, d: &CycleDecomposition) -> Result<(), CliError> {
    write(path, &write_certificate(d))
}
