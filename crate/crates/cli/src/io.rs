//! Reading and writing paths, where `-` means stdin or stdout.

use std::io::Read;
use std::path::Path;

use polyfind_core::catalog;
use polyfind_core::export::parse_model;
use polyfind_core::IncidenceStructure;

use crate::report::CliError;

pub const STDIO: &str = "-";

pub fn read_text(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == STDIO {
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Parse(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

pub fn load_model(path: &str) -> Result<IncidenceStructure, CliError> {
    let text = read_text(path)?;
    let label = if path == STDIO { "stdin" } else { path };
    parse_model(&text).map_err(|e| CliError::Parse(format!("{label}: {e}")))
}

/// A model file if one exists at `name`, else a catalog entry.
pub fn load_named(name: &str) -> Result<IncidenceStructure, CliError> {
    if name == STDIO || Path::new(name).is_file() {
        return load_model(name);
    }
    catalog::by_name(name)
        .map_err(|e| CliError::Parse(format!("{name} is neither a model file nor a catalog entry ({e})")))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Precondition(format!("writing {}: {e}", path.display())))
}

pub fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Precondition(format!("creating {}: {e}", dir.display())))
}

/// Writes a document to `out`. Returns the text to print (the document
/// itself for stdout in text mode) and the file written, if any.
pub fn emit(out: &str, contents: &str, json: bool) -> Result<(String, Option<String>), CliError> {
    if out == STDIO {
        return Ok((if json { String::new() } else { contents.to_string() }, None));
    }
    write_file(Path::new(out), contents)?;
    Ok((format!("wrote {out}\n"), Some(out.to_string())))
}
