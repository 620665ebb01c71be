use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;
use gosc_core::SCHEMA_VERSION;

/// Writes to `out` or, if absent, standard output.
pub fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            log::info!("wrote {}", path.display());
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Versioned JSON document with a trailing newline.
pub fn json_document(command: &str, payload: impl Serialize) -> Result<String> {
    let mut doc = json!({ "schema": SCHEMA_VERSION, "command": command });
    let Value::Object(extra) = serde_json::to_value(payload)? else {
        bail!("report payload must be an object");
    };
    doc.as_object_mut().expect("object").extend(extra);
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

pub fn reject_format(format: Format, command: &str) -> Result<()> {
    bail!("format {format:?} is not supported by {command}")
}

/// Simple CSV from a header and rows of already formatted cells.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
