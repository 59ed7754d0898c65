//! Report and table formats, written atomically.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::Path;

use euler_lax::dynamics::Diagnostics;
use euler_lax::verify::ResidualReport;
use serde_json::{json, Map, Value};

pub const CSV_HEADER: &str = "time,energy,enstrophy,casimir3,casimir4";

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// JSON numbers cannot hold NaN or infinities; those become strings.
fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or_else(|| Value::String(v.to_string()), Value::Number)
}

pub fn check_json(r: &ResidualReport) -> Value {
    json!({
        "name": r.name,
        "residual": number(r.residual_norm),
        "scale": number(r.reference_scale),
        "relative": number(r.relative),
        "tolerance": number(r.tolerance),
        "passed": r.passed,
        "context": r.context,
    })
}

/// `{name, config, checks}` plus any extra top-level fields.
pub fn report_json(
    name: &str,
    config: &BTreeMap<String, String>,
    checks: &[ResidualReport],
    extra: Map<String, Value>,
) -> Value {
    let mut doc = Map::new();
    doc.insert("name".into(), json!(name));
    doc.insert("config".into(), json!(config));
    doc.insert(
        "checks".into(),
        Value::Array(checks.iter().map(check_json).collect()),
    );
    doc.extend(extra);
    Value::Object(doc)
}

pub fn write_json(path: &Path, doc: &Value) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(doc).map_err(io::Error::other)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// Shortest representation that parses back to the same `f64`.
fn cell(v: f64) -> String {
    match serde_json::Number::from_f64(v) {
        Some(n) => n.to_string(),
        None => v.to_string(),
    }
}

pub fn diagnostics_csv(rows: &[(f64, Diagnostics)]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (t, d) in rows {
        let cells = [*t, d.energy, d.enstrophy, d.casimir3, d.casimir4].map(cell);
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
