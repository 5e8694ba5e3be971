//! Scenario files and command-line overrides.
//!
//! A scenario is a TOML table laid over the command's defaults, so a file
//! only lists what it changes. `--set a.b.c=value` replaces one leaf (the
//! value is read as a TOML value, falling back to a bare string) and
//! `--grid N` sets the top-level `grid` key.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use toml::{Table, Value};

use crate::error::{CliError, Result};

pub fn load(path: Option<&Path>, sets: &[String], grid: Option<usize>) -> Result<Table> {
    let mut table = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            text.parse::<Table>()
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
        }
        None => Table::new(),
    };
    for s in sets {
        apply_set(&mut table, s)?;
    }
    if let Some(n) = grid {
        table.insert("grid".into(), Value::Integer(n as i64));
    }
    Ok(table)
}

pub fn apply_set(table: &mut Table, assignment: &str) -> Result<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--set {assignment}: expected key=value")))?;
    let path: Vec<&str> = key.trim().split('.').collect();
    if path.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("--set {assignment}: empty key segment")));
    }
    let value = parse_value(raw.trim());
    let (leaf, parents) = path.split_last().expect("split yields at least one segment");
    let mut node = table;
    for (depth, seg) in parents.iter().enumerate() {
        let entry = node
            .entry(seg.to_string())
            .or_insert_with(|| Value::Table(Table::new()));
        node = match entry {
            Value::Table(t) => t,
            _ => {
                return Err(CliError::Config(format!(
                    "--set {assignment}: {} is not a table",
                    path[..=depth].join(".")
                )))
            }
        };
    }
    node.insert(leaf.to_string(), value);
    Ok(())
}

fn parse_value(raw: &str) -> Value {
    format!("v = {raw}")
        .parse::<Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()))
}

/// Keys that pick between alternative forms of one literal. Giving one of
/// a group drops the other members from the base.
const EXCLUSIVE: [&[&str]; 4] = [
    &["center_thz", "center_nm"],
    &["width_thz", "fwhm_nm"],
    &["pump", "separable"],
    &["pmf", "separable"],
];

/// Recursively overlays `top` on `base`; non-table values replace.
pub fn merge(base: &mut Table, top: Table) {
    for group in EXCLUSIVE {
        if group.iter().any(|k| top.contains_key(*k)) {
            for k in group.iter().filter(|k| !top.contains_key(**k)) {
                base.remove(*k);
            }
        }
    }
    for (k, v) in top {
        match (base.get_mut(&k), v) {
            (Some(Value::Table(b)), Value::Table(t)) => merge(b, t),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

/// Overlays a scenario on the command's defaults and decodes it; unknown
/// keys are errors.
pub fn decode<T: Default + Serialize + DeserializeOwned>(overlay: Table) -> Result<T> {
    let mut table = Table::try_from(T::default()).map_err(|e| CliError::Config(e.to_string()))?;
    merge(&mut table, overlay);
    toml::from_str(&table.to_string()).map_err(|e| CliError::Config(e.message().to_string()))
}

/// The resolved config as `# `-prefixed lines.
pub fn header<T: Serialize>(command: &str, config: &T) -> Result<String> {
    let body = toml::to_string(config).map_err(|e| CliError::Config(e.to_string()))?;
    let mut out = format!("# hom {command}\n");
    for line in body.lines() {
        if line.is_empty() {
            out.push_str("#\n");
        } else {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    Ok(out)
}
