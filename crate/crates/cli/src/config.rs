//! `--config` files: top-level keys are global flags, a `[subcommand]` table
//! holds that subcommand's flags. Flags given on the command line win.

use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub const SUBCOMMANDS: [&str; 8] = [
    "generate",
    "ingest",
    "exact",
    "sample",
    "experiment",
    "report",
    "catalog",
    "diagnose",
];

fn value_args(key: &str, value: &toml::Value) -> Result<Vec<OsString>> {
    let flag = format!("--{}", key.replace('_', "-"));
    let scalar = |v: &toml::Value| -> Result<String> {
        Ok(match v {
            toml::Value::String(s) => s.clone(),
            toml::Value::Integer(i) => i.to_string(),
            toml::Value::Float(f) => f.to_string(),
            other => bail!("config key {key:?}: unsupported value {other}"),
        })
    };
    Ok(match value {
        toml::Value::Boolean(true) => vec![flag.into()],
        toml::Value::Boolean(false) => vec![],
        toml::Value::Array(items) => {
            let joined = items.iter().map(scalar).collect::<Result<Vec<_>>>()?.join(",");
            vec![flag.into(), joined.into()]
        }
        v => vec![flag.into(), scalar(v)?.into()],
    })
}

/// Returns `argv` with the config file's flags spliced in ahead of the
/// explicit ones.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path.display()))?;
    let table: toml::Table = text
        .parse()
        .with_context(|| format!("parsing config {}", path.display()))?;

    let mut globals = Vec::new();
    let mut sections = Vec::new();
    for (key, value) in &table {
        match value {
            toml::Value::Table(t) if SUBCOMMANDS.contains(&key.as_str()) => sections.push((key.clone(), t.clone())),
            toml::Value::Table(_) => bail!("config {}: unknown section [{key}]", path.display()),
            v if key == "config" => bail!("config {}: nested config key {v}", path.display()),
            v => globals.extend(value_args(key, v)?),
        }
    }

    let sub_pos = argv
        .iter()
        .position(|a| a.to_str().is_some_and(|s| SUBCOMMANDS.contains(&s)));
    let mut out = Vec::with_capacity(argv.len() + globals.len());
    out.push(argv[0].clone());
    out.extend(globals);
    match sub_pos {
        Some(pos) => {
            out.extend(argv[1..=pos].iter().cloned());
            let name = argv[pos].to_str().unwrap_or_default();
            if let Some((_, t)) = sections.iter().find(|(k, _)| k == name) {
                for (key, value) in t {
                    out.extend(value_args(key, value)?);
                }
            }
            out.extend(argv[pos + 1..].iter().cloned());
        }
        None => out.extend(argv[1..].iter().cloned()),
    }
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Option<std::path::PathBuf> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_str()?;
        if s == "--config" {
            return it.next().map(|p| Path::new(p).to_path_buf());
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}
