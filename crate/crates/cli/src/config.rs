//! Optional TOML config file.
//!
//! Keys mirror the long flag names with `-` replaced by `_`. Top-level keys
//! apply to every command; a table named after a command (`[fig3]`) overrides
//! them for that command. Flags on the command line win over both.

use std::path::Path;
use std::str::FromStr;

use anyhow::Context;

use crate::args::invalid;

const KEYS: &[&str] = &[
    "out", "format", "jobs", "quad_tol", "grid", "beta", "mass", "lambda", "T", "nu", "axis", "w",
    "state", "e_alpha", "e_zeta", "w_zeta", "re_w_f_zeta", "polarization", "regime", "input", "sigma",
    "r_f", "dim", "mode_state", "alpha", "squeeze", "probe_v", "full",
];
const COMMANDS: &[&str] = &["fig1", "fig2", "fig3", "analyze", "wightman", "oracle", "sweep"];

#[derive(Clone, Debug, Default)]
pub struct FileConfig {
    table: toml::Table,
}

fn check_keys(table: &toml::Table, allow_tables: bool) -> anyhow::Result<()> {
    for (k, v) in table {
        if allow_tables && COMMANDS.contains(&k.as_str()) {
            let inner = v.as_table().ok_or_else(|| invalid(format!("config: [{k}] must be a table")))?;
            check_keys(inner, false)?;
        } else if !KEYS.contains(&k.as_str()) {
            return Err(invalid(format!("config: unknown key '{k}'")));
        }
    }
    Ok(())
}

fn render(v: &toml::Value) -> anyhow::Result<String> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => f.to_string(),
        toml::Value::Boolean(b) => b.to_string(),
        toml::Value::Array(items) => items.iter().map(render).collect::<anyhow::Result<Vec<_>>>()?.join(","),
        other => return Err(invalid(format!("config: unsupported value {other}"))),
    })
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let table: toml::Table = text.parse().map_err(|e| invalid(format!("config: {e}")))?;
        check_keys(&table, true)?;
        Ok(Self { table })
    }

    fn raw(&self, command: &str, key: &str) -> Option<&toml::Value> {
        self.table
            .get(command)
            .and_then(|t| t.as_table())
            .and_then(|t| t.get(key))
            .or_else(|| self.table.get(key).filter(|v| !v.is_table()))
    }

    pub fn get<T>(&self, command: &str, key: &str) -> anyhow::Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        let Some(v) = self.raw(command, key) else {
            return Ok(None);
        };
        let s = render(v)?;
        s.parse()
            .map(Some)
            .map_err(|e| invalid(format!("config: key '{key}': {e}")))
    }

    /// Flag value if given, else the config value.
    pub fn pick<T>(&self, flag: Option<T>, command: &str, key: &str) -> anyhow::Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(command, key),
        }
    }
}
