use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use serde_json::{json, Value};
use zcenter_core::rootdata::CartanType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl Format {
    fn from_str_value(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s.trim(), true).map_err(|_| format!("unknown format {s:?}"))
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Table => "table",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Settings shared by every subcommand, merged from the config file and flags.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub types: Vec<CartanType>,
    pub ells: Vec<i64>,
    pub radius: Option<i64>,
    pub truncation: Option<u32>,
    pub quiver_k: Option<i64>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub force: bool,
    pub timing: bool,
}

pub const DEFAULT_TRUNCATION: u32 = 3;
pub const DEFAULT_QUIVER_K: i64 = 5;

fn parse_list<T: FromStr>(value: &str, key: &str) -> Result<Vec<T>, String> {
    value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| format!("bad value {s:?} for {key}")))
        .collect()
}

fn parse_bool(value: &str, key: &str) -> Result<bool, String> {
    match value.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        v => Err(format!("bad boolean {v:?} for {key}")),
    }
}

fn parse_one<T: FromStr>(value: &str, key: &str) -> Result<T, String> {
    value.trim().parse().map_err(|_| format!("bad value {value:?} for {key}"))
}

pub fn parse_types(values: &[String]) -> Result<Vec<CartanType>, String> {
    values
        .iter()
        .flat_map(|v| v.split(','))
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<CartanType>().map_err(|e| e.to_string()))
        .collect()
}

impl RunConfig {
    /// Reads a flat `key = value` file; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<RunConfig, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let mut cfg = RunConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), n + 1))?;
            let key = key.trim().replace('-', "_");
            match key.as_str() {
                "type" | "types" => cfg.types = parse_types(&[value.to_string()])?,
                "ell" => cfg.ells = parse_list(value, &key)?,
                "radius" => cfg.radius = Some(parse_one(value, &key)?),
                "truncation" => cfg.truncation = Some(parse_one(value, &key)?),
                "quiver_k" => cfg.quiver_k = Some(parse_one(value, &key)?),
                "threads" => cfg.threads = Some(parse_one(value, &key)?),
                "format" => cfg.format = Some(Format::from_str_value(value)?),
                "output" => cfg.output = Some(PathBuf::from(value.trim())),
                "force" => cfg.force = parse_bool(value, &key)?,
                "timing" => cfg.timing = parse_bool(value, &key)?,
                _ => return Err(format!("{}:{}: unknown key {key:?}", path.display(), n + 1)),
            }
        }
        Ok(cfg)
    }

    /// Values set in `over` replace those in `self`.
    pub fn overlay(mut self, over: RunConfig) -> RunConfig {
        if !over.types.is_empty() {
            self.types = over.types;
        }
        if !over.ells.is_empty() {
            self.ells = over.ells;
        }
        self.radius = over.radius.or(self.radius);
        self.truncation = over.truncation.or(self.truncation);
        self.quiver_k = over.quiver_k.or(self.quiver_k);
        self.threads = over.threads.or(self.threads);
        self.format = over.format.or(self.format);
        self.output = over.output.or(self.output);
        self.force |= over.force;
        self.timing |= over.timing;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.ells.iter().any(|&l| l < 1) {
            return Err("ell values must be positive".to_string());
        }
        if self.radius.is_some_and(|r| r < 1) {
            return Err("radius must be positive".to_string());
        }
        if self.truncation.is_some_and(|n| n < 2) {
            return Err("truncation must be at least 2".to_string());
        }
        if self.quiver_k.is_some_and(|k| k < 2) {
            return Err("quiver-k must be at least 2".to_string());
        }
        if self.threads == Some(0) {
            return Err("threads must be positive".to_string());
        }
        Ok(())
    }

    pub fn truncation(&self) -> u32 {
        self.truncation.unwrap_or(DEFAULT_TRUNCATION)
    }

    pub fn quiver_k(&self) -> i64 {
        self.quiver_k.unwrap_or(DEFAULT_QUIVER_K)
    }

    /// The settings that determine the results; thread count and output path
    /// are left out.
    pub fn to_json(&self, format: Format) -> Value {
        json!({
            "types": self.types.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "ell": self.ells,
            "radius": self.radius,
            "truncation": self.truncation(),
            "quiver_k": self.quiver_k(),
            "force": self.force,
            "timing": self.timing,
            "format": format.name(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round() {
        let dir = std::env::temp_dir().join(format!("zcenter-cfg-{}", std::process::id()));
        fs::write(&dir, "# run\ntype = A2\nell = 5, 7\nformat=json\nforce = true\nquiver-k = 4\n").unwrap();
        let cfg = RunConfig::from_file(&dir).unwrap();
        fs::remove_file(&dir).unwrap();
        assert_eq!(cfg.types.len(), 1);
        assert_eq!(cfg.ells, vec![5, 7]);
        assert_eq!(cfg.format, Some(Format::Json));
        assert!(cfg.force);
        assert_eq!(cfg.quiver_k(), 4);
        let over = RunConfig { ells: vec![11], ..Default::default() };
        assert_eq!(cfg.overlay(over).ells, vec![11]);
    }

    #[test]
    fn bad_lines() {
        let dir = std::env::temp_dir().join(format!("zcenter-bad-{}", std::process::id()));
        fs::write(&dir, "colour = red\n").unwrap();
        assert!(RunConfig::from_file(&dir).is_err());
        fs::write(&dir, "ell\n").unwrap();
        assert!(RunConfig::from_file(&dir).is_err());
        fs::remove_file(&dir).unwrap();
    }
}
