//! `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Recognised keys:
//! `space`, `alphabet`, `directed`, `colors`, `min_size`, `max_size`,
//! `bounds_only`, `node_budget`, `format`, `output`, `memo`, `timestamp`.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use assembly_chains::{Error, Result};

use crate::spaces::SpaceKind;
use crate::Format;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub space: Option<SpaceKind>,
    pub alphabet: Option<u8>,
    pub directed: Option<bool>,
    pub colors: Option<u8>,
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
    pub bounds_only: Option<bool>,
    pub node_budget: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub memo: Option<PathBuf>,
    pub timestamp: Option<bool>,
}

fn value<T: FromStr>(key: &str, v: &str, line: usize) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad value '{v}' for {key}")))
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let (k, v) = raw
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {line}: expected key = value")))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "space" => c.space = Some(SpaceKind::parse(v)?),
                "alphabet" | "j" => c.alphabet = Some(value(k, v, line)?),
                "directed" => c.directed = Some(value(k, v, line)?),
                "colors" => c.colors = Some(value(k, v, line)?),
                "min_size" => c.min_size = Some(value(k, v, line)?),
                "max_size" => c.max_size = Some(value(k, v, line)?),
                "bounds_only" => c.bounds_only = Some(value(k, v, line)?),
                "node_budget" => c.node_budget = Some(value(k, v, line)?),
                "format" => {
                    c.format = Some(match v {
                        "text" => Format::Text,
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        _ => return Err(Error::Parse(format!("line {line}: unknown format '{v}'"))),
                    })
                }
                "output" => c.output = Some(PathBuf::from(v)),
                "memo" => c.memo = Some(PathBuf::from(v)),
                "timestamp" => c.timestamp = Some(value(k, v, line)?),
                _ => return Err(Error::Parse(format!("line {line}: unknown key '{k}'"))),
            }
        }
        Ok(c)
    }
}
