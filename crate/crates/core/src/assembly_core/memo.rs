use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Mutex, RwLock};

use crate::error::{Error, Result};

/// Canonical code to exact assembly index, shared between solver runs.
///
/// Optionally backed by a file of `canonical_code,size,index` lines that is
/// read on open and appended to on every new record. Codes may themselves
/// contain commas, so lines are split from the right.
#[derive(Debug, Default)]
pub struct MemoCache {
    entries: RwLock<HashMap<String, (usize, usize)>>,
    file: Option<Mutex<File>>,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists and appends future records to it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut entries = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = line?;
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (code, size, index) = parse_record(line).ok_or_else(|| {
                    Error::Parse(format!(
                        "{}:{}: expected code,size,index",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                entries.insert(code, (size, index));
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Self {
            entries: RwLock::new(entries),
            file: Some(Mutex::new(file)),
        })
    }

    /// The recorded index of `code`.
    pub fn get(&self, code: &str) -> Option<usize> {
        self.entries.read().unwrap().get(code).map(|&(_, index)| index)
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn record(&self, code: &str, size: usize, index: usize) -> Result<()> {
        let fresh = self
            .entries
            .write()
            .unwrap()
            .insert(code.to_string(), (size, index))
            .is_none();
        if fresh {
            if let Some(file) = &self.file {
                writeln!(file.lock().unwrap(), "{code},{size},{index}")?;
            }
        }
        Ok(())
    }
}

fn parse_record(line: &str) -> Option<(String, usize, usize)> {
    let mut parts = line.rsplitn(3, ',');
    let index = parts.next()?.trim().parse().ok()?;
    let size = parts.next()?.trim().parse().ok()?;
    let code = parts.next()?.to_string();
    Some((code, size, index))
}
