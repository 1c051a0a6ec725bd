//! Layered key=value configuration: defaults, then an optional plain-text
//! config file, then explicit flags. No environment variables — a dumped
//! configuration re-creates the run by itself.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

/// Every key a config file or dump may contain, in dump order.
pub const KNOWN_KEYS: [&str; 22] = [
    "metric",
    "method",
    "methods",
    "var",
    "values",
    "from",
    "to",
    "step",
    "lockstep",
    "n",
    "k",
    "l",
    "rs",
    "power-ratio",
    "beta-m",
    "lambda-m",
    "beta-e",
    "lambda-e",
    "samples",
    "seed",
    "batch-size",
    "output",
];

/// Flag/file/default resolution map. Later inserts win.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    map: BTreeMap<String, String>,
}

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parse a `key = value` file (one pair per line, `#` comments).
    pub fn load_file(&mut self, path: &Path) -> CliResult<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Validation(format!(
                    "{}:{}: expected key=value, got '{line}'",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::Validation(format!(
                    "{}:{}: unknown configuration key '{key}'",
                    path.display(),
                    lineno + 1
                )));
            }
            self.map.insert(key.to_string(), value.trim().to_string());
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: String) {
        debug_assert!(KNOWN_KEYS.contains(&key), "unknown key {key}");
        self.map.insert(key.to_string(), value);
    }

    pub fn set_if<T: ToString>(&mut self, key: &str, value: &Option<T>) {
        if let Some(v) = value {
            self.set(key, v.to_string());
        }
    }

    /// Insert only when absent; used to materialize defaults into dumps.
    pub fn set_default(&mut self, key: &str, value: String) {
        debug_assert!(KNOWN_KEYS.contains(&key), "unknown key {key}");
        self.map.entry(key.to_string()).or_insert(value);
    }

    pub fn contains(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn parse<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.map.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                CliError::Validation(format!("parameter '{key}' has invalid value '{raw}'"))
            }),
        }
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> CliResult<T> {
        Ok(self.parse(key)?.unwrap_or(default))
    }

    pub fn get_opt<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.parse(key)
    }

    pub fn require<T: FromStr>(&self, key: &str) -> CliResult<T> {
        self.parse(key)?
            .ok_or_else(|| CliError::Validation(format!("missing required parameter '{key}'")))
    }

    /// Resolved configuration as re-loadable key=value text.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for key in KNOWN_KEYS {
            if let Some(v) = self.map.get(key) {
                let _ = writeln!(out, "{key}={v}");
            }
        }
        out
    }
}

/// Render an f64 so that parsing it back recovers the identical bits.
pub fn f64_to_config(v: f64) -> String {
    format!("{v:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_file_then_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# comment\nn = 10\nk=2\nrs = 0.5\n").unwrap();
        let mut s = Settings::new();
        s.set("n", "4".into()); // default layer
        s.load_file(&path).unwrap(); // file layer overrides default
        assert_eq!(s.require::<u32>("n").unwrap(), 10);
        s.set("n", "7".into()); // flag layer overrides file
        assert_eq!(s.require::<u32>("n").unwrap(), 7);
        assert_eq!(s.require::<f64>("rs").unwrap(), 0.5);
        assert!(s.require::<u32>("l").is_err());
    }

    #[test]
    fn unknown_key_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.conf");
        std::fs::write(&path, "bogus=1\n").unwrap();
        let mut s = Settings::new();
        assert!(matches!(
            s.load_file(&path),
            Err(CliError::Validation(_))
        ));
    }

    #[test]
    fn dump_round_trips() {
        let mut s = Settings::new();
        s.set("rs", f64_to_config(0.1 + 0.2));
        s.set("n", "12".into());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dump.conf");
        std::fs::write(&path, s.dump()).unwrap();
        let mut t = Settings::new();
        t.load_file(&path).unwrap();
        assert_eq!(
            t.require::<f64>("rs").unwrap().to_bits(),
            (0.1f64 + 0.2).to_bits()
        );
        assert_eq!(t.require::<u32>("n").unwrap(), 12);
    }
}
