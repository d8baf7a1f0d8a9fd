//! Line-oriented `key = value` configuration files.
//!
//! Blank lines and `#` comments are ignored. Every key must be consumed by
//! the running command; leftovers are reported as errors so typos cannot
//! silently fall back to defaults. Command-line flags take precedence over
//! file values.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{io_err, CliError, Result};

/// Parsed config file; keys are handed out one by one.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
    source: String,
}

impl FileConfig {
    /// Reads and parses a config file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::usage(format!("cannot read config {}: {e}", path.display()))
        })?;
        let _ = io_err; // classification helper lives in error.rs
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "{}:{}: expected `key = value`, got {raw:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            if values
                .insert(key.clone(), value.trim().to_string())
                .is_some()
            {
                return Err(CliError::usage(format!(
                    "{}:{}: duplicate key {key:?}",
                    path.display(),
                    lineno + 1
                )));
            }
        }
        Ok(FileConfig {
            values,
            source: path.display().to_string(),
        })
    }

    /// Removes and returns a raw value.
    pub fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    /// Removes and parses a value.
    pub fn take_parsed<T: FromStr>(&mut self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.values.remove(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|e| {
                CliError::usage(format!(
                    "{}: key {key:?}: cannot parse {raw:?}: {e}",
                    self.source
                ))
            }),
        }
    }

    /// Removes every key matching `prefix` and returns (key, value) pairs
    /// in key order.
    pub fn take_prefixed(&mut self, prefix: &str) -> Vec<(String, String)> {
        let keys: Vec<String> = self
            .values
            .keys()
            .filter(|k| k.starts_with(prefix))
            .cloned()
            .collect();
        keys.into_iter()
            .map(|k| {
                let v = self.values.remove(&k).unwrap();
                (k, v)
            })
            .collect()
    }

    /// Errors if any unconsumed keys remain.
    pub fn finish(self) -> Result<()> {
        if self.values.is_empty() {
            return Ok(());
        }
        let keys: Vec<&str> = self.values.keys().map(String::as_str).collect();
        Err(CliError::usage(format!(
            "{}: unknown keys: {}",
            self.source,
            keys.join(", ")
        )))
    }
}

/// Flag-over-file resolution: an explicit flag wins, then the config file,
/// then the built-in default.
pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(body: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(body.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_keys_and_ignores_comments() {
        let f = write_config("# a comment\nduration = 2.5\n\nfeature = welch\n");
        let mut cfg = FileConfig::load(f.path()).unwrap();
        assert_eq!(cfg.take_parsed::<f64>("duration").unwrap(), Some(2.5));
        assert_eq!(cfg.take("feature").as_deref(), Some("welch"));
        cfg.finish().unwrap();
    }

    #[test]
    fn unknown_keys_are_errors() {
        let f = write_config("durationn = 2\n");
        let cfg = FileConfig::load(f.path()).unwrap();
        let err = cfg.finish().unwrap_err();
        assert!(err.to_string().contains("durationn"), "{err}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn duplicate_keys_are_errors() {
        let f = write_config("seed = 1\nseed = 2\n");
        assert!(FileConfig::load(f.path()).is_err());
    }

    #[test]
    fn malformed_lines_are_errors() {
        let f = write_config("just words\n");
        assert!(FileConfig::load(f.path()).is_err());
    }

    #[test]
    fn unparsable_values_are_usage_errors() {
        let f = write_config("seed = banana\n");
        let mut cfg = FileConfig::load(f.path()).unwrap();
        let err = cfg.take_parsed::<u64>("seed").unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn prefixed_keys_come_out_in_order() {
        let f = write_config("recording.2 = c\nrecording.0 = a\nrecording.1 = b\n");
        let mut cfg = FileConfig::load(f.path()).unwrap();
        let entries = cfg.take_prefixed("recording.");
        assert_eq!(
            entries,
            vec![
                ("recording.0".to_string(), "a".to_string()),
                ("recording.1".to_string(), "b".to_string()),
                ("recording.2".to_string(), "c".to_string()),
            ]
        );
        cfg.finish().unwrap();
    }
}
