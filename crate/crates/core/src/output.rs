//! Output files with a single `#` provenance line carrying the command,
//! the seed and a hash of the effective configuration.

use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{domain, Result};

/// First 16 hex digits of the SHA-256 of the configuration text.
pub fn config_hash(config: &str) -> String {
    let digest = Sha256::digest(config.as_bytes());
    let mut out = String::with_capacity(16);
    for b in digest.iter().take(8) {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub command: String,
    pub seed: Option<u64>,
    pub config_hash: String,
}

impl Provenance {
    pub fn new(command: impl Into<String>, seed: Option<u64>, config: &str) -> Self {
        Self {
            command: command.into(),
            seed,
            config_hash: config_hash(config),
        }
    }

    pub fn header(&self) -> String {
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_else(|| "none".into());
        format!(
            "# logit-priors {} {} seed={} config={}",
            env!("CARGO_PKG_VERSION"),
            self.command,
            seed,
            self.config_hash
        )
    }

    /// Prefix a CSV body with the header line.
    pub fn stamp(&self, body: &str) -> String {
        format!("{}\n{}", self.header(), body)
    }

    /// Parse a stamped file: exactly one leading `#` line, none after it.
    pub fn parse(text: &str) -> Result<(Self, &str)> {
        let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
        let fields: Vec<&str> = first.split(' ').collect();
        if fields.len() != 6 || fields[0] != "#" || fields[1] != "logit-priors" {
            return Err(domain(format!("malformed provenance line {first:?}")));
        }
        let seed = fields[4]
            .strip_prefix("seed=")
            .ok_or_else(|| domain("provenance line lacks seed="))?;
        let seed = if seed == "none" {
            None
        } else {
            Some(seed.parse().map_err(|_| domain(format!("bad seed {seed:?}")))?)
        };
        let hash = fields[5]
            .strip_prefix("config=")
            .ok_or_else(|| domain("provenance line lacks config="))?;
        if rest.lines().any(|l| l.starts_with('#')) {
            return Err(domain("more than one comment line"));
        }
        Ok((
            Self {
                command: fields[3].to_string(),
                seed,
                config_hash: hash.to_string(),
            },
            rest,
        ))
    }
}

/// Write every file or none: all contents are prepared by the caller, the
/// directory is created, and each file goes through a temporary name.
pub fn write_all(dir: &Path, files: &[(String, String)]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, body) in files {
        let tmp = dir.join(format!(".{name}.tmp"));
        if let Err(e) = std::fs::write(&tmp, body) {
            for t in &staged {
                let _ = std::fs::remove_file(t);
            }
            return Err(e);
        }
        staged.push(tmp);
    }
    for ((name, _), tmp) in files.iter().zip(&staged) {
        std::fs::rename(tmp, dir.join(name))?;
    }
    Ok(())
}
