//! Append-only JSON-lines log of runs.

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: Vec<String>,
    /// `sha256:<hex>` over every input file, in the order read.
    pub input_digest: Option<String>,
    pub seed: Option<u64>,
    pub outputs: serde_json::Value,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub version: String,
}

impl RunRecord {
    pub fn new(command: Vec<String>, inputs: &[Vec<u8>], seed: Option<u64>, outputs: serde_json::Value) -> Self {
        RunRecord {
            command,
            input_digest: digest(inputs),
            seed,
            outputs,
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn append_to(&self, path: &Path) -> Result<()> {
        let mut line = serde_json::to_string(self)?;
        line.push('\n');
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening log {}", path.display()))?;
        f.write_all(line.as_bytes()).with_context(|| format!("writing log {}", path.display()))
    }
}

pub fn digest(inputs: &[Vec<u8>]) -> Option<String> {
    if inputs.is_empty() {
        return None;
    }
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    Some(format!("sha256:{}", hex::encode(h.finalize())))
}

pub fn read_log(path: &Path) -> Result<Vec<RunRecord>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading log {}", path.display()))?;
    text.lines()
        .enumerate()
        .map(|(i, l)| serde_json::from_str(l).with_context(|| format!("{}:{}", path.display(), i + 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_depends_on_boundaries() {
        assert_eq!(digest(&[]), None);
        let a = digest(&[b"ab".to_vec(), b"c".to_vec()]);
        let b = digest(&[b"a".to_vec(), b"bc".to_vec()]);
        assert_ne!(a, b);
        assert_eq!(a, digest(&[b"ab".to_vec(), b"c".to_vec()]));
        assert!(a.unwrap().starts_with("sha256:"));
    }

    #[test]
    fn append_and_read_back() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.jsonl");
        let r = RunRecord::new(vec!["eppa".into()], &[b"graph 1\n".to_vec()], Some(3), serde_json::json!({"x": 1}));
        r.append_to(&path).unwrap();
        r.append_to(&path).unwrap();
        let back = read_log(&path).unwrap();
        assert_eq!(back, vec![r.clone(), r]);
    }
}
