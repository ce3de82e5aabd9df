//! Signature configuration files.
//!
//! ```json
//! {"indices": [{"name": "i", "size": 2, "labels": ["raised", "ok"]},
//!              {"name": "j", "size": 3}]}
//! ```

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use effdual_core::{Elem, FamilySignature, Ix};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    indices: Vec<IndexDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndexDoc {
    name: String,
    size: i64,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub signature: FamilySignature,
    labels: Vec<Option<Vec<String>>>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Config::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Config, ConfigError> {
        let doc: Document = serde_json::from_str(text)?;
        let mut entries = Vec::with_capacity(doc.indices.len());
        let mut labels = Vec::with_capacity(doc.indices.len());
        for index in doc.indices {
            if index.size < 1 {
                return Err(ConfigError::Invalid(format!(
                    "carrier size must be ≥ 1 (index `{}` has size {})",
                    index.name, index.size
                )));
            }
            let size = usize::try_from(index.size).map_err(|_| {
                ConfigError::Invalid(format!("size of `{}` is too large", index.name))
            })?;
            if let Some(ls) = &index.labels {
                if ls.len() != size {
                    return Err(ConfigError::Invalid(format!(
                        "index `{}` has size {} but {} labels",
                        index.name,
                        size,
                        ls.len()
                    )));
                }
                let distinct: HashSet<&String> = ls.iter().collect();
                if distinct.len() != ls.len() {
                    return Err(ConfigError::Invalid(format!(
                        "labels of index `{}` are not pairwise distinct",
                        index.name
                    )));
                }
            }
            entries.push((index.name, size));
            labels.push(index.labels);
        }
        let signature =
            FamilySignature::new(entries).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(Config { signature, labels })
    }

    pub fn has_labels(&self) -> bool {
        self.labels.iter().any(Option::is_some)
    }

    /// Display label of element `a` of carrier `ix`, or its ordinal.
    pub fn label(&self, ix: Ix, a: Elem) -> String {
        self.labels
            .get(ix.position())
            .and_then(|ls| ls.as_ref())
            .and_then(|ls| ls.get(a.0))
            .cloned()
            .unwrap_or_else(|| a.to_string())
    }
}
