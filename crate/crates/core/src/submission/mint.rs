use std::fs;
use std::io;
use std::path::PathBuf;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MintStrategy {
    #[default]
    Uuid,
    Counter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MintingConfig {
    pub base_iri: String,
    pub strategy: MintStrategy,
    /// Required for the counter strategy. Holds the last issued number.
    pub counter_state_path: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum MintError {
    #[error("base IRI {0:?} is not absolute")]
    BadBase(String),
    #[error("counter strategy needs a counter_state_path")]
    MissingStatePath,
    #[error("counter state {path}: {source}")]
    State { path: PathBuf, source: io::Error },
    #[error("counter state {path}: {content:?} is not a number")]
    CorruptState { path: PathBuf, content: String },
}

/// Issues IRIs for new entities.
///
/// Counter state is read and test-written at construction, so an
/// unwritable state file fails at startup. Each mint rewrites the file under
/// a lock, which serializes concurrent submissions.
#[derive(Debug)]
pub struct Minter {
    base: String,
    counter: Option<(PathBuf, Mutex<u64>)>,
}

pub const COUNTER_WIDTH: usize = 6;

impl Minter {
    pub fn new(config: &MintingConfig) -> Result<Self, MintError> {
        let mut base = config.base_iri.clone();
        if url::Url::parse(&base).is_err() {
            return Err(MintError::BadBase(base));
        }
        if !base.ends_with('/') && !base.ends_with('#') {
            base.push('/');
        }
        let counter = match config.strategy {
            MintStrategy::Uuid => None,
            MintStrategy::Counter => {
                let path = config.counter_state_path.clone().ok_or(MintError::MissingStatePath)?;
                let last = read_counter(&path)?;
                write_counter(&path, last)?;
                Some((path, Mutex::new(last)))
            }
        };
        Ok(Minter { base, counter })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn mint(&self) -> Result<String, MintError> {
        match &self.counter {
            None => Ok(format!("{}{}", self.base, uuid::Uuid::new_v4().simple())),
            Some((path, state)) => {
                let mut last = state.lock().unwrap_or_else(|e| e.into_inner());
                let next = *last + 1;
                write_counter(path, next)?;
                *last = next;
                Ok(format!("{}{:0width$}", self.base, next, width = COUNTER_WIDTH))
            }
        }
    }
}

fn read_counter(path: &PathBuf) -> Result<u64, MintError> {
    match fs::read_to_string(path) {
        Ok(text) if text.trim().is_empty() => Ok(0),
        Ok(text) => text.trim().parse().map_err(|_| MintError::CorruptState {
            path: path.clone(),
            content: text,
        }),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(0),
        Err(source) => Err(MintError::State {
            path: path.clone(),
            source,
        }),
    }
}

fn write_counter(path: &PathBuf, value: u64) -> Result<(), MintError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, format!("{value}\n"))
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|source| MintError::State {
            path: path.clone(),
            source,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counter_config(dir: &tempfile::TempDir, base: &str) -> MintingConfig {
        MintingConfig {
            base_iri: base.into(),
            strategy: MintStrategy::Counter,
            counter_state_path: Some(dir.path().join("counter")),
        }
    }

    #[test]
    fn counter_continues_from_state() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("counter"), "41").unwrap();
        let m = Minter::new(&counter_config(&dir, "http://ex/br/")).unwrap();
        assert_eq!(m.mint().unwrap(), "http://ex/br/000042");
        drop(m);
        let m = Minter::new(&counter_config(&dir, "http://ex/br/")).unwrap();
        assert_eq!(m.mint().unwrap(), "http://ex/br/000043");
    }

    #[test]
    fn missing_state_starts_at_one() {
        let dir = tempfile::tempdir().unwrap();
        let m = Minter::new(&counter_config(&dir, "http://ex/br")).unwrap();
        assert_eq!(m.mint().unwrap(), "http://ex/br/000001");
    }

    #[test]
    fn uuid_mints_are_distinct() {
        let m = Minter::new(&MintingConfig {
            base_iri: "http://ex/br".into(),
            strategy: MintStrategy::Uuid,
            counter_state_path: None,
        })
        .unwrap();
        let (a, b) = (m.mint().unwrap(), m.mint().unwrap());
        assert_ne!(a, b);
        assert!(a.starts_with("http://ex/br/"));
        assert_eq!(a.len(), "http://ex/br/".len() + 32);
    }

    #[test]
    fn startup_errors() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = counter_config(&dir, "http://ex/br/");
        config.counter_state_path = Some(dir.path().join("missing-dir").join("counter"));
        assert!(matches!(Minter::new(&config), Err(MintError::State { .. })));
        config.counter_state_path = None;
        assert!(matches!(Minter::new(&config), Err(MintError::MissingStatePath)));
        fs::write(dir.path().join("counter"), "abc").unwrap();
        assert!(matches!(
            Minter::new(&counter_config(&dir, "http://ex/")),
            Err(MintError::CorruptState { .. })
        ));
        assert!(matches!(Minter::new(&counter_config(&dir, "br/")), Err(MintError::BadBase(_))));
    }

    #[test]
    fn concurrent_counter_mints_are_unique() {
        let dir = tempfile::tempdir().unwrap();
        let m = Minter::new(&counter_config(&dir, "http://ex/")).unwrap();
        let mut all: Vec<String> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..8).map(|_| s.spawn(|| (0..25).map(|_| m.mint().unwrap()).collect::<Vec<_>>())).collect();
            hs.into_iter().flat_map(|h| h.join().unwrap()).collect()
        });
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 200);
        assert_eq!(fs::read_to_string(dir.path().join("counter")).unwrap().trim(), "200");
    }
}
