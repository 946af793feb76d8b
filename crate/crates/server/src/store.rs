//! Flat-file problem persistence: one pretty-printed JSON file per id.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use ndagg::mcgdm::DecisionProblem;
use tokio::sync::RwLock;

use crate::compute::{Failure, Outcome};

#[derive(Clone, Debug)]
pub struct ProblemStore {
    dir: PathBuf,
    locks: Arc<Mutex<HashMap<String, Arc<RwLock<()>>>>>,
}

/// 1 to 64 characters from `[A-Za-z0-9_-]`.
pub fn valid_id(id: &str) -> bool {
    (1..=64).contains(&id.len()) && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
}

fn check_id(id: &str) -> Outcome<()> {
    if valid_id(id) {
        Ok(())
    } else {
        Err(Failure::Core(ndagg::Error::validation("id", "ids are 1-64 characters from A-Z, a-z, 0-9, '-' and '_'")))
    }
}

impl ProblemStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ProblemStore {
            dir: dir.into(),
            locks: Arc::default(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn lock_for(&self, id: &str) -> Arc<RwLock<()>> {
        let mut locks = self.locks.lock().expect("lock table poisoned");
        locks.entry(id.to_string()).or_default().clone()
    }

    fn path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    /// Last write wins; the file is replaced atomically.
    pub async fn put(&self, id: &str, problem: &DecisionProblem) -> Outcome<()> {
        check_id(id)?;
        let lock = self.lock_for(id);
        let _guard = lock.write().await;
        let io = |e: std::io::Error| Failure::Io(format!("cannot write problem {id}: {e}"));
        tokio::fs::create_dir_all(&self.dir).await.map_err(io)?;
        let tmp = self.dir.join(format!(".{id}.json.tmp"));
        let body = serde_json::to_vec_pretty(problem).expect("problems serialize");
        tokio::fs::write(&tmp, body).await.map_err(io)?;
        tokio::fs::rename(&tmp, self.path(id)).await.map_err(io)
    }

    pub async fn get(&self, id: &str) -> Outcome<DecisionProblem> {
        check_id(id)?;
        let lock = self.lock_for(id);
        let _guard = lock.read().await;
        match tokio::fs::read_to_string(self.path(id)).await {
            Ok(text) => Ok(DecisionProblem::from_json_str(&text)?),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(Failure::NotFound(format!("no problem with id {id}"))),
            Err(e) => Err(Failure::Io(format!("cannot read problem {id}: {e}"))),
        }
    }

    pub async fn delete(&self, id: &str) -> Outcome<()> {
        check_id(id)?;
        let lock = self.lock_for(id);
        let _guard = lock.write().await;
        match tokio::fs::remove_file(self.path(id)).await {
            Ok(()) => Ok(()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(Failure::NotFound(format!("no problem with id {id}"))),
            Err(e) => Err(Failure::Io(format!("cannot delete problem {id}: {e}"))),
        }
    }
}
