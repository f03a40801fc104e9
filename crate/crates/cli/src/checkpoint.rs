//! Enumeration checkpoints: one JSON file per genus holding every finished
//! shard, written atomically by the orchestrator.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use systole_core::search::{Candidate, RootBound, Shard, ShardResult};

use crate::error::CliError;
use crate::report::{hex, CandidateRecord, StatsRecord, SCHEMA};

/// Everything that changes the enumeration output.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationConfig {
    pub genus: usize,
    pub bound: RootBound,
    pub max_iter: usize,
    pub tol: f64,
}

impl EnumerationConfig {
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(SCHEMA.as_bytes());
        h.update((self.genus as u64).to_le_bytes());
        h.update(self.bound.value.to_bits().to_le_bytes());
        h.update([self.bound.strict as u8]);
        if let Some(p) = &self.bound.defining_poly {
            for c in p.descending() {
                h.update(c.to_le_bytes());
            }
        }
        h.update((self.max_iter as u64).to_le_bytes());
        h.update(self.tol.to_bits().to_le_bytes());
        hex(&h.finalize())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShardRecord {
    pub p1: i64,
    pub p2_range: Option<(i64, i64)>,
    pub candidates: Vec<CandidateRecord>,
    pub stats: StatsRecord,
}

impl ShardRecord {
    pub fn from_result(r: &ShardResult) -> Self {
        ShardRecord {
            p1: r.shard.p1,
            p2_range: r.shard.p2_range,
            candidates: r
                .candidates
                .iter()
                .map(CandidateRecord::from_candidate)
                .collect(),
            stats: StatsRecord::from_stats(&r.stats),
        }
    }

    pub fn shard(&self) -> Shard {
        Shard {
            p1: self.p1,
            p2_range: self.p2_range,
        }
    }

    fn to_result(&self) -> Option<ShardResult> {
        Some(ShardResult {
            shard: self.shard(),
            candidates: self
                .candidates
                .iter()
                .map(|c| c.to_candidate())
                .collect::<Option<Vec<Candidate>>>()?,
            stats: self.stats.to_stats()?,
        })
    }
}

/// Completed shards of one enumeration. Shards absent from `completed`
/// are still to run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub schema: String,
    pub genus: usize,
    pub config_hash: String,
    pub completed: Vec<ShardRecord>,
    /// SHA-256 of the serialized `completed` list.
    pub digest: String,
}

fn digest_of(completed: &[ShardRecord]) -> String {
    let body = serde_json::to_vec(completed).expect("shard records serialize");
    hex(&Sha256::digest(&body))
}

impl Checkpoint {
    pub fn new(config: &EnumerationConfig) -> Self {
        Checkpoint {
            schema: SCHEMA.to_string(),
            genus: config.genus,
            config_hash: config.hash(),
            completed: Vec::new(),
            digest: digest_of(&[]),
        }
    }

    pub fn path(dir: &Path, genus: usize) -> PathBuf {
        dir.join(format!("enumerate-g{genus}.json"))
    }

    pub fn insert(&mut self, result: &ShardResult) {
        let rec = ShardRecord::from_result(result);
        let key = rec.shard();
        match self.completed.binary_search_by(|r| r.shard().cmp(&key)) {
            Ok(i) => self.completed[i] = rec,
            Err(i) => self.completed.insert(i, rec),
        }
        self.digest = digest_of(&self.completed);
    }

    pub fn is_done(&self, shard: &Shard) -> bool {
        self.completed
            .binary_search_by(|r| r.shard().cmp(shard))
            .is_ok()
    }

    pub fn results(&self) -> Option<Vec<ShardResult>> {
        self.completed.iter().map(ShardRecord::to_result).collect()
    }

    /// Hash of the whole serialized state.
    pub fn state_hash(&self) -> String {
        hex(&Sha256::digest(
            serde_json::to_vec(self).expect("checkpoint serializes"),
        ))
    }

    /// Writes to a temporary file in `dir`, then renames over the target.
    pub fn save(&self, dir: &Path) -> Result<(), CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let target = Self::path(dir, self.genus);
        let tmp = dir.join(format!(".enumerate-g{}.json.tmp", self.genus));
        let body = serde_json::to_vec_pretty(self).expect("checkpoint serializes");
        let mut f = fs::File::create(&tmp).map_err(|e| CliError::io(&tmp, e))?;
        f.write_all(&body).map_err(|e| CliError::io(&tmp, e))?;
        f.sync_all().map_err(|e| CliError::io(&tmp, e))?;
        drop(f);
        fs::rename(&tmp, &target).map_err(|e| CliError::io(&target, e))
    }

    /// Loads the checkpoint for `config`, or `None` when there is none yet.
    pub fn load(dir: &Path, config: &EnumerationConfig) -> Result<Option<Checkpoint>, CliError> {
        let path = Self::path(dir, config.genus);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CliError::io(&path, e)),
        };
        let corrupt = |reason: String| CliError::CorruptCheckpoint {
            path: path.clone(),
            reason,
        };
        let cp: Checkpoint = serde_json::from_slice(&bytes).map_err(|e| corrupt(e.to_string()))?;
        if cp.schema != SCHEMA {
            return Err(corrupt(format!("unknown schema {:?}", cp.schema)));
        }
        if cp.digest != digest_of(&cp.completed) {
            return Err(corrupt("digest does not match the shard records".into()));
        }
        if cp.results().is_none() {
            return Err(corrupt("a stored polynomial is not reciprocal".into()));
        }
        let expected = config.hash();
        if cp.config_hash != expected || cp.genus != config.genus {
            return Err(CliError::CheckpointMismatch {
                path,
                expected,
                found: cp.config_hash,
            });
        }
        Ok(Some(cp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use systole_core::search::SearchPlan;

    fn config() -> EnumerationConfig {
        EnumerationConfig {
            genus: 3,
            bound: RootBound::seed_for_genus(3),
            max_iter: 50,
            tol: 1e-9,
        }
    }

    #[test]
    fn roundtrip_keeps_state() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config();
        let plan = SearchPlan::new(3, cfg.bound.clone()).unwrap();
        let mut cp = Checkpoint::new(&cfg);
        for s in plan.shards().iter().take(3) {
            cp.insert(&plan.run_shard(s));
        }
        cp.save(dir.path()).unwrap();
        let back = Checkpoint::load(dir.path(), &cfg).unwrap().unwrap();
        assert_eq!(back.state_hash(), cp.state_hash());
        assert_eq!(back.results().unwrap().len(), 3);
    }

    #[test]
    fn missing_file_is_none() {
        let dir = tempfile::tempdir().unwrap();
        assert!(Checkpoint::load(dir.path(), &config()).unwrap().is_none());
    }
}
