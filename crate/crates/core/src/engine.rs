use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::characters::cache::CharacterCache;
use crate::characters::{self, mn, CharacterTable, CycleType, MN_MAX_RANK};
use crate::error::{Error, Result};
use crate::partitions::Partition;

pub const DEFAULT_RANK_CAP: usize = 60;
pub const DEFAULT_PLETHYSM_CAP: usize = 24;

/// Ranks up to this size build (and cache) the whole character table when
/// a few rows are requested; larger ranks compute only the requested rows.
pub const FULL_TABLE_MAX_RANK: usize = 20;

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Largest symmetric-group rank `n` any computation may touch.
    pub rank_cap: usize,
    /// Largest degree `|ν|` for plethysm computations.
    pub plethysm_cap: usize,
    /// Persistent character-table cache; `None` disables reads and writes.
    pub cache: Option<CharacterCache>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            rank_cap: DEFAULT_RANK_CAP,
            plethysm_cap: DEFAULT_PLETHYSM_CAP,
            cache: None,
        }
    }
}

/// Shared computation context: caps, caches, and memoized character data.
///
/// Every computation is deterministic; the caches only affect speed.
#[derive(Debug)]
pub struct Engine {
    config: EngineConfig,
    classes: Mutex<HashMap<usize, Arc<Vec<CycleType>>>>,
    tables: Mutex<HashMap<usize, Arc<CharacterTable>>>,
    rows: Mutex<HashMap<Partition, Arc<Vec<BigInt>>>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default())
    }
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine {
            config,
            classes: Mutex::default(),
            tables: Mutex::default(),
            rows: Mutex::default(),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn rank_cap(&self) -> usize {
        self.config.rank_cap.min(MN_MAX_RANK)
    }

    pub fn plethysm_cap(&self) -> usize {
        self.config.plethysm_cap
    }

    pub(crate) fn check_rank(&self, n: usize) -> Result<()> {
        if n > self.rank_cap() {
            return Err(Error::cap("rank n", n, self.rank_cap()));
        }
        Ok(())
    }

    /// Conjugacy classes of `S_n` in canonical order.
    pub fn cycle_types(&self, n: usize) -> Result<Arc<Vec<CycleType>>> {
        self.check_rank(n)?;
        let mut classes = self.classes.lock().expect("class cache poisoned");
        Ok(classes
            .entry(n)
            .or_insert_with(|| Arc::new(characters::classes(n)))
            .clone())
    }

    /// The full character table of `S_n`, from memory, disk, or scratch.
    pub fn character_table(&self, n: usize) -> Result<Arc<CharacterTable>> {
        self.check_rank(n)?;
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(&n) {
            return Ok(t.clone());
        }
        let table = match self.config.cache.as_ref().and_then(|c| c.load(n)) {
            Some(t) => t,
            None => {
                let t = CharacterTable::compute(n);
                if let Some(cache) = &self.config.cache {
                    if let Err(e) = cache.store(&t) {
                        log::warn!("could not write character cache: {e}");
                    }
                }
                t
            }
        };
        let table = Arc::new(table);
        self.tables
            .lock()
            .expect("table cache poisoned")
            .insert(n, table.clone());
        Ok(table)
    }

    fn cached_table(&self, n: usize) -> Option<Arc<CharacterTable>> {
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(&n) {
            return Some(t.clone());
        }
        let t = Arc::new(self.config.cache.as_ref()?.load(n)?);
        self.tables
            .lock()
            .expect("table cache poisoned")
            .insert(n, t.clone());
        Some(t)
    }

    /// Rows `χ_λ(·)` aligned with [`Engine::cycle_types`]`(n)`.
    ///
    /// Small ranks go through the full (cached) table. Larger ranks compute
    /// only the requested rows with one memo shared across them.
    pub fn character_rows(&self, lambdas: &[Partition]) -> Result<Vec<Arc<Vec<BigInt>>>> {
        let Some(n) = lambdas.first().map(Partition::size) else {
            return Ok(Vec::new());
        };
        if let Some(bad) = lambdas.iter().find(|l| l.size() != n) {
            return Err(Error::SizeMismatch(format!(
                "rows requested for partitions of {n} and of {}",
                bad.size()
            )));
        }
        self.check_rank(n)?;
        let table = if n <= FULL_TABLE_MAX_RANK {
            Some(self.character_table(n)?)
        } else {
            self.cached_table(n)
        };
        if let Some(table) = table {
            return Ok(lambdas
                .iter()
                .map(|l| Arc::new(table.row(l).expect("every partition has a row").to_vec()))
                .collect());
        }

        let mut missing: Vec<Partition> = {
            let rows = self.rows.lock().expect("row cache poisoned");
            lambdas.iter().filter(|l| !rows.contains_key(*l)).cloned().collect()
        };
        missing.sort();
        missing.dedup();
        if !missing.is_empty() {
            let classes = self.cycle_types(n)?;
            let shapes: Vec<Partition> = classes.iter().map(|c| c.shape.clone()).collect();
            log::info!(
                "computing {} character row(s) of S_{n} over {} classes",
                missing.len(),
                shapes.len()
            );
            let computed = mn::rows(&missing, &shapes);
            let mut rows = self.rows.lock().expect("row cache poisoned");
            for (l, r) in missing.into_iter().zip(computed) {
                rows.insert(l, Arc::new(r));
            }
        }
        let rows = self.rows.lock().expect("row cache poisoned");
        Ok(lambdas.iter().map(|l| rows[l].clone()).collect())
    }

    /// A single row; see [`Engine::character_rows`].
    pub fn character_row(&self, lambda: &Partition) -> Result<Arc<Vec<BigInt>>> {
        Ok(self.character_rows(std::slice::from_ref(lambda))?.remove(0))
    }
}
