//! Parallel multi-start execution on a bounded rayon pool.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::Result;
use cfsp_core::ratiodca::{Solution, StartRunner};
use rayon::prelude::*;

use crate::record::StartRecord;

pub struct PoolRunner {
    pool: rayon::ThreadPool,
    rounds: AtomicUsize,
    log: Mutex<Vec<StartRecord>>,
}

impl PoolRunner {
    /// `threads = None` uses all available cores.
    pub fn new(threads: Option<usize>) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build()?;
        Ok(PoolRunner { pool, rounds: AtomicUsize::new(0), log: Mutex::new(Vec::new()) })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Per-start records collected so far, in round then start order.
    pub fn take_log(&self) -> Vec<StartRecord> {
        std::mem::take(&mut *self.log.lock().expect("start log poisoned"))
    }
}

impl StartRunner for PoolRunner {
    fn run(&self, count: usize, job: &(dyn Fn(usize) -> cfsp_core::Result<Solution> + Sync)) -> Vec<cfsp_core::Result<Solution>> {
        let round = self.rounds.fetch_add(1, Ordering::Relaxed);
        let results: Vec<_> = self.pool.install(|| (0..count).into_par_iter().map(job).collect());
        let mut log = self.log.lock().expect("start log poisoned");
        for (i, r) in results.iter().enumerate() {
            log.push(match r {
                Ok(s) => StartRecord {
                    round,
                    init_id: s.init_id,
                    gamma: Some(s.gamma_used),
                    trace: s.trace.clone(),
                    set_value: Some(s.set_value),
                    penalized_value: Some(s.penalized_value),
                    feasible: Some(s.is_feasible()),
                    error: None,
                },
                Err(e) => StartRecord {
                    round,
                    init_id: i,
                    gamma: None,
                    trace: Vec::new(),
                    set_value: None,
                    penalized_value: None,
                    feasible: None,
                    error: Some(e.to_string()),
                },
            });
        }
        results
    }
}
