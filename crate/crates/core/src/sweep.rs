//! Batches of independent replays.
//!
//! A single replay is strictly sequential, but separate replays share no
//! mutable state, so batches fan out over rayon when the `parallel` feature
//! is enabled. Without it every batch runs in order on the calling thread.
//! Results are always returned in input order, so output is identical
//! either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::controller::ControllerConfig;
use crate::error::Result;
use crate::sim::{inject_noise, run_replay, static_jitter, JitterStats, ReplayOutput, Screen, Trace};

/// Defaults to `Parallel` when the `parallel` feature is enabled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

pub fn map_with<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
    }
}

/// [`map_with`] using the default execution for this build.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_with(Execution::default(), items, f)
}

#[derive(Debug, Clone)]
pub struct ReplayJob {
    pub trace: Trace,
    pub config: ControllerConfig,
    pub screen: Screen,
}

pub fn replay_batch(exec: Execution, jobs: &[ReplayJob]) -> Vec<Result<ReplayOutput>> {
    map_with(exec, jobs, |job| run_replay(&job.trace, &job.config, job.screen))
}

/// Jitter window used by the sweeps, inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub from_ms: u64,
    pub to_ms: u64,
}

/// Replays `base` once per seed with fresh sensor noise and measures jitter.
pub fn noise_seed_sweep(
    exec: Execution,
    base: &Trace,
    seeds: &[u64],
    sigma_counts: f64,
    cfg: &ControllerConfig,
    window: Window,
) -> Vec<Result<JitterStats>> {
    map_with(exec, seeds, |&seed| {
        let noisy = inject_noise(base, seed, sigma_counts)?;
        let out = run_replay(&noisy, cfg, Screen::default())?;
        static_jitter(&out.path, window.from_ms, window.to_ms)
    })
}

/// Replays one trace under each dead zone and measures jitter.
pub fn dead_zone_sweep(
    exec: Execution,
    trace: &Trace,
    dead_zones: &[f64],
    cfg: &ControllerConfig,
    window: Window,
) -> Vec<Result<JitterStats>> {
    map_with(exec, dead_zones, |&dz| {
        let mut c = *cfg;
        c.mapping.dead_zone = dz;
        let out = run_replay(trace, &c, Screen::default())?;
        static_jitter(&out.path, window.from_ms, window.to_ms)
    })
}
