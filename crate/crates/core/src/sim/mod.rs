//! Deterministic trace replay and the experiments built on it.

pub mod cursor;
pub mod features;
pub mod jitter;
pub mod noise;
pub mod replay;
pub mod scenario;
pub mod trace;

pub use cursor::{integrate_cursor, CursorPath, CursorPoint, Screen};
pub use features::{feature_matrix, Answer, FeatureReport, FeatureRow};
pub use jitter::{static_jitter, JitterStats};
pub use noise::{inject_noise, SplitMix64};
pub use replay::{run_replay, ReplayOutput};
pub use trace::{load_trace, parse_trace, save_trace, Trace, TraceRow};
