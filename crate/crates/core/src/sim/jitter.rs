//! Cursor wander while the head is meant to be still.

use crate::error::{Error, Result};
use crate::sim::cursor::CursorPath;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JitterStats {
    pub rms_px: f64,
    pub peak_px: f64,
}

/// RMS and peak Euclidean distance from the mean position over the
/// samples with `from_ms <= t_ms <= to_ms`.
pub fn static_jitter(path: &CursorPath, from_ms: u64, to_ms: u64) -> Result<JitterStats> {
    let window: Vec<(f64, f64)> = path
        .positions
        .iter()
        .filter(|p| (from_ms..=to_ms).contains(&p.t_ms))
        .map(|p| (p.x as f64, p.y as f64))
        .collect();
    if window.len() < 2 {
        return Err(Error::WindowEmpty);
    }
    let n = window.len() as f64;
    let mx = window.iter().map(|p| p.0).sum::<f64>() / n;
    let my = window.iter().map(|p| p.1).sum::<f64>() / n;
    let (sum_sq, peak) = window.iter().fold((0.0, 0.0f64), |(s, pk), &(x, y)| {
        let d2 = (x - mx).powi(2) + (y - my).powi(2);
        (s + d2, pk.max(d2.sqrt()))
    });
    let rms = (sum_sq / n).sqrt();
    Ok(JitterStats {
        rms_px: rms.min(peak),
        peak_px: peak,
    })
}
