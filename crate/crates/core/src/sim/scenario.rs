//! Synthetic traces for the standard experiments.

use crate::buttons::{Level, Pedal};
use crate::device::ScaleConfig;
use crate::sim::noise::inject_noise;
use crate::sim::trace::{Trace, TraceRow};

/// Accelerometer counts for a head at `pitch`/`roll` degrees under 1 g.
pub fn pose_counts(pitch: f64, roll: f64, scale: &ScaleConfig) -> (i16, i16, i16) {
    let (p, r) = (pitch.to_radians(), roll.to_radians());
    let count = |g: f64| (g * scale.accel_sensitivity).round() as i16;
    (
        count(-p.sin()),
        count(p.cos() * r.sin()),
        count(p.cos() * r.cos()),
    )
}

/// Both accessories attached, pedals released, no rotation rate.
pub fn pose_row(t_ms: u64, pitch: f64, roll: f64) -> TraceRow {
    let (ax, ay, az) = pose_counts(pitch, roll, &ScaleConfig::default());
    TraceRow {
        t_ms,
        ax,
        ay,
        az,
        a_attached: true,
        b_attached: true,
        ..TraceRow::default()
    }
}

fn build(rows: impl Iterator<Item = TraceRow>) -> Trace {
    Trace::new(rows.collect()).expect("scenario rows are generated in time order")
}

/// `rows` level samples, `period_ms` apart, starting at t = 0.
pub fn rest(rows: usize, period_ms: u64) -> Trace {
    build((0..rows as u64).map(|i| pose_row(i * period_ms, 0.0, 0.0)))
}

/// Level head for `duration_ms` with bounded Gaussian sensor noise.
pub fn static_noisy(duration_ms: u64, period_ms: u64, seed: u64, sigma_counts: f64) -> Trace {
    let rows = (duration_ms / period_ms + 1) as usize;
    inject_noise(&rest(rows, period_ms), seed, sigma_counts)
        .expect("scenario sigma is non-negative")
}

/// Calibrate level, then hold (`pitch`, `roll`) for ticks `1..=hold_ticks`
/// and return to level until `total_ticks`.
pub fn tilt_hold(period_ms: u64, pitch: f64, roll: f64, hold_ticks: u64, total_ticks: u64) -> Trace {
    build((0..=total_ticks).map(|i| {
        if (1..=hold_ticks).contains(&i) {
            pose_row(i * period_ms, pitch, roll)
        } else {
            pose_row(i * period_ms, 0.0, 0.0)
        }
    }))
}

/// Calibrate level, then roll through `segments` of (degrees, ticks) and
/// return to level for `settle_ticks`.
pub fn roll_profile(period_ms: u64, segments: &[(f64, u64)], settle_ticks: u64) -> Trace {
    let rolls = std::iter::once(0.0)
        .chain(
            segments
                .iter()
                .flat_map(|&(deg, n)| std::iter::repeat_n(deg, n as usize)),
        )
        .chain(std::iter::repeat_n(0.0, settle_ticks as usize));
    build(
        rolls
            .enumerate()
            .map(|(i, roll)| pose_row(i as u64 * period_ms, 0.0, roll)),
    )
}

/// Head rolled right: a 10° hold, a short 4° correction, then level.
/// Under the default mapping this lands 600 px right of where it started.
pub fn target_acquisition(period_ms: u64) -> Trace {
    roll_profile(period_ms, &[(10.0, 26), (4.0, 5)], 80)
}

fn set_pedal(row: &mut TraceRow, pedal: Pedal, level: Level) {
    match pedal {
        Pedal::L => row.pedal_l = level,
        Pedal::R => row.pedal_r = level,
    }
}

/// Head still; `pedal` held HIGH for `press_ms` starting at `press_at_ms`.
pub fn press_at_rest(
    period_ms: u64,
    pedal: Pedal,
    press_at_ms: u64,
    press_ms: u64,
    duration_ms: u64,
) -> Trace {
    build((0..=duration_ms / period_ms).map(|i| {
        let t = i * period_ms;
        let mut row = pose_row(t, 0.0, 0.0);
        if (press_at_ms..press_at_ms + press_ms).contains(&t) {
            set_pedal(&mut row, pedal, Level::High);
        }
        row
    }))
}

/// Head circling `radius_deg` around neutral at 1 rev/s, so at least one axis
/// is always well outside the dead zone, while the L pedal is held for
/// `press_ms` from `press_at_ms`.
pub fn press_during_motion(
    period_ms: u64,
    radius_deg: f64,
    press_at_ms: u64,
    press_ms: u64,
    duration_ms: u64,
) -> Trace {
    build((0..=duration_ms / period_ms).map(|i| {
        let t = i * period_ms;
        if i == 0 {
            return pose_row(0, 0.0, 0.0);
        }
        let phase = std::f64::consts::TAU * t as f64 / 1000.0;
        let mut row = pose_row(t, radius_deg * phase.cos(), radius_deg * phase.sin());
        if (press_at_ms..press_at_ms + press_ms).contains(&t) {
            row.pedal_l = Level::High;
        }
        row
    }))
}
