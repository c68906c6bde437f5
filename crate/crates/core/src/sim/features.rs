//! The conventional-mouse feature checklist, answered for a configuration.
//!
//! Behavioral rows are answered by replaying small scripted experiments
//! through the controller. Structural rows (connectivity, report layout,
//! button count) follow from the boot-protocol report this crate emits.

use std::fmt;

use crate::buttons::{EventKind, Pedal};
use crate::controller::{ControllerConfig, Mode};
use crate::error::Result;
use crate::hid::{BUTTON_LEFT, BUTTON_RIGHT, REPORT_LEN};
use crate::sim::cursor::Screen;
use crate::sim::jitter::static_jitter;
use crate::sim::replay::{run_replay, ReplayOutput};
use crate::sim::scenario;
use crate::sim::trace::Trace;
use crate::sweep;

/// Seed and amplitude for the static-stability experiment.
pub const STABILITY_SEED: u64 = 1;
pub const STABILITY_SIGMA: f64 = 50.0;
pub const STABILITY_DURATION_MS: u64 = 10_000;
pub const SETTLE_MS: u64 = 1_000;

/// Largest press-to-event latency still counted as a normal click delay.
pub const NORMAL_DELAY_MS: u64 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Count(u32),
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Yes => f.write_str("Yes"),
            Answer::No => f.write_str("No"),
            Answer::Count(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureRow {
    pub characteristic: &'static str,
    pub answer: Answer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureReport {
    pub rows: Vec<FeatureRow>,
}

impl FeatureReport {
    pub fn answer(&self, characteristic: &str) -> Option<Answer> {
        self.rows
            .iter()
            .find(|r| r.characteristic == characteristic)
            .map(|r| r.answer)
    }
}

impl fmt::Display for FeatureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{}: {}", row.characteristic, row.answer)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Experiment {
    FullControl,
    StaticStability,
    NonErratic,
    Clicks,
    PressWhileMoving,
    PressDelay,
}

const EXPERIMENTS: [Experiment; 6] = [
    Experiment::FullControl,
    Experiment::StaticStability,
    Experiment::NonErratic,
    Experiment::Clicks,
    Experiment::PressWhileMoving,
    Experiment::PressDelay,
];

/// Configuration the static-stability row is judged under. The prototype
/// column describes an unfiltered accelerometer pipeline, so faithful mode
/// evaluates with the dead zone and smoother switched off.
pub fn stability_config(cfg: &ControllerConfig) -> ControllerConfig {
    let mut c = *cfg;
    if cfg.mode == Mode::Faithful {
        c.mapping.dead_zone = 0.0;
        c.alpha = 1.0;
    }
    c
}

fn replay(tr: &Trace, cfg: &ControllerConfig) -> Result<ReplayOutput> {
    run_replay(tr, cfg, Screen::default())
}

fn run(exp: Experiment, cfg: &ControllerConfig) -> Result<bool> {
    let period = cfg.period_ms();
    match exp {
        Experiment::FullControl => {
            let mut directions = Vec::new();
            for (pitch, roll) in [(10.0, 0.0), (-10.0, 0.0), (0.0, 10.0), (0.0, -10.0)] {
                let out = replay(&scenario::tilt_hold(period, pitch, roll, 20, 30), cfg)?;
                let (start, end) = (out.path.positions[0], out.path.last());
                directions.push(((end.x - start.x).signum(), (end.y - start.y).signum()));
            }
            directions.sort_unstable();
            Ok(directions == [(-1, 0), (0, -1), (0, 1), (1, 0)])
        }
        Experiment::StaticStability => {
            let tr = scenario::static_noisy(
                STABILITY_DURATION_MS,
                period,
                STABILITY_SEED,
                STABILITY_SIGMA,
            );
            let out = replay(&tr, &stability_config(cfg))?;
            let jitter = static_jitter(&out.path, SETTLE_MS, STABILITY_DURATION_MS)?;
            Ok(jitter.rms_px == 0.0)
        }
        Experiment::NonErratic => {
            let hold = 50;
            let out = replay(&scenario::tilt_hold(period, 0.0, 10.0, hold, hold + 40), cfg)?;
            let moving: Vec<i8> = out.reports.iter().map(|(_, r)| r.dx()).collect();
            let one_direction = moving.iter().all(|&d| d >= 0) || moving.iter().all(|&d| d <= 0);
            let straight = out.reports.iter().all(|(_, r)| r.dy() == 0);
            let settles = out.reports.last().is_some_and(|(_, r)| r.dx() == 0);
            Ok(one_direction && straight && settles && moving.iter().any(|&d| d != 0))
        }
        Experiment::Clicks => {
            let mut ok = true;
            for (pedal, bit) in [(Pedal::L, BUTTON_LEFT), (Pedal::R, BUTTON_RIGHT)] {
                let out = replay(&scenario::press_at_rest(period, pedal, 100, 100, 400), cfg)?;
                let pressed = out.reports.iter().any(|(_, r)| r.buttons() == bit);
                let kinds: Vec<EventKind> = out
                    .events
                    .iter()
                    .filter(|e| e.pedal == pedal)
                    .map(|e| e.kind)
                    .collect();
                ok &= pressed && kinds == [EventKind::Press, EventKind::Release];
            }
            Ok(ok)
        }
        Experiment::PressWhileMoving => {
            let out = replay(&scenario::press_during_motion(period, 12.0, 400, 200, 1000), cfg)?;
            Ok(out.events.iter().any(|e| e.kind == EventKind::Press))
        }
        Experiment::PressDelay => {
            let press_at = 200;
            let out = replay(&scenario::press_at_rest(period, Pedal::L, press_at, 200, 600), cfg)?;
            Ok(out
                .events
                .iter()
                .find(|e| e.kind == EventKind::Press)
                .is_some_and(|e| e.t - press_at <= NORMAL_DELAY_MS))
        }
    }
}

pub fn feature_matrix(cfg: &ControllerConfig) -> Result<FeatureReport> {
    cfg.validate()?;
    let results = sweep::map(&EXPERIMENTS, |&exp| run(exp, cfg));
    let mut answers = [false; EXPERIMENTS.len()];
    for (slot, r) in answers.iter_mut().zip(results) {
        *slot = r?;
    }
    let [full_control, stable, non_erratic, clicks, press_moving, delay] = answers;

    let button_count = (BUTTON_LEFT | BUTTON_RIGHT).count_ones();
    let row = |characteristic, answer: Answer| FeatureRow {
        characteristic,
        answer,
    };
    Ok(FeatureReport {
        rows: vec![
            row("Wired USB type A connectivity", Answer::Yes),
            row("Full cursor control", full_control.into()),
            row("Static cursor stability", stable.into()),
            row("Correct cursor movement (non-erratic)", non_erratic.into()),
            row("Scroll Wheel", (REPORT_LEN > 3).into()),
            row("Compatible with PC and Laptop", Answer::Yes),
            row("Right and left-click buttons", clicks.into()),
            row("Compatible with Windows 10", Answer::Yes),
            row("Detects button press when moving", press_moving.into()),
            row("Normal delay when detecting button press", delay.into()),
            row("Number of buttons", Answer::Count(button_count)),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn improved_mode_detects_press_while_moving() {
        let cfg = ControllerConfig::default().with_mode(Mode::Improved);
        let report = feature_matrix(&cfg).unwrap();
        assert_eq!(
            report.answer("Detects button press when moving"),
            Some(Answer::Yes)
        );
        assert_eq!(report.answer("Static cursor stability"), Some(Answer::Yes));
        assert_eq!(report.rows.len(), 11);
    }

    #[test]
    fn long_debounce_is_not_normal_delay() {
        let cfg = ControllerConfig {
            debounce_ms: 150,
            ..Default::default()
        };
        let report = feature_matrix(&cfg).unwrap();
        assert_eq!(
            report.answer("Normal delay when detecting button press"),
            Some(Answer::No)
        );
    }

    #[test]
    fn display_format() {
        let report = FeatureReport {
            rows: vec![
                FeatureRow {
                    characteristic: "Scroll Wheel",
                    answer: Answer::No,
                },
                FeatureRow {
                    characteristic: "Number of buttons",
                    answer: Answer::Count(2),
                },
            ],
        };
        assert_eq!(report.to_string(), "Scroll Wheel: No\nNumber of buttons: 2\n");
    }
}
