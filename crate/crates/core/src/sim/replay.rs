//! Feeds a trace through the controller one row per tick.

use crate::buttons::ButtonEvent;
use crate::controller::{init_controller, tick, ControllerConfig, DiagnosticState};
use crate::device::{raw_to_physical, RegisterFile};
use crate::error::{Error, Result};
use crate::hid::HidReport;
use crate::sim::cursor::{integrate_cursor, CursorPath, Screen};
use crate::sim::trace::Trace;

#[derive(Debug, Clone, PartialEq)]
pub struct ReplayOutput {
    pub reports: Vec<(u64, HidReport)>,
    pub events: Vec<ButtonEvent>,
    pub path: CursorPath,
    pub diag_log: Vec<(u64, DiagnosticState)>,
}

fn at_row(row: usize) -> impl FnOnce(Error) -> Error {
    move |e| Error::Replay {
        row,
        source: Box::new(e),
    }
}

/// Row 0 calibrates the controller; every later row is one tick. The cursor
/// starts at the screen center.
pub fn run_replay(tr: &Trace, cfg: &ControllerConfig, screen: Screen) -> Result<ReplayOutput> {
    cfg.validate()?;
    let rows = tr.rows();
    let first = rows.first().ok_or(Error::EmptyTrace)?;

    let mut rf = RegisterFile::gy521();
    rf.set_present(first.a_attached);
    rf.load_sample(&first.sample());
    let mut state = init_controller(
        cfg,
        &mut rf,
        &raw_to_physical(&first.sample(), &cfg.scale),
        first.t_ms,
    )
    .map_err(at_row(0))?;

    let mut reports = Vec::with_capacity(rows.len().saturating_sub(1));
    let mut events = Vec::new();
    let mut diag_log = Vec::with_capacity(rows.len().saturating_sub(1));
    for (i, row) in rows.iter().enumerate().skip(1) {
        rf.set_present(row.a_attached);
        rf.load_sample(&row.sample());
        let out = tick(&state, cfg, &rf, row.pedals(), row.b_attached, row.t_ms)
            .map_err(at_row(i))?;
        state = out.state;
        if let Some(r) = out.report {
            reports.push((row.t_ms, r));
        }
        events.extend(out.events);
        diag_log.push((row.t_ms, out.diagnostics));
    }

    let path = integrate_cursor(&reports, screen.center(), first.t_ms, screen);
    Ok(ReplayOutput {
        reports,
        events,
        path,
        diag_log,
    })
}
