//! Virtual cursor driven by report deltas, one count per pixel.

use crate::hid::HidReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Screen {
    pub width: u32,
    pub height: u32,
}

impl Default for Screen {
    fn default() -> Self {
        Self {
            width: 1920,
            height: 1080,
        }
    }
}

impl Screen {
    pub fn center(&self) -> (i64, i64) {
        (i64::from(self.width / 2), i64::from(self.height / 2))
    }

    pub fn contains(&self, (x, y): (i64, i64)) -> bool {
        (0..i64::from(self.width)).contains(&x) && (0..i64::from(self.height)).contains(&y)
    }

    fn clamp(&self, (x, y): (i64, i64)) -> (i64, i64) {
        (
            x.clamp(0, i64::from(self.width) - 1),
            y.clamp(0, i64::from(self.height) - 1),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CursorPoint {
    pub t_ms: u64,
    pub x: i64,
    pub y: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CursorPath {
    pub positions: Vec<CursorPoint>,
    pub screen: Screen,
}

impl CursorPath {
    pub fn last(&self) -> CursorPoint {
        *self.positions.last().expect("a path always holds its start point")
    }
}

/// Accumulates report deltas from `start`, clamping to the screen after
/// every step. The first point is `start` at `start_t`.
pub fn integrate_cursor(
    reports: &[(u64, HidReport)],
    start: (i64, i64),
    start_t: u64,
    screen: Screen,
) -> CursorPath {
    let mut pos = screen.clamp(start);
    let mut positions = Vec::with_capacity(reports.len() + 1);
    positions.push(CursorPoint {
        t_ms: start_t,
        x: pos.0,
        y: pos.1,
    });
    for (t, r) in reports {
        pos = screen.clamp((pos.0 + i64::from(r.dx()), pos.1 + i64::from(r.dy())));
        positions.push(CursorPoint {
            t_ms: *t,
            x: pos.0,
            y: pos.1,
        });
    }
    CursorPath { positions, screen }
}
