//! Foot pedals: pull-down inputs and a time-window debouncer.

use crate::error::{Error, Result};

/// Logic level on a pedal input. With pull-down wiring HIGH means pressed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Level {
    #[default]
    Low,
    High,
}

impl Level {
    pub fn is_pressed(self) -> bool {
        self == Level::High
    }

    pub fn from_pressed(pressed: bool) -> Self {
        if pressed {
            Level::High
        } else {
            Level::Low
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PedalLevels {
    pub l_level: Level,
    pub r_level: Level,
}

impl PedalLevels {
    pub const RELEASED: PedalLevels = PedalLevels {
        l_level: Level::Low,
        r_level: Level::Low,
    };
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PedalState {
    pub l_pressed: bool,
    pub r_pressed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pedal {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Press,
    Release,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ButtonEvent {
    pub pedal: Pedal,
    pub kind: EventKind,
    pub t: u64,
}

pub const DEFAULT_DEBOUNCE_MS: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Channel {
    stable: bool,
    candidate: Level,
    candidate_since: u64,
}

impl Channel {
    const RELEASED: Channel = Channel {
        stable: false,
        candidate: Level::Low,
        candidate_since: 0,
    };

    fn step(&mut self, raw: Level, t: u64, window: u64) {
        if raw.is_pressed() == self.stable {
            self.candidate = raw;
            self.candidate_since = t;
            return;
        }
        if raw != self.candidate {
            self.candidate = raw;
            self.candidate_since = t;
        }
        if t - self.candidate_since >= window {
            self.stable = raw.is_pressed();
            self.candidate_since = t;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DebounceState {
    l: Channel,
    r: Channel,
    window: u64,
    last_t: Option<u64>,
}

impl DebounceState {
    /// Both pedals released.
    pub fn new(window_ms: u64) -> Result<Self> {
        if window_ms == 0 {
            return Err(Error::InvalidConfig("debounce window must be > 0 ms".into()));
        }
        Ok(Self {
            l: Channel::RELEASED,
            r: Channel::RELEASED,
            window: window_ms,
            last_t: None,
        })
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn pedals(&self) -> PedalState {
        PedalState {
            l_pressed: self.l.stable,
            r_pressed: self.r.stable,
        }
    }
}

/// A pedal's stable state flips once its raw level has disagreed with it
/// continuously for at least the window.
pub fn debounce_step(
    st: &DebounceState,
    raw: PedalLevels,
    t: u64,
) -> Result<(DebounceState, PedalState)> {
    if let Some(prev) = st.last_t {
        if t < prev {
            return Err(Error::TimeWentBackwards { prev, now: t });
        }
    }
    let mut next = *st;
    next.l.step(raw.l_level, t, st.window);
    next.r.step(raw.r_level, t, st.window);
    next.last_t = Some(t);
    Ok((next, next.pedals()))
}

pub fn edge_events(prev: PedalState, next: PedalState, t: u64) -> Vec<ButtonEvent> {
    [
        (Pedal::L, prev.l_pressed, next.l_pressed),
        (Pedal::R, prev.r_pressed, next.r_pressed),
    ]
    .into_iter()
    .filter(|(_, a, b)| a != b)
    .map(|(pedal, _, now)| ButtonEvent {
        pedal,
        kind: if now {
            EventKind::Press
        } else {
            EventKind::Release
        },
        t,
    })
    .collect()
}
