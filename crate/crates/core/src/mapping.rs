//! Rate-control mapping from head tilt to per-tick cursor counts.

use crate::error::{Error, Result};
use crate::orientation::{wrap_deg, TiltAngles};

/// Largest magnitude a boot-protocol report axis carries here. −128 is never used.
pub const MAX_COUNT: i8 = 127;

/// Zero-displacement head pose captured at calibration.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeutralPose {
    pub pitch0: f64,
    pub roll0: f64,
}

pub fn set_neutral(t: TiltAngles) -> NeutralPose {
    NeutralPose {
        pitch0: t.pitch,
        roll0: t.roll,
    }
}

/// Which relative tilt axis drives which cursor axis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AxisMap {
    /// pitch → vertical (dy), roll → horizontal (dx)
    #[default]
    PitchVertical,
    /// pitch → horizontal (dx), roll → vertical (dy)
    PitchHorizontal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    fn apply(self, v: i8) -> i8 {
        match self {
            Sign::Positive => v,
            Sign::Negative => -v,
        }
    }
}

/// Sensor box worn on the right side of the head, pointing down: nodding
/// down moves the cursor down, rolling right moves it right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MountConfig {
    pub axis_map: AxisMap,
    pub sign_x: Sign,
    pub sign_y: Sign,
}

impl Default for MountConfig {
    fn default() -> Self {
        Self {
            axis_map: AxisMap::PitchVertical,
            sign_x: Sign::Positive,
            sign_y: Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappingConfig {
    /// Degrees of tilt ignored around neutral.
    pub dead_zone: f64,
    /// Counts per degree beyond the dead zone, per tick.
    pub gain: f64,
}

impl Default for MappingConfig {
    fn default() -> Self {
        Self {
            dead_zone: 2.0,
            gain: 3.0,
        }
    }
}

impl MappingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dead_zone.is_finite() && self.dead_zone >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "dead zone {} must be finite and >= 0",
                self.dead_zone
            )));
        }
        if !(self.gain.is_finite() && self.gain > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "gain {} must be finite and > 0",
                self.gain
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PointerDelta {
    pub dx: i8,
    pub dy: i8,
}

impl PointerDelta {
    pub const ZERO: PointerDelta = PointerDelta { dx: 0, dy: 0 };

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

/// Counts for one axis, before the mount permutation and sign.
pub fn axis_counts(rel: f64, cfg: &MappingConfig) -> i8 {
    let mag = rel.abs();
    if mag <= cfg.dead_zone {
        return 0;
    }
    let counts = ((mag - cfg.dead_zone) * cfg.gain)
        .round()
        .min(f64::from(MAX_COUNT)) as i8;
    if rel < 0.0 {
        -counts
    } else {
        counts
    }
}

pub fn map_tilt_to_delta(
    t: TiltAngles,
    n: NeutralPose,
    mc: &MountConfig,
    cfg: &MappingConfig,
) -> PointerDelta {
    let pitch = axis_counts(wrap_deg(t.pitch - n.pitch0), cfg);
    let roll = axis_counts(wrap_deg(t.roll - n.roll0), cfg);
    let (horizontal, vertical) = match mc.axis_map {
        AxisMap::PitchVertical => (roll, pitch),
        AxisMap::PitchHorizontal => (pitch, roll),
    };
    PointerDelta {
        dx: mc.sign_x.apply(horizontal),
        dy: mc.sign_y.apply(vertical),
    }
}
