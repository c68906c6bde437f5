//! Fixed-rate firmware loop: check accessories, read the sensor, estimate
//! tilt, map to cursor counts, debounce pedals and emit one report.
//!
//! The whole controller is a value. [`tick`] takes the previous state and
//! returns the next one, so identical inputs always give identical output.

use crate::buttons::{debounce_step, edge_events, ButtonEvent, DebounceState, PedalLevels};
use crate::device::{
    decode_burst, emulate_read, probe_identity, raw_to_physical, PhysicalSample, RegisterFile,
    ScaleConfig, ACCEL_XOUT_H, BURST_LEN,
};
use crate::error::{Error, Result};
use crate::hid::{make_report, HidReport};
use crate::mapping::{map_tilt_to_delta, set_neutral, MappingConfig, MountConfig, NeutralPose};
use crate::orientation::{
    complementary_update, smooth_ema, tilt_from_accel, FusionState, SmootherState, TiltAngles,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Reproduces the prototype, including missed clicks while the head moves.
    #[default]
    Faithful,
    /// Samples the pedals on every tick.
    Improved,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Faithful => "faithful",
            Mode::Improved => "improved",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "faithful" => Ok(Mode::Faithful),
            "improved" => Ok(Mode::Improved),
            other => Err(Error::InvalidConfig(format!(
                "mode must be `faithful` or `improved`, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerConfig {
    pub tick_hz: f64,
    pub mode: Mode,
    pub fusion_enabled: bool,
    /// EMA weight of the newest tilt; 1.0 disables smoothing.
    pub alpha: f64,
    /// Complementary filter gyro weight, used only with `fusion_enabled`.
    pub k: f64,
    pub mapping: MappingConfig,
    pub mount: MountConfig,
    pub scale: ScaleConfig,
    pub debounce_ms: u64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        Self {
            tick_hz: 100.0,
            mode: Mode::Faithful,
            fusion_enabled: false,
            alpha: 0.2,
            k: 0.98,
            mapping: MappingConfig::default(),
            mount: MountConfig::default(),
            scale: ScaleConfig::default(),
            debounce_ms: crate::buttons::DEFAULT_DEBOUNCE_MS,
        }
    }
}

impl ControllerConfig {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Nominal tick period, rounded to whole milliseconds.
    pub fn period_ms(&self) -> u64 {
        (1000.0 / self.tick_hz).round().max(1.0) as u64
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tick_hz.is_finite() && self.tick_hz > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tick_hz {} must be finite and > 0",
                self.tick_hz
            )));
        }
        SmootherState::new(TiltAngles::default(), self.alpha)?;
        FusionState::new(TiltAngles::default(), self.k)?;
        DebounceState::new(self.debounce_ms)?;
        self.mapping.validate()?;
        self.scale.validate()
    }
}

/// Status LED.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticState {
    Ok,
    MissingA,
    MissingB,
    /// Accessory A is attached but does not identify as an MPU-6050.
    Fault,
}

impl DiagnosticState {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticState::Ok => "ok",
            DiagnosticState::MissingA => "missing_a",
            DiagnosticState::MissingB => "missing_b",
            DiagnosticState::Fault => "fault",
        }
    }
}

/// MissingA takes precedence when both accessories fail.
pub fn diagnostics_update(a_ok: bool, b_attached: bool) -> DiagnosticState {
    match (a_ok, b_attached) {
        (true, true) => DiagnosticState::Ok,
        (false, _) => DiagnosticState::MissingA,
        (true, false) => DiagnosticState::MissingB,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerState {
    pub neutral: NeutralPose,
    pub smoother: SmootherState,
    pub fusion: FusionState,
    pub debounce: DebounceState,
    /// Last accelerometer tilt that was not freefall.
    pub last_tilt: TiltAngles,
    pub last_t: u64,
    pub initialized: bool,
}

impl ControllerState {
    /// A placeholder that every [`tick`] rejects until replaced by
    /// [`init_controller`].
    pub fn uninitialized(cfg: &ControllerConfig) -> Result<Self> {
        let zero = TiltAngles::default();
        Ok(Self {
            neutral: NeutralPose::default(),
            smoother: SmootherState::new(zero, cfg.alpha)?,
            fusion: FusionState::new(zero, cfg.k)?,
            debounce: DebounceState::new(cfg.debounce_ms)?,
            last_tilt: zero,
            last_t: 0,
            initialized: false,
        })
    }
}

/// Setup phase: wake the sensor and calibrate neutral from its first reading.
pub fn init_controller(
    cfg: &ControllerConfig,
    rf: &mut RegisterFile,
    first_sample: &PhysicalSample,
    t0: u64,
) -> Result<ControllerState> {
    cfg.validate()?;
    if !probe_identity(rf) {
        return Err(Error::AccessoryAbsent);
    }
    rf.wake();
    let tilt = tilt_from_accel(first_sample)?;
    Ok(ControllerState {
        neutral: set_neutral(tilt),
        smoother: SmootherState::new(tilt, cfg.alpha)?,
        fusion: FusionState::new(tilt, cfg.k)?,
        debounce: DebounceState::new(cfg.debounce_ms)?,
        last_tilt: tilt,
        last_t: t0,
        initialized: true,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TickOutput {
    pub state: ControllerState,
    pub report: Option<HidReport>,
    pub diagnostics: DiagnosticState,
    pub events: Vec<ButtonEvent>,
}

pub fn tick(
    st: &ControllerState,
    cfg: &ControllerConfig,
    rf: &RegisterFile,
    pedals: PedalLevels,
    b_attached: bool,
    t: u64,
) -> Result<TickOutput> {
    if !st.initialized {
        return Err(Error::NotInitialized);
    }
    if t < st.last_t {
        return Err(Error::TimeWentBackwards {
            prev: st.last_t,
            now: t,
        });
    }

    let a_ok = probe_identity(rf);
    let diagnostics = match diagnostics_update(a_ok, b_attached) {
        DiagnosticState::MissingA if rf.is_present() => DiagnosticState::Fault,
        d => d,
    };
    if diagnostics != DiagnosticState::Ok {
        return Ok(TickOutput {
            state: ControllerState { last_t: t, ..*st },
            report: None,
            diagnostics,
            events: Vec::new(),
        });
    }

    let mut next = *st;
    let raw = decode_burst(&emulate_read(rf, ACCEL_XOUT_H, BURST_LEN)?)?;
    let sample = raw_to_physical(&raw, &cfg.scale);
    let accel_tilt = tilt_from_accel(&sample).ok();
    if let Some(tilt) = accel_tilt {
        next.last_tilt = tilt;
    }

    let estimate = if cfg.fusion_enabled {
        let dt = (t - st.last_t) as f64 / 1000.0;
        if dt > 0.0 && (accel_tilt.is_some() || st.fusion.k() == 1.0) {
            next.fusion = complementary_update(&st.fusion, &sample, dt)?;
        }
        next.fusion.angles
    } else {
        next.last_tilt
    };
    next.smoother = smooth_ema(&st.smoother, estimate);
    let delta = map_tilt_to_delta(next.smoother.current, st.neutral, &cfg.mount, &cfg.mapping);

    let sample_pedals = match cfg.mode {
        Mode::Faithful => delta.is_zero(),
        Mode::Improved => true,
    };
    if sample_pedals {
        next.debounce = debounce_step(&st.debounce, pedals, t)?.0;
    }
    let events = edge_events(st.debounce.pedals(), next.debounce.pedals(), t);
    next.last_t = t;

    Ok(TickOutput {
        state: next,
        report: Some(make_report(next.debounce.pedals(), delta)),
        diagnostics,
        events,
    })
}
