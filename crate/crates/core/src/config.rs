//! Line-oriented `key = value` configuration with `#` comments.
//!
//! ```text
//! # desk setup
//! mode = improved
//! dead_zone_deg = 2.5
//! sign_x = -1
//! ```
//!
//! Unknown keys are errors. Anything not set keeps its default.

use std::path::Path;

use crate::controller::ControllerConfig;
use crate::error::{Error, Result};
use crate::mapping::Sign;
use crate::sim::Screen;

pub const KEYS: [&str; 14] = [
    "tick_hz",
    "mode",
    "fusion_enabled",
    "alpha",
    "k",
    "dead_zone_deg",
    "gain",
    "sign_x",
    "sign_y",
    "debounce_ms",
    "screen_w",
    "screen_h",
    "accel_sens",
    "gyro_sens",
];

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Settings {
    pub controller: ControllerConfig,
    pub screen: Screen,
}

impl Settings {
    pub fn validate(&self) -> Result<()> {
        if self.screen.width == 0 || self.screen.height == 0 {
            return Err(Error::InvalidConfig("screen size must be non-zero".into()));
        }
        self.controller.validate()
    }
}

pub fn load_config(path: &Path) -> Result<Settings> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Settings> {
    let mut s = Settings::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| invalid(line_no, format!("expected `key = value`, got `{line}`")))?;
        apply(&mut s, key, value).map_err(|msg| invalid(line_no, msg))?;
    }
    s.validate()?;
    Ok(s)
}

fn invalid(line: usize, msg: String) -> Error {
    Error::InvalidConfig(format!("line {line}: {msg}"))
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("{key}: `{value}` is not a valid number"))
}

fn flag(key: &str, value: &str) -> Result<bool, String> {
    match value {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        _ => Err(format!("{key}: expected true/false, got `{value}`")),
    }
}

fn sign(key: &str, value: &str) -> Result<Sign, String> {
    num::<i64>(key, value)
        .ok()
        .and_then(Sign::from_i64)
        .ok_or_else(|| format!("{key}: expected 1 or -1, got `{value}`"))
}

fn apply(s: &mut Settings, key: &str, value: &str) -> Result<(), String> {
    let c = &mut s.controller;
    match key {
        "tick_hz" => c.tick_hz = num(key, value)?,
        "mode" => c.mode = value.parse().map_err(|e: Error| e.to_string())?,
        "fusion_enabled" => c.fusion_enabled = flag(key, value)?,
        "alpha" => c.alpha = num(key, value)?,
        "k" => c.k = num(key, value)?,
        "dead_zone_deg" => c.mapping.dead_zone = num(key, value)?,
        "gain" => c.mapping.gain = num(key, value)?,
        "sign_x" => c.mount.sign_x = sign(key, value)?,
        "sign_y" => c.mount.sign_y = sign(key, value)?,
        "debounce_ms" => c.debounce_ms = num(key, value)?,
        "screen_w" => s.screen.width = num(key, value)?,
        "screen_h" => s.screen.height = num(key, value)?,
        "accel_sens" => c.scale.accel_sensitivity = num(key, value)?,
        "gyro_sens" => c.scale.gyro_sensitivity = num(key, value)?,
        other => {
            return Err(format!(
                "unknown key `{other}` (expected one of: {})",
                KEYS.join(", ")
            ))
        }
    }
    Ok(())
}
