//! Host-side model of an accelerometer head mouse with foot-pedal clicks.
//!
//! The pipeline mirrors the firmware loop: [`device`] emulates the MPU-6050
//! register file, [`orientation`] turns gravity into head tilt, [`mapping`]
//! converts tilt into rate-controlled cursor counts, [`buttons`] debounces
//! the pedals and [`hid`] packs everything into boot-protocol mouse reports.
//! [`controller`] ties one tick together, and [`sim`] replays recorded or
//! synthetic traces through it.

pub mod buttons;
pub mod cli;
pub mod config;
pub mod controller;
pub mod device;
pub mod error;
pub mod hid;
pub mod mapping;
pub mod orientation;
pub mod sim;
pub mod sweep;

pub use error::{Error, Result};
