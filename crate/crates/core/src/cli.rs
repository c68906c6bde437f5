//! `headmouse` command line.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{load_config, Settings};
use crate::controller::{DiagnosticState, Mode};
use crate::device::{decode_burst, raw_to_physical};
use crate::error::{Error, Result};
use crate::mapping::set_neutral;
use crate::orientation::tilt_from_accel;
use crate::sim::trace::{save_path, save_report_stream};
use crate::sim::{feature_matrix, inject_noise, load_trace, run_replay, save_trace, static_jitter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "headmouse", version, about = "Head-tilt mouse simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the configured mode.
    #[arg(long, value_parser = ["faithful", "improved"])]
    mode: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replay a trace and write the report stream and cursor path.
    Simulate {
        trace: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Report stream output file.
        #[arg(long)]
        reports: Option<PathBuf>,
        /// Cursor path output file.
        #[arg(long)]
        path: Option<PathBuf>,
    },
    /// Print the conventional-mouse feature checklist.
    Features {
        #[command(flatten)]
        common: Common,
    },
    /// Replay a trace and print cursor jitter over a time window.
    Jitter {
        trace: PathBuf,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Decode a 14-byte accel/temp/gyro register burst given as hex.
    Decode {
        #[arg(required = true, num_args = 1..)]
        hex: Vec<String>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Add reproducible Gaussian noise to a trace.
    Noise {
        trace: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the neutral pose calibrated from a trace's first row.
    Calibrate {
        trace: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn settings(config: Option<&Path>, mode: Option<&str>) -> Result<Settings> {
    let mut s = match config {
        Some(p) => load_config(p)?,
        None => Settings::default(),
    };
    if let Some(m) = mode {
        s.controller.mode = m.parse::<Mode>()?;
    }
    s.validate()?;
    Ok(s)
}

impl Common {
    fn settings(&self) -> Result<Settings> {
        settings(self.config.as_deref(), self.mode.as_deref())
    }
}

fn parse_hex(parts: &[String]) -> Result<Vec<u8>> {
    let digits: String = parts.iter().flat_map(|p| p.chars()).filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidConfig(format!("`{digits}` is not an even-length hex string"));
    if !digits.len().is_multiple_of(2) || !digits.is_ascii() {
        return Err(bad());
    }
    (0..digits.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&digits[i..i + 2], 16).map_err(|_| bad()))
        .collect()
}

fn io(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Simulate {
            trace,
            common,
            reports,
            path,
        } => {
            let s = common.settings()?;
            let tr = load_trace(&trace)?;
            let result = run_replay(&tr, &s.controller, s.screen)?;
            if let Some(p) = &reports {
                save_report_stream(&result.reports, p)?;
            }
            if let Some(p) = &path {
                save_path(&result.path, p)?;
            }
            writeln!(out, "rows {}", tr.len()).map_err(io)?;
            writeln!(out, "reports {}", result.reports.len()).map_err(io)?;
            for e in &result.events {
                let pedal = match e.pedal {
                    crate::buttons::Pedal::L => "L",
                    crate::buttons::Pedal::R => "R",
                };
                let kind = match e.kind {
                    crate::buttons::EventKind::Press => "press",
                    crate::buttons::EventKind::Release => "release",
                };
                writeln!(out, "event {} {pedal} {kind}", e.t).map_err(io)?;
            }
            let mut last: Option<DiagnosticState> = None;
            for &(t, d) in &result.diag_log {
                if last != Some(d) {
                    writeln!(out, "diag {t} {}", d.as_str()).map_err(io)?;
                    last = Some(d);
                }
            }
            let end = result.path.last();
            writeln!(out, "final {} {}", end.x, end.y).map_err(io)?;
        }
        Command::Features { common } => {
            let s = common.settings()?;
            write!(out, "{}", feature_matrix(&s.controller)?).map_err(io)?;
        }
        Command::Jitter {
            trace,
            from,
            to,
            common,
        } => {
            let s = common.settings()?;
            let tr = load_trace(&trace)?;
            let result = run_replay(&tr, &s.controller, s.screen)?;
            let j = static_jitter(&result.path, from, to)?;
            writeln!(out, "rms_px {:.6}", j.rms_px).map_err(io)?;
            writeln!(out, "peak_px {:.6}", j.peak_px).map_err(io)?;
        }
        Command::Decode { hex, config } => {
            let s = settings(config.as_deref(), None)?;
            let raw = decode_burst(&parse_hex(&hex)?)?;
            let phys = raw_to_physical(&raw, &s.controller.scale);
            let raws = [
                ("ax", raw.ax),
                ("ay", raw.ay),
                ("az", raw.az),
                ("temp", raw.temp),
                ("gx", raw.gx),
                ("gy", raw.gy),
                ("gz", raw.gz),
            ];
            for (name, v) in raws {
                writeln!(out, "{name}_raw={v}").map_err(io)?;
            }
            for (name, v) in ["ax", "ay", "az"].iter().zip(phys.accel) {
                writeln!(out, "{name}={v:?} g").map_err(io)?;
            }
            for (name, v) in ["gx", "gy", "gz"].iter().zip(phys.gyro) {
                writeln!(out, "{name}={v:?} dps").map_err(io)?;
            }
        }
        Command::Noise {
            trace,
            seed,
            sigma,
            out: dest,
        } => {
            let tr = load_trace(&trace)?;
            let noisy = inject_noise(&tr, seed, sigma)?;
            save_trace(&noisy, &dest)?;
            writeln!(out, "wrote {} rows to {}", noisy.len(), dest.display()).map_err(io)?;
        }
        Command::Calibrate { trace, config } => {
            let s = settings(config.as_deref(), None)?;
            let tr = load_trace(&trace)?;
            let first = tr.rows().first().ok_or(Error::EmptyTrace)?;
            let tilt = tilt_from_accel(&raw_to_physical(&first.sample(), &s.controller.scale))?;
            let n = set_neutral(tilt);
            writeln!(out, "pitch0 {:.6}", n.pitch0).map_err(io)?;
            writeln!(out, "roll0 {:.6}", n.roll0).map_err(io)?;
        }
    }
    Ok(())
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_io() {
                EXIT_IO
            } else {
                EXIT_INVALID
            }
        }
    }
}
