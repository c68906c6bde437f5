//! Reproducible Gaussian sensor noise.
//!
//! A single SplitMix64 stream seeded with the user seed feeds a cosine-branch
//! Box–Muller transform. Each row consumes two 64-bit draws per field, in the
//! order ax, ay, az, gx, gy, gz. Normals are clamped to ±3σ before scaling so
//! the noise amplitude is strictly bounded.

use crate::error::{Error, Result};
use crate::sim::trace::{Trace, TraceRow};

pub const CLAMP_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal from two uniforms; u1 is taken from (0, 1] so ln never sees 0.
    pub fn next_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.next_unit();
        let u2 = self.next_unit();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

fn perturb(v: i16, rng: &mut SplitMix64, sigma: f64) -> i16 {
    let z = rng.next_normal().clamp(-CLAMP_SIGMAS, CLAMP_SIGMAS);
    let n = (sigma * z).round() as i64;
    (i64::from(v) + n).clamp(i64::from(i16::MIN), i64::from(i16::MAX)) as i16
}

pub fn inject_noise(tr: &Trace, seed: u64, sigma_counts: f64) -> Result<Trace> {
    if !(sigma_counts.is_finite() && sigma_counts >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "noise sigma {sigma_counts} must be finite and >= 0"
        )));
    }
    if sigma_counts == 0.0 {
        return Ok(tr.clone());
    }
    let mut rng = SplitMix64::new(seed);
    let rows = tr
        .rows()
        .iter()
        .map(|row| {
            let mut noisy = *row;
            for field in [
                &mut noisy.ax,
                &mut noisy.ay,
                &mut noisy.az,
                &mut noisy.gx,
                &mut noisy.gy,
                &mut noisy.gz,
            ] {
                *field = perturb(*field, &mut rng, sigma_counts);
            }
            noisy
        })
        .collect::<Vec<TraceRow>>();
    Trace::new(rows)
}
