//! Head tilt from the gravity direction, with an optional EMA smoother and
//! an optional complementary filter that folds in the gyro rates.

use crate::device::PhysicalSample;
use crate::error::{Error, Result};

/// Below this accelerometer magnitude (in g) the gravity direction is noise.
pub const FREEFALL_THRESHOLD_G: f64 = 0.05;

/// Maps an angle difference into (−180, 180].
pub fn wrap_deg(d: f64) -> f64 {
    let r = d.rem_euclid(360.0);
    if r > 180.0 {
        r - 360.0
    } else {
        r
    }
}

/// Pitch/roll in degrees. Pitch lies in [−90, 90], roll in (−180, 180].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TiltAngles {
    pub pitch: f64,
    pub roll: f64,
}

impl TiltAngles {
    pub fn new(pitch: f64, roll: f64) -> Self {
        Self { pitch, roll }.normalized()
    }

    pub fn normalized(self) -> Self {
        Self {
            pitch: self.pitch.clamp(-90.0, 90.0),
            roll: wrap_deg(self.roll),
        }
    }

    pub fn is_valid(&self) -> bool {
        (-90.0..=90.0).contains(&self.pitch) && self.roll > -180.0 && self.roll <= 180.0
    }
}

pub fn tilt_from_accel(p: &PhysicalSample) -> Result<TiltAngles> {
    let [ax, ay, az] = p.accel;
    let magnitude = (ax * ax + ay * ay + az * az).sqrt();
    if magnitude.is_nan() || magnitude <= FREEFALL_THRESHOLD_G {
        return Err(Error::FreefallAmbiguous { magnitude });
    }
    let pitch = (-ax).atan2(ay.hypot(az)).to_degrees();
    let roll = ay.atan2(az).to_degrees();
    Ok(TiltAngles::new(pitch, roll))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmootherState {
    pub current: TiltAngles,
    alpha: f64,
}

impl SmootherState {
    pub fn new(start: TiltAngles, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "smoother alpha {alpha} must lie in (0, 1]"
            )));
        }
        Ok(Self {
            current: start,
            alpha,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// One EMA step per axis. Roll blends along the shorter arc; pitch is
/// bounded to [−90, 90] and never needs wrapping.
pub fn smooth_ema(st: &SmootherState, new: TiltAngles) -> SmootherState {
    if st.alpha == 1.0 {
        return SmootherState {
            current: new.normalized(),
            alpha: st.alpha,
        };
    }
    let cur = st.current;
    SmootherState {
        current: TiltAngles::new(
            cur.pitch + st.alpha * (new.pitch - cur.pitch),
            cur.roll + st.alpha * wrap_deg(new.roll - cur.roll),
        ),
        alpha: st.alpha,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionState {
    pub angles: TiltAngles,
    k: f64,
}

impl FusionState {
    pub fn new(angles: TiltAngles, k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::InvalidConfig(format!(
                "gyro weight k {k} must lie in [0, 1]"
            )));
        }
        Ok(Self { angles, k })
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// Complementary filter step. Roll rate is gyro x, pitch rate is gyro y.
pub fn complementary_update(fs: &FusionState, p: &PhysicalSample, dt: f64) -> Result<FusionState> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::InvalidConfig(format!("dt {dt} must be > 0")));
    }
    let predicted = TiltAngles {
        pitch: fs.angles.pitch + p.gyro[1] * dt,
        roll: fs.angles.roll + p.gyro[0] * dt,
    };
    let angles = if fs.k == 1.0 {
        predicted
    } else {
        let measured = tilt_from_accel(p)?;
        let mix = |pred: f64, meas: f64| meas + fs.k * wrap_deg(pred - meas);
        TiltAngles {
            pitch: mix(predicted.pitch, measured.pitch),
            roll: mix(predicted.roll, measured.roll),
        }
    };
    Ok(FusionState {
        angles: angles.normalized(),
        k: fs.k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn accel(ax: f64, ay: f64, az: f64) -> PhysicalSample {
        PhysicalSample {
            accel: [ax, ay, az],
            gyro: [0.0; 3],
        }
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn canonical_tilts() {
        let t = tilt_from_accel(&accel(0.0, 0.0, 1.0)).unwrap();
        assert_eq!((t.pitch, t.roll), (0.0, 0.0));

        let t = tilt_from_accel(&accel(-0.5, 0.0, 0.8660254)).unwrap();
        assert!((t.pitch - 30.0).abs() < 1e-6, "{t:?}");
        assert_eq!(t.roll, 0.0);

        let t = tilt_from_accel(&accel(0.0, 1.0, 0.0)).unwrap();
        assert!(close(t.roll, 90.0));
    }

    #[test]
    fn upside_down_roll_is_positive_180() {
        let t = tilt_from_accel(&accel(0.0, -0.0, -1.0)).unwrap();
        assert_eq!(t.roll, 180.0);
    }

    #[test]
    fn freefall_rejected() {
        assert!(matches!(
            tilt_from_accel(&accel(0.03, 0.0, 0.03)),
            Err(Error::FreefallAmbiguous { .. })
        ));
        assert!(tilt_from_accel(&accel(0.0, 0.0, 0.05)).is_err());
    }

    #[test]
    fn ema_steps() {
        let st = SmootherState::new(TiltAngles::new(0.0, 0.0), 0.2).unwrap();
        let out = smooth_ema(&st, TiltAngles::new(10.0, 10.0));
        assert!(close(out.current.pitch, 2.0));
        assert!(close(out.current.roll, 2.0));

        let st = SmootherState::new(TiltAngles::new(3.3, -7.1), 1.0).unwrap();
        let target = TiltAngles::new(-12.25, 44.5);
        assert_eq!(smooth_ema(&st, target).current, target);
    }

    /// Enumerates representatives new + 360·j and blends toward the nearest one.
    fn brute_force_blend(cur: f64, new: f64, alpha: f64) -> f64 {
        let nearest = (-3..=3)
            .map(|j| new + 360.0 * f64::from(j))
            .min_by(|a, b| (a - cur).abs().total_cmp(&(b - cur).abs()))
            .unwrap();
        let mut out = cur + alpha * (nearest - cur);
        while out > 180.0 {
            out -= 360.0;
        }
        while out <= -180.0 {
            out += 360.0;
        }
        out
    }

    #[test]
    fn ema_crosses_the_seam() {
        assert_eq!(brute_force_blend(179.0, -179.0, 0.5), 180.0);
        let st = SmootherState::new(TiltAngles::new(0.0, 179.0), 0.5).unwrap();
        let out = smooth_ema(&st, TiltAngles::new(0.0, -179.0));
        assert_eq!(out.current.roll, 180.0);
    }

    #[test]
    fn bad_parameters() {
        assert!(SmootherState::new(TiltAngles::default(), 0.0).is_err());
        assert!(SmootherState::new(TiltAngles::default(), 1.5).is_err());
        assert!(FusionState::new(TiltAngles::default(), -0.1).is_err());
        let fs = FusionState::new(TiltAngles::default(), 0.5).unwrap();
        assert!(complementary_update(&fs, &accel(0.0, 0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn fusion_pure_integration() {
        let fs = FusionState::new(TiltAngles::default(), 1.0).unwrap();
        let p = PhysicalSample {
            accel: [0.0; 3],
            gyro: [0.0, 10.0, 0.0],
        };
        // k = 1 never consults the accelerometer, so freefall is fine here.
        let out = complementary_update(&fs, &p, 0.1).unwrap();
        assert!(close(out.angles.pitch, 1.0));
    }

    #[test]
    fn fusion_accel_only() {
        let fs = FusionState::new(TiltAngles::new(20.0, -40.0), 0.0).unwrap();
        let p = PhysicalSample {
            accel: [-0.3, 0.2, 0.9],
            gyro: [30.0, -20.0, 5.0],
        };
        let out = complementary_update(&fs, &p, 0.01).unwrap();
        assert_eq!(out.angles, tilt_from_accel(&p).unwrap());
    }

    #[test]
    fn fusion_blend_matches_stepwise_oracle() {
        // Accelerometer reading that is exactly 5° of pitch.
        let th = 5f64.to_radians();
        let p = PhysicalSample {
            accel: [-th.sin(), 0.0, th.cos()],
            gyro: [0.0, 10.0, 0.0],
        };
        let k = 0.98;
        let integrated = 0.0 + 10.0 * 0.1;
        let measured = (-p.accel[0]).atan2(p.accel[2]).to_degrees();
        let expected = k * integrated + (1.0 - k) * measured;
        assert!(close(expected, 1.08));

        let fs = FusionState::new(TiltAngles::default(), k).unwrap();
        let out = complementary_update(&fs, &p, 0.1).unwrap();
        assert!(close(out.angles.pitch, expected), "{}", out.angles.pitch);
        assert!(close(out.angles.roll, 0.0));
    }

    #[test]
    fn fusion_propagates_freefall() {
        let fs = FusionState::new(TiltAngles::default(), 0.98).unwrap();
        assert!(complementary_update(&fs, &accel(0.0, 0.0, 0.0), 0.01).is_err());
    }

    #[test]
    fn ema_converges() {
        let target = TiltAngles::new(-35.0, 170.0);
        let mut st = SmootherState::new(TiltAngles::new(40.0, -150.0), 0.2).unwrap();
        for _ in 0..200 {
            st = smooth_ema(&st, target);
        }
        assert!(wrap_deg(st.current.pitch - target.pitch).abs() < 1e-6);
        assert!(wrap_deg(st.current.roll - target.roll).abs() < 1e-6);
    }

    fn angle() -> impl Strategy<Value = TiltAngles> {
        (-90.0f64..=90.0, -179.999f64..=180.0).prop_map(|(p, r)| TiltAngles::new(p, r))
    }

    proptest! {
        #[test]
        fn tilt_ranges_and_scale_invariance(
            ax in -2.0f64..2.0, ay in -2.0f64..2.0, az in -2.0f64..2.0, c in 0.01f64..100.0,
        ) {
            let p = accel(ax, ay, az);
            prop_assume!((ax * ax + ay * ay + az * az).sqrt() > 0.06);
            let t = tilt_from_accel(&p).unwrap();
            prop_assert!(t.is_valid());
            if (c * (ax * ax + ay * ay + az * az).sqrt()) > 0.06 {
                let s = tilt_from_accel(&accel(c * ax, c * ay, c * az)).unwrap();
                prop_assert!((s.pitch - t.pitch).abs() < 1e-9);
                prop_assert!(wrap_deg(s.roll - t.roll).abs() < 1e-9);
            }
        }

        #[test]
        fn ema_contracts(cur in angle(), new in angle(), alpha in 0.01f64..=1.0) {
            let st = SmootherState::new(cur, alpha).unwrap();
            let out = smooth_ema(&st, new).current;
            prop_assert!(out.is_valid());
            let before = wrap_deg(cur.roll - new.roll).abs();
            let after = wrap_deg(out.roll - new.roll).abs();
            prop_assert!(after <= (1.0 - alpha) * before + 1e-9);
            let before = wrap_deg(cur.pitch - new.pitch).abs();
            let after = wrap_deg(out.pitch - new.pitch).abs();
            prop_assert!(after <= (1.0 - alpha) * before + 1e-9);
        }

        #[test]
        fn fusion_output_in_range(
            start in angle(), gx in -250.0f64..250.0, gy in -250.0f64..250.0,
            ay in -1.0f64..1.0, k in 0.0f64..=1.0, dt in 0.001f64..1.0,
        ) {
            let fs = FusionState::new(start, k).unwrap();
            let p = PhysicalSample { accel: [0.3, ay, 0.8], gyro: [gx, gy, 0.0] };
            prop_assert!(complementary_update(&fs, &p, dt).unwrap().angles.is_valid());
        }
    }
}
