//! Register-level stand-in for the GY-521 breakout (MPU-6050).
//!
//! The emulator holds a flat 256-byte register space. The controller reads
//! the 14-byte ACCEL/TEMP/GYRO block starting at [`ACCEL_XOUT_H`] exactly as
//! firmware would over I2C, and the simulator writes trace samples into the
//! same registers between ticks.

use crate::error::{Error, Result};

pub const ACCEL_XOUT_H: u8 = 0x3B;
pub const PWR_MGMT_1: u8 = 0x6B;
pub const WHO_AM_I: u8 = 0x75;
pub const WHO_AM_I_VALUE: u8 = 0x68;

/// Length of the contiguous accel/temp/gyro block.
pub const BURST_LEN: usize = 14;

/// Power-on value of PWR_MGMT_1: SLEEP bit set.
const PWR_MGMT_1_RESET: u8 = 0x40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterFile {
    registers: [u8; 256],
    present: bool,
}

impl Default for RegisterFile {
    fn default() -> Self {
        Self::empty()
    }
}

impl RegisterFile {
    /// A present device with every register zero, including WHO_AM_I.
    pub fn empty() -> Self {
        Self {
            registers: [0; 256],
            present: true,
        }
    }

    /// A freshly powered GY-521: identity register set, device asleep.
    pub fn gy521() -> Self {
        let mut rf = Self::empty();
        rf.registers[WHO_AM_I as usize] = WHO_AM_I_VALUE;
        rf.registers[PWR_MGMT_1 as usize] = PWR_MGMT_1_RESET;
        rf
    }

    pub fn is_present(&self) -> bool {
        self.present
    }

    /// Models plugging accessory A in or out.
    pub fn set_present(&mut self, present: bool) {
        self.present = present;
    }

    pub fn write(&mut self, addr: u8, value: u8) {
        self.registers[addr as usize] = value;
    }

    pub fn write_block(&mut self, start: u8, bytes: &[u8]) {
        for (i, &b) in bytes.iter().enumerate() {
            self.registers[(start as usize + i) & 0xFF] = b;
        }
    }

    /// Clears SLEEP in PWR_MGMT_1.
    pub fn wake(&mut self) {
        self.write(PWR_MGMT_1, 0x00);
    }

    pub fn is_awake(&self) -> bool {
        self.registers[PWR_MGMT_1 as usize] & PWR_MGMT_1_RESET == 0
    }

    /// Stores a sample in the data registers the way the sensor would publish it.
    pub fn load_sample(&mut self, sample: &RawImuSample) {
        self.write_block(ACCEL_XOUT_H, &encode_burst(sample));
    }
}

/// Burst read of `count` consecutive registers starting at `start`.
pub fn emulate_read(rf: &RegisterFile, start: u8, count: usize) -> Result<Vec<u8>> {
    if !rf.present {
        return Err(Error::AccessoryAbsent);
    }
    let begin = start as usize;
    if count == 0 || begin + count > rf.registers.len() {
        return Err(Error::ReadOutOfRange { start, count });
    }
    Ok(rf.registers[begin..begin + count].to_vec())
}

/// True iff the device is attached and answers WHO_AM_I with 0x68.
pub fn probe_identity(rf: &RegisterFile) -> bool {
    matches!(emulate_read(rf, WHO_AM_I, 1).as_deref(), Ok([WHO_AM_I_VALUE]))
}

/// Raw counts as they come off the sensor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RawImuSample {
    pub ax: i16,
    pub ay: i16,
    pub az: i16,
    pub temp: i16,
    pub gx: i16,
    pub gy: i16,
    pub gz: i16,
}

impl RawImuSample {
    pub fn accel(ax: i16, ay: i16, az: i16) -> Self {
        Self {
            ax,
            ay,
            az,
            ..Self::default()
        }
    }

    fn fields(&self) -> [i16; 7] {
        [
            self.ax, self.ay, self.az, self.temp, self.gx, self.gy, self.gz,
        ]
    }
}

/// Big-endian two's complement, in register order.
pub fn encode_burst(sample: &RawImuSample) -> [u8; BURST_LEN] {
    let mut out = [0u8; BURST_LEN];
    for (chunk, v) in out.chunks_exact_mut(2).zip(sample.fields()) {
        chunk.copy_from_slice(&v.to_be_bytes());
    }
    out
}

pub fn decode_burst(bytes: &[u8]) -> Result<RawImuSample> {
    let bytes: &[u8; BURST_LEN] = bytes.try_into().map_err(|_| Error::WrongLength {
        expected: BURST_LEN,
        got: bytes.len(),
    })?;
    let word = |i: usize| i16::from_be_bytes([bytes[2 * i], bytes[2 * i + 1]]);
    Ok(RawImuSample {
        ax: word(0),
        ay: word(1),
        az: word(2),
        temp: word(3),
        gx: word(4),
        gy: word(5),
        gz: word(6),
    })
}

/// Counts-per-unit conversion factors. Defaults are the ±2 g / ±250 °/s
/// power-on full scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleConfig {
    /// LSB per g.
    pub accel_sensitivity: f64,
    /// LSB per °/s.
    pub gyro_sensitivity: f64,
}

impl Default for ScaleConfig {
    fn default() -> Self {
        Self {
            accel_sensitivity: 16384.0,
            gyro_sensitivity: 131.0,
        }
    }
}

impl ScaleConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.accel_sensitivity) || !ok(self.gyro_sensitivity) {
            return Err(Error::InvalidConfig(
                "sensor sensitivities must be finite and > 0".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhysicalSample {
    /// g
    pub accel: [f64; 3],
    /// °/s
    pub gyro: [f64; 3],
}

pub fn raw_to_physical(s: &RawImuSample, cfg: &ScaleConfig) -> PhysicalSample {
    let a = |v: i16| f64::from(v) / cfg.accel_sensitivity;
    let g = |v: i16| f64::from(v) / cfg.gyro_sensitivity;
    PhysicalSample {
        accel: [a(s.ax), a(s.ay), a(s.az)],
        gyro: [g(s.gx), g(s.gy), g(s.gz)],
    }
}
