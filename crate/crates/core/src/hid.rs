//! Boot-protocol mouse report: `[buttons, dx, dy]`.

use crate::buttons::PedalState;
use crate::error::{Error, Result};
use crate::mapping::PointerDelta;

pub const REPORT_LEN: usize = 3;

pub const BUTTON_LEFT: u8 = 0x01;
pub const BUTTON_RIGHT: u8 = 0x02;
const RESERVED_BITS: u8 = !(BUTTON_LEFT | BUTTON_RIGHT);

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct HidReport {
    buttons: u8,
    dx: i8,
    dy: i8,
}

impl HidReport {
    pub fn buttons(&self) -> u8 {
        self.buttons
    }

    pub fn dx(&self) -> i8 {
        self.dx
    }

    pub fn dy(&self) -> i8 {
        self.dy
    }

    pub fn to_bytes(&self) -> [u8; REPORT_LEN] {
        [self.buttons, self.dx as u8, self.dy as u8]
    }

    /// Inverse of [`HidReport::to_bytes`]; rejects reserved button bits and −128.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let &[buttons, x, y] = bytes else {
            return Err(Error::WrongLength {
                expected: REPORT_LEN,
                got: bytes.len(),
            });
        };
        let (dx, dy) = (x as i8, y as i8);
        if buttons & RESERVED_BITS != 0 || dx == i8::MIN || dy == i8::MIN {
            return Err(Error::Parse {
                line: 0,
                message: format!("invalid mouse report {buttons:02x} {x:02x} {y:02x}"),
            });
        }
        Ok(Self { buttons, dx, dy })
    }
}

pub fn make_report(p: PedalState, d: PointerDelta) -> HidReport {
    let mut buttons = 0;
    if p.l_pressed {
        buttons |= BUTTON_LEFT;
    }
    if p.r_pressed {
        buttons |= BUTTON_RIGHT;
    }
    // PointerDelta never carries −128, but keep the report symmetric regardless.
    let clamp = |v: i8| v.max(-i8::MAX);
    HidReport {
        buttons,
        dx: clamp(d.dx),
        dy: clamp(d.dy),
    }
}

pub fn serialize_report(r: &HidReport) -> [u8; REPORT_LEN] {
    r.to_bytes()
}
