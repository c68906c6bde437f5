//! Trace CSV ingestion and the plain-text output files of a replay.
//!
//! Trace format, UTF-8 with LF line endings:
//!
//! ```text
//! t_ms,ax,ay,az,gx,gy,gz,pedal_l,pedal_r,a_attached,b_attached
//! 0,0,0,16384,0,0,0,0,0,1,1
//! ```
//!
//! Report stream: one `<t_ms> <byte0> <byte1> <byte2>` line per report,
//! bytes as two-digit lowercase hex.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::buttons::{Level, PedalLevels};
use crate::device::RawImuSample;
use crate::error::{Error, Result};
use crate::hid::HidReport;
use crate::sim::cursor::CursorPath;

pub const TRACE_HEADER: [&str; 11] = [
    "t_ms",
    "ax",
    "ay",
    "az",
    "gx",
    "gy",
    "gz",
    "pedal_l",
    "pedal_r",
    "a_attached",
    "b_attached",
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct TraceRow {
    pub t_ms: u64,
    pub ax: i16,
    pub ay: i16,
    pub az: i16,
    pub gx: i16,
    pub gy: i16,
    pub gz: i16,
    pub pedal_l: Level,
    pub pedal_r: Level,
    pub a_attached: bool,
    pub b_attached: bool,
}

impl TraceRow {
    pub fn sample(&self) -> RawImuSample {
        RawImuSample {
            ax: self.ax,
            ay: self.ay,
            az: self.az,
            temp: 0,
            gx: self.gx,
            gy: self.gy,
            gz: self.gz,
        }
    }

    pub fn pedals(&self) -> PedalLevels {
        PedalLevels {
            l_level: self.pedal_l,
            r_level: self.pedal_r,
        }
    }
}

/// Rows with strictly increasing `t_ms`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    rows: Vec<TraceRow>,
}

impl Trace {
    pub fn new(rows: Vec<TraceRow>) -> Result<Self> {
        for (i, pair) in rows.windows(2).enumerate() {
            if pair[1].t_ms <= pair[0].t_ms {
                return Err(Error::NonMonotonicTime {
                    line: i + 3,
                    prev: pair[0].t_ms,
                    t_ms: pair[1].t_ms,
                });
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[TraceRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn into_rows(self) -> Vec<TraceRow> {
        self.rows
    }
}

pub fn load_trace(path: &Path) -> Result<Trace> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::io(path, e))?;
    parse_trace(&text)
}

pub fn parse_trace(text: &str) -> Result<Trace> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::None)
        .from_reader(text.as_bytes());

    let mut records = rdr.records();
    let header = match records.next() {
        Some(rec) => rec.map_err(|e| parse_err(1, e))?,
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing header".into(),
            })
        }
    };
    if header.iter().ne(TRACE_HEADER) {
        return Err(Error::Parse {
            line: 1,
            message: format!("header must be `{}`", TRACE_HEADER.join(",")),
        });
    }

    let mut rows: Vec<TraceRow> = Vec::new();
    for (i, rec) in records.enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| parse_err(line, e))?;
        if rec.len() != TRACE_HEADER.len() {
            return Err(Error::Parse {
                line,
                message: format!(
                    "expected {} columns, found {}",
                    TRACE_HEADER.len(),
                    rec.len()
                ),
            });
        }
        let mut values = [0i64; 11];
        for (slot, (field, name)) in values.iter_mut().zip(rec.iter().zip(TRACE_HEADER)) {
            *slot = field.parse().map_err(|_| Error::Parse {
                line,
                message: format!("{name}: `{field}` is not an integer"),
            })?;
        }
        let row = row_from_values(line, &values)?;
        if let Some(prev) = rows.last() {
            if row.t_ms <= prev.t_ms {
                return Err(Error::NonMonotonicTime {
                    line,
                    prev: prev.t_ms,
                    t_ms: row.t_ms,
                });
            }
        }
        rows.push(row);
    }
    Ok(Trace { rows })
}

fn parse_err(line: usize, e: csv::Error) -> Error {
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn row_from_values(line: usize, v: &[i64; 11]) -> Result<TraceRow> {
    let range = |idx: usize| Error::Range {
        line,
        field: TRACE_HEADER[idx],
        value: v[idx],
    };
    let count = |idx: usize| i16::try_from(v[idx]).map_err(|_| range(idx));
    let flag = |idx: usize| match v[idx] {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(range(idx)),
    };
    Ok(TraceRow {
        t_ms: u64::try_from(v[0]).map_err(|_| range(0))?,
        ax: count(1)?,
        ay: count(2)?,
        az: count(3)?,
        gx: count(4)?,
        gy: count(5)?,
        gz: count(6)?,
        pedal_l: Level::from_pressed(flag(7)?),
        pedal_r: Level::from_pressed(flag(8)?),
        a_attached: flag(9)?,
        b_attached: flag(10)?,
    })
}

pub fn write_trace<W: Write>(tr: &Trace, out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(TRACE_HEADER)?;
    let bit = |b: bool| if b { "1" } else { "0" };
    for r in &tr.rows {
        w.write_record([
            r.t_ms.to_string().as_str(),
            &r.ax.to_string(),
            &r.ay.to_string(),
            &r.az.to_string(),
            &r.gx.to_string(),
            &r.gy.to_string(),
            &r.gz.to_string(),
            bit(r.pedal_l.is_pressed()),
            bit(r.pedal_r.is_pressed()),
            bit(r.a_attached),
            bit(r.b_attached),
        ])?;
    }
    w.flush()
}

pub fn save_trace(tr: &Trace, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_trace(tr, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn write_report_stream<W: Write>(reports: &[(u64, HidReport)], mut out: W) -> std::io::Result<()> {
    for (t, r) in reports {
        let [b0, b1, b2] = r.to_bytes();
        writeln!(out, "{t} {b0:02x} {b1:02x} {b2:02x}")?;
    }
    out.flush()
}

pub fn save_report_stream(reports: &[(u64, HidReport)], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_report_stream(reports, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn parse_report_stream(text: &str) -> Result<Vec<(u64, HidReport)>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| {
            let line = i + 1;
            let bad = || Error::Parse {
                line,
                message: format!("malformed report line `{l}`"),
            };
            let mut parts = l.split(' ');
            let t = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let mut bytes = [0u8; 3];
            for b in &mut bytes {
                let s = parts.next().filter(|s| s.len() == 2).ok_or_else(bad)?;
                *b = u8::from_str_radix(s, 16).map_err(|_| bad())?;
            }
            if parts.next().is_some() {
                return Err(bad());
            }
            let report = HidReport::from_bytes(&bytes).map_err(|_| bad())?;
            Ok((t, report))
        })
        .collect()
}

/// `<t_ms> <x> <y>` per cursor sample.
pub fn write_path<W: Write>(path: &CursorPath, mut out: W) -> std::io::Result<()> {
    for p in &path.positions {
        writeln!(out, "{} {} {}", p.t_ms, p.x, p.y)?;
    }
    out.flush()
}

pub fn save_path(path: &CursorPath, file: &Path) -> Result<()> {
    let f = File::create(file).map_err(|e| Error::io(file, e))?;
    write_path(path, BufWriter::new(f)).map_err(|e| Error::io(file, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const HEADER: &str = "t_ms,ax,ay,az,gx,gy,gz,pedal_l,pedal_r,a_attached,b_attached\n";

    #[test]
    fn single_row() {
        let tr = parse_trace(&format!("{HEADER}0,0,0,16384,0,0,0,0,1,1,1\n")).unwrap();
        assert_eq!(tr.len(), 1);
        let r = tr.rows()[0];
        assert_eq!(r.az, 16384);
        assert_eq!(r.pedal_r, Level::High);
        assert!(r.a_attached && r.b_attached);
    }

    #[test]
    fn repeated_time_rejected() {
        let text = format!("{HEADER}10,0,0,1,0,0,0,0,0,1,1\n10,0,0,1,0,0,0,0,0,1,1\n");
        assert!(matches!(
            parse_trace(&text),
            Err(Error::NonMonotonicTime {
                line: 3,
                prev: 10,
                t_ms: 10
            })
        ));
    }

    #[test]
    fn out_of_range_counts() {
        let text = format!("{HEADER}0,40000,0,1,0,0,0,0,0,1,1\n");
        assert!(matches!(
            parse_trace(&text),
            Err(Error::Range {
                field: "ax",
                value: 40000,
                ..
            })
        ));
        let text = format!("{HEADER}0,0,0,1,0,0,0,2,0,1,1\n");
        assert!(matches!(
            parse_trace(&text),
            Err(Error::Range {
                field: "pedal_l",
                ..
            })
        ));
        let text = format!("{HEADER}-5,0,0,1,0,0,0,0,0,1,1\n");
        assert!(matches!(
            parse_trace(&text),
            Err(Error::Range { field: "t_ms", .. })
        ));
    }

    #[test]
    fn malformed_rows() {
        let short = format!("{HEADER}0,0,0,1,0,0,0,0,0,1\n");
        assert!(matches!(parse_trace(&short), Err(Error::Parse { line: 2, .. })));
        let junk = format!("{HEADER}0,zero,0,1,0,0,0,0,0,1,1\n");
        assert!(matches!(parse_trace(&junk), Err(Error::Parse { line: 2, .. })));
        let bad_header = "t,ax\n0,0\n";
        assert!(matches!(parse_trace(bad_header), Err(Error::Parse { line: 1, .. })));
        assert!(parse_trace("").is_err());
    }

    #[test]
    fn header_only_is_empty_trace() {
        assert!(parse_trace(HEADER).unwrap().is_empty());
    }

    #[test]
    fn report_stream_lines() {
        let reports = vec![
            (10, HidReport::from_bytes(&[0x01, 0x05, 0xFD]).unwrap()),
            (20, HidReport::default()),
        ];
        let mut buf = Vec::new();
        write_report_stream(&reports, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "10 01 05 fd\n20 00 00 00\n");
        assert_eq!(parse_report_stream(&text).unwrap(), reports);
        assert!(parse_report_stream("10 1 05 fd\n").is_err());
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_trace(Path::new("/definitely/not/here.csv")).unwrap_err();
        assert!(err.is_io());
        assert!(err.to_string().contains("here.csv"));
    }

    fn arb_row() -> impl Strategy<Value = TraceRow> {
        (
            any::<[i16; 6]>(),
            any::<[bool; 4]>(),
        )
            .prop_map(|(c, f)| TraceRow {
                t_ms: 0,
                ax: c[0],
                ay: c[1],
                az: c[2],
                gx: c[3],
                gy: c[4],
                gz: c[5],
                pedal_l: Level::from_pressed(f[0]),
                pedal_r: Level::from_pressed(f[1]),
                a_attached: f[2],
                b_attached: f[3],
            })
    }

    proptest! {
        #[test]
        fn save_then_load_is_identity(rows in prop::collection::vec((1u64..1000, arb_row()), 0..40)) {
            let mut t = 0;
            let rows: Vec<TraceRow> = rows
                .into_iter()
                .map(|(gap, r)| { t += gap; TraceRow { t_ms: t, ..r } })
                .collect();
            let tr = Trace::new(rows).unwrap();
            let mut buf = Vec::new();
            write_trace(&tr, &mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            prop_assert!(!text.contains('\r'));
            prop_assert_eq!(parse_trace(&text).unwrap(), tr);
        }
    }
}
