//! Output formatting shared by the command-line runner.
//!
//! JSON is compact with fields in declaration order and every float printed
//! with 17 significant digits, so equal inputs give byte-identical files.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

use crate::error::Result;

/// Compact JSON formatter writing floats as `d.dddddddddddddddde±x`.
#[derive(Debug, Default, Clone, Copy)]
pub struct Fixed17;

impl Formatter for Fixed17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// 17 significant digits; non-finite values become `null`.
pub fn format_f64(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        "null".to_string()
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, Fixed17);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    config: &'a C,
    result: &'a R,
}

/// `{"config": ..., "result": ...}` followed by a newline.
pub fn write_json<W: Write, C: Serialize, R: Serialize>(mut w: W, config: &C, result: &R) -> Result<()> {
    let text = to_json(&Envelope { config, result })?;
    writeln!(w, "{text}")?;
    Ok(())
}

/// A `# config: {...}` comment line for text and CSV outputs.
pub fn write_config_comment<W: Write, C: Serialize>(mut w: W, config: &C) -> Result<()> {
    writeln!(w, "# config: {}", to_json(config)?)?;
    Ok(())
}

/// One CSV cell.
pub enum Cell {
    Int(i128),
    Float(f64),
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

/// Config comment, header row, then one line per row.
pub fn write_csv<W: Write, C: Serialize>(mut w: W, config: &C, header: &[&str], rows: Vec<Vec<Cell>>) -> Result<()> {
    write_config_comment(&mut w, config)?;
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        let cells: Vec<String> = row
            .into_iter()
            .map(|c| match c {
                Cell::Int(v) => v.to_string(),
                Cell::Float(v) => format_f64(v),
            })
            .collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        n: u64,
        value: f64,
        list: Vec<f64>,
        missing: Option<f64>,
    }

    #[test]
    fn floats_round_trip_with_17_digits() {
        let s = Sample { n: 5, value: std::f64::consts::PI, list: vec![0.1, 72.0, -1e-300], missing: None };
        let text = to_json(&s).unwrap();
        assert_eq!(
            text,
            r#"{"n":5,"value":3.1415926535897931e0,"list":[1.0000000000000001e-1,7.2000000000000000e1,-1.0000000000000000e-300],"missing":null}"#
        );
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["value"].as_f64().unwrap(), std::f64::consts::PI);
        assert_eq!(back["list"][0].as_f64().unwrap(), 0.1);
        assert_eq!(format_f64(f64::NAN), "null");
    }
}
