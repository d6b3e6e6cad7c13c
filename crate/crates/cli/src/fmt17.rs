//! JSON output with every float written to 17 significant digits, so that
//! output is byte-stable and parses back to the same `f64`.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;

/// `v` with 17 significant digits in exponent form. Non-finite values, which
/// JSON cannot carry, only reach this through CSV output.
pub fn format_f64(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "NaN".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.16e}")
}

struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_writer<W: Write, T: Serialize>(writer: W, value: &T) -> serde_json::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(writer, Sig17);
    value.serialize(&mut ser)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0, 123456789.0] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        let mut buf = Vec::new();
        to_writer(&mut buf, &vec![0.1f64, 2.0]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "[1.0000000000000001e-1,2.0000000000000000e0]");
    }
}
