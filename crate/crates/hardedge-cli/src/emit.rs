//! Bit-stable output: fixed column order and every float as 17 significant digits.

use crate::config::Format;
use crate::error::CliError;
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use std::io::{self, Write};
use std::path::Path;

/// Float in `d.dddddddddddddddde±x` form (17 significant digits).
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON formatter writing floats with 17 significant digits; non-finite
/// values become null (handled by serde_json before reaching here).
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(float(v).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser).expect("serializing plain data cannot fail");
    let mut s = String::from_utf8(buf).expect("serde_json emits UTF-8");
    s.push('\n');
    s
}

/// A CSV table; cells are preformatted strings.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: vec![] }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Command output in both renderings.
pub struct Rendered {
    pub table: Table,
    pub json: String,
}

/// Writes the chosen rendering to `path`, or to standard output.
pub fn emit(rendered: &Rendered, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let text = match format {
        Format::Csv => rendered.table.to_csv(),
        Format::Json => rendered.json.clone(),
    };
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(vec!["R", "value", "bound", "slope_running"]);
        assert_eq!(t.to_csv(), "R,value,bound,slope_running\n");
    }

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(float(0.1), "1.0000000000000001e-1");
        assert_eq!(float(-2.5), "-2.5000000000000000e0");
    }

    #[test]
    fn non_finite_json_is_null() {
        assert_eq!(to_json(&[f64::NAN, 1.0]), "[null,1.0000000000000000e0]\n");
    }

    proptest! {
        #[test]
        fn float_text_round_trips(v in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            prop_assert_eq!(float(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }

        #[test]
        fn json_round_trips(v in proptest::collection::vec(-1e300f64..1e300, 0..8)) {
            let back: Vec<f64> = serde_json::from_str(&to_json(&v)).unwrap();
            prop_assert_eq!(back.iter().map(|x| x.to_bits()).collect::<Vec<_>>(), v.iter().map(|x| x.to_bits()).collect::<Vec<_>>());
        }
    }
}
