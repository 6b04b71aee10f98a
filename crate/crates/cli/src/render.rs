use num_rational::BigRational;
use serde_json::Value;

use crate::config::Format;

/// Result of a subcommand: a JSON document plus the same data as rows.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub pass: bool,
    pub pretty: bool,
}

impl Output {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>, pass: bool) -> Output {
        Output { json, header: header.iter().map(|s| s.to_string()).collect(), rows, pass, pretty: false }
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => {
                let text = if self.pretty {
                    serde_json::to_string_pretty(&self.json)
                } else {
                    serde_json::to_string(&self.json)
                };
                text.map(|s| s + "\n").map_err(|e| e.to_string())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(|e| e.to_string())?;
                for r in &self.rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
            Format::Table => Ok(table(&self.header, &self.rows)),
        }
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    out += &line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
    for r in rows {
        out += &line(r);
    }
    out
}

/// `p/q` with a positive denominator, also for integers.
pub fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn coords(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use serde_json::json;

    #[test]
    fn formats() {
        let out = Output::new(json!({"a": 1}), &["x", "y"], vec![vec!["1".into(), "[1,2]".into()]], true);
        assert_eq!(out.render(Format::Json).unwrap(), "{\"a\":1}\n");
        assert_eq!(out.render(Format::Csv).unwrap(), "x,y\n1,\"[1,2]\"\n");
        assert_eq!(out.render(Format::Table).unwrap(), "x  y\n-  -----\n1  [1,2]\n");
        let half = BigRational::new(BigInt::from(-2), BigInt::from(4));
        assert_eq!(rational(&half), "-1/2");
        assert_eq!(rational(&BigRational::from_integer(BigInt::from(3))), "3/1");
    }
}
