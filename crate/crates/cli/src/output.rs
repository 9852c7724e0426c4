//! Rendering of command results as aligned tables, CSV or JSON.

use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use padic_galois::Rat;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Leading columns of every CSV file, in this order.
pub const CSV_COLUMNS: [&str; 7] = ["label", "exact_num", "exact_den", "estimate", "stderr", "z", "count"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// A cell beyond the fixed columns.
#[derive(Clone, Debug)]
pub enum Cell {
    Rat(Rat),
    Float(f64),
    Int(BigUint),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Rat(r) => format!("{r}"),
            Cell::Float(x) => float_text(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Rat(r) => rat_json(r),
            Cell::Float(x) => float_json(*x),
            Cell::Int(n) => Value::String(n.to_string()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Row {
    pub label: String,
    pub exact: Option<Rat>,
    pub estimate: Option<f64>,
    pub stderr: Option<f64>,
    pub z: Option<f64>,
    pub count: Option<BigUint>,
    pub pass: Option<bool>,
    pub extra: Vec<(&'static str, Cell)>,
}

impl Row {
    pub fn new(label: impl Into<String>) -> Self {
        Row {
            label: label.into(),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Output {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub rows: Vec<Row>,
    pub summary: Vec<(String, Value)>,
    pub pass: bool,
}

impl Output {
    pub fn new(command: &'static str, params: Value) -> Self {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Output {
            command,
            params,
            rows: Vec::new(),
            summary: Vec::new(),
            pass: true,
        }
    }

    pub fn summary(&mut self, key: &str, value: Value) {
        self.summary.push((key.to_string(), value));
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Table => self.write_table(out),
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    fn extra_names(&self) -> Vec<&'static str> {
        let mut names: Vec<&'static str> = Vec::new();
        for row in &self.rows {
            for (name, _) in &row.extra {
                if !names.contains(name) {
                    names.push(name);
                }
            }
        }
        names
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("label".into(), json!(r.label));
                m.insert("exact".into(), r.exact.as_ref().map_or(Value::Null, rat_json));
                m.insert("estimate".into(), r.estimate.map_or(Value::Null, float_json));
                m.insert("stderr".into(), r.stderr.map_or(Value::Null, float_json));
                m.insert("z".into(), r.z.map_or(Value::Null, float_json));
                m.insert(
                    "count".into(),
                    r.count.as_ref().map_or(Value::Null, |c| json!(c.to_string())),
                );
                m.insert("pass".into(), r.pass.map_or(Value::Null, Value::Bool));
                for (name, cell) in &r.extra {
                    m.insert((*name).into(), cell.json());
                }
                Value::Object(m)
            })
            .collect();
        let summary: Map<String, Value> = self.summary.iter().cloned().collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "params": self.params,
            "pass": self.pass,
            "rows": rows,
            "summary": summary,
        })
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let extras = self.extra_names();
        let mut w = csv::Writer::from_writer(out);
        let header: Vec<&str> = CSV_COLUMNS.iter().copied().chain(extras.iter().copied()).collect();
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![
                r.label.clone(),
                r.exact.as_ref().map_or(String::new(), |x| x.numer().to_string()),
                r.exact.as_ref().map_or(String::new(), |x| x.denom().to_string()),
                r.estimate.map_or(String::new(), float_text),
                r.stderr.map_or(String::new(), float_text),
                r.z.map_or(String::new(), float_text),
                r.count.as_ref().map_or(String::new(), |c| c.to_string()),
            ];
            for name in &extras {
                rec.push(
                    r.extra
                        .iter()
                        .find(|(n, _)| n == name)
                        .map_or(String::new(), |(_, c)| c.text()),
                );
            }
            w.write_record(&rec)?;
        }
        w.flush()
    }

    fn write_table(&self, out: &mut impl Write) -> io::Result<()> {
        let extras = self.extra_names();
        let mut header: Vec<String> = vec!["label".into()];
        let any = |f: &dyn Fn(&Row) -> bool| self.rows.iter().any(f);
        let show_exact = any(&|r| r.exact.is_some());
        let show_est = any(&|r| r.estimate.is_some());
        let show_se = any(&|r| r.stderr.is_some());
        let show_z = any(&|r| r.z.is_some());
        let show_count = any(&|r| r.count.is_some());
        let show_pass = any(&|r| r.pass.is_some());
        if show_exact {
            header.push("exact".into());
            header.push("decimal".into());
        }
        for (show, name) in [
            (show_est, "estimate"),
            (show_se, "stderr"),
            (show_z, "z"),
            (show_count, "count"),
        ] {
            if show {
                header.push(name.into());
            }
        }
        header.extend(extras.iter().map(|s| s.to_string()));
        if show_pass {
            header.push("ok".into());
        }
        let mut lines = vec![header];
        for r in &self.rows {
            let mut line = vec![r.label.clone()];
            if show_exact {
                line.push(r.exact.as_ref().map_or(String::new(), |x| x.to_string()));
                line.push(r.exact.as_ref().map_or(String::new(), |x| decimal(x, 12)));
            }
            let fmt = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.6}"));
            if show_est {
                line.push(fmt(r.estimate));
            }
            if show_se {
                line.push(fmt(r.stderr));
            }
            if show_z {
                line.push(r.z.map_or(String::new(), |v| format!("{v:+.2}")));
            }
            if show_count {
                line.push(r.count.as_ref().map_or(String::new(), |c| c.to_string()));
            }
            for name in &extras {
                line.push(
                    r.extra
                        .iter()
                        .find(|(n, _)| n == name)
                        .map_or(String::new(), |(_, c)| c.text()),
                );
            }
            if show_pass {
                line.push(match r.pass {
                    Some(true) => "yes".into(),
                    Some(false) => "NO".into(),
                    None => String::new(),
                });
            }
            lines.push(line);
        }
        let widths: Vec<usize> = (0..lines[0].len())
            .map(|i| lines.iter().map(|l| l[i].chars().count()).max().unwrap_or(0))
            .collect();
        for (i, line) in lines.iter().enumerate() {
            let cells: Vec<String> = line.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            writeln!(out, "{}", cells.join("  ").trim_end())?;
            if i == 0 {
                let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
                writeln!(out, "{}", "-".repeat(total))?;
            }
        }
        for (k, v) in &self.summary {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            writeln!(out, "{k}: {shown}")?;
        }
        writeln!(out, "result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

fn float_text(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        String::new()
    }
}

fn float_json(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn rat_json(r: &Rat) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "decimal": decimal(r, 20),
    })
}

fn pow10(k: u32) -> BigUint {
    BigUint::from(10u32).pow(k)
}

/// `r` rounded half-up to `sig` significant digits, in positional notation.
pub fn decimal(r: &Rat, sig: u32) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let num = r.numer().abs().to_biguint().unwrap();
    let den = r.denom().to_biguint().unwrap();
    // e = floor(log10 |r|)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let below = |e: i64, n: &BigUint, d: &BigUint| {
        if e >= 0 {
            n < &(d * pow10(e as u32))
        } else {
            &(n * pow10((-e) as u32)) < d
        }
    };
    while below(e, &num, &den) {
        e -= 1;
    }
    while !below(e + 1, &num, &den) {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let (n2, d2) = if shift >= 0 {
        (num * pow10(shift as u32), den)
    } else {
        (num, den * pow10((-shift) as u32))
    };
    let mut digits = (BigUint::from(2u32) * n2 + &d2) / (BigUint::from(2u32) * d2);
    if digits == pow10(sig) {
        digits /= 10u32;
        e += 1;
    }
    let s = digits.to_string();
    let body = if e >= 0 {
        let int_len = e as usize + 1;
        if int_len >= s.len() {
            format!("{s}{}", "0".repeat(int_len - s.len()))
        } else {
            format!("{}.{}", &s[..int_len], &s[int_len..])
        }
    } else {
        format!("0.{}{s}", "0".repeat((-e - 1) as usize))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(1, 3), 20), "0.33333333333333333333");
        assert_eq!(decimal(&rat(2, 3), 5), "0.66667");
        assert_eq!(decimal(&rat(26, 781), 20), "0.033290653008962868118");
        assert_eq!(decimal(&rat(5, 12), 4), "0.4167");
        assert_eq!(decimal(&rat(1, 1), 3), "1.00");
        assert_eq!(decimal(&rat(12345, 1), 3), "12300");
        assert_eq!(decimal(&rat(-7, 2), 3), "-3.50");
        assert_eq!(decimal(&rat(999, 1000), 2), "1.0");
        assert_eq!(decimal(&rat(0, 1), 20), "0");
    }

    #[test]
    fn csv_header_is_fixed() {
        let mut o = Output::new("x", json!({}));
        let mut r = Row::new("(1,1)");
        r.exact = Some(rat(5, 12));
        r.extra.push(("extra", Cell::Bool(true)));
        o.rows.push(r);
        let mut buf = Vec::new();
        o.write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "label,exact_num,exact_den,estimate,stderr,z,count,extra"
        );
        assert_eq!(lines.next().unwrap(), "\"(1,1)\",5,12,,,,,true");
    }

    #[test]
    fn json_rationals() {
        let v = rat_json(&rat(25, 52));
        assert_eq!(v["num"], "25");
        assert_eq!(v["den"], "52");
        assert_eq!(v["decimal"], "0.48076923076923076923");
    }
}
