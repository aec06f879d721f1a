//! Byte-stable rendering of numbers, CSV tables and JSON documents.

use std::fmt::Write as _;

use serde_json::{Map, Value};

/// Ten significant digits; lowercase scientific notation when
/// `|x| < 1e-3` or `|x| ≥ 1e6`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0.000000000".into();
    }
    let sci = format!("{x:.9e}");
    if !(1e-3..1e6).contains(&x.abs()) {
        return sci;
    }
    // the exponent after rounding, so 9.9999999999 counts as 10
    let exp: i32 = sci
        .split('e')
        .nth(1)
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if exp >= 6 {
        return sci;
    }
    let decimals = (9 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// JSON number rounded to ten significant digits; `null` when not finite.
pub fn json_num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.9e}").parse().expect("formatted float parses");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

/// Header block shared by every output file.
#[derive(Debug, Clone, Default)]
pub struct Provenance {
    pub dr: Option<f64>,
    pub r_max: Option<f64>,
    pub l_max: Option<usize>,
    pub completeness_defect: Option<f64>,
    pub extra: Vec<(String, String)>,
}

impl Provenance {
    fn entries(&self) -> Vec<(String, String)> {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "n/a".into());
        let mut out = vec![
            (
                "version".into(),
                format!("trapent {}", env!("CARGO_PKG_VERSION")),
            ),
            (
                "grid".into(),
                match (self.dr, self.r_max) {
                    (Some(dr), Some(r)) => format!("dr={} r_max={}", fmt_num(dr), fmt_num(r)),
                    _ => "n/a".into(),
                },
            ),
            ("l_max".into(), opt(self.l_max.map(|l| l.to_string()))),
            (
                "condition".into(),
                trapent::spectrum::CONDITION_VARIANT.to_string(),
            ),
            (
                "completeness_defect".into(),
                opt(self.completeness_defect.map(fmt_num)),
            ),
        ];
        out.extend(self.extra.iter().cloned());
        out
    }

    pub fn csv_header(&self) -> String {
        self.entries()
            .into_iter()
            .fold(String::new(), |mut s, (k, v)| {
                let _ = writeln!(s, "# {k}: {v}");
                s
            })
    }

    pub fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert(
            "version".into(),
            Value::String(env!("CARGO_PKG_VERSION").into()),
        );
        m.insert(
            "grid".into(),
            match (self.dr, self.r_max) {
                (Some(dr), Some(r)) => {
                    let mut g = Map::new();
                    g.insert("dr".into(), json_num(dr));
                    g.insert("r_max".into(), json_num(r));
                    Value::Object(g)
                }
                _ => Value::Null,
            },
        );
        m.insert(
            "l_max".into(),
            self.l_max.map_or(Value::Null, |l| Value::from(l as u64)),
        );
        m.insert(
            "condition".into(),
            Value::String(trapent::spectrum::CONDITION_VARIANT.into()),
        );
        m.insert(
            "completeness_defect".into(),
            self.completeness_defect.map_or(Value::Null, json_num),
        );
        for (k, v) in &self.extra {
            m.insert(k.clone(), Value::String(v.clone()));
        }
        Value::Object(m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json_num(*x),
            Cell::Int(i) => Value::from(*i),
            Cell::Empty => Value::Null,
        }
    }
}

/// A rectangular numeric table.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn csv(&self, prov: &Provenance) -> String {
        let mut s = prov.csv_header();
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn json(&self, prov: &Provenance) -> Value {
        let mut m = Map::new();
        m.insert("provenance".into(), prov.json());
        m.insert(
            "columns".into(),
            Value::Array(self.columns.iter().cloned().map(Value::String).collect()),
        );
        m.insert(
            "rows".into(),
            Value::Array(
                self.rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect(),
            ),
        );
        Value::Object(m)
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
