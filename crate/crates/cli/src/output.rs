//! Text, JSON and CSV rendering of a command result.

use clap::ValueEnum;
use serde_json::{Map, Value};

use gv_core::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Report {
    json: Value,
    text: Vec<String>,
    csv_header: Vec<String>,
    csv_rows: Vec<Vec<String>>,
    /// CSV is a single key/value row built from the fields.
    single_row: bool,
    digits: Option<usize>,
}

/// `{"text", "sign", "primes", "pi"}` plus `"decimal"` when requested.
pub fn scalar_json(s: &ExactScalar, digits: Option<usize>) -> Value {
    let mut j = s.to_json();
    let o = j.as_object_mut().expect("scalar object");
    o.insert("text".into(), Value::String(s.to_string()));
    if let Some(d) = digits {
        o.insert("decimal".into(), Value::String(s.to_decimal(d)));
    }
    j
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(o) if o.contains_key("text") => plain(&o["text"]),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn new(base: Map<String, Value>, digits: Option<usize>) -> Self {
        let mut r = Report {
            json: Value::Object(Map::new()),
            text: Vec::new(),
            csv_header: Vec::new(),
            csv_rows: vec![Vec::new()],
            single_row: true,
            digits,
        };
        for (k, v) in base {
            r.push_csv(&k, plain(&v));
            r.obj().insert(k, v);
        }
        r
    }

    /// Use an already built JSON document.
    pub fn raw(v: Value) -> Self {
        let mut r = Report::new(Map::new(), None);
        r.json = v;
        r
    }

    fn obj(&mut self) -> &mut Map<String, Value> {
        self.json.as_object_mut().expect("object report")
    }

    fn push_csv(&mut self, key: &str, value: String) {
        if self.single_row {
            self.csv_header.push(key.to_string());
            self.csv_rows[0].push(value);
        }
    }

    pub fn text_line(&mut self, s: String) {
        self.text.push(s);
    }

    pub fn field(&mut self, key: &str, v: Value) {
        let shown = plain(&v);
        if !(v.is_array() && v.as_array().is_some_and(|a| a.is_empty())) {
            self.text.push(format!("{key}: {shown}"));
        }
        self.push_csv(key, shown);
        self.obj().insert(key.to_string(), v);
    }

    /// An exact scalar, with its decimal value when `--digits` was given.
    pub fn scalar(&mut self, key: &str, v: Option<&ExactScalar>) {
        let exact = v.map(|s| s.to_string());
        let dec = match (v, self.digits) {
            (Some(s), Some(d)) => Some(s.to_decimal(d)),
            _ => None,
        };
        let shown = match (&exact, &dec) {
            (Some(e), Some(d)) => format!("{e} ≈ {d}"),
            (Some(e), None) => e.clone(),
            (None, _) => "undefined".to_string(),
        };
        self.text.push(format!("{key}: {shown}"));
        self.push_csv(key, exact.unwrap_or_default());
        if self.digits.is_some() {
            self.push_csv(&format!("{key}_decimal"), dec.unwrap_or_default());
        }
        let j = v.map(|s| scalar_json(s, self.digits)).unwrap_or(Value::Null);
        self.obj().insert(key.to_string(), j);
    }

    /// Rows of objects sharing the given columns.
    pub fn table(&mut self, columns: &[&str], rows: Vec<Value>, key: &str) {
        let cells: Vec<Vec<String>> =
            rows.iter().map(|r| columns.iter().map(|c| plain(&r[*c])).collect()).collect();
        let widths: Vec<usize> = (0..columns.len())
            .map(|i| cells.iter().map(|r| r[i].chars().count()).chain([columns[i].len()]).max().unwrap_or(0))
            .collect();
        let fmt_row = |r: Vec<String>| {
            r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        self.text.push(fmt_row(columns.iter().map(|c| c.to_string()).collect()));
        for r in &cells {
            self.text.push(fmt_row(r.clone()));
        }
        self.set_csv(columns.iter().map(|c| c.to_string()).collect(), cells);
        self.obj().insert(key.to_string(), Value::Array(rows));
    }

    pub fn verify_table(&mut self, rows: Vec<Value>) {
        let columns = ["status", "table", "family", "n", "q", "printed", "computed", "ratio"];
        let mut cells = Vec::new();
        for r in &rows {
            cells.push(columns.iter().map(|c| plain(&r[*c])).collect::<Vec<_>>());
            let param = if r.get("n").is_some() { format!("n={}", plain(&r["n"])) } else { format!("q={}", plain(&r["q"])) };
            let mut line = format!(
                "{:<8} {:<5} {:<3} {:<5} printed {}  computed {}",
                plain(&r["status"]),
                plain(&r["table"]),
                plain(&r["family"]),
                param,
                plain(&r["printed"]),
                plain(&r["computed"])
            );
            if plain(&r["status"]) != "match" {
                line.push_str(&format!("  ratio {}", plain(&r["ratio"])));
            }
            self.text.push(line);
        }
        let s = self.json["summary"].clone();
        self.text.push(format!(
            "{} match, {} erratum, {} mismatch{}",
            s["match"],
            s["erratum"],
            s["mismatch"],
            if self.json["strict"] == Value::Bool(true) { " (strict)" } else { "" }
        ));
        // the summary lines from `field` are superseded by the footer
        self.text.retain(|l| !l.starts_with("strict:") && !l.starts_with("summary:"));
        self.set_csv(columns.iter().map(|c| c.to_string()).collect(), cells);
        self.obj().insert("rows".into(), Value::Array(rows));
    }

    pub fn set_csv(&mut self, header: Vec<String>, rows: Vec<Vec<String>>) {
        self.single_row = false;
        self.csv_header = header;
        self.csv_rows = rows;
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).expect("in-memory write");
                for r in &self.csv_rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
        }
    }
}
