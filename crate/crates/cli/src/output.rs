//! Machine-readable output. Floats are always written as `{:.12e}` so that
//! identical runs give identical bytes.

use std::io::Write;

use num_complex::Complex64;
use serde_json::{Map, Number, Value};

pub const SCHEMA: &str = "unrolled-sl2/1";

pub fn num(x: f64) -> Value {
    // fold -0 into 0
    let x = x + 0.0;
    if x.is_finite() {
        Value::Number(format!("{x:.12e}").parse::<Number>().expect("formatted float is valid JSON"))
    } else {
        Value::Null
    }
}

pub fn cnum(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

/// The CSV spelling of a float, identical to its JSON spelling when finite.
pub fn text(x: f64) -> String {
    match num(x) {
        Value::Null => format!("{x}"),
        v => v.to_string(),
    }
}

/// A JSON object under construction, keys in insertion order.
#[derive(Default)]
pub struct Obj(Map<String, Value>);

impl Obj {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), v.into());
        self
    }

    pub fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.0.insert(key.to_string(), v.into());
    }
}

impl From<Obj> for Value {
    fn from(o: Obj) -> Value {
        Value::Object(o.0)
    }
}

/// Rows for CSV output.
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Report {
    pub body: Obj,
    pub table: Option<Table>,
    /// False when an assertion of the command failed.
    pub ok: bool,
}

impl Report {
    pub fn new(command: &'static str, r: Option<u32>) -> Self {
        let mut body = Obj::new().set("schema", SCHEMA).set("command", command);
        if let Some(r) = r {
            body.put("r", r);
        }
        Report {
            body,
            table: None,
            ok: true,
        }
    }

    pub fn json(&self) -> String {
        let mut o = self.body.0.clone();
        o.insert("ok".into(), Value::Bool(self.ok));
        serde_json::to_string_pretty(&Value::Object(o)).expect("serializable") + "\n"
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.headers).expect("in-memory write");
                for row in &t.rows {
                    w.write_record(row).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["field", "value"]).expect("in-memory write");
                let mut flat = Vec::new();
                flatten("", &Value::Object(self.body.0.clone()), &mut flat);
                flat.push(("ok".into(), self.ok.to_string()));
                for (k, v) in flat {
                    w.write_record([k, v]).expect("in-memory write");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn emit(&self, csv: bool) {
        let s = if csv { self.csv() } else { self.json() };
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(s.as_bytes());
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) => {
            for (n, x) in a.iter().enumerate() {
                flatten(&key(&n.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
