use std::io::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i128),
    Big(BigInt),
    Float(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl From<u128> for Value {
    fn from(v: u128) -> Self {
        i128::try_from(v).map(Value::Int).unwrap_or_else(|_| Value::Big(v.into()))
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(v: $t) -> Self {
                Value::Int(v as i128)
            }
        }
    )*};
}
int_value!(i64, u64, u32, usize);

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.into())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<BigInt> for Value {
    fn from(v: BigInt) -> Self {
        Value::Big(v)
    }
}

impl From<&BigInt> for Value {
    fn from(v: &BigInt) -> Self {
        Value::Big(v.clone())
    }
}

impl From<num_bigint::BigUint> for Value {
    fn from(v: num_bigint::BigUint) -> Self {
        Value::Big(v.into())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map(Into::into).unwrap_or(Value::Null)
    }
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Big(v) => v.to_string(),
            // shortest round-trip form, exponent notation at the extremes
            Value::Float(v) => format!("{v:?}"),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Null => String::new(),
        }
    }

    /// Integers that fit 64 bits become JSON numbers, wider ones decimal strings.
    fn json(&self) -> Json {
        let int = |v: &BigInt| match (v.to_i64(), v.to_u64()) {
            (Some(x), _) => json!(x),
            (None, Some(x)) => json!(x),
            _ => Json::String(v.to_string()),
        };
        match self {
            Value::Int(v) => int(&BigInt::from(*v)),
            Value::Big(v) => int(v),
            Value::Float(v) => serde_json::Number::from_f64(*v).map(Json::Number).unwrap_or(Json::Null),
            Value::Text(s) => Json::String(s.clone()),
            Value::Bool(b) => Json::Bool(*b),
            Value::Null => Json::Null,
        }
    }
}

/// A flat table: fixed columns, one value per column in every row.
#[derive(Debug, Clone)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// `(x column, y column)` for `--emit-plot`.
    pub plot: Option<(&'static str, &'static str)>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Report {
            columns: columns.to_vec(),
            rows: Vec::new(),
            plot: None,
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn with_plot(mut self, x: &'static str, y: &'static str) -> Self {
        self.plot = Some((x, y));
        self
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Value::csv))?;
        }
        w.flush()
    }

    pub fn json_rows(&self) -> Json {
        Json::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (c, v) in self.columns.iter().zip(row) {
                        obj.insert((*c).into(), v.json());
                    }
                    Json::Object(obj)
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct Manifest {
    pub subcommand: String,
    pub parameters: Vec<(String, String)>,
    pub seed: u64,
    pub threads: usize,
    pub timestamp: String,
}

impl Manifest {
    pub fn json(&self) -> Json {
        let mut params = Map::new();
        for (k, v) in &self.parameters {
            params.insert(k.clone(), Json::String(v.clone()));
        }
        json!({
            "subcommand": self.subcommand,
            "parameters": params,
            "seed": self.seed,
            "threadCount": self.threads,
            "timestamp": self.timestamp,
            "artifactVersion": env!("CARGO_PKG_VERSION"),
        })
    }
}

pub fn envelope(manifest: &Manifest, rows: Json, errors: Vec<Json>) -> Json {
    json!({ "manifest": manifest.json(), "rows": rows, "errors": errors })
}

/// gnuplot script drawing `y` against `x` from the CSV at `data`.
pub fn gnuplot_script(report: &Report, data: &str) -> Option<String> {
    let (x, y) = report.plot?;
    let col = |name| report.columns.iter().position(|c| *c == name).map(|i| i + 1);
    let (xi, yi) = (col(x)?, col(y)?);
    Some(format!(
        "set datafile separator ','\nset key autotitle columnhead\nset xlabel '{x}'\nset ylabel '{y}'\nset grid\nplot '{data}' using {xi}:{yi} with linespoints title '{y}'\npause -1\n"
    ))
}
