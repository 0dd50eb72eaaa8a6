use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

/// A cell of a result table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// JSON number, or a string for ±inf/NaN which JSON cannot carry.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or_else(|| Value::String(v.to_string()), Value::Number)
}

/// Shortest round-trip text; exponent form outside [1e-4, 1e16).
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) => num(*v),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// How to plot a table with gnuplot.
#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub x: usize,
    pub y: Vec<usize>,
    pub logx: bool,
    pub logy: bool,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Results that do not fit the table (JSON only).
    pub extra: Map<String, Value>,
    pub equations: Vec<&'static str>,
    pub plot: Option<PlotSpec>,
    /// Non-fatal notes, written to stderr.
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            inputs: Map::new(),
            columns,
            rows: Vec::new(),
            extra: Map::new(),
            equations: Vec::new(),
            plot: None,
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn input_num(&mut self, key: &str, v: f64) -> &mut Self {
        self.inputs.insert(key.to_string(), num(v));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::to_csv).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Meta<'a> {
            version: &'a str,
            command: &'a str,
            equations: &'a [&'static str],
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            inputs: &'a Map<String, Value>,
            results: Map<String, Value>,
            meta: Meta<'a>,
        }
        let mut results = Map::new();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), v.to_json()))
                        .collect(),
                )
            })
            .collect();
        results.insert("rows".into(), Value::Array(rows));
        for (k, v) in &self.extra {
            results.insert(k.clone(), v.clone());
        }
        let doc = Doc {
            inputs: &self.inputs,
            results,
            meta: Meta {
                version: env!("CARGO_PKG_VERSION"),
                command: self.command,
                equations: &self.equations,
            },
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    /// Gnuplot script plotting the CSV at `data` (path as written in the script).
    pub fn gnuplot(&self, data: &Path) -> Option<String> {
        let spec = self.plot.as_ref()?;
        let mut s = String::new();
        let _ = writeln!(s, "set datafile separator ','");
        let _ = writeln!(s, "set key autotitle columnhead");
        let _ = writeln!(s, "set xlabel '{}'", self.columns[spec.x]);
        if spec.logx {
            let _ = writeln!(s, "set logscale x");
        }
        if spec.logy {
            let _ = writeln!(s, "set logscale y");
        }
        let file = data
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        let parts: Vec<String> = spec
            .y
            .iter()
            .map(|&y| format!("'{file}' using {}:{} with lines", spec.x + 1, y + 1))
            .collect();
        let _ = writeln!(s, "plot {}", parts.join(", \\\n     "));
        Some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", vec!["x", "y", "tag"]);
        r.input_num("a", 0.1);
        r.input_num("xi", f64::NEG_INFINITY);
        r.row(vec![1.0.into(), Cell::Empty, "p,q".into()]);
        r.row(vec![
            0.30000000000000004.into(),
            (-2i64).into(),
            "ok".into(),
        ]);
        r.equations.push("demo-formula");
        r
    }

    #[test]
    fn csv_layout() {
        let s = sample().to_csv();
        assert_eq!(s, "x,y,tag\n1,,\"p,q\"\n0.30000000000000004,-2,ok\n");
        assert_eq!(fmt_num(3.5e-9), "3.5e-9");
        assert_eq!(fmt_num(-2.8e6), "-2800000");
        assert_eq!(fmt_num(1e20), "1e20");
    }

    #[test]
    fn json_round_trips_numbers() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["inputs"]["a"].as_f64(), Some(0.1));
        assert_eq!(v["inputs"]["xi"], "-inf");
        assert_eq!(
            v["results"]["rows"][1]["x"].as_f64(),
            Some(0.30000000000000004)
        );
        assert_eq!(v["meta"]["equations"][0], "demo-formula");
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["inputs", "results", "meta"]);
    }

    #[test]
    fn gnuplot_script() {
        let mut r = sample();
        assert!(r.gnuplot(Path::new("out.csv")).is_none());
        r.plot = Some(PlotSpec {
            x: 0,
            y: vec![1],
            logx: true,
            logy: false,
        });
        let g = r.gnuplot(Path::new("/tmp/run/out.csv")).unwrap();
        assert!(g.contains("'out.csv' using 1:2"));
        assert!(g.contains("set logscale x"));
    }
}
