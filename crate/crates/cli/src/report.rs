//! Result documents: stable JSON (sorted keys, 12 significant digits) and
//! CSV plot data.

use clap::ValueEnum;
use serde_json::{Map as JsonMap, Value};

use roughlim::analysis::{
    CheckOutcome, CheckResult, ClusterSet, EmptyReason, RoughLimitSet,
};
use roughlim::geometry::{Interval, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Round to 12 significant digits so serialized numbers are stable.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

pub fn num_value(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Ordered (sorted-key) JSON object under construction.
pub struct Map(JsonMap<String, Value>);

impl Map {
    pub fn new() -> Self {
        Map(JsonMap::new())
    }

    pub fn set_num(&mut self, key: &str, value: f64) {
        self.0.insert(key.to_string(), num_value(sig12(value)));
    }

    pub fn set_bool(&mut self, key: &str, value: bool) {
        self.0.insert(key.to_string(), Value::Bool(value));
    }

    pub fn set_str(&mut self, key: &str, value: &str) {
        self.0
            .insert(key.to_string(), Value::String(value.to_string()));
    }

    pub fn set_val(&mut self, key: &str, value: Value) {
        self.0.insert(key.to_string(), value);
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }
}

pub type Inputs = Map;

pub struct Document {
    pub command: String,
    pub inputs: Inputs,
    pub results: Value,
}

impl Document {
    pub fn emit(self, format: OutputFormat) {
        match format {
            OutputFormat::Json => {
                let mut top = JsonMap::new();
                top.insert("command".into(), Value::String(self.command));
                top.insert("inputs".into(), self.inputs.into_value());
                top.insert("results".into(), self.results);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&Value::Object(top)).expect("serializable")
                );
            }
            OutputFormat::Csv => print!("{}", self.to_csv()),
        }
    }

    fn to_csv(&self) -> String {
        match self.command.as_str() {
            "limitset" => {
                let rows = self.results["sets"].as_array().cloned().unwrap_or_default();
                table_csv(&rows)
            }
            "check" => {
                let rows = self.results["checks"]
                    .as_array()
                    .cloned()
                    .unwrap_or_default();
                table_csv(&rows)
            }
            _ => {
                let mut out = String::from("key,value\n");
                if let Value::Object(map) = &self.results {
                    for (k, v) in map {
                        out.push_str(&format!("{},{}\n", csv_escape(k), csv_escape(&flat(v))));
                    }
                }
                out
            }
        }
    }
}

/// Render an array of homogeneous-ish objects as CSV with the sorted union
/// of keys as header.
fn table_csv(rows: &[Value]) -> String {
    let mut keys: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(map) = row {
            for k in map.keys() {
                if !keys.contains(k) {
                    keys.push(k.clone());
                }
            }
        }
    }
    keys.sort();
    let mut out = keys.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = keys
            .iter()
            .map(|k| match row.get(k) {
                Some(v) => csv_escape(&flat(v)),
                None => String::new(),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn flat(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => serde_json::to_string(other).expect("serializable"),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn point_json(p: &Point) -> Value {
    if p.dim() == 1 {
        num_value(sig12(p.coords()[0]))
    } else {
        Value::Array(p.coords().iter().map(|&c| num_value(sig12(c))).collect())
    }
}

pub fn clusters_json(clusters: &ClusterSet) -> Value {
    Value::Array(
        clusters
            .points
            .iter()
            .map(|c| {
                let mut m = JsonMap::new();
                m.insert("value".into(), point_json(&c.point));
                let density = match c.support_density.exact() {
                    Some(r) => format!("{}/{}", r.numer(), r.denom()),
                    None => "undefined".to_string(),
                };
                m.insert("density".into(), Value::String(density));
                m.insert("approximate".into(), Value::Bool(c.approximate));
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn interval_into(map: &mut Map, set: &RoughLimitSet) {
    match set {
        RoughLimitSet::Interval {
            interval,
            empty_reason,
        } => match interval {
            Interval::Empty => {
                map.set_str("status", "empty");
                map.set_num("diameter", 0.0);
                match empty_reason {
                    Some(EmptyReason::NotIdealBounded) => {
                        map.set_str("empty_reason", "not-i-bounded")
                    }
                    Some(EmptyReason::RoughnessTooSmall { min_degree }) => {
                        map.set_str("empty_reason", "r-below-min-degree");
                        map.set_num("min_degree", *min_degree);
                    }
                    None => {}
                }
            }
            Interval::Closed { lo, hi } => {
                map.set_str("status", "interval");
                map.set_num("lo", *lo);
                map.set_num("hi", *hi);
                map.set_num("diameter", hi - lo);
            }
        },
        RoughLimitSet::Lattice { .. } => lattice_into(map, set),
    }
}

pub fn lattice_into(map: &mut Map, set: &RoughLimitSet) {
    if let RoughLimitSet::Lattice {
        balls,
        points,
        step,
    } = set
    {
        map.set_str("status", "lattice");
        map.set_num("step", *step);
        map.set_val(
            "balls",
            Value::Array(
                balls
                    .iter()
                    .map(|b| {
                        let mut m = JsonMap::new();
                        m.insert(
                            "center".into(),
                            Value::Array(
                                b.center
                                    .coords()
                                    .iter()
                                    .map(|&c| num_value(sig12(c)))
                                    .collect(),
                            ),
                        );
                        m.insert("radius".into(), num_value(sig12(b.radius)));
                        Value::Object(m)
                    })
                    .collect(),
            ),
        );
        map.set_val(
            "points",
            Value::Array(
                points
                    .iter()
                    .map(|p| {
                        Value::Array(
                            p.coords().iter().map(|&c| num_value(sig12(c))).collect(),
                        )
                    })
                    .collect(),
            ),
        );
        map.set_num("point_count", points.len() as f64);
    }
}

pub fn checks_json(checks: &[CheckResult]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                let mut m = JsonMap::new();
                m.insert("theorem".into(), Value::String(c.theorem.to_string()));
                let outcome = match c.outcome {
                    CheckOutcome::Pass => "pass",
                    CheckOutcome::Fail => "fail",
                    CheckOutcome::Vacuous => "vacuous",
                    CheckOutcome::HypothesisNotMet => "hypothesis-not-met",
                };
                m.insert("outcome".into(), Value::String(outcome.into()));
                m.insert("detail".into(), Value::String(c.detail.clone()));
                Value::Object(m)
            })
            .collect(),
    )
}
