use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use ncgeo::calculus::{Calculus, GroupFunction, OneForm, TwoForm};
use ncgeo::group::FiniteGroup;
use ncgeo::linalg::{Cyclotomic, ExactMatrix};
use ncgeo::riemann::{Connection, TensorSquare, TwoFormTensorOne};

pub const SCHEMA: &str = "ncgeo/1";

pub struct Report {
    command: &'static str,
    inputs: Value,
    results: Map<String, Value>,
    certifications: Vec<Value>,
    group_hash: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value) -> Self {
        Report { command, inputs, results: Map::new(), certifications: Vec::new(), group_hash: None }
    }

    pub fn group(&mut self, group: &FiniteGroup) {
        self.group_hash = Some(group_hash(group));
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.certifications.push(json!({ "check": name, "status": if ok { "pass" } else { "fail" } }));
    }

    pub fn into_json(self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "results": Value::Object(self.results),
            "certifications": self.certifications,
            "versions": {
                "engine": env!("CARGO_PKG_VERSION"),
                "group_spec_hash": self.group_hash,
            },
        })
    }
}

/// SHA-256 of the compact JSON group spec.
pub fn group_hash(group: &FiniteGroup) -> String {
    let text = serde_json::to_string(&group.to_spec()).expect("spec serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn cyc(c: &Cyclotomic) -> Value {
    serde_json::to_value(c).expect("cyclotomic serializes")
}

pub fn cyc_list(values: &[Cyclotomic]) -> Value {
    Value::Array(values.iter().map(cyc).collect())
}

pub fn matrix(m: &ExactMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| cyc_list(m.row(i))).collect())
}

pub fn function(group: &FiniteGroup, f: &GroupFunction) -> Value {
    let mut out = Map::new();
    for (g, v) in f.values().iter().enumerate() {
        out.insert(group.name(g).to_string(), cyc(v));
    }
    Value::Object(out)
}

fn labelled(group: &FiniteGroup, entries: impl Iterator<Item = (String, GroupFunction)>) -> Value {
    let mut out = Map::new();
    for (label, f) in entries {
        if !f.is_zero() {
            out.insert(label, function(group, &f));
        }
    }
    Value::Object(out)
}

pub fn one_form(calc: &Calculus, w: &OneForm) -> Value {
    let class = calc.class();
    json!({
        "degree": 1,
        "coeffs": labelled(calc.group(), w.coeffs.iter().enumerate().map(|(a, f)| (format!("e_{}", class.label(a)), f.clone()))),
    })
}

pub fn two_form(calc: &Calculus, w: &TwoForm) -> Value {
    json!({
        "degree": 2,
        "coeffs": labelled(calc.group(), w.coeffs.iter().enumerate().map(|(b, f)| (calc.two_form_label(b), f.clone()))),
    })
}

pub fn tensor_square(calc: &Calculus, t: &TensorSquare) -> Value {
    let class = calc.class();
    let entries = t.coeffs.iter().enumerate().flat_map(|(a, row)| {
        row.iter().enumerate().map(move |(b, f)| (format!("e_{}(x)e_{}", class.label(a), class.label(b)), f.clone()))
    });
    json!({ "coeffs": labelled(calc.group(), entries) })
}

pub fn two_form_tensor_one(calc: &Calculus, t: &TwoFormTensorOne) -> Value {
    let class = calc.class();
    let entries = t.coeffs.iter().enumerate().flat_map(|(beta, row)| {
        row.iter()
            .enumerate()
            .map(move |(c, f)| (format!("{}(x)e_{}", calc.two_form_label(beta), class.label(c)), f.clone()))
    });
    json!({ "coeffs": labelled(calc.group(), entries) })
}

pub fn connection(calc: &Calculus, conn: &Connection) -> Value {
    let class = calc.class();
    let mut comps = Map::new();
    for (a, w) in conn.components.iter().enumerate() {
        let entries = w.coeffs.iter().enumerate().map(|(b, f)| (class.label(b).to_string(), f.clone()));
        comps.insert(class.label(a).to_string(), labelled(calc.group(), entries));
    }
    Value::Object(comps)
}

/// Reads `{"comps": {a: {b: {g: value}}}}`; missing entries are zero.
pub fn parse_connection(calc: &Calculus, value: &Value) -> Result<Connection, String> {
    let class = calc.class();
    let group = calc.group();
    let comps = value.get("comps").and_then(Value::as_object).ok_or("missing \"comps\" object")?;
    let mut conn = Connection::zero(calc);
    for (a_label, row) in comps {
        let a = class.position_of_label(a_label).map_err(|e| e.to_string())?;
        for (b_label, f) in row.as_object().ok_or("component is not an object")? {
            let b = class.position_of_label(b_label).map_err(|e| e.to_string())?;
            for (g_name, v) in f.as_object().ok_or("coefficient is not an object")? {
                let g = group.index_of(g_name).map_err(|e| e.to_string())?;
                let c: Cyclotomic = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
                conn.components[a].coeffs[b].set(g, c);
            }
        }
    }
    Ok(conn)
}
