//! JSON wire format: realizations, graphs, ideals, and momenta.  All
//! output goes through `serde_json::Value` with sorted object keys, so
//! serialization is deterministic and golden-file friendly.

use serde_json::{json, Map, Value};

use crate::config::Realization;
use crate::error::{Error, Result};
use crate::families::Graph;
use crate::field::{FieldSpec, Scalar};
use crate::groebner::Ideal;
use crate::linalg::Matrix;
use crate::poly::{MultiPoly, VarSet};

pub fn field_to_json(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Q => json!("Q"),
        FieldSpec::Fp(p) => json!({ "Fp": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    match v {
        Value::String(s) => FieldSpec::parse(s),
        Value::Object(m) => {
            let p = m
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("bad field {v}")))?;
            let p = u32::try_from(p).map_err(|_| Error::BadModulus(p.to_string()))?;
            FieldSpec::Fp(p).validate()
        }
        _ => Err(Error::Parse(format!("bad field {v}"))),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    if let Some(q) = s.as_rational() {
        use num_traits::ToPrimitive;
        if q.is_integer() {
            if let Some(n) = q.numer().to_i64() {
                return json!(n);
            }
        }
        return json!(s.to_string());
    }
    json!(s.as_residue().expect("scalar is rational or residue"))
}

pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("non-integer entry {n}")))?;
            Ok(field.from_i64(i))
        }
        Value::String(s) => scalar_from_str(field, s),
        _ => Err(Error::Parse(format!("bad scalar {v}"))),
    }
}

pub fn scalar_from_str(field: FieldSpec, s: &str) -> Result<Scalar> {
    use num_bigint::BigInt;
    let parse_int = |part: &str| -> Result<BigInt> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad number {part:?}")))
    };
    match s.split_once('/') {
        None => Ok(field.from_bigint(&parse_int(s)?)),
        Some((a, b)) => {
            let num = field.from_bigint(&parse_int(a)?);
            let den = field.from_bigint(&parse_int(b)?);
            num.div(&den)
        }
    }
}

pub fn realization_to_json(w: &Realization) -> Value {
    let matrix: Vec<Value> = (0..w.rank())
        .map(|i| Value::Array((0..w.size()).map(|j| scalar_to_json(w.matrix().get(i, j))).collect()))
        .collect();
    json!({
        "field": field_to_json(w.field()),
        "ground_set": w.vars().labels(),
        "matrix": matrix,
    })
}

/// Parses a realization.  `field_override` wins over the file's own field;
/// one of the two must be present.
pub fn realization_from_json(v: &Value, field_override: Option<FieldSpec>) -> Result<Realization> {
    let obj = as_object(v)?;
    let field = match field_override {
        Some(f) => f,
        None => field_from_json(
            obj.get("field")
                .ok_or_else(|| Error::Parse("no field given and none in the file".into()))?,
        )?,
    };
    let matrix_rows = obj
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("realization needs a \"matrix\" array".into()))?;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(matrix_rows.len());
    for row in matrix_rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?;
        rows.push(row.iter().map(|e| scalar_from_json(field, e)).collect::<Result<_>>()?);
    }
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    let ncols = rows[0].len();
    let labels: Vec<String> = match obj.get("ground_set") {
        Some(g) => string_list(g, "ground_set")?,
        None => VarSet::numbered("x", ncols).labels().to_vec(),
    };
    Realization::new(Matrix::from_rows(field, rows)?, labels)
}

pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|(l, t, h)| json!([l, g.vertices()[*t], g.vertices()[*h]]))
        .collect();
    json!({ "vertices": g.vertices(), "edges": edges })
}

pub fn graph_from_json(v: &Value) -> Result<Graph> {
    let obj = as_object(v)?;
    let vertices = string_list(
        obj.get("vertices")
            .ok_or_else(|| Error::Parse("graph needs a \"vertices\" array".into()))?,
        "vertices",
    )?;
    let edge_values = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("graph needs an \"edges\" array".into()))?;
    let index_of = |name: &str| -> Result<usize> {
        vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    };
    let mut edges = Vec::with_capacity(edge_values.len());
    for e in edge_values {
        let triple = string_list(e, "edge")?;
        if triple.len() != 3 {
            return Err(Error::Parse(format!("edge {e} is not [label, tail, head]")));
        }
        edges.push((triple[0].clone(), index_of(&triple[1])?, index_of(&triple[2])?));
    }
    Graph::new(vertices, edges)
}

/// Momenta come as an object {vertex: scalar}; vertices not mentioned get
/// zero momentum.
pub fn momenta_from_json(field: FieldSpec, g: &Graph, v: &Value) -> Result<Vec<Scalar>> {
    let obj = as_object(v)?;
    for name in obj.keys() {
        if !g.vertices().contains(name) {
            return Err(Error::UnknownLabel(name.clone()));
        }
    }
    g.vertices()
        .iter()
        .map(|name| match obj.get(name) {
            Some(s) => scalar_from_json(field, s),
            None => Ok(field.zero()),
        })
        .collect()
}

pub fn ideal_to_json(ideal: &Ideal) -> Value {
    let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
    json!({
        "field": field_to_json(ideal.field()),
        "generators": gens,
        "variables": ideal.vars().labels(),
    })
}

pub fn ideal_from_json(v: &Value, field_override: Option<FieldSpec>) -> Result<Ideal> {
    let obj = as_object(v)?;
    let field = match field_override {
        Some(f) => f,
        None => field_from_json(
            obj.get("field")
                .ok_or_else(|| Error::Parse("no field given and none in the file".into()))?,
        )?,
    };
    let vars = VarSet::new(string_list(
        obj.get("variables")
            .ok_or_else(|| Error::Parse("ideal needs a \"variables\" array".into()))?,
        "variables",
    )?)?;
    let gen_strings = string_list(
        obj.get("generators")
            .ok_or_else(|| Error::Parse("ideal needs a \"generators\" array".into()))?,
        "generators",
    )?;
    let gens = gen_strings
        .iter()
        .map(|s| MultiPoly::parse(field, &vars, s))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(field, &vars, gens)
}

/// What a JSON input file contains, detected by its object keys.
pub enum InputObject {
    Realization(Value),
    Graph(Value),
    Ideal(Value),
}

pub fn detect(v: Value) -> Result<InputObject> {
    let obj = as_object(&v)?;
    if obj.contains_key("matrix") {
        Ok(InputObject::Realization(v))
    } else if obj.contains_key("edges") {
        Ok(InputObject::Graph(v))
    } else if obj.contains_key("generators") {
        Ok(InputObject::Ideal(v))
    } else {
        Err(Error::Parse(
            "cannot tell what this file is: expected a \"matrix\", \"edges\", or \"generators\" key"
                .into(),
        ))
    }
}

fn as_object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("expected a JSON object, got {v}")))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?;
    arr.iter()
        .map(|e| {
            e.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("{what} entries must be strings")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn realization_round_trip() {
        let prism = catalog::build("prism").unwrap();
        let v = realization_to_json(&prism);
        let back = realization_from_json(&v, None).unwrap();
        assert_eq!(prism, back);
        // Field override reinterprets the entries.
        let over = realization_from_json(&v, Some(FieldSpec::Fp(7))).unwrap();
        assert_eq!(over.field(), FieldSpec::Fp(7));
        assert_eq!(over.matroid(), prism.matroid());
    }

    #[test]
    fn rational_entries_round_trip() {
        let v = json!({
            "field": "Q",
            "ground_set": ["a", "b"],
            "matrix": [["1/2", "-3"]],
        });
        let w = realization_from_json(&v, None).unwrap();
        assert_eq!(*w.matrix().get(0, 0), FieldSpec::Q.fraction(1, 2).unwrap());
        let back = realization_to_json(&w);
        assert_eq!(back["matrix"][0][0], json!("1/2"));
        assert_eq!(back["matrix"][0][1], json!(-3));
    }

    #[test]
    fn graph_round_trip_and_momenta() {
        let g = crate::families::theta_graph();
        let v = graph_to_json(&g);
        assert_eq!(graph_from_json(&v).unwrap(), g);
        let q = FieldSpec::Q;
        let p = momenta_from_json(q, &g, &json!({ "v1": 1, "v2": "-1" })).unwrap();
        assert_eq!(p[0], q.one());
        assert_eq!(p[1], q.from_i64(-1));
        assert!(p[2].is_zero());
        assert!(momenta_from_json(q, &g, &json!({ "nope": 1 })).is_err());
    }

    #[test]
    fn ideal_round_trip() {
        let q = FieldSpec::Q;
        let vars = VarSet::numbered("x", 3);
        let f = MultiPoly::parse(q, &vars, "x1*x2 - 2*x3^2").unwrap();
        let ideal = Ideal::new(q, &vars, vec![f]).unwrap();
        let v = ideal_to_json(&ideal);
        let back = ideal_from_json(&v, None).unwrap();
        assert!(ideal.ideal_equal(&back, &crate::groebner::GbOptions::default()).unwrap());
    }

    #[test]
    fn detection_by_shape() {
        assert!(matches!(
            detect(json!({"matrix": []})).unwrap(),
            InputObject::Realization(_)
        ));
        assert!(matches!(
            detect(json!({"vertices": [], "edges": []})).unwrap(),
            InputObject::Graph(_)
        ));
        assert!(matches!(
            detect(json!({"generators": []})).unwrap(),
            InputObject::Ideal(_)
        ));
        assert!(detect(json!({"something": 1})).is_err());
        assert!(detect(json!(17)).is_err());
    }

    #[test]
    fn fields_serialize_both_ways() {
        assert_eq!(field_to_json(FieldSpec::Q), json!("Q"));
        assert_eq!(field_to_json(FieldSpec::Fp(101)), json!({"Fp": 101}));
        assert_eq!(field_from_json(&json!("Q")).unwrap(), FieldSpec::Q);
        assert_eq!(field_from_json(&json!({"Fp": 5})).unwrap(), FieldSpec::Fp(5));
        assert_eq!(field_from_json(&json!("Fp:13")).unwrap(), FieldSpec::Fp(13));
        assert!(field_from_json(&json!({"Fp": 6})).is_err());
        assert!(field_from_json(&json!(3)).is_err());
    }
}
