//! Canonical JSON reports and DOT exports. All maps are ordered and all
//! lists sorted, so identical inputs produce byte-identical output.

use serde_json::{json, Map, Value};

use crate::core::{Band, TriState, Verdict};
use crate::schemes::BandScheme;
use crate::spectrum::SpecSpace;
use crate::visualize::{FiniteTopSpace, Matroid};

pub fn tri(v: TriState) -> Value {
    match v {
        TriState::True => json!(true),
        TriState::False => json!(false),
        TriState::Unknown => json!("unknown"),
    }
}

pub fn verdict(v: Verdict) -> Value {
    match v {
        Verdict::In => json!("in"),
        Verdict::Out => json!("out"),
        Verdict::Unknown => json!("unknown"),
    }
}

/// Top-level report envelope: the command, its subject, the bound in
/// force, and the result object.
pub fn envelope(command: &str, subject: &str, bound: u32, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("bound".into(), json!(bound));
    m.insert("command".into(), json!(command));
    m.insert("result".into(), result);
    m.insert("subject".into(), json!(subject));
    Value::Object(m)
}

/// True when the result is dominated by unknown verdicts (exit code 2).
pub fn has_unknown(v: &Value) -> bool {
    match v {
        Value::String(s) => s == "unknown",
        Value::Array(a) => a.iter().any(has_unknown),
        Value::Object(o) => o.values().any(has_unknown),
        _ => false,
    }
}

pub fn spec_json(space: &SpecSpace) -> Value {
    let points: Vec<Value> = space.points.iter().map(|p| json!(p.describe())).collect();
    let opens: Vec<Value> = space
        .distinct_basic_opens()
        .into_iter()
        .map(|(h, mask)| {
            json!({
                "points": mask_indices(&mask),
                "witness": h,
            })
        })
        .collect();
    json!({
        "closed_points": space.closed_points(),
        "generic_points": space.generic_points(),
        "opens": opens,
        "point_count": space.len(),
        "points": points,
    })
}

pub fn scheme_points_json(scheme: &BandScheme) -> Value {
    let points: Vec<Value> = scheme.points.iter().map(|p| json!(p.label)).collect();
    json!({
        "charts": scheme.charts.len(),
        "closed_points": scheme.closed_points(),
        "generic_points": scheme.generic_points(),
        "point_count": scheme.points.len(),
        "points": points,
    })
}

pub fn topology_json(space: &FiniteTopSpace) -> Value {
    let mut basis: Vec<Vec<usize>> = space
        .basis()
        .iter()
        .map(|mask| mask_indices(mask))
        .collect();
    basis.sort();
    basis.dedup();
    json!({
        "basic_opens": basis,
        "closed_points": space.closed_points(),
        "labels": space.labels,
        "point_count": space.len(),
    })
}

pub fn matroid_json(m: &Matroid) -> Value {
    let bases: Vec<String> = m
        .bases
        .iter()
        .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    json!({
        "bases": bases,
        "ground": m.ground,
        "rank": m.rank,
    })
}

fn mask_indices(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

/// DOT digraph of the Hasse diagram of a specialization order. Edges
/// point from a point to its immediate specializations.
pub fn dot_hasse(labels: &[String], space: &FiniteTopSpace) -> String {
    let mut out = String::from("digraph specialization {\n");
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, l.replace('"', "'")));
    }
    for (p, q) in space.hasse_edges() {
        out.push_str(&format!("  n{p} -> n{q};\n"));
    }
    out.push_str("}\n");
    out
}

/// DOT digraph for a spectrum's specialization order.
pub fn dot_spec(space: &SpecSpace) -> String {
    let labels = space.point_names();
    let mut out = String::from("digraph specialization {\n");
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, l.replace('"', "'")));
    }
    // covering edges of the inclusion order
    let n = space.len();
    let le = |p: usize, q: usize| space.specialization[p][q];
    for p in 0..n {
        for q in 0..n {
            if p == q || !le(p, q) {
                continue;
            }
            let covering = !(0..n).any(|r| r != p && r != q && le(p, r) && le(r, q));
            if covering {
                out.push_str(&format!("  n{p} -> n{q};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn band_summary(b: &Band) -> Value {
    json!({
        "carrier": if b.is_table() { "table" } else if b.is_presented() { "presented" } else { "tropical" },
        "elements": b.elements().map(|e| json!(e.len())).unwrap_or(json!("infinite")),
        "name": b.name(),
        "variables": b.var_names(),
    })
}
