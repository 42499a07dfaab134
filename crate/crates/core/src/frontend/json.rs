use serde_json::{json, Map, Value};

use crate::exact::{FieldElement, Rational};
use crate::morse::{Injectivity, InjectivityWitness, MorsificationReport, Sign};
use crate::oracle::OracleResult;
use crate::puiseux::PuiseuxPoly;
use crate::treebuild::{ContactTree, LeafLabel};

fn q(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn coeff(c: &FieldElement) -> Value {
    if c.is_rational() {
        q(&c.coeffs()[0])
    } else {
        Value::Array(c.coeffs().iter().map(q).collect())
    }
}

fn series(p: &PuiseuxPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!({ "exp": q(e), "coeff": coeff(c) })).collect())
}

pub(crate) fn leaf_name(label: LeafLabel, real_prefix: &str) -> String {
    match label {
        LeafLabel::Real(i) => format!("{real_prefix}_{}", i + 1),
        LeafLabel::Complex(l) => format!("eta_{}", l + 1),
    }
}

fn tree(t: &ContactTree, real_prefix: &str) -> Value {
    let mut parent = Vec::new();
    let mut exponent = Vec::new();
    let mut children = Vec::new();
    let mut complex_children = Vec::new();
    let mut leaf = Vec::new();
    let mut real = Vec::new();
    let mut multiplicity = Vec::new();
    for (_, v) in t.vertices() {
        parent.push(v.parent.map_or(Value::Null, |p| json!(p)));
        exponent.push(Value::String(v.exponent.to_string()));
        children.push(json!(v.children));
        complex_children.push(json!(v.complex_children));
        leaf.push(v.leaf.map_or(Value::Null, |l| json!(leaf_name(l, real_prefix))));
        real.push(json!(v.real));
        multiplicity.push(json!(v.multiplicity));
    }
    json!({
        "parent": parent,
        "exponent": exponent,
        "children": children,
        "complex_children": complex_children,
        "leaf": leaf,
        "real": real,
        "multiplicity": multiplicity,
    })
}

fn witness(w: &InjectivityWitness) -> Value {
    json!({
        "vertex": w.vertex,
        "vertex_E": q(&w.exponent),
        "colliding_entries": [w.entries.0, w.entries.1],
        "zero_sum_range": [w.zero_sum_range.0, w.zero_sum_range.1],
        "zero_sum_areas": w.zero_sum_areas,
    })
}

fn oracle(o: &OracleResult) -> Value {
    json!({
        "snake": o.snake.ranks(),
        "x0": q(&o.x0_used),
        "stabilization_count": o.stabilization_count,
        "samples_taken": o.samples_taken,
        "critical_points": o.critical.iter().map(|(p, v)| json!({ "y": q(p), "value": q(v) })).collect::<Vec<_>>(),
    })
}

/// JSON document for a report. Indices of roots, areas and table edges
/// are 1-based; vertex ids index the tree arrays.
pub fn report_json(r: &MorsificationReport, oracle_result: Option<&OracleResult>) -> Value {
    let mut doc = Map::new();
    let field = r.roots.field();
    doc.insert(
        "field".into(),
        json!({
            "minpoly": field.minimal_polynomial().iter().map(q).collect::<Vec<_>>(),
            "conj": field.conjugation_image().iter().map(q).collect::<Vec<_>>(),
        }),
    );
    doc.insert("unit".into(), Value::String(r.unit.to_string()));
    doc.insert(
        "roots".into(),
        json!({
            "real": r.roots.real_roots().iter().map(series).collect::<Vec<_>>(),
            "complex": r.roots.complex_roots().iter()
                .map(|c| json!({ "terms": series(&c.series), "mult": c.multiplicity }))
                .collect::<Vec<_>>(),
        }),
    );

    let mut trees = Map::new();
    trees.insert("complex".into(), tree(r.complex_tree(), "xi"));
    trees.insert("real".into(), tree(r.real_tree(), "xi"));
    if let Some(t) = &r.integrated {
        trees.insert("integrated".into(), tree(t, "xi"));
    }
    if let Some(t) = &r.discriminant {
        trees.insert("discriminant".into(), tree(t, "delta"));
    }
    doc.insert("trees".into(), Value::Object(trees));

    doc.insert(
        "areas".into(),
        Value::Array(
            r.areas
                .iter()
                .map(|a| {
                    json!({
                        "r": a.index,
                        "series": a.series.to_string(),
                        "sigma": q(&a.sigma),
                        "s": q(&a.s),
                        "wedge_vertex": a.wedge_vertex,
                    })
                })
                .collect(),
        ),
    );
    doc.insert("sigma".into(), Value::Array(r.areas.iter().map(|a| q(&a.sigma)).collect()));
    doc.insert("s".into(), Value::Array(r.areas.iter().map(|a| q(&a.s)).collect()));
    doc.insert(
        "sigma_by_vertex".into(),
        Value::Object(r.sigma.iter().map(|(v, s)| (v.to_string(), q(s))).collect()),
    );
    doc.insert(
        "tables".into(),
        Value::Array(
            r.tables
                .iter()
                .map(|t| {
                    json!({
                        "vertex": t.vertex,
                        "exponent": q(&t.exponent),
                        "area_indices": t.area_indices,
                        "partial_sums": t.partial_sums.iter().map(q).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        ),
    );

    let inj = match &r.injectivity {
        Injectivity::Pass => json!({ "pass": true }),
        Injectivity::Fail(ws) => {
            let mut m = match witness(&ws[0]) {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            m.insert("pass".into(), json!(false));
            m.insert("failures".into(), Value::Array(ws.iter().map(witness).collect()));
            Value::Object(m)
        }
    };
    doc.insert("injectivity".into(), inj);

    let mut signs = Vec::new();
    let mut indeterminate = Vec::new();
    for p in &r.signs {
        match p.sign {
            Some(s) => signs.push(json!({
                "i": p.i + 1,
                "j": p.j + 1,
                "sign": if s == Sign::Positive { "+" } else { "-" },
            })),
            None => indeterminate.push(json!([p.i + 1, p.j + 1])),
        }
    }
    doc.insert("signs".into(), Value::Array(signs));
    doc.insert("indeterminate_pairs".into(), Value::Array(indeterminate));
    doc.insert(
        "critical_values".into(),
        Value::Array(r.critical_values.iter().map(|d| Value::String(d.to_string())).collect()),
    );
    if let Some(s) = &r.snake {
        doc.insert("snake".into(), json!(s.ranks()));
    }
    if let Some(tb) = &r.theorem_b {
        doc.insert("theorem_b".into(), json!(tb.isomorphic));
    }
    if let Some(o) = oracle_result {
        let mut v = oracle(o);
        if let (Some(s), Value::Object(m)) = (&r.snake, &mut v) {
            m.insert("agrees".into(), json!(*s == o.snake));
        }
        doc.insert("oracle".into(), v);
    }
    Value::Object(doc)
}

/// Pretty-printed, newline-terminated report.
pub fn emit_report(r: &MorsificationReport, oracle_result: Option<&OracleResult>) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(r, oracle_result)).expect("serializable");
    s.push('\n');
    s
}
