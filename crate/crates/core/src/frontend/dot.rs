use std::fmt::Write as _;

use crate::puiseux::Exponent;
use crate::treebuild::{ContactTree, VertexId};

use super::json::leaf_name;

fn exponent_label(e: &Exponent) -> String {
    match e.finite() {
        Some(r) if r.is_integer() => format!("x^{r}"),
        Some(r) => format!("x^({r})"),
        None => "inf".into(),
    }
}

/// Graphviz digraph of `tree`. Nodes are numbered in the order they are
/// visited (planar children first); edges into non-real subtrees are dotted.
/// Real leaves are named `<real_prefix>_i`, non-real ones `eta_l`.
pub fn emit_dot(tree: &ContactTree, graph_name: &str, real_prefix: &str) -> String {
    let mut order: Vec<VertexId> = Vec::with_capacity(tree.len());
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        order.push(v);
        let kids: Vec<VertexId> = tree.all_children(v).collect();
        stack.extend(kids.into_iter().rev());
    }
    let mut id = vec![0; tree.len()];
    for (k, &v) in order.iter().enumerate() {
        id[v] = k;
    }

    let mut out = String::new();
    writeln!(out, "digraph {graph_name} {{").unwrap();
    for &v in &order {
        let label = if v == tree.root() {
            "O".to_string()
        } else if let Some(l) = tree.leaf_label(v) {
            leaf_name(l, real_prefix)
        } else {
            exponent_label(tree.exponent(v))
        };
        let style = if tree.is_real(v) { "" } else { ", style=dotted" };
        writeln!(out, "  n{} [label=\"{label}\"{style}];", id[v]).unwrap();
    }
    for &v in &order {
        for c in tree.all_children(v) {
            let style = if tree.is_real(c) { "" } else { " [style=dotted]" };
            writeln!(out, "  n{} -> n{}{style};", id[v], id[c]).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
