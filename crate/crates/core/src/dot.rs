//! Graphviz output for Hasse diagrams.

use crate::Poset;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Hasse diagram of `p` with the least elements at the bottom. Output is
/// byte-identical across runs: nodes in carrier order, edges sorted.
pub fn hasse_dot(p: &Poset, name: &str) -> String {
    let mut out = format!(
        "digraph {} {{\n  rankdir=BT;\n  node [shape=plaintext];\n",
        quote(name)
    );
    for i in 0..p.len() {
        out.push_str(&format!("  n{i} [label={}];\n", quote(p.label(i))));
    }
    for (a, b) in p.covers() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}
