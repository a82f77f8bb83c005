//! Graphviz export. The graph is named by its graph6 string and carries no
//! layout attributes.

use std::fmt::Write;

use crate::graph::Graph;
use crate::{graph6, Result};

pub fn to_dot(g: &Graph) -> Result<String> {
    let name = graph6::encode(g)?.replace('\\', "\\\\");
    let mut out = format!("graph \"{name}\" {{\n");
    for v in g.vertices() {
        writeln!(out, "  {v};").expect("writing to a String");
    }
    for (i, j) in g.edges() {
        writeln!(out, "  {i} -- {j};").expect("writing to a String");
    }
    out.push_str("}\n");
    Ok(out)
}
