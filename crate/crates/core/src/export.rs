//! One-way exports of a planarized drawing for external renderers.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::graph_core::{Node, OnePlaneDrawing, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Dot,
    Graphml,
}

/// Segments of the planarization as `(node, node, edge id)`.
fn segments(dr: &OnePlaneDrawing) -> Vec<(Node, Node, usize)> {
    let mut out = Vec::new();
    for (e, &(u, v)) in dr.graph().edges().iter().enumerate() {
        match dr.crossing_of(e) {
            Some(k) => {
                out.push((Node::Vertex(u), Node::Crossing(k), e));
                out.push((Node::Crossing(k), Node::Vertex(v), e));
            }
            None => out.push((Node::Vertex(u), Node::Vertex(v), e)),
        }
    }
    out
}

fn name(n: Node) -> String {
    match n {
        Node::Vertex(v) => format!("v{v}"),
        Node::Crossing(k) => format!("x{k}"),
    }
}

pub fn to_dot(dr: &OnePlaneDrawing, set: &[VertexId]) -> String {
    let set: BTreeSet<VertexId> = set.iter().copied().collect();
    let mut s = String::from("graph G {\n");
    for v in 0..dr.vertex_count() {
        let fill = if set.contains(&v) { "white" } else { "black" };
        let _ = writeln!(
            s,
            "  v{v} [shape=circle, style=filled, fillcolor={fill}, in_set={}];",
            set.contains(&v)
        );
    }
    for k in 0..dr.crossings().len() {
        let _ = writeln!(s, "  x{k} [shape=square, label=\"\", width=0.1];");
    }
    for (a, b, e) in segments(dr) {
        let _ = writeln!(s, "  {} -- {} [edge={e}];", name(a), name(b));
    }
    s.push_str("}\n");
    s
}

pub fn to_graphml(dr: &OnePlaneDrawing, set: &[VertexId]) -> String {
    let set: BTreeSet<VertexId> = set.iter().copied().collect();
    let mut s = String::from(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" ",
        "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" ",
        "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns ",
        "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n",
        "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n",
        "  <key id=\"shape\" for=\"node\" attr.name=\"shape\" attr.type=\"string\"/>\n",
        "  <key id=\"in_set\" for=\"node\" attr.name=\"in_set\" attr.type=\"boolean\"/>\n",
        "  <key id=\"edge\" for=\"edge\" attr.name=\"edge\" attr.type=\"int\"/>\n",
        "  <graph id=\"G\" edgedefault=\"undirected\">\n",
    ));
    for v in 0..dr.vertex_count() {
        let _ = writeln!(
            s,
            "    <node id=\"v{v}\"><data key=\"kind\">vertex</data><data key=\"shape\">circle</data><data key=\"in_set\">{}</data></node>",
            set.contains(&v)
        );
    }
    for k in 0..dr.crossings().len() {
        let _ = writeln!(
            s,
            "    <node id=\"x{k}\"><data key=\"kind\">crossing</data><data key=\"shape\">square</data><data key=\"in_set\">false</data></node>"
        );
    }
    for (i, (a, b, e)) in segments(dr).into_iter().enumerate() {
        let _ = writeln!(
            s,
            "    <edge id=\"s{i}\" source=\"{}\" target=\"{}\"><data key=\"edge\">{e}</data></edge>",
            name(a),
            name(b)
        );
    }
    s.push_str("  </graph>\n</graphml>\n");
    s
}

pub fn export(dr: &OnePlaneDrawing, set: &[VertexId], format: Format) -> String {
    match format {
        Format::Dot => to_dot(dr, set),
        Format::Graphml => to_graphml(dr, set),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::plain::{h3_certificate, h3_drawing};

    #[test]
    fn h3_dot() {
        let dot = to_dot(&h3_drawing(), &h3_certificate().set);
        assert_eq!(dot.matches("shape=square").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 6 + 2 * 2);
        assert_eq!(dot.matches("fillcolor=white").count(), 2);
    }

    #[test]
    fn h3_graphml() {
        let g = to_graphml(&h3_drawing(), &h3_certificate().set);
        assert_eq!(g.matches("<node ").count(), 6);
        assert_eq!(g.matches("<edge ").count(), 10);
        assert!(g.ends_with("</graphml>\n"));
    }
}
