use std::collections::BTreeMap;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Dart, MultiGraph, Node, OnePlaneDrawing};
use crate::error::{Error, Result};

/// Rotation entries keyed by node, serialized as a JSON object whose keys
/// are `"v:<id>"` and `"x:<k>"`, vertices first, each group in id order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RotationJson(pub BTreeMap<Node, Vec<Dart>>);

impl Serialize for RotationJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (node, darts) in &self.0 {
            map.serialize_entry(&node.key(), darts)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for RotationJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RotationJson;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from node keys to dart lists")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = a.next_entry::<String, Vec<Dart>>()? {
                    let node = Node::parse(&k).map_err(serde::de::Error::custom)?;
                    if out.insert(node, v).is_some() {
                        return Err(serde::de::Error::custom(format!("duplicate node key {k}")));
                    }
                }
                Ok(RotationJson(out))
            }
        }
        d.deserialize_map(V)
    }
}

/// The interchange form of a drawing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub crossings: Vec<(usize, usize)>,
    pub rotation: RotationJson,
    pub outer_face: usize,
}

impl DrawingJson {
    pub fn from_drawing(d: &OnePlaneDrawing) -> Self {
        let rotation = (0..d.node_count())
            .map(|i| (d.node_at(i), d.rotations()[i].clone()))
            .collect();
        DrawingJson {
            n: d.vertex_count(),
            edges: d.graph().edges().to_vec(),
            crossings: d.crossings().to_vec(),
            rotation: RotationJson(rotation),
            outer_face: d.outer_face(),
        }
    }

    pub fn build(&self) -> Result<OnePlaneDrawing> {
        let graph = MultiGraph::new(self.n, self.edges.clone())?;
        let count = self.n + self.crossings.len();
        let mut rotation = vec![Vec::new(); count];
        for (&node, darts) in &self.rotation.0 {
            let i = match node {
                Node::Vertex(v) if v < self.n => v,
                Node::Crossing(k) if k < self.crossings.len() => self.n + k,
                _ => {
                    return Err(Error::InvalidRotation(format!(
                        "rotation given for unknown node {}",
                        node.key()
                    )))
                }
            };
            rotation[i] = darts.clone();
        }
        OnePlaneDrawing::new(graph, self.crossings.clone(), rotation, self.outer_face)
    }
}
