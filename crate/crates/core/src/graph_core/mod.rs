//! Multigraphs with a fixed 1-planar drawing, stored as the rotation system
//! of the planarization, plus the structural predicates built on top of it.

mod json;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use json::{DrawingJson, RotationJson};

pub type VertexId = usize;
pub type EdgeId = usize;

/// A multigraph without loops. Parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        for (e, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { edge: e, vertex: x });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(e));
            }
        }
        Ok(MultiGraph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn degree_vec(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Sorted, deduplicated neighbour lists.
    pub fn neighbors(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<(VertexId, VertexId)> =
            self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.degree_vec().into_iter().min()
    }

    pub fn degrees(&self, subset: &[VertexId]) -> DegreeProfile {
        let degrees = self.degree_vec();
        let mut histogram = BTreeMap::new();
        for &v in subset {
            *histogram.entry(degrees[v]).or_insert(0) += 1;
        }
        DegreeProfile { degrees, histogram }
    }

    /// The graph after deleting the given vertices; survivors keep their
    /// relative order. Also returns the old-to-new id map.
    pub fn remove_vertices(&self, gone: &[VertexId]) -> (MultiGraph, Vec<Option<VertexId>>) {
        let mut map = vec![Some(0); self.n];
        for &v in gone {
            map[v] = None;
        }
        let mut next = 0;
        for slot in map.iter_mut() {
            if slot.is_some() {
                *slot = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)))
            .collect();
        (MultiGraph { n: next, edges }, map)
    }
}

/// Per-vertex degrees and the degree histogram of a vertex subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub histogram: BTreeMap<usize, usize>,
}

/// One end of an edge segment. An uncrossed edge `(u, v)` has the single
/// segment 0 running from `u` (end 0) to `v` (end 1). A crossed edge has
/// segment 0 from `u` to its crossing and segment 1 from the crossing to `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, u8, u8)", into = "(usize, u8, u8)")]
pub struct Dart {
    pub edge: EdgeId,
    pub seg: u8,
    pub end: u8,
}

impl From<(usize, u8, u8)> for Dart {
    fn from((edge, seg, end): (usize, u8, u8)) -> Self {
        Dart { edge, seg, end }
    }
}

impl From<Dart> for (usize, u8, u8) {
    fn from(d: Dart) -> Self {
        (d.edge, d.seg, d.end)
    }
}

impl Dart {
    pub fn new(edge: EdgeId, seg: u8, end: u8) -> Self {
        Dart { edge, seg, end }
    }

    pub fn twin(self) -> Dart {
        Dart { end: 1 - self.end, ..self }
    }

    pub fn index(self) -> usize {
        4 * self.edge + 2 * self.seg as usize + self.end as usize
    }

    fn from_index(i: usize) -> Dart {
        Dart { edge: i / 4, seg: ((i / 2) % 2) as u8, end: (i % 2) as u8 }
    }
}

/// A node of the planarization: a real vertex or the dummy node of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Vertex(VertexId),
    Crossing(usize),
}

impl Node {
    pub fn key(self) -> String {
        match self {
            Node::Vertex(v) => format!("v:{v}"),
            Node::Crossing(k) => format!("x:{k}"),
        }
    }

    pub fn parse(key: &str) -> Result<Node> {
        let bad = || Error::Parse(format!("bad node key {key:?}"));
        let (tag, id) = key.split_once(':').ok_or_else(bad)?;
        let id: usize = id.parse().map_err(|_| bad())?;
        match tag {
            "v" => Ok(Node::Vertex(id)),
            "x" => Ok(Node::Crossing(id)),
            _ => Err(bad()),
        }
    }
}

/// A closed walk bounding one cell of the planarization, with the cell on its left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
    pub is_outer: bool,
}

const UNUSED: usize = usize::MAX;

/// A validated 1-planar drawing.
#[derive(Clone, Debug)]
pub struct OnePlaneDrawing {
    graph: MultiGraph,
    crossings: Vec<(EdgeId, EdgeId)>,
    crossing_of: Vec<Option<usize>>,
    rotation: Vec<Vec<Dart>>,
    outer_face: usize,
    slot: Vec<(usize, usize)>,
    faces: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
}

impl PartialEq for OnePlaneDrawing {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.crossings == other.crossings
            && self.rotation == other.rotation
            && self.outer_face == other.outer_face
    }
}

impl OnePlaneDrawing {
    /// Validates and builds a drawing. `rotation[i]` lists the darts around
    /// planarization node `i` in counter-clockwise order, where nodes
    /// `0..n` are the vertices and `n + k` is the dummy of crossing `k`.
    pub fn new(
        graph: MultiGraph,
        crossings: Vec<(EdgeId, EdgeId)>,
        rotation: Vec<Vec<Dart>>,
        outer_face: usize,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        let m = graph.edge_count();
        let mut crossing_of = vec![None; m];
        for (k, &(a, b)) in crossings.iter().enumerate() {
            for e in [a, b] {
                if e >= m {
                    return Err(Error::InvalidCrossing(format!("edge {e} does not exist")));
                }
                if crossing_of[e].is_some() {
                    return Err(Error::EdgeCrossedTwice(e));
                }
                crossing_of[e] = Some(k);
            }
            if a == b {
                return Err(Error::EdgeCrossedTwice(a));
            }
            let (u1, v1) = graph.edge(a);
            let (u2, v2) = graph.edge(b);
            if [u1, v1].iter().any(|x| *x == u2 || *x == v2) {
                let what = if (u1.min(v1), u1.max(v1)) == (u2.min(v2), u2.max(v2)) {
                    "parallel edges"
                } else {
                    "edges sharing an endpoint"
                };
                return Err(Error::InvalidCrossing(format!("{what} {a} and {b} cross")));
            }
        }
        let node_count = n + crossings.len();
        if rotation.len() != node_count {
            return Err(Error::InvalidRotation(format!(
                "expected {} rotation entries, found {}",
                node_count,
                rotation.len()
            )));
        }
        let mut drawing = OnePlaneDrawing {
            graph,
            crossings,
            crossing_of,
            rotation,
            outer_face,
            slot: vec![(UNUSED, UNUSED); 4 * m],
            faces: Vec::new(),
            face_of: vec![UNUSED; 4 * m],
        };
        drawing.check_rotation()?;
        drawing.check_connected()?;
        drawing.trace_faces();
        let v = node_count;
        let e = m + 2 * drawing.crossings.len();
        let f = drawing.face_count();
        if v + f != e + 2 {
            return Err(Error::EulerViolation { v, e, f });
        }
        if outer_face >= f {
            return Err(Error::InvalidOuterFace(outer_face));
        }
        Ok(drawing)
    }

    fn check_rotation(&mut self) -> Result<()> {
        let n = self.graph.vertex_count();
        for node in 0..self.rotation.len() {
            for (pos, &d) in self.rotation[node].iter().enumerate() {
                let home = self.locate(d).ok_or_else(|| {
                    Error::InvalidRotation(format!("dart {d:?} does not exist"))
                })?;
                if self.node_index(home) != node {
                    return Err(Error::InvalidRotation(format!(
                        "dart {d:?} listed at {} but belongs to {}",
                        self.node_at(node).key(),
                        home.key()
                    )));
                }
                let slot = &mut self.slot[d.index()];
                if slot.0 != UNUSED {
                    return Err(Error::InvalidRotation(format!("dart {d:?} listed twice")));
                }
                *slot = (node, pos);
            }
        }
        for e in 0..self.graph.edge_count() {
            for d in self.edge_darts(e) {
                if self.slot[d.index()].0 == UNUSED {
                    return Err(Error::InvalidRotation(format!("dart {d:?} missing")));
                }
            }
        }
        for k in 0..self.crossings.len() {
            let rot = &self.rotation[n + k];
            let (a, b) = self.crossings[k];
            let edges: Vec<EdgeId> = rot.iter().map(|d| d.edge).collect();
            let alternating = edges.len() == 4
                && edges[0] == edges[2]
                && edges[1] == edges[3]
                && edges[0] != edges[1];
            if !alternating {
                return Err(Error::InvalidRotation(format!(
                    "crossing x:{k} of edges {a} and {b} does not alternate"
                )));
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<()> {
        let count = self.rotation.len();
        if count == 0 {
            return Err(Error::DisconnectedEmbedding);
        }
        let mut seen = vec![false; count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &d in &self.rotation[x] {
                let y = self.node_index(self.head(d));
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::DisconnectedEmbedding)
        }
    }

    fn trace_faces(&mut self) {
        let mut faces = Vec::new();
        for i in 0..self.face_of.len() {
            if self.slot[i].0 == UNUSED || self.face_of[i] != UNUSED {
                continue;
            }
            let start = Dart::from_index(i);
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                self.face_of[d.index()] = faces.len();
                walk.push(d);
                d = self.next(d);
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }
        if faces.is_empty() {
            faces.push(Vec::new());
        }
        self.faces = faces;
    }

    fn edge_darts(&self, e: EdgeId) -> Vec<Dart> {
        let segs = if self.crossing_of[e].is_some() { 2 } else { 1 };
        (0..segs)
            .flat_map(|s| [Dart::new(e, s, 0), Dart::new(e, s, 1)])
            .collect()
    }

    /// The node a dart is attached to, or `None` if the dart does not exist.
    fn locate(&self, d: Dart) -> Option<Node> {
        if d.edge >= self.graph.edge_count() || d.seg > 1 || d.end > 1 {
            return None;
        }
        let (u, v) = self.graph.edge(d.edge);
        match (self.crossing_of[d.edge], d.seg, d.end) {
            (None, 0, 0) => Some(Node::Vertex(u)),
            (None, 0, 1) => Some(Node::Vertex(v)),
            (None, _, _) => None,
            (Some(_), 0, 0) => Some(Node::Vertex(u)),
            (Some(k), 0, 1) | (Some(k), 1, 0) => Some(Node::Crossing(k)),
            (Some(_), _, _) => Some(Node::Vertex(v)),
        }
    }

    pub fn node_index(&self, node: Node) -> usize {
        match node {
            Node::Vertex(v) => v,
            Node::Crossing(k) => self.graph.vertex_count() + k,
        }
    }

    pub fn node_at(&self, index: usize) -> Node {
        let n = self.graph.vertex_count();
        if index < n {
            Node::Vertex(index)
        } else {
            Node::Crossing(index - n)
        }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn crossings(&self) -> &[(EdgeId, EdgeId)] {
        &self.crossings
    }

    pub fn crossing_of(&self, e: EdgeId) -> Option<usize> {
        self.crossing_of[e]
    }

    pub fn is_crossed(&self, e: EdgeId) -> bool {
        self.crossing_of[e].is_some()
    }

    pub fn node_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn rotation(&self, node: Node) -> &[Dart] {
        &self.rotation[self.node_index(node)]
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    /// Node where the dart sits.
    pub fn tail(&self, d: Dart) -> Node {
        self.locate(d).expect("dart of a validated drawing")
    }

    /// Node at the other end of the dart's segment.
    pub fn head(&self, d: Dart) -> Node {
        self.tail(d.twin())
    }

    /// Counter-clockwise successor of `d` around its node.
    pub fn ccw_next(&self, d: Dart) -> Dart {
        let (node, pos) = self.slot[d.index()];
        let rot = &self.rotation[node];
        rot[(pos + 1) % rot.len()]
    }

    /// Counter-clockwise predecessor of `d` around its node.
    pub fn ccw_prev(&self, d: Dart) -> Dart {
        let (node, pos) = self.slot[d.index()];
        let rot = &self.rotation[node];
        rot[(pos + rot.len() - 1) % rot.len()]
    }

    /// The dart following `d` along the face on the left of `d`.
    pub fn next(&self, d: Dart) -> Dart {
        self.ccw_prev(d.twin())
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.index()]
    }

    pub fn faces(&self) -> Vec<FaceWalk> {
        self.faces
            .iter()
            .enumerate()
            .map(|(i, darts)| FaceWalk { darts: darts.clone(), is_outer: i == self.outer_face })
            .collect()
    }

    /// Nodes visited by a face walk, in walk order.
    pub fn face_nodes(&self, f: usize) -> Vec<Node> {
        self.faces[f].iter().map(|&d| self.tail(d)).collect()
    }

    /// Faces bounded by exactly two distinct uncrossed parallel edges.
    pub fn bigon_faces(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| {
                let w = &self.faces[f];
                w.len() == 2
                    && w[0].edge != w[1].edge
                    && !self.is_crossed(w[0].edge)
                    && !self.is_crossed(w[1].edge)
            })
            .collect()
    }

    pub fn is_bigon_free(&self) -> (bool, Vec<usize>) {
        let bigons = self.bigon_faces();
        (bigons.is_empty(), bigons)
    }

    pub fn is_simple(&self) -> bool {
        self.graph.is_simple()
    }

    /// Edges incident to vertex `v` in counter-clockwise order, with their
    /// other endpoint.
    pub fn vertex_rotation(&self, v: VertexId) -> Vec<(EdgeId, VertexId)> {
        self.rotation[v]
            .iter()
            .map(|d| {
                let (a, b) = self.graph.edge(d.edge);
                (d.edge, if a == v { b } else { a })
            })
            .collect()
    }

    /// Breaks the drawing into raw parts (graph, crossings, rotation, outer face).
    pub fn into_parts(self) -> (MultiGraph, Vec<(EdgeId, EdgeId)>, Vec<Vec<Dart>>, usize) {
        (self.graph, self.crossings, self.rotation, self.outer_face)
    }

    pub fn with_outer_face(&self, outer_face: usize) -> Result<Self> {
        if outer_face >= self.face_count() {
            return Err(Error::InvalidOuterFace(outer_face));
        }
        let mut d = self.clone();
        d.outer_face = outer_face;
        Ok(d)
    }

    pub fn to_json(&self) -> DrawingJson {
        DrawingJson::from_drawing(self)
    }

    pub fn from_json(json: &DrawingJson) -> Result<Self> {
        json.build()
    }
}

/// Builds and validates a drawing from its interchange description.
pub fn build_drawing(spec: &DrawingJson) -> Result<OnePlaneDrawing> {
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(e: usize, s: u8, t: u8) -> Dart {
        Dart::new(e, s, t)
    }

    fn triangle() -> OnePlaneDrawing {
        let g = MultiGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let rot = vec![
            vec![d(0, 0, 0), d(2, 0, 1)],
            vec![d(1, 0, 0), d(0, 0, 1)],
            vec![d(2, 0, 0), d(1, 0, 1)],
        ];
        OnePlaneDrawing::new(g, vec![], rot, 0).unwrap()
    }

    /// K4 on a square 0,1,2,3 (ccw) with the diagonals 0-2 and 1-3 crossing.
    fn k4_crossed() -> OnePlaneDrawing {
        let g = MultiGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        let rot = vec![
            vec![d(0, 0, 0), d(4, 0, 0), d(3, 0, 1)],
            vec![d(1, 0, 0), d(5, 0, 0), d(0, 0, 1)],
            vec![d(2, 0, 0), d(4, 1, 1), d(1, 0, 1)],
            vec![d(3, 0, 0), d(5, 1, 1), d(2, 0, 1)],
            vec![d(4, 1, 0), d(5, 1, 0), d(4, 0, 1), d(5, 0, 1)],
        ];
        OnePlaneDrawing::new(g, vec![(4, 5)], rot, 0).unwrap()
    }

    #[test]
    fn single_edge_has_one_face() {
        let g = MultiGraph::new(2, vec![(0, 1)]).unwrap();
        let dr = OnePlaneDrawing::new(g, vec![], vec![vec![d(0, 0, 0)], vec![d(0, 0, 1)]], 0)
            .unwrap();
        assert_eq!(dr.face_count(), 1);
    }

    #[test]
    fn triangle_has_two_faces() {
        assert_eq!(triangle().face_count(), 2);
    }

    #[test]
    fn k4_one_crossing_face_count() {
        let dr = k4_crossed();
        assert_eq!(dr.node_count(), 5);
        assert_eq!(dr.face_count(), 5);
        assert!(dr.is_bigon_free().0);
    }

    #[test]
    fn faces_partition_darts() {
        let dr = k4_crossed();
        let total: usize = dr.faces().iter().map(|f| f.darts.len()).sum();
        assert_eq!(total, 2 * (dr.edge_count() + 2 * dr.crossings().len()));
    }

    #[test]
    fn loops_rejected() {
        assert!(matches!(MultiGraph::new(2, vec![(1, 1)]), Err(Error::LoopEdge(0))));
    }

    #[test]
    fn edge_in_two_crossings_rejected() {
        let g = MultiGraph::new(6, vec![(0, 1), (2, 3), (4, 5)]).unwrap();
        let err = OnePlaneDrawing::new(g, vec![(0, 1), (0, 2)], vec![], 0).unwrap_err();
        assert!(matches!(err, Error::EdgeCrossedTwice(0)));
    }

    #[test]
    fn crossing_parallel_edges_rejected() {
        let g = MultiGraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        let err = OnePlaneDrawing::new(g, vec![(0, 1)], vec![], 0).unwrap_err();
        assert!(matches!(err, Error::InvalidCrossing(_)));
    }

    #[test]
    fn missing_dart_rejected() {
        let g = MultiGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let rot = vec![vec![d(0, 0, 0)], vec![d(1, 0, 0), d(0, 0, 1)], vec![d(2, 0, 0), d(1, 0, 1)]];
        let err = OnePlaneDrawing::new(g, vec![], rot, 0).unwrap_err();
        assert!(matches!(err, Error::InvalidRotation(_)));
    }

    #[test]
    fn disconnected_rejected() {
        let g = MultiGraph::new(3, vec![(0, 1)]).unwrap();
        let rot = vec![vec![d(0, 0, 0)], vec![d(0, 0, 1)], vec![]];
        let err = OnePlaneDrawing::new(g, vec![], rot, 0).unwrap_err();
        assert!(matches!(err, Error::DisconnectedEmbedding));
    }

    #[test]
    fn non_planar_rotation_fails_euler() {
        // K4 without crossings but with a rotation that is not planar.
        let g = MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).unwrap();
        let rot = vec![
            vec![d(0, 0, 0), d(1, 0, 0), d(2, 0, 0)],
            vec![d(0, 0, 1), d(3, 0, 0), d(5, 0, 1)],
            vec![d(1, 0, 1), d(4, 0, 0), d(3, 0, 1)],
            vec![d(2, 0, 1), d(5, 0, 0), d(4, 0, 1)],
        ];
        let err = OnePlaneDrawing::new(g, vec![], rot, 0).unwrap_err();
        assert!(matches!(err, Error::EulerViolation { .. }));
    }

    #[test]
    fn uncrossed_parallel_pair_is_bigon() {
        let g = MultiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        let rot = vec![vec![d(0, 0, 0), d(1, 0, 0)], vec![d(0, 0, 1), d(1, 0, 1)]];
        let dr = OnePlaneDrawing::new(g, vec![], rot, 0).unwrap();
        let (free, faces) = dr.is_bigon_free();
        assert!(!free);
        assert_eq!(faces.len(), 2);
    }

    #[test]
    fn degree_profile() {
        let g = MultiGraph::new(8, (1..8).map(|v| (0, v)).collect()).unwrap();
        let p = g.degrees(&[0, 1, 2]);
        assert_eq!(p.degrees[0], 7);
        assert_eq!(p.histogram.get(&1), Some(&2));
        assert_eq!(p.degrees.iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn simple_predicate() {
        assert!(MultiGraph::new(3, vec![]).unwrap().is_simple());
        assert!(!MultiGraph::new(2, vec![(0, 1), (1, 0)]).unwrap().is_simple());
    }
}
