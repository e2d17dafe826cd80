//! Operators that derive new certified drawings from old ones: gadget
//! insertion along a planar pairing, claw deletion and dual augmentation.

use crate::certify::{assign_pairing, check_claw_cover, check_planar_pairing, find_claw_cover, Certificate};
use crate::error::{Error, Result};
use crate::families::plain::{corner_edges, corner_edge, h3_drawing, k2x_drawing};
use crate::families::ConstructionResult;
use crate::graph_core::{Dart, EdgeId, MultiGraph, Node, OnePlaneDrawing, VertexId};

/// A drawing to be glued into a host along two terminals.
struct Gadget {
    drawing: OnePlaneDrawing,
    terminals: (VertexId, VertexId),
}

impl Gadget {
    /// The rotation at terminal `v`, starting right after the outer face.
    fn block(&self, v: VertexId) -> Vec<Dart> {
        let g = &self.drawing;
        let walk = g.face(g.outer_face());
        let into = walk
            .iter()
            .find(|&&w| g.head(w) == Node::Vertex(v))
            .expect("terminal on the outer face");
        let start = into.twin();
        let rot = g.rotation(Node::Vertex(v));
        let at = rot.iter().position(|&d| d == start).unwrap();
        rot[at..].iter().chain(&rot[..at]).copied().collect()
    }
}

fn vertex_of(dr: &OnePlaneDrawing, d: Dart) -> VertexId {
    match dr.tail(d) {
        Node::Vertex(v) => v,
        Node::Crossing(_) => unreachable!("face corners at pairing ends are vertices"),
    }
}

/// Glues one copy of the gadget per slot. A slot gives the face-walk darts
/// leaving the two host vertices; the gadget's outer face merges into the
/// face on their left. Returns the new drawing and the ids of each copy's
/// non-terminal vertices in gadget order.
fn insert_gadgets(
    dr: &OnePlaneDrawing,
    gadget: &Gadget,
    slots: &[(Dart, Dart)],
) -> Result<(OnePlaneDrawing, Vec<Vec<VertexId>>)> {
    let g = &gadget.drawing;
    let (gb, gd) = gadget.terminals;
    let blocks = (gadget.block(gb), gadget.block(gd));
    let outer_dart = dr.face(dr.outer_face())[0];
    let n = dr.vertex_count();
    let (graph, mut crossings, rotation, _) = dr.clone().into_parts();
    let mut edges = graph.edges().to_vec();
    let mut vrot: Vec<Vec<Dart>> = rotation[..n].to_vec();
    let mut xrot: Vec<Vec<Dart>> = rotation[n..].to_vec();
    let mut copies = Vec::new();
    for &(dt, dt2) in slots {
        let (t, t2) = (vertex_of(dr, dt), vertex_of(dr, dt2));
        let off = edges.len();
        let shift = |x: &Dart| Dart::new(x.edge + off, x.seg, x.end);
        let mut map = vec![0; g.vertex_count()];
        let mut fresh = Vec::new();
        for (v, slot) in map.iter_mut().enumerate() {
            *slot = if v == gb {
                t
            } else if v == gd {
                t2
            } else {
                fresh.push(vrot.len());
                vrot.push(g.rotation(Node::Vertex(v)).iter().map(shift).collect());
                vrot.len() - 1
            };
        }
        for &(u, v) in g.graph().edges() {
            edges.push((map[u], map[v]));
        }
        for (k, &(a, b)) in g.crossings().iter().enumerate() {
            crossings.push((a + off, b + off));
            xrot.push(g.rotation(Node::Crossing(k)).iter().map(shift).collect());
        }
        for (host, after, block) in [(t, dt, &blocks.0), (t2, dt2, &blocks.1)] {
            let at = vrot[host].iter().position(|&x| x == after).unwrap();
            let ins: Vec<Dart> = block.iter().map(shift).collect();
            vrot[host].splice(at + 1..at + 1, ins);
        }
        copies.push(fresh);
    }
    let graph = MultiGraph::new(vrot.len(), edges)?;
    vrot.extend(xrot);
    let out = OnePlaneDrawing::new(graph, crossings, vrot, 0)?;
    let outer = out.face_of(outer_dart);
    Ok((out.with_outer_face(outer)?, copies))
}

/// Face-walk darts leaving each end of every pair, on a face where all
/// chords fit without interleaving.
fn pairing_slots(dr: &OnePlaneDrawing, c: &Certificate) -> Result<Vec<(Dart, Dart)>> {
    if c.set.len() % 2 == 1 {
        return Err(Error::OddIndependentSet(c.set.len()));
    }
    let pairs = c.pairing.as_ref().ok_or(Error::NoPairing)?;
    if !check_planar_pairing(dr, c).passed {
        return Err(Error::NoPairing);
    }
    let slots = assign_pairing(dr, pairs).ok_or(Error::NoPairing)?;
    Ok(slots
        .iter()
        .map(|s| {
            let walk = dr.face(s.face);
            (walk[s.pos.0], walk[s.pos.1])
        })
        .collect())
}

/// Glues an H3 gadget between the two ends of every pair. Both ends gain
/// three neighbours; the pairing stays valid.
pub fn insert_h3_at_pairing(base: &ConstructionResult) -> Result<ConstructionResult> {
    let slots = pairing_slots(&base.drawing, &base.certificate)?;
    let gadget = Gadget { drawing: h3_drawing(), terminals: (1, 3) };
    let (dr, _) = insert_gadgets(&base.drawing, &gadget, &slots)?;
    let mut c = base.certificate.clone();
    c.d += 3;
    c.claw_cover = None;
    let k = c.set.len();
    ConstructionResult::new(dr, c, base.predicted_n + k, base.predicted_is_size)
}

/// Glues H3 copies at explicit slots; returns the ids of each copy's `a` and `c`.
pub(crate) fn insert_h3_at_slots(
    dr: &OnePlaneDrawing,
    slots: &[(Dart, Dart)],
) -> Result<(OnePlaneDrawing, Vec<Vec<VertexId>>)> {
    let gadget = Gadget { drawing: h3_drawing(), terminals: (1, 3) };
    insert_gadgets(dr, &gadget, slots)
}

/// Joins the two ends of every pair by `x` new degree-2 vertices.
pub fn insert_k2x_at_pairing(base: &ConstructionResult, x: usize) -> Result<ConstructionResult> {
    if x == 0 {
        return Err(Error::UnsupportedParams("x must be at least 1".into()));
    }
    let slots = pairing_slots(&base.drawing, &base.certificate)?;
    let gadget = Gadget { drawing: k2x_drawing(x), terminals: (0, 1) };
    let (dr, _) = insert_gadgets(&base.drawing, &gadget, &slots)?;
    let mut c = base.certificate.clone();
    c.d += x;
    c.claw_cover = None;
    let k = c.set.len();
    ConstructionResult::new(dr, c, base.predicted_n + x * k / 2, base.predicted_is_size)
}

/// Maps a dart of the old drawing to the new one, if it survives.
fn map_dart(
    dr: &OnePlaneDrawing,
    d: Dart,
    edge_map: &[Option<usize>],
    dissolved: &[bool],
) -> Option<Dart> {
    let e = edge_map[d.edge]?;
    match dr.crossing_of(d.edge) {
        Some(k) if dissolved[k] => match (d.seg, d.end) {
            (0, 0) => Some(Dart::new(e, 0, 0)),
            (1, 1) => Some(Dart::new(e, 0, 1)),
            _ => None,
        },
        _ => Some(Dart::new(e, d.seg, d.end)),
    }
}

/// Deletes vertices with their edges. A crossing that loses one of its
/// edges disappears and the other edge becomes uncrossed.
pub(crate) fn delete_vertices(
    dr: &OnePlaneDrawing,
    gone: &[VertexId],
) -> Result<(OnePlaneDrawing, Vec<Option<VertexId>>)> {
    let mut removed = vec![false; dr.vertex_count()];
    for &v in gone {
        removed[v] = true;
    }
    delete(dr, &removed, &vec![false; dr.edge_count()])
}

/// Deletes edges, dissolving the crossings they took part in. Fails when
/// the result is disconnected.
pub fn delete_edges(dr: &OnePlaneDrawing, gone: &[EdgeId]) -> Result<OnePlaneDrawing> {
    let mut dropped = vec![false; dr.edge_count()];
    for &e in gone {
        dropped[e] = true;
    }
    Ok(delete(dr, &vec![false; dr.vertex_count()], &dropped)?.0)
}

fn delete(
    dr: &OnePlaneDrawing,
    removed: &[bool],
    dropped: &[bool],
) -> Result<(OnePlaneDrawing, Vec<Option<VertexId>>)> {
    let n = dr.vertex_count();
    let mut vmap = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if !removed[v] {
            vmap[v] = Some(next);
            next += 1;
        }
    }
    let mut edge_map = vec![None; dr.edge_count()];
    let mut edges = Vec::new();
    for (e, &(u, v)) in dr.graph().edges().iter().enumerate() {
        if let (Some(a), Some(b), false) = (vmap[u], vmap[v], dropped[e]) {
            edge_map[e] = Some(edges.len());
            edges.push((a, b));
        }
    }
    let mut dissolved = vec![false; dr.crossings().len()];
    let mut crossings = Vec::new();
    let mut kept_crossings = Vec::new();
    for (k, &(a, b)) in dr.crossings().iter().enumerate() {
        match (edge_map[a], edge_map[b]) {
            (Some(x), Some(y)) => {
                crossings.push((x, y));
                kept_crossings.push(k);
            }
            _ => dissolved[k] = true,
        }
    }
    let map = |d: &Dart| map_dart(dr, *d, &edge_map, &dissolved);
    let mut rotation: Vec<Vec<Dart>> = (0..n)
        .filter(|&v| !removed[v])
        .map(|v| dr.rotation(Node::Vertex(v)).iter().filter_map(map).collect())
        .collect();
    for &k in &kept_crossings {
        rotation.push(dr.rotation(Node::Crossing(k)).iter().filter_map(map).collect());
    }
    let graph = MultiGraph::new(next, edges)?;
    let out = OnePlaneDrawing::new(graph, crossings, rotation, 0)?;
    let outer = dr
        .face(dr.outer_face())
        .iter()
        .find_map(map)
        .map_or(0, |d| out.face_of(d));
    Ok((out.with_outer_face(outer)?, vmap))
}

/// Deletes the claw centres. Every independent vertex loses exactly one
/// neighbour; a new claw cover is searched for the result.
pub fn remove_claw_cover(base: &ConstructionResult) -> Result<ConstructionResult> {
    let c = &base.certificate;
    let cover = c.claw_cover.as_ref().ok_or(Error::NoClawCover)?;
    if !check_claw_cover(base.drawing.graph(), c).passed {
        return Err(Error::NoClawCover);
    }
    let deg = base.drawing.graph().degree_vec();
    if let Some(&v) = c.set.iter().find(|&&v| deg[v] < c.d) {
        return Err(Error::PreconditionViolated(format!("vertex {v} has degree below {}", c.d)));
    }
    if c.d == 0 {
        return Err(Error::PreconditionViolated("threshold is already 0".into()));
    }
    let centres: Vec<VertexId> = cover.iter().map(|&(x, _)| x).collect();
    let (dr, vmap) = delete_vertices(&base.drawing, &centres)?;
    let set: Vec<VertexId> = c.set.iter().map(|&v| vmap[v].unwrap()).collect();
    let mut out = Certificate::new(c.d - 1, set);
    if let Some(pairs) = &c.pairing {
        out.pairing = Some(pairs.iter().map(|&(a, b)| (vmap[a].unwrap(), vmap[b].unwrap())).collect());
        if !check_planar_pairing(&dr, &out).passed {
            out.pairing = None;
        }
    }
    out.claw_cover = find_claw_cover(dr.graph(), &out.set, 1_000_000);
    let removed = centres.len();
    ConstructionResult::new(dr, out, base.predicted_n - removed, base.predicted_is_size)
}

/// Adds a vertex in every face of a plane quadrangulation, joined to the
/// four corners, and draws each primal edge crossed by its dual edge. The
/// result is an optimal 1-planar drawing; independent vertices double their
/// degree.
pub fn augment_with_dual(q: &ConstructionResult) -> Result<ConstructionResult> {
    let dr = &q.drawing;
    if !dr.crossings().is_empty() {
        return Err(Error::HasCrossings(dr.crossings().len()));
    }
    if let Some(f) = (0..dr.face_count()).find(|&f| dr.face(f).len() != 4) {
        return Err(Error::NotQuadrangulated(format!("face {f} has length {}", dr.face(f).len())));
    }
    let n = dr.vertex_count();
    let m = dr.edge_count();
    let faces = dr.face_count();
    let mut edges = dr.graph().edges().to_vec();
    for e in 0..m {
        let left = dr.face_of(Dart::new(e, 0, 0));
        let right = dr.face_of(Dart::new(e, 0, 1));
        if left == right {
            return Err(Error::NotQuadrangulated(format!("edge {e} has the same face on both sides")));
        }
        edges.push((n + left, n + right));
    }
    let (radial, base) = corner_edges(dr);
    edges.extend(radial);
    let mut rotation: Vec<Vec<Dart>> = Vec::with_capacity(n + faces + m);
    for v in 0..n {
        let mut rot = Vec::new();
        for &d in dr.rotation(Node::Vertex(v)) {
            rot.push(if d.end == 0 { Dart::new(d.edge, 0, 0) } else { Dart::new(d.edge, 1, 1) });
            rot.push(Dart::new(2 * m + corner_edge(dr, &base, d), 0, 0));
        }
        rotation.push(rot);
    }
    for f in 0..faces {
        let mut rot = Vec::new();
        for (j, &w) in dr.face(f).iter().enumerate() {
            rot.push(Dart::new(2 * m + base[f] + j, 0, 1));
            rot.push(if w.end == 0 { Dart::new(m + w.edge, 0, 0) } else { Dart::new(m + w.edge, 1, 1) });
        }
        rotation.push(rot);
    }
    for e in 0..m {
        rotation.push(vec![
            Dart::new(e, 1, 0),
            Dart::new(m + e, 0, 1),
            Dart::new(e, 0, 1),
            Dart::new(m + e, 1, 0),
        ]);
    }
    let crossings = (0..m).map(|e| (e, m + e)).collect();
    let graph = MultiGraph::new(n + faces, edges)?;
    let out = OnePlaneDrawing::new(graph, crossings, rotation, 0)?;
    let outer = out.face_of(Dart::new(2 * m, 0, 0));
    let out = out.with_outer_face(outer)?;
    let mut c = Certificate::new(2 * q.certificate.d, q.certificate.set.clone());
    c.pairing = None;
    ConstructionResult::new(out, c, q.predicted_n + faces, q.predicted_is_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::plain::k2m;

    fn k2m_result(m: usize) -> ConstructionResult {
        let (dr, c) = k2m(m);
        ConstructionResult::new(dr, c, m + 2, m).unwrap()
    }

    #[test]
    fn k2x_insertion_counts() {
        let r = insert_k2x_at_pairing(&k2m_result(6), 3).unwrap();
        assert_eq!(r.drawing.vertex_count(), 17);
        assert_eq!(r.certificate.d, 5);
        assert!(r.drawing.is_simple());
    }

    #[test]
    fn zero_width_k2x_is_rejected() {
        assert!(insert_k2x_at_pairing(&k2m_result(4), 0).is_err());
    }

    #[test]
    fn h3_insertion_keeps_pairing() {
        let r = insert_h3_at_pairing(&k2m_result(4)).unwrap();
        assert_eq!(r.drawing.vertex_count(), 10);
        assert_eq!(r.certificate.d, 5);
        assert!(check_planar_pairing(&r.drawing, &r.certificate).passed);
        assert!(r.drawing.is_bigon_free().0);
    }

    #[test]
    fn dual_of_k26_is_optimal() {
        let r = augment_with_dual(&k2m_result(6)).unwrap();
        let n = r.drawing.vertex_count();
        assert_eq!(n, 14);
        assert_eq!(r.drawing.edge_count(), 4 * n - 8);
        assert_eq!(r.drawing.crossings().len(), n - 2);
        assert!(crate::certify::check_optimal(&r.drawing).passed);
    }

    #[test]
    fn triangle_is_not_quadrangulated() {
        let tri = {
            let g = MultiGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
            let rot = vec![
                vec![Dart::new(0, 0, 0), Dart::new(2, 0, 1)],
                vec![Dart::new(1, 0, 0), Dart::new(0, 0, 1)],
                vec![Dart::new(2, 0, 0), Dart::new(1, 0, 1)],
            ];
            OnePlaneDrawing::new(g, vec![], rot, 0).unwrap()
        };
        let r = ConstructionResult::from_parts(tri, Certificate::new(2, vec![]));
        assert!(matches!(augment_with_dual(&r), Err(Error::NotQuadrangulated(_))));
    }

    #[test]
    fn deleting_a_crossed_edge_dissolves_its_crossing() {
        let h = h3_drawing();
        let e = h.crossings()[0].0;
        let out = delete_edges(&h, &[e]).unwrap();
        assert_eq!(out.edge_count(), 5);
        assert_eq!(out.crossings().len(), 1);
        let path = delete_edges(&out, &[out.crossings()[0].0, out.crossings()[0].1]).unwrap();
        assert!(path.crossings().is_empty());
        assert_eq!(path.face_count(), 1);
    }

}
