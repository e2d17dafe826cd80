//! Small drawings: the H3 gadget, K2,x gadgets, K2,m and the radial graphs
//! of a few regular polyhedra.

use super::layout::{CapDesign, Layout};
use crate::certify::{find_pairing, Certificate};
use crate::error::{Error, Result};
use crate::graph_core::{Dart, MultiGraph, OnePlaneDrawing, VertexId};
use crate::sketch::Sketch;

/// The H3 gadget: a 4-cycle `a b c d` with `ab` and `cd` doubled so that
/// each copy of `ab` crosses a copy of `cd`. Vertex ids are `a=0, b=1, c=2, d=3`.
pub fn h3_drawing() -> OnePlaneDrawing {
    let mut sk = Sketch::new();
    let p = sk.plane();
    let v = sk.vertices(4);
    let at = [(0.5, 0.0), (-2.0, 0.0), (-0.5, 0.0), (2.0, 0.0)];
    for (i, &q) in at.iter().enumerate() {
        sk.place(p, v[i], q);
    }
    let ab1 = sk.path(p, 0, 1, vec![at[0], (-0.75, 1.0), at[1]]);
    sk.path(p, 2, 3, vec![at[2], (0.75, 1.0), at[3]]);
    sk.path(p, 0, 1, vec![at[0], (-0.75, -1.0), at[1]]);
    sk.path(p, 2, 3, vec![at[2], (0.75, -1.0), at[3]]);
    sk.join(p, 1, 2);
    sk.join(p, 3, 0);
    sk.build((ab1, true)).expect("H3 sketch is valid")
}

pub fn h3_certificate() -> Certificate {
    let mut c = Certificate::new(3, vec![0, 2]);
    c.pairing = Some(vec![(0, 2)]);
    c
}

/// `K_{2,x}` with the two hubs `0` and `1` and the others stacked between them.
pub fn k2x_drawing(x: usize) -> OnePlaneDrawing {
    let mut sk = Sketch::new();
    let p = sk.plane();
    let hubs = sk.vertices(2);
    sk.place(p, hubs[0], (-1.0, 0.0));
    sk.place(p, hubs[1], (1.0, 0.0));
    let mut outer = 0;
    for i in 0..x {
        let w = sk.vertex();
        sk.place(p, w, (0.0, i as f64 - (x as f64 - 1.0) / 2.0));
        outer = sk.join(p, hubs[0], w);
        sk.join(p, w, hubs[1]);
    }
    sk.build((outer, false)).expect("K2,x sketch is valid")
}

/// `K_{2,m}` with pairing of consecutive degree-2 vertices.
pub fn k2m(m: usize) -> (OnePlaneDrawing, Certificate) {
    let dr = k2x_drawing(m);
    let set: Vec<VertexId> = (2..m + 2).collect();
    let mut c = Certificate::new(2, set);
    c.pairing = Some((0..m / 2).map(|j| (2 + 2 * j, 3 + 2 * j)).collect());
    (dr, c)
}

/// A `d`-regular 3-connected plane graph: the prism (d=3) or antiprism
/// (d=4) over a `(s+2)`-gon, or for d=5 two apexes with `2s` pentagons
/// between them.
pub fn regular_polyhedron(d: usize, s: usize) -> Result<OnePlaneDrawing> {
    if s == 0 {
        return Err(Error::UnsupportedParams("s must be positive".into()));
    }
    match d {
        3 | 4 => {
            let k = s + 2;
            let mut lay = Layout::new(k as f64);
            let lo = lay.ring(k, 0.0, 0.0, true, &[]);
            let off = if d == 4 { 0.5 } else { 0.0 };
            let hi = lay.ring(k, 2.0, off, true, &[]);
            for j in 0..k as i64 {
                lay.link(lo.id(j), lo.pt(j), &hi, j);
                if d == 4 {
                    lay.link(lo.id(j + 1), lo.pt(j + 1), &hi, j);
                }
            }
            lay.build((lo.edges[0], true))
        }
        5 => {
            let mut lay = Layout::new(5.0);
            let mut rings = Vec::new();
            let mut off = 0.0;
            for i in 0..2 * s {
                rings.push(lay.ring(5, 2.0 * i as f64, off, true, &[]));
                if i % 2 == 0 {
                    off += 0.5;
                }
            }
            for i in 0..2 * s - 1 {
                let (a, b) = (rings[i].clone(), rings[i + 1].clone());
                for j in 0..5 {
                    lay.link(a.id(j), a.pt(j), &b, j);
                    if i % 2 == 0 {
                        lay.link(a.id(j + 1), a.pt(j + 1), &b, j);
                    }
                }
            }
            let apex = CapDesign::joined_to_all(5, vec![(0.0, 0.0)]);
            let first = rings[0].edges[0];
            let last = rings[2 * s - 1].clone();
            lay.cap(&rings[0], false, &apex);
            lay.cap(&last, true, &apex);
            lay.build((first, true))
        }
        _ => Err(Error::UnsupportedParams(format!("no 3-connected {d}-regular family for d={d}"))),
    }
}

/// The vertex-face incidence graph of a plane graph: the original vertices
/// keep their ids, face `f` becomes vertex `n + f`, and every corner of a
/// face becomes an edge. Corner `j` of face `f` gets edge id `corner_base[f] + j`.
pub fn radial_drawing(dr: &OnePlaneDrawing) -> Result<OnePlaneDrawing> {
    if !dr.crossings().is_empty() {
        return Err(Error::HasCrossings(dr.crossings().len()));
    }
    let n = dr.vertex_count();
    let (edges, corner_base) = corner_edges(dr);
    let mut rotation = vec![Vec::new(); n + dr.face_count()];
    for v in 0..n {
        for &d in dr.rotation(crate::graph_core::Node::Vertex(v)) {
            rotation[v].push(Dart::new(corner_edge(dr, &corner_base, d), 0, 0));
        }
    }
    for f in 0..dr.face_count() {
        for j in 0..dr.face(f).len() {
            rotation[n + f].push(Dart::new(corner_base[f] + j, 0, 1));
        }
    }
    let g = MultiGraph::new(n + dr.face_count(), edges)?;
    let outer_dart = Dart::new(0, 0, 0);
    let tmp = OnePlaneDrawing::new(g, Vec::new(), rotation, 0)?;
    let outer = tmp.face_of(outer_dart);
    tmp.with_outer_face(outer)
}

/// Edges `(tail of corner, n + face)` for every corner, and the index of
/// the first corner of each face.
pub(crate) fn corner_edges(dr: &OnePlaneDrawing) -> (Vec<(VertexId, VertexId)>, Vec<usize>) {
    let n = dr.vertex_count();
    let mut edges = Vec::new();
    let mut base = Vec::new();
    for f in 0..dr.face_count() {
        base.push(edges.len());
        for &d in dr.face(f) {
            let crate::graph_core::Node::Vertex(v) = dr.tail(d) else {
                unreachable!("planar drawings have no crossing nodes")
            };
            edges.push((v, n + f));
        }
    }
    (edges, base)
}

/// Edge id of the corner that follows dart `d` counter-clockwise.
pub(crate) fn corner_edge(dr: &OnePlaneDrawing, base: &[usize], d: Dart) -> usize {
    let f = dr.face_of(d);
    let j = dr.face(f).iter().position(|&x| x == d).expect("dart on its face");
    base[f] + j
}

/// The radial graph of [`regular_polyhedron`] with the polyhedron's
/// vertices as the independent set.
pub fn q_hat(d: usize, s: usize) -> Result<(OnePlaneDrawing, Certificate)> {
    let poly = regular_polyhedron(d, s)?;
    let dr = radial_drawing(&poly)?;
    let set: Vec<VertexId> = (0..poly.vertex_count()).collect();
    let mut c = Certificate::new(d, set);
    c.pairing = find_pairing(&dr, &c.set, 1_000_000);
    Ok((dr, c))
}
