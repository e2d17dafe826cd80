//! Placement helpers shared by the generators: rings on a flat cylinder,
//! vertices between rings and disk-shaped end caps glued to a ring.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::Result;
use crate::graph_core::{EdgeId, OnePlaneDrawing, VertexId};
use crate::sketch::{Pt, Sketch};

/// A cycle (or just a row of vertices) at height `y` on the cylinder.
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub ids: Vec<VertexId>,
    pub off: f64,
    pub sp: f64,
    pub y: f64,
    pub edges: Vec<EdgeId>,
}

impl Ring {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn id(&self, j: i64) -> VertexId {
        self.ids[j.rem_euclid(self.ids.len() as i64) as usize]
    }

    pub fn pt(&self, j: i64) -> Pt {
        (self.off + j as f64 * self.sp, self.y)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum CapEnd {
    Ring(usize),
    Inner(usize),
}

/// A drawing inside the unit disk whose boundary vertices sit at angles
/// `2πj/k`. Boundary cycle edges are not part of the design.
#[derive(Clone, Debug)]
pub(crate) struct CapDesign {
    pub k: usize,
    pub inner: Vec<Pt>,
    pub edges: Vec<(CapEnd, CapEnd)>,
}

impl CapDesign {
    pub fn boundary(&self, j: usize) -> Pt {
        let a = TAU * j as f64 / self.k as f64;
        (a.cos(), a.sin())
    }

    /// `count` inner vertices at the given points, each joined to every boundary vertex.
    pub fn joined_to_all(k: usize, inner: Vec<Pt>) -> Self {
        let mut edges = Vec::new();
        for i in 0..inner.len() {
            for j in 0..k {
                edges.push((CapEnd::Inner(i), CapEnd::Ring(j)));
            }
        }
        CapDesign { k, inner, edges }
    }

    /// Three inner vertices near the corners of the boundary triangle, each
    /// joined to all three corners.
    pub fn triple() -> Self {
        let corners: Vec<Pt> = (0..3)
            .map(|j| {
                let a = TAU * j as f64 / 3.0;
                (a.cos(), a.sin())
            })
            .collect();
        let inner = TRIPLE_WEIGHTS.iter().map(|w| barycentric(&corners, w)).collect();
        Self::joined_to_all(3, inner)
    }
}

pub(crate) const TRIPLE_WEIGHTS: [[f64; 3]; 3] = [[0.6, 0.2, 0.2], [0.2, 0.6, 0.2], [0.2, 0.2, 0.6]];

pub(crate) fn barycentric(p: &[Pt], w: &[f64]) -> Pt {
    let x = p.iter().zip(w).map(|(q, w)| q.0 * w).sum();
    let y = p.iter().zip(w).map(|(q, w)| q.1 * w).sum();
    (x, y)
}

/// A flat cylinder of circumference `width` plus any number of caps.
pub(crate) struct Layout {
    pub sk: Sketch,
    pub cyl: usize,
    pub width: f64,
}

impl Layout {
    pub fn new(width: f64) -> Self {
        let mut sk = Sketch::new();
        let cyl = sk.cylinder(width);
        Layout { sk, cyl, width }
    }

    /// A ring of `k` evenly spaced vertices; cycle edges `j -> j+1` are
    /// drawn unless `j` is in `omit` or `edges` is false.
    pub fn ring(&mut self, k: usize, y: f64, off: f64, edges: bool, omit: &[usize]) -> Ring {
        let ids = self.sk.vertices(k);
        let mut ring = Ring { ids, off, sp: self.width / k as f64, y, edges: Vec::new() };
        for j in 0..k as i64 {
            self.sk.place(self.cyl, ring.id(j), ring.pt(j));
        }
        if edges && k >= 3 {
            for j in 0..k {
                if omit.contains(&j) {
                    continue;
                }
                let j = j as i64;
                let e = self.sk.line(self.cyl, ring.id(j), ring.pt(j), ring.id(j + 1), ring.pt(j + 1));
                ring.edges.push(e);
            }
        }
        ring
    }

    pub fn vertex(&mut self, p: Pt) -> VertexId {
        let v = self.sk.vertex();
        self.sk.place(self.cyl, v, p);
        v
    }

    /// A straight edge from `v` (drawn at `pv`) to vertex `j` of `ring`.
    pub fn link(&mut self, v: VertexId, pv: Pt, ring: &Ring, j: i64) -> EdgeId {
        self.sk.line(self.cyl, v, pv, ring.id(j), ring.pt(j))
    }

    pub fn line(&mut self, u: VertexId, pu: Pt, v: VertexId, pv: Pt) -> EdgeId {
        self.sk.line(self.cyl, u, pu, v, pv)
    }

    /// Three satellites inside the triangle with the given corners, each
    /// joined to all corners.
    pub fn triple(&mut self, corners: [(VertexId, Pt); 3]) -> Vec<VertexId> {
        let pts: Vec<Pt> = corners.iter().map(|c| c.1).collect();
        let mut out = Vec::new();
        for w in &TRIPLE_WEIGHTS {
            let p = barycentric(&pts, w);
            let t = self.vertex(p);
            for &(c, pc) in &corners {
                self.line(t, p, c, pc);
            }
            out.push(t);
        }
        out
    }

    /// Glues `design` to `ring`, either above it (`top`) or below it.
    /// Returns the ids of the design's inner vertices.
    pub fn cap(&mut self, ring: &Ring, top: bool, design: &CapDesign) -> Vec<VertexId> {
        assert_eq!(design.k, ring.len());
        let piece = self.sk.plane();
        let spin = TAU * ring.off / self.width;
        let map = |p: Pt| -> Pt {
            let (x, y) = if top { p } else { (p.0, -p.1) };
            let a = if top { spin } else { -spin };
            (x * a.cos() - y * a.sin(), x * a.sin() + y * a.cos())
        };
        for j in 0..ring.len() {
            let x = ring.pt(j as i64).0;
            let turn = if top {
                -(TAU * x / self.width + FRAC_PI_2)
            } else {
                FRAC_PI_2 + TAU * x / self.width
            };
            self.sk.set_frame(piece, ring.ids[j], turn);
            self.sk.place(piece, ring.ids[j], map(design.boundary(j)));
        }
        let inner: Vec<VertexId> = design
            .inner
            .iter()
            .map(|&p| {
                let v = self.sk.vertex();
                self.sk.place(piece, v, map(p));
                v
            })
            .collect();
        let resolve = |c: CapEnd| match c {
            CapEnd::Ring(j) => (ring.ids[j], map(design.boundary(j))),
            CapEnd::Inner(i) => (inner[i], map(design.inner[i])),
        };
        for &(a, b) in &design.edges {
            let (u, pu) = resolve(a);
            let (v, pv) = resolve(b);
            self.sk.line(piece, u, pu, v, pv);
        }
        inner
    }

    pub fn edge_count(&self) -> usize {
        self.sk.edge_count()
    }

    pub fn build(&self, outer: (EdgeId, bool)) -> Result<OnePlaneDrawing> {
        self.sk.build(outer)
    }
}
