//! Rows of three independent hubs on a cylinder. Between two rows sit
//! either six triangles with three satellites each or three quadrangles with
//! two satellites each; the end rows get a triangle cap and a few extra
//! satellites on the strip side.

use super::layout::{CapDesign, Layout, Ring};
use crate::certify::Certificate;
use crate::error::Result;
use crate::graph_core::{OnePlaneDrawing, VertexId};
use crate::sketch::Pt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Strip {
    /// Rows offset by half a step; six triangles.
    Triangles,
    /// Aligned rows; three quadrangles.
    Squares,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Extras {
    /// This many satellites on each end-row gap, joined to both hubs.
    Lenses(usize),
    /// One pendant satellite per end hub.
    Pendants,
}

pub(crate) struct HubBuild {
    pub drawing: OnePlaneDrawing,
    pub rows: Vec<Vec<VertexId>>,
    /// Per strip, the first satellite of each triangle: up triangles
    /// `(a_j, a_j+1, b_j)` then down triangles `(b_j, b_j+1, a_j+1)`.
    pub triangle_centers: Vec<Option<([VertexId; 3], [VertexId; 3])>>,
    pub cap_centers: [VertexId; 2],
}

pub(crate) fn hub_framework(strips: &[Strip], extras: Extras) -> Result<HubBuild> {
    let mut lay = Layout::new(3.0);
    let mut rows: Vec<Ring> = Vec::new();
    let mut off = 0.0;
    for i in 0..=strips.len() {
        rows.push(lay.ring(3, 2.0 * i as f64, off, false, &[]));
        if i < strips.len() && strips[i] == Strip::Triangles {
            off += 0.5;
        }
    }
    let mut triangle_centers = Vec::new();
    for (i, &kind) in strips.iter().enumerate() {
        let (a, b) = (rows[i].clone(), rows[i + 1].clone());
        let c = |r: &Ring, j: i64| (r.id(j), r.pt(j));
        match kind {
            Strip::Triangles => {
                let mut up = [0; 3];
                let mut down = [0; 3];
                for j in 0..3 {
                    up[j as usize] = lay.triple([c(&a, j), c(&a, j + 1), c(&b, j)])[0];
                    down[j as usize] = lay.triple([c(&b, j), c(&b, j + 1), c(&a, j + 1)])[0];
                }
                triangle_centers.push(Some((up, down)));
            }
            Strip::Squares => {
                for j in 0..3 {
                    let corners = [c(&a, j), c(&a, j + 1), c(&b, j + 1), c(&b, j)];
                    let cx = (a.pt(j).0 + a.pt(j + 1).0) / 2.0;
                    let cy = (a.y + b.y) / 2.0;
                    for dy in [-0.7, 0.7] {
                        let p = (cx, cy + dy);
                        let v = lay.vertex(p);
                        for &(h, ph) in &corners {
                            lay.line(v, p, h, ph);
                        }
                    }
                }
                triangle_centers.push(None);
            }
        }
    }
    let last = rows.len() - 1;
    let mut cap_centers = [0; 2];
    let mut first_cap_edge = None;
    for (slot, (r, top)) in [(0, false), (last, true)].into_iter().enumerate() {
        let ring = rows[r].clone();
        let edges_before = lay.edge_count();
        let inner = lay.cap(&ring, top, &CapDesign::triple());
        first_cap_edge.get_or_insert(edges_before);
        cap_centers[slot] = inner[0];
        let side = if top { -1.0 } else { 1.0 };
        for j in 0..3 {
            let (h0, p0) = (ring.id(j), ring.pt(j));
            let (h1, p1) = (ring.id(j + 1), ring.pt(j + 1));
            match extras {
                Extras::Lenses(count) => {
                    for q in 1..=count {
                        let p: Pt = ((p0.0 + p1.0) / 2.0, p0.1 + side * 0.02 * q as f64);
                        let v = lay.vertex(p);
                        lay.line(v, p, h0, p0);
                        lay.line(v, p, h1, p1);
                    }
                }
                Extras::Pendants => {
                    let p: Pt = (p0.0 + 0.15 * (p1.0 - p0.0), p0.1 + side * 0.03);
                    let v = lay.vertex(p);
                    lay.line(v, p, h0, p0);
                }
            }
        }
    }
    let drawing = lay.build((first_cap_edge.unwrap(), false))?;
    Ok(HubBuild {
        drawing,
        rows: rows.iter().map(|r| r.ids.clone()).collect(),
        triangle_centers,
        cap_centers,
    })
}

/// Pairs `(a_j, b_j)` across every second strip, starting with the first.
pub(crate) fn row_pairing(rows: &[Vec<VertexId>]) -> Option<Vec<(VertexId, VertexId)>> {
    if rows.len() % 2 == 1 {
        return None;
    }
    let mut out = Vec::new();
    for r in (0..rows.len()).step_by(2) {
        for j in 0..3 {
            out.push((rows[r][j], rows[r + 1][j]));
        }
    }
    out.sort_unstable();
    Some(out)
}

/// Claws from triangle satellites covering the rows `r, r+1` of strip `r`.
pub(crate) fn strip_claws(
    b: &HubBuild,
    r: usize,
) -> Vec<(VertexId, [VertexId; 3])> {
    let (up, down) = b.triangle_centers[r].expect("triangle strip");
    let a = &b.rows[r];
    let c = &b.rows[r + 1];
    vec![(up[0], [a[0], a[1], c[0]]), (down[1], [c[1], c[2], a[2]])]
}

pub(crate) fn cap_claw(b: &HubBuild, top: bool) -> (VertexId, [VertexId; 3]) {
    let r = if top { b.rows.len() - 1 } else { 0 };
    let row = &b.rows[r];
    (b.cap_centers[top as usize], [row[0], row[1], row[2]])
}

pub(crate) fn certificate(d: usize, b: &HubBuild) -> Certificate {
    Certificate::new(d, b.rows.concat())
}
