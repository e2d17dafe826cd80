//! Degree-7 constructions: the doubling recursion around a fixed 18-vertex
//! base and the two-copy combination with minimum degree 7.

use super::layout::{CapDesign, CapEnd, Layout, Ring};
use crate::certify::Certificate;
use crate::error::Result;
use crate::graph_core::{OnePlaneDrawing, VertexId};
use crate::sketch::Pt;

/// Inner vertices of the base, scaled to a boundary circle of radius 3.
const BASE_INNER: [Pt; 9] = [
    (1.72796696549788, -0.815584498084793),
    (1.5728309391300004, 1.2232833320529237),
    (-0.1646025214774734, 1.9446263394279384),
    (-1.7998531236119912, 0.7470186099188137),
    (-1.656632069469323, -1.0529121456034995),
    (0.3088079114477798, -2.0493430211331782),
    (-0.5303123356519255, 0.32771070246061057),
    (0.07260076800988685, -0.6896371880558897),
    (0.44971489321811775, 0.25930569038738405),
];

/// Edges of the base; `0..9` is the boundary 9-cycle, `9..18` the inner vertices.
const BASE_EDGES: [(usize, usize); 51] = [
    (0, 1), (0, 8), (0, 9), (0, 10), (1, 2), (1, 10), (1, 11), (1, 17), (2, 3), (2, 11), (2, 12),
    (3, 4), (3, 11), (3, 12), (4, 5), (4, 12), (4, 13), (4, 15), (5, 6), (5, 13), (5, 14),
    (6, 7), (6, 13), (6, 14), (7, 8), (7, 9), (7, 14), (7, 16), (8, 9), (8, 10),
    (9, 10), (9, 14), (9, 16), (9, 17), (10, 11), (10, 16), (10, 17),
    (11, 12), (11, 15), (11, 17), (12, 13), (12, 15), (12, 17),
    (13, 14), (13, 15), (13, 16), (14, 15), (14, 16), (15, 16), (15, 17), (16, 17),
];

/// Inner positions of the base vertices that belong to the independent set.
const BASE_SET: [usize; 3] = [0, 2, 4];

fn base_design() -> CapDesign {
    let end = |v: usize| if v < 9 { CapEnd::Ring(v) } else { CapEnd::Inner(v - 9) };
    let edges = BASE_EDGES
        .iter()
        .filter(|&&(u, v)| !(u < 9 && v < 9))
        .map(|&(u, v)| (end(u), end(v)))
        .collect();
    let inner = BASE_INNER.iter().map(|&(x, y)| (x / 3.0, y / 3.0)).collect();
    CapDesign { k: 9, inner, edges }
}

/// One doubling strip between `short` and `long` (twice as many vertices):
/// each new vertex sees three consecutive short-cycle vertices and four
/// consecutive long-cycle vertices.
fn doubling_strip(lay: &mut Layout, short: &Ring, long: &Ring) -> Vec<VertexId> {
    let sigma = short.sp;
    let mid = (short.y + long.y) / 2.0;
    (0..short.len() as i64)
        .map(|j| {
            let p = ((j as f64 + 0.5) * sigma, mid);
            let t = lay.vertex(p);
            for q in j..j + 3 {
                lay.link(t, p, short, q);
            }
            for q in 2 * j..2 * j + 4 {
                lay.link(t, p, long, q);
            }
            t
        })
        .collect()
}

/// The base in the bottom cap and `level` doubling strips above it.
/// Returns the rings from the innermost outwards and the independent set.
fn grow(lay: &mut Layout, level: usize) -> (Vec<Ring>, Vec<VertexId>) {
    let f0 = lay.ring(9, 0.0, 0.0, true, &[]);
    let inner = lay.cap(&f0, false, &base_design());
    let mut set: Vec<VertexId> = BASE_SET.iter().map(|&i| inner[i]).collect();
    let mut rings = vec![f0];
    for _ in 0..level {
        let cur = rings.last().unwrap().clone();
        let next = lay.ring(2 * cur.len(), cur.y + 2.0 * cur.sp, 0.0, true, &[]);
        set.extend(doubling_strip(lay, &cur, &next));
        rings.push(next);
    }
    (rings, set)
}

pub fn m7(level: usize) -> Result<(OnePlaneDrawing, Certificate)> {
    let mut lay = Layout::new(9.0);
    let (rings, set) = grow(&mut lay, level);
    let top = rings.last().unwrap();
    let dr = lay.build((top.edges[0], false))?;
    Ok((dr, Certificate::new(7, set)))
}

/// Ids of the outer cycle of [`m7`].
pub fn m7_outer(level: usize) -> Vec<VertexId> {
    let mut lay = Layout::new(9.0);
    let (rings, _) = grow(&mut lay, level);
    rings.last().unwrap().ids.clone()
}

/// Two copies of the level-`k` graph facing each other, joined by a strip
/// whose vertices see three consecutive vertices on each side and form
/// paths of three.
pub fn min_deg7(k: usize) -> Result<(OnePlaneDrawing, Certificate)> {
    let mut lay = Layout::new(9.0);
    let (rings, mut set) = grow(&mut lay, k);
    let a = rings.last().unwrap().clone();
    let b = lay.ring(a.len(), a.y + 2.0 * a.sp, 0.0, true, &[]);
    let mid = (a.y + b.y) / 2.0;
    let mut strip = Vec::new();
    for j in 0..a.len() as i64 {
        let p = ((j as f64 + 0.5) * a.sp, mid);
        let t = lay.vertex(p);
        for q in j..j + 3 {
            lay.link(t, p, &a, q);
            lay.link(t, p, &b, q);
        }
        strip.push((t, p));
    }
    for c in strip.chunks(3) {
        lay.line(c[0].0, c[0].1, c[1].0, c[1].1);
        lay.line(c[1].0, c[1].1, c[2].0, c[2].1);
        set.extend([c[0].0, c[2].0]);
    }
    let mut long = b;
    while long.len() > 9 {
        let short = lay.ring(long.len() / 2, long.y + 2.0 * long.sp * 2.0, 0.0, true, &[]);
        set.extend(doubling_strip(&mut lay, &short, &long));
        long = short;
    }
    let inner = lay.cap(&long, true, &base_design());
    set.extend(BASE_SET.iter().map(|&i| inner[i]));
    let dr = lay.build((rings[0].edges[0], false))?;
    Ok((dr, Certificate::new(7, set)))
}
