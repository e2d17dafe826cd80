//! Straight-line sketches used by the generators to produce rotation data.
//!
//! A sketch is a set of pieces. Each piece is a plane or a flat cylinder
//! (x periodic) holding some vertices and polyline edges. Crossings are found
//! by segment intersection inside a piece; edges of different pieces never
//! meet except at shared vertices. A vertex may sit in several pieces, and
//! each piece may turn its local directions at that vertex by a fixed angle so
//! that all incident edge ends can be sorted in one common frame.

use std::collections::{HashMap, HashSet};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::graph_core::{Dart, EdgeId, MultiGraph, OnePlaneDrawing, VertexId};

pub(crate) type Pt = (f64, f64);

const EPS: f64 = 1e-9;

struct Piece {
    period: Option<f64>,
    pos: HashMap<VertexId, Pt>,
    frame: HashMap<VertexId, f64>,
    edges: Vec<EdgeId>,
}

#[derive(Default)]
pub(crate) struct Sketch {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    paths: Vec<(usize, Vec<Pt>)>,
    pieces: Vec<Piece>,
}

#[derive(Clone, Copy)]
struct Seg {
    edge: EdgeId,
    sub: usize,
    a: Pt,
    b: Pt,
}

struct Hit {
    edges: (EdgeId, EdgeId),
    dirs: (Pt, Pt),
}

fn sub(p: Pt, q: Pt) -> Pt {
    (p.0 - q.0, p.1 - q.1)
}

fn cross(p: Pt, q: Pt) -> f64 {
    p.0 * q.1 - p.1 * q.0
}

fn orient(a: Pt, b: Pt, c: Pt) -> f64 {
    cross(sub(b, a), sub(c, a))
}

fn angle(d: Pt) -> f64 {
    d.1.atan2(d.0).rem_euclid(TAU)
}

fn same(p: Pt, q: Pt) -> bool {
    (p.0 - q.0).abs() < EPS && (p.1 - q.1).abs() < EPS
}

fn shifted(p: Pt, dx: f64) -> Pt {
    (p.0 + dx, p.1)
}

fn geometry(msg: String) -> Error {
    Error::AttachRuleInfeasible(msg)
}

impl Sketch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&mut self) -> VertexId {
        self.n += 1;
        self.n - 1
    }

    pub fn vertices(&mut self, k: usize) -> Vec<VertexId> {
        (0..k).map(|_| self.vertex()).collect()
    }

    pub fn plane(&mut self) -> usize {
        self.add_piece(None)
    }

    pub fn cylinder(&mut self, width: f64) -> usize {
        self.add_piece(Some(width))
    }

    fn add_piece(&mut self, period: Option<f64>) -> usize {
        self.pieces.push(Piece {
            period,
            pos: HashMap::new(),
            frame: HashMap::new(),
            edges: Vec::new(),
        });
        self.pieces.len() - 1
    }

    fn canonical(&self, piece: usize, p: Pt) -> Pt {
        match self.pieces[piece].period {
            Some(w) => (p.0.rem_euclid(w), p.1),
            None => p,
        }
    }

    /// Puts `v` at `p` in `piece`. Placing twice at the same spot is allowed.
    pub fn place(&mut self, piece: usize, v: VertexId, p: Pt) {
        let c = self.canonical(piece, p);
        let old = self.pieces[piece].pos.insert(v, c);
        if let Some(o) = old {
            let w = self.pieces[piece].period.unwrap_or(f64::INFINITY);
            let dx = (o.0 - c.0).abs();
            assert!(
                (dx < 1e-7 || (w - dx).abs() < 1e-7) && (o.1 - c.1).abs() < 1e-7,
                "vertex {v} placed twice at different points"
            );
        }
    }

    /// Turns the directions of `piece` at `v` by `turn` radians.
    pub fn set_frame(&mut self, piece: usize, v: VertexId, turn: f64) {
        self.pieces[piece].frame.insert(v, turn);
    }

    /// A straight edge; endpoints are given in unwrapped coordinates.
    pub fn line(&mut self, piece: usize, u: VertexId, pu: Pt, v: VertexId, pv: Pt) -> EdgeId {
        self.path(piece, u, v, vec![pu, pv])
    }

    /// A straight edge between two placed vertices of a plane piece.
    pub fn join(&mut self, piece: usize, u: VertexId, v: VertexId) -> EdgeId {
        let pu = self.pieces[piece].pos[&u];
        let pv = self.pieces[piece].pos[&v];
        self.line(piece, u, pu, v, pv)
    }

    /// A polyline edge from `u` to `v` through `pts` (endpoints included).
    pub fn path(&mut self, piece: usize, u: VertexId, v: VertexId, pts: Vec<Pt>) -> EdgeId {
        assert!(pts.len() >= 2);
        for (x, p) in [(u, pts[0]), (v, *pts.last().unwrap())] {
            let c = self.canonical(piece, p);
            let at = self.pieces[piece].pos.get(&x).copied();
            match at {
                Some(q) => assert!(
                    same(self.canonical(piece, sub(c, q)), (0.0, 0.0))
                        || same(self.canonical(piece, sub(q, c)), (0.0, 0.0)),
                    "edge endpoint {x} does not match its placement"
                ),
                None => self.place(piece, x, p),
            }
        }
        self.edges.push((u, v));
        self.paths.push((piece, pts));
        let e = self.edges.len() - 1;
        self.pieces[piece].edges.push(e);
        e
    }

    fn segments(&self, piece: usize) -> Vec<Seg> {
        let mut out = Vec::new();
        for &e in &self.pieces[piece].edges {
            let pts = &self.paths[e].1;
            for i in 0..pts.len() - 1 {
                out.push(Seg { edge: e, sub: i, a: pts[i], b: pts[i + 1] });
            }
        }
        out
    }

    fn is_endpoint(&self, s: &Seg, at_start: bool) -> bool {
        let last = self.paths[s.edge].1.len() - 2;
        if at_start {
            s.sub == 0
        } else {
            s.sub == last
        }
    }

    fn find_hits(&self, piece: usize) -> Result<Vec<Hit>> {
        let segs = self.segments(piece);
        let period = self.pieces[piece].period;
        let mut pts: Vec<(VertexId, Pt)> =
            self.pieces[piece].pos.iter().map(|(&v, &p)| (v, p)).collect();
        pts.sort_by_key(|&(v, _)| v);
        if segs.is_empty() {
            return Ok(Vec::new());
        }
        let (x0, width) = match period {
            Some(w) => (0.0, w),
            None => {
                let lo = segs.iter().map(|s| s.a.0.min(s.b.0)).fold(f64::INFINITY, f64::min);
                let hi = segs.iter().map(|s| s.a.0.max(s.b.0)).fold(f64::NEG_INFINITY, f64::max);
                (lo - 1.0, hi - lo + 2.0)
            }
        };
        let span: f64 = segs.iter().map(|s| (s.a.0 - s.b.0).abs()).sum::<f64>() / segs.len() as f64;
        let cells = ((width / span.max(width / segs.len() as f64)).floor() as usize).clamp(1, segs.len());
        let cw = width / cells as f64;
        // Bucket every segment (translated so its left end lies in the first
        // period) and every vertex by x.
        let mut seg_cells: Vec<Vec<(usize, f64)>> = vec![Vec::new(); cells];
        for (i, s) in segs.iter().enumerate() {
            let lo = s.a.0.min(s.b.0) - x0;
            let base = match period {
                Some(w) => (lo / w).floor() * w,
                None => 0.0,
            };
            let c0 = ((lo - base) / cw).floor() as i64;
            let c1 = ((s.a.0.max(s.b.0) - x0 - base) / cw).floor() as i64;
            for c in c0..=c1 {
                let wraps = c.div_euclid(cells as i64);
                let shift = -base - wraps as f64 * width;
                if period.is_none() && wraps != 0 {
                    continue;
                }
                seg_cells[c.rem_euclid(cells as i64) as usize].push((i, shift));
            }
        }
        let mut pt_cells: Vec<Vec<usize>> = vec![Vec::new(); cells];
        for (k, &(_, p)) in pts.iter().enumerate() {
            let c = (((p.0 - x0) / cw).floor() as i64).clamp(0, cells as i64 - 1);
            pt_cells[c as usize].push(k);
        }
        let mut seen = HashSet::new();
        let mut hits = Vec::new();
        for c in 0..cells {
            let bucket = &seg_cells[c];
            for (i, &(s1, sh1)) in bucket.iter().enumerate() {
                let a = &segs[s1];
                let (pa, pb) = (shifted(a.a, sh1), shifted(a.b, sh1));
                for &k in &pt_cells[c] {
                    let (v, p) = pts[k];
                    let on_line = orient(pa, pb, p).abs() < EPS * (1.0 + dist(pa, pb));
                    let inside = (p.0 - pa.0) * (pb.0 - pa.0) + (p.1 - pa.1) * (pb.1 - pa.1);
                    let len2 = dist(pa, pb).powi(2);
                    if on_line && inside > EPS && inside < len2 - EPS {
                        return Err(geometry(format!("edge {} passes through vertex {v}", a.edge)));
                    }
                }
                for &(s2, sh2) in &bucket[i + 1..] {
                    let b = &segs[s2];
                    let rel = ((sh2 - sh1) / width).round() as i64;
                    let key = if s1 < s2 { (s1, s2, rel) } else { (s2, s1, -rel) };
                    if s1 == s2 {
                        if rel != 0 && seen.insert(key) {
                            let (qa, qb) = (shifted(b.a, sh2), shifted(b.b, sh2));
                            if segments_meet(pa, pb, qa, qb) {
                                return Err(geometry(format!("edge {} meets its own translate", a.edge)));
                            }
                        }
                        continue;
                    }
                    if !seen.insert(key) {
                        continue;
                    }
                    let (qa, qb) = (shifted(b.a, sh2), shifted(b.b, sh2));
                    match classify(pa, pb, qa, qb) {
                        Contact::None => {}
                        Contact::Proper => {
                            if a.edge == b.edge {
                                return Err(geometry(format!("edge {} crosses itself", a.edge)));
                            }
                            hits.push(Hit {
                                edges: (a.edge, b.edge),
                                dirs: (sub(pb, pa), sub(qb, qa)),
                            });
                        }
                        Contact::Touch => {
                            let ends = [(pa, pb, true), (pb, pa, false)];
                            let others = [(qa, qb, true), (qb, qa, false)];
                            let mut ok = false;
                            for &(p, p_far, sa) in &ends {
                                for &(q, q_far, sb) in &others {
                                    if same(p, q) && self.touch_ok(a, sa, b, sb) {
                                        let (u, w) = (sub(p_far, p), sub(q_far, p));
                                        let overlap = cross(u, w).abs() < EPS * (1.0 + dist(p, p_far) * dist(p, q_far))
                                            && u.0 * w.0 + u.1 * w.1 > 0.0;
                                        ok = !overlap;
                                    }
                                }
                            }
                            if !ok {
                                return Err(geometry(format!("edges {} and {} touch", a.edge, b.edge)));
                            }
                        }
                    }
                }
            }
        }
        Ok(hits)
    }

    /// Whether two segment ends meeting at one point is legitimate: either
    /// both are edge endpoints at a shared vertex or both are consecutive
    /// pieces of one polyline.
    fn touch_ok(&self, a: &Seg, a_start: bool, b: &Seg, b_start: bool) -> bool {
        if a.edge == b.edge {
            return (a.sub + 1 == b.sub && !a_start && b_start) || (b.sub + 1 == a.sub && a_start && !b_start);
        }
        if !(self.is_endpoint(a, a_start) && self.is_endpoint(b, b_start)) {
            return false;
        }
        let end_vertex = |s: &Seg, start: bool| {
            let (u, v) = self.edges[s.edge];
            if start {
                u
            } else {
                v
            }
        };
        end_vertex(a, a_start) == end_vertex(b, b_start)
    }

    /// Resolves crossings and rotations and validates the result. The outer
    /// face is the face on the left of `outer` (given as an edge and a flag
    /// selecting the reverse direction).
    pub fn build(&self, outer: (EdgeId, bool)) -> Result<OnePlaneDrawing> {
        let m = self.edges.len();
        let mut hit_of: Vec<Option<usize>> = vec![None; m];
        let mut hits = Vec::new();
        for piece in 0..self.pieces.len() {
            for h in self.find_hits(piece)? {
                for e in [h.edges.0, h.edges.1] {
                    if hit_of[e].is_some() {
                        return Err(geometry(format!("edge {e} is crossed more than once")));
                    }
                    hit_of[e] = Some(hits.len());
                }
                hits.push(h);
            }
        }
        let mut order: Vec<usize> = (0..hits.len()).collect();
        order.sort_by_key(|&i| {
            let (a, b) = hits[i].edges;
            (a.min(b), a.max(b))
        });
        let mut crossings = Vec::with_capacity(hits.len());
        let mut rotation: Vec<Vec<(f64, Dart)>> = vec![Vec::new(); self.n + hits.len()];
        for (k, &i) in order.iter().enumerate() {
            let h = &hits[i];
            let (mut a, mut b) = h.edges;
            let (mut da, mut db) = h.dirs;
            if a > b {
                std::mem::swap(&mut a, &mut b);
                std::mem::swap(&mut da, &mut db);
            }
            crossings.push((a, b));
            let node = &mut rotation[self.n + k];
            node.push((angle(da), Dart::new(a, 1, 0)));
            node.push((angle((-da.0, -da.1)), Dart::new(a, 0, 1)));
            node.push((angle(db), Dart::new(b, 1, 0)));
            node.push((angle((-db.0, -db.1)), Dart::new(b, 0, 1)));
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let (piece, pts) = &self.paths[e];
            let frame = &self.pieces[*piece].frame;
            let last = if hit_of[e].is_some() { 1 } else { 0 };
            let du = sub(pts[1], pts[0]);
            let dv = sub(pts[pts.len() - 2], pts[pts.len() - 1]);
            let tu = frame.get(&u).copied().unwrap_or(0.0);
            let tv = frame.get(&v).copied().unwrap_or(0.0);
            rotation[u].push(((angle(du) + tu).rem_euclid(TAU), Dart::new(e, 0, 0)));
            rotation[v].push(((angle(dv) + tv).rem_euclid(TAU), Dart::new(e, last, 1)));
        }
        let mut rot = Vec::with_capacity(rotation.len());
        for (i, mut list) in rotation.into_iter().enumerate() {
            list.sort_by(|x, y| x.0.total_cmp(&y.0));
            for w in list.windows(2) {
                if (w[1].0 - w[0].0).abs() < 1e-10 {
                    return Err(geometry(format!("two edge ends overlap at node {i}")));
                }
            }
            rot.push(list.into_iter().map(|(_, d)| d).collect());
        }
        let graph = MultiGraph::new(self.n, self.edges.clone())?;
        let drawing = OnePlaneDrawing::new(graph, crossings, rot, 0)?;
        let (e, reverse) = outer;
        let dart = if reverse {
            Dart::new(e, if drawing.is_crossed(e) { 1 } else { 0 }, 1)
        } else {
            Dart::new(e, 0, 0)
        };
        let f = drawing.face_of(dart);
        drawing.with_outer_face(f)
    }
}

fn dist(p: Pt, q: Pt) -> f64 {
    ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt()
}

enum Contact {
    None,
    Proper,
    Touch,
}

fn classify(a: Pt, b: Pt, c: Pt, d: Pt) -> Contact {
    let scale = 1.0 + dist(a, b).max(dist(c, d));
    let eps = EPS * scale * scale;
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let sign = |o: f64| if o > eps { 1 } else if o < -eps { -1 } else { 0 };
    let (s1, s2, s3, s4) = (sign(o1), sign(o2), sign(o3), sign(o4));
    if s1 * s2 < 0 && s3 * s4 < 0 {
        return Contact::Proper;
    }
    if s1 * s2 > 0 || s3 * s4 > 0 {
        return Contact::None;
    }
    let in_box = |p: Pt, q: Pt, r: Pt| {
        r.0 >= p.0.min(q.0) - EPS
            && r.0 <= p.0.max(q.0) + EPS
            && r.1 >= p.1.min(q.1) - EPS
            && r.1 <= p.1.max(q.1) + EPS
    };
    let touches = (s1 == 0 && in_box(a, b, c))
        || (s2 == 0 && in_box(a, b, d))
        || (s3 == 0 && in_box(c, d, a))
        || (s4 == 0 && in_box(c, d, b));
    if touches {
        Contact::Touch
    } else {
        Contact::None
    }
}

fn segments_meet(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    !matches!(classify(a, b, c, d), Contact::None)
}
