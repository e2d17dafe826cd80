//! Certificate audits: independence with a degree threshold, planar pairings,
//! claw covers, the bipartite counting inequality and optimal drawings.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_core::{MultiGraph, Node, OnePlaneDrawing, VertexId};

/// An independent set with its claimed degree threshold and optional
/// structure used by the transforms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub d: usize,
    #[serde(rename = "I")]
    pub set: Vec<VertexId>,
    pub pairing: Option<Vec<(VertexId, VertexId)>>,
    pub claw_cover: Option<Vec<(VertexId, [VertexId; 3])>>,
}

impl Certificate {
    pub fn new(d: usize, mut set: Vec<VertexId>) -> Self {
        set.sort_unstable();
        Certificate { d, set, pairing: None, claw_cover: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub check: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl AuditReport {
    fn from_witnesses(check: &str, witnesses: Vec<String>) -> Self {
        AuditReport { check: check.to_string(), passed: witnesses.is_empty(), witnesses }
    }
}

pub fn check_independent(g: &MultiGraph, c: &Certificate) -> AuditReport {
    let mut w = Vec::new();
    let n = g.vertex_count();
    let mut member = vec![false; n];
    for &v in &c.set {
        if v >= n {
            w.push(format!("vertex {v} does not exist"));
        } else if member[v] {
            w.push(format!("vertex {v} listed twice"));
        } else {
            member[v] = true;
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if member[u] && member[v] {
            w.push(format!("edge {e} joins {u} and {v}"));
        }
    }
    let deg = g.degree_vec();
    for &v in &c.set {
        if v < n && deg[v] < c.d {
            w.push(format!("vertex {v} has degree {} < {}", deg[v], c.d));
        }
    }
    AuditReport::from_witnesses("independent", w)
}

/// A pair of the pairing together with the face and walk positions where
/// its chord is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairSlot {
    pub pair: (VertexId, VertexId),
    pub face: usize,
    pub pos: (usize, usize),
}

fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let (i, j) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |x: usize| i < x && x < j;
    inside(b.0) != inside(b.1)
}

/// Walk positions of each vertex, per face.
fn occurrences(dr: &OnePlaneDrawing, wanted: &[VertexId]) -> BTreeMap<VertexId, Vec<(usize, usize)>> {
    let mut occ: BTreeMap<VertexId, Vec<(usize, usize)>> =
        wanted.iter().map(|&v| (v, Vec::new())).collect();
    for f in 0..dr.face_count() {
        for (pos, node) in dr.face_nodes(f).into_iter().enumerate() {
            if let Node::Vertex(v) = node {
                if let Some(list) = occ.get_mut(&v) {
                    list.push((f, pos));
                }
            }
        }
    }
    occ
}

fn chord_options(
    occ: &BTreeMap<VertexId, Vec<(usize, usize)>>,
    t: VertexId,
    u: VertexId,
) -> Vec<(usize, (usize, usize))> {
    let mut out = Vec::new();
    for &(f, p) in &occ[&t] {
        for &(g, q) in &occ[&u] {
            if f == g {
                out.push((f, (p, q)));
            }
        }
    }
    out
}

fn fits(chords: &BTreeMap<usize, Vec<(usize, usize)>>, face: usize, c: (usize, usize)) -> bool {
    chords.get(&face).is_none_or(|list| list.iter().all(|&o| !interleave(o, c)))
}

/// Finds faces for all chords of a given pairing so that chords sharing a
/// face do not interleave. The search is exhaustive.
pub fn assign_pairing(dr: &OnePlaneDrawing, pairs: &[(VertexId, VertexId)]) -> Option<Vec<PairSlot>> {
    let ends: Vec<VertexId> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    if ends.iter().any(|&v| v >= dr.vertex_count()) {
        return None;
    }
    let occ = occurrences(dr, &ends);
    let mut options: Vec<(usize, Vec<(usize, (usize, usize))>)> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (i, chord_options(&occ, a, b)))
        .collect();
    if options.iter().any(|(_, o)| o.is_empty()) {
        return None;
    }
    options.sort_by_key(|(i, o)| (o.len(), *i));
    let mut chosen = vec![None; pairs.len()];
    let mut chords: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    fn go(
        k: usize,
        options: &[(usize, Vec<(usize, (usize, usize))>)],
        chords: &mut BTreeMap<usize, Vec<(usize, usize)>>,
        chosen: &mut Vec<Option<(usize, (usize, usize))>>,
    ) -> bool {
        if k == options.len() {
            return true;
        }
        let (i, ref opts) = options[k];
        for &(f, c) in opts {
            if fits(chords, f, c) {
                chords.entry(f).or_default().push(c);
                chosen[i] = Some((f, c));
                if go(k + 1, options, chords, chosen) {
                    return true;
                }
                chords.get_mut(&f).unwrap().pop();
                chosen[i] = None;
            }
        }
        false
    }
    if !go(0, &options, &mut chords, &mut chosen) {
        return None;
    }
    Some(
        pairs
            .iter()
            .zip(chosen)
            .map(|(&pair, slot)| {
                let (face, pos) = slot.unwrap();
                PairSlot { pair, face, pos }
            })
            .collect(),
    )
}

/// Searches for a planar pairing of `set`, giving up after `limit` search nodes.
pub fn find_pairing(dr: &OnePlaneDrawing, set: &[VertexId], limit: usize) -> Option<Vec<(VertexId, VertexId)>> {
    if set.len() % 2 == 1 {
        return None;
    }
    let occ = occurrences(dr, set);
    let mut partners: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &t in set {
        let faces: BTreeSet<usize> = occ[&t].iter().map(|&(f, _)| f).collect();
        let list = set
            .iter()
            .copied()
            .filter(|&u| u != t && occ[&u].iter().any(|(f, _)| faces.contains(f)))
            .collect();
        partners.insert(t, list);
    }
    struct State<'a> {
        occ: &'a BTreeMap<VertexId, Vec<(usize, usize)>>,
        partners: &'a BTreeMap<VertexId, Vec<VertexId>>,
        matched: BTreeMap<VertexId, VertexId>,
        chords: BTreeMap<usize, Vec<(usize, usize)>>,
        nodes: usize,
        limit: usize,
    }
    fn go(st: &mut State, set: &[VertexId]) -> bool {
        st.nodes += 1;
        if st.nodes > st.limit {
            return false;
        }
        let mut best: Option<(VertexId, Vec<(VertexId, usize, (usize, usize))>)> = None;
        for &t in set {
            if st.matched.contains_key(&t) {
                continue;
            }
            let mut opts = Vec::new();
            for &u in &st.partners[&t] {
                if st.matched.contains_key(&u) {
                    continue;
                }
                for (f, c) in chord_options(st.occ, t, u) {
                    if fits(&st.chords, f, c) {
                        opts.push((u, f, c));
                    }
                }
            }
            let better = best.as_ref().is_none_or(|(_, b)| opts.len() < b.len());
            if better {
                let stop = opts.is_empty();
                best = Some((t, opts));
                if stop {
                    break;
                }
            }
        }
        let Some((t, opts)) = best else {
            return true;
        };
        for (u, f, c) in opts {
            st.matched.insert(t, u);
            st.matched.insert(u, t);
            st.chords.entry(f).or_default().push(c);
            if go(st, set) {
                return true;
            }
            st.chords.get_mut(&f).unwrap().pop();
            st.matched.remove(&t);
            st.matched.remove(&u);
            if st.nodes > st.limit {
                return false;
            }
        }
        false
    }
    let mut st = State {
        occ: &occ,
        partners: &partners,
        matched: BTreeMap::new(),
        chords: BTreeMap::new(),
        nodes: 0,
        limit,
    };
    if !go(&mut st, set) {
        return None;
    }
    let mut out: Vec<(VertexId, VertexId)> = st
        .matched
        .iter()
        .filter(|(a, b)| a < b)
        .map(|(&a, &b)| (a, b))
        .collect();
    out.sort_unstable();
    Some(out)
}

pub fn check_planar_pairing(dr: &OnePlaneDrawing, c: &Certificate) -> AuditReport {
    let name = "planar_pairing";
    let Some(pairs) = &c.pairing else {
        return AuditReport::from_witnesses(name, vec!["no pairing given".into()]);
    };
    let mut w = Vec::new();
    let mut covered: Vec<VertexId> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    covered.sort_unstable();
    if covered.windows(2).any(|x| x[0] == x[1]) {
        w.push("pairs are not disjoint".to_string());
    }
    let mut set = c.set.clone();
    set.sort_unstable();
    if covered != set {
        w.push("pairs do not cover the independent set exactly".to_string());
    }
    if w.is_empty() {
        let occ = occurrences(dr, &covered);
        for &(a, b) in pairs {
            if chord_options(&occ, a, b).is_empty() {
                w.push(format!("pair ({a}, {b}) shares no face"));
            }
        }
        if w.is_empty() && assign_pairing(dr, pairs).is_none() {
            w.push("no assignment of chords to faces avoids interleaving".to_string());
        }
    }
    AuditReport::from_witnesses(name, w)
}

pub fn check_claw_cover(g: &MultiGraph, c: &Certificate) -> AuditReport {
    let name = "claw_cover";
    let Some(cover) = &c.claw_cover else {
        return AuditReport::from_witnesses(name, vec!["no claw cover given".into()]);
    };
    let n = g.vertex_count();
    let mut w = Vec::new();
    if c.set.len() % 3 != 0 {
        w.push(format!("|I| = {} is not divisible by 3", c.set.len()));
    }
    let mut member = vec![false; n];
    for &v in c.set.iter().filter(|&&v| v < n) {
        member[v] = true;
    }
    let mut centers = BTreeSet::new();
    let mut leaves = Vec::new();
    for &(z, ls) in cover {
        if z >= n || ls.iter().any(|&l| l >= n) {
            w.push(format!("claw at {z} uses a missing vertex"));
            continue;
        }
        if !centers.insert(z) {
            w.push(format!("center {z} used twice"));
        }
        if member[z] {
            w.push(format!("center {z} lies in I"));
        }
        leaves.extend_from_slice(&ls);
    }
    leaves.sort_unstable();
    let mut set = c.set.clone();
    set.sort_unstable();
    if leaves != set {
        w.push("leaves do not partition I".to_string());
    }
    let mut mult: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for &(u, v) in g.edges() {
        *mult.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    }
    let adj = g.neighbors();
    for &(z, ls) in cover {
        if z >= n {
            continue;
        }
        let in_i: BTreeSet<VertexId> = adj[z].iter().copied().filter(|&x| member[x]).collect();
        let want: BTreeSet<VertexId> = ls.iter().copied().collect();
        if in_i != want {
            w.push(format!("center {z} is adjacent to I-vertices {in_i:?}, expected {want:?}"));
        }
        for &l in &ls {
            if mult.get(&(z.min(l), z.max(l))).copied().unwrap_or(0) > 1 {
                w.push(format!("center {z} has parallel edges to {l}"));
            }
        }
        for &x in &adj[z] {
            if centers.contains(&x) {
                w.push(format!("centers {z} and {x} are adjacent"));
            }
        }
    }
    for &v in &c.set {
        if v < n {
            let k = adj[v].iter().filter(|x| centers.contains(x)).count();
            if k != 1 {
                w.push(format!("vertex {v} is adjacent to {k} centers"));
            }
        }
    }
    AuditReport::from_witnesses(name, w)
}

/// Searches for a claw cover of `set` among the other vertices.
pub fn find_claw_cover(g: &MultiGraph, set: &[VertexId], limit: usize) -> Option<Vec<(VertexId, [VertexId; 3])>> {
    if set.len() % 3 != 0 {
        return None;
    }
    let n = g.vertex_count();
    let mut member = vec![false; n];
    for &v in set {
        member[v] = true;
    }
    let adj = g.neighbors();
    let mut mult: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for &(u, v) in g.edges() {
        *mult.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    }
    let mut claws: BTreeMap<VertexId, [VertexId; 3]> = BTreeMap::new();
    for z in (0..n).filter(|&z| !member[z]) {
        let ls: Vec<VertexId> = adj[z].iter().copied().filter(|&x| member[x]).collect();
        let simple = ls.iter().all(|&l| mult[&(z.min(l), z.max(l))] == 1);
        if ls.len() == 3 && simple {
            claws.insert(z, [ls[0], ls[1], ls[2]]);
        }
    }
    let mut by_leaf: BTreeMap<VertexId, Vec<VertexId>> = set.iter().map(|&v| (v, Vec::new())).collect();
    for (&z, ls) in &claws {
        for l in ls {
            by_leaf.get_mut(l).unwrap().push(z);
        }
    }
    struct State<'a> {
        adj: &'a [Vec<VertexId>],
        claws: &'a BTreeMap<VertexId, [VertexId; 3]>,
        by_leaf: &'a BTreeMap<VertexId, Vec<VertexId>>,
        covered: BTreeSet<VertexId>,
        chosen: Vec<VertexId>,
        nodes: usize,
        limit: usize,
    }
    fn go(st: &mut State) -> bool {
        st.nodes += 1;
        if st.nodes > st.limit {
            return false;
        }
        let mut best: Option<(VertexId, Vec<VertexId>)> = None;
        for (&v, zs) in st.by_leaf {
            if st.covered.contains(&v) {
                continue;
            }
            let ok: Vec<VertexId> = zs
                .iter()
                .copied()
                .filter(|z| {
                    st.claws[z].iter().all(|l| !st.covered.contains(l))
                        && st.chosen.iter().all(|c| !st.adj[*z].contains(c))
                })
                .collect();
            if best.as_ref().is_none_or(|(_, b)| ok.len() < b.len()) {
                let stop = ok.is_empty();
                best = Some((v, ok));
                if stop {
                    break;
                }
            }
        }
        let Some((_, opts)) = best else {
            return true;
        };
        for z in opts {
            let ls = st.claws[&z];
            st.covered.extend(ls);
            st.chosen.push(z);
            if go(st) {
                return true;
            }
            st.chosen.pop();
            for l in ls {
                st.covered.remove(&l);
            }
        }
        false
    }
    let mut st = State {
        adj: &adj,
        claws: &claws,
        by_leaf: &by_leaf,
        covered: BTreeSet::new(),
        chosen: Vec::new(),
        nodes: 0,
        limit,
    };
    if !go(&mut st) {
        return None;
    }
    let mut out: Vec<(VertexId, [VertexId; 3])> = st.chosen.iter().map(|&z| (z, claws[&z])).collect();
    out.sort_unstable();
    Some(out)
}

/// Both sides of `2|I_3| + sum_{d>=4} (3d-6)|I_d| <= 12|Ī| - 24`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InequalitySides {
    pub lhs: i64,
    pub rhs: i64,
}

pub fn check_bipartite_inequality(g: &MultiGraph, c: &Certificate) -> Result<(AuditReport, InequalitySides)> {
    if !g.is_simple() {
        return Err(Error::PreconditionViolated("graph is not simple".into()));
    }
    if c.set.is_empty() {
        return Err(Error::PreconditionViolated("independent set is empty".into()));
    }
    let deg = g.degree_vec();
    let mut lhs: i64 = 0;
    for &v in &c.set {
        let d = deg[v] as i64;
        if d < 3 {
            return Err(Error::PreconditionViolated(format!("vertex {v} has degree {d} < 3")));
        }
        lhs += if d == 3 { 2 } else { 3 * d - 6 };
    }
    let others = g.vertex_count() as i64 - c.set.len() as i64;
    let rhs = 12 * others - 24;
    let mut w = Vec::new();
    if lhs > rhs {
        w.push(format!("{lhs} > {rhs}"));
    }
    Ok((AuditReport::from_witnesses("bipartite_inequality", w), InequalitySides { lhs, rhs }))
}

pub fn check_optimal(dr: &OnePlaneDrawing) -> AuditReport {
    let n = dr.vertex_count() as i64;
    let mut w = Vec::new();
    let (free, bigons) = dr.is_bigon_free();
    if !free {
        w.push(format!("bigon faces {bigons:?}"));
    }
    let m = dr.edge_count() as i64;
    if m != 4 * n - 8 {
        w.push(format!("edge count {m} != 4n-8 = {}", 4 * n - 8));
    }
    let cr = dr.crossings().len() as i64;
    if cr != n - 2 {
        w.push(format!("crossing count {cr} != n-2 = {}", n - 2));
    }
    for v in 0..dr.vertex_count() {
        let rot = dr.rotation(Node::Vertex(v));
        let flags: Vec<bool> = rot.iter().map(|d| dr.is_crossed(d.edge)).collect();
        let k = flags.len();
        if k % 2 == 1 || (0..k).any(|i| flags[i] == flags[(i + 1) % k]) {
            w.push(format!("vertex {v} does not alternate crossed and uncrossed edges"));
        }
    }
    AuditReport::from_witnesses("optimal", w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::Dart;

    fn cycle(k: usize) -> OnePlaneDrawing {
        let g = MultiGraph::new(k, (0..k).map(|i| (i, (i + 1) % k)).collect()).unwrap();
        let rot = (0..k).map(|v| vec![Dart::new(v, 0, 0), Dart::new((v + k - 1) % k, 0, 1)]).collect();
        OnePlaneDrawing::new(g, vec![], rot, 0).unwrap()
    }

    fn square() -> OnePlaneDrawing {
        cycle(4)
    }

    #[test]
    fn edge_inside_set_fails() {
        let g = MultiGraph::new(2, vec![(0, 1)]).unwrap();
        let r = check_independent(&g, &Certificate::new(1, vec![0, 1]));
        assert!(!r.passed);
        assert_eq!(r.witnesses.len(), 1);
    }

    #[test]
    fn interleaved_pairs_fail() {
        let mut c = Certificate::new(2, vec![0, 1, 2, 3]);
        c.pairing = Some(vec![(0, 2), (1, 3)]);
        assert!(check_planar_pairing(&square(), &c).passed);
        // Three pairwise interleaving chords cannot fit in two faces.
        let mut c = Certificate::new(2, (0..6).collect());
        c.pairing = Some(vec![(0, 3), (1, 4), (2, 5)]);
        assert!(!check_planar_pairing(&cycle(6), &c).passed);
        c.pairing = Some(vec![(0, 3), (1, 2), (4, 5)]);
        assert!(check_planar_pairing(&cycle(6), &c).passed);
    }

    #[test]
    fn pairing_search_on_square() {
        let dr = square();
        let p = find_pairing(&dr, &[0, 1, 2, 3], 1000).unwrap();
        let mut c = Certificate::new(2, vec![0, 1, 2, 3]);
        c.pairing = Some(p);
        assert!(check_planar_pairing(&dr, &c).passed);
    }

    #[test]
    fn claw_with_four_leaves_fails() {
        let g = MultiGraph::new(5, (1..5).map(|v| (0, v)).collect()).unwrap();
        let mut c = Certificate::new(1, vec![1, 2, 3]);
        c.claw_cover = Some(vec![(0, [1, 2, 3])]);
        assert!(check_claw_cover(&g, &c).passed);
        let mut c = Certificate::new(1, vec![1, 2, 3, 4]);
        c.claw_cover = Some(vec![(0, [1, 2, 3])]);
        assert!(!check_claw_cover(&g, &c).passed);
    }

    #[test]
    fn star_leaves_violate_precondition() {
        let g = MultiGraph::new(4, (1..4).map(|v| (0, v)).collect()).unwrap();
        let c = Certificate::new(1, vec![1, 2, 3]);
        assert!(matches!(check_bipartite_inequality(&g, &c), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn plain_quadrangulation_is_not_optimal() {
        assert!(!check_optimal(&square()).passed);
    }
}
