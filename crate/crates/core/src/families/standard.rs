//! The standard construction: nested cycles on a cylinder, independent-set
//! vertices wired into the faces between consecutive cycles, and end caps.

use serde::{Deserialize, Serialize};

use super::layout::{CapDesign, CapEnd, Layout, Ring};
use crate::certify::{find_pairing, Certificate};
use crate::error::{Error, Result};
use crate::graph_core::{OnePlaneDrawing, VertexId};
use crate::sketch::Pt;

/// How the vertices of a middle face are wired to its two bounding cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttachRule {
    /// Pick the rule from the cycle lengths and τ.
    Auto,
    /// Two vertices per cycle edge, each joined to both ends of the edge on
    /// both cycles (quadrangles, τ = 8, degree 4).
    Twin,
    /// Sixteen vertices per 12-cycle in a period-3 pattern with 3 + 2 or
    /// 2 + 3 neighbours (degree 5).
    Period3,
    /// Zig-zag triangulated strip between triangles, three vertices in each
    /// of its six triangles (degree 3).
    Triangles,
    /// One vertex per cycle vertex, joined to three consecutive vertices on
    /// each side (degree 6).
    Window3,
    /// Between a k-cycle and a 2k-cycle: each vertex sees three vertices of
    /// the short cycle and four of the long one (degree 7).
    HexStep,
}

/// What goes into the two end faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndCap {
    Auto,
    None,
    /// This many independent vertices joined to every vertex of the end cycle.
    Joined(usize),
    /// Four-vertex path plus twelve independent vertices (12-cycles only).
    Path12,
    /// A crossing pair of diagonals (quadrangles only).
    Crossed,
}

fn rule_for(lo: usize, hi: usize, tau: usize) -> Option<AttachRule> {
    match (lo, hi, tau) {
        (4, 4, 8) => Some(AttachRule::Twin),
        (12, 12, 16) => Some(AttachRule::Period3),
        (3, 3, 18) => Some(AttachRule::Triangles),
        (3, 3, 3) | (4, 4, 4) => Some(AttachRule::Window3),
        (3, 6, 3) | (6, 3, 3) => Some(AttachRule::HexStep),
        _ => None,
    }
}

fn rule_fits(rule: AttachRule, lo: usize, hi: usize, tau: usize) -> bool {
    match rule {
        AttachRule::Auto => rule_for(lo, hi, tau).is_some(),
        AttachRule::Twin => lo == hi && tau == 2 * lo,
        AttachRule::Period3 => lo == hi && lo % 3 == 0 && 3 * tau == 4 * lo,
        AttachRule::Triangles => lo == hi && tau == 6 * lo,
        AttachRule::Window3 => lo == hi && lo >= 3 && tau == lo,
        AttachRule::HexStep => (2 * lo == hi && tau == lo) || (lo == 2 * hi && tau == hi),
    }
}

fn rule_degree(rule: AttachRule) -> usize {
    match rule {
        AttachRule::Auto => 0,
        AttachRule::Twin => 4,
        AttachRule::Period3 => 5,
        AttachRule::Triangles => 3,
        AttachRule::Window3 => 6,
        AttachRule::HexStep => 7,
    }
}

/// One period of the degree-5 strip: position relative to the strip middle,
/// neighbours above, first index above, first index below, degree.
const PERIOD3: [(f64, f64, usize, i64, i64, usize); 4] = [
    (2.8360591575447294, 0.5440750064001336, 3, 2, 2, 5),
    (2.424983929764872, 0.1727676549851742, 2, 2, 1, 5),
    (0.49309343611067546, -0.5846570822406336, 3, 0, 0, 5),
    (2.2302672952493863, 0.17504009404454884, 2, 1, 0, 5),
];

/// Inner points of the 12-gon cap: the path first, then the twelve
/// independent vertices.
const PATH12_POINTS: [Pt; 16] = [
    (-0.45, 0.0),
    (-0.15, 0.0),
    (0.15, 0.0),
    (0.45, 0.0),
    (-0.6807265801152628, 0.36473308156995843),
    (-0.552862328127219, -0.029712288491679426),
    (-0.6292292076920541, -0.2876037862268854),
    (-0.43181057901999387, -0.4628901528477806),
    (0.10569534020089066, -0.5324685741080573),
    (0.3471135329234196, -0.6419680005273919),
    (0.6935953926774568, -0.22282552682359105),
    (0.6023638415054845, 0.03794791748261343),
    (0.6228546521527254, 0.33404837623353734),
    (0.428477421582415, 0.6324748473006903),
    (0.18271346318301263, 0.7279881063898929),
    (-0.3440589053573252, 0.457675400339433),
];

fn path12_design() -> CapDesign {
    let mut edges = vec![
        (CapEnd::Inner(0), CapEnd::Inner(1)),
        (CapEnd::Inner(1), CapEnd::Inner(2)),
        (CapEnd::Inner(2), CapEnd::Inner(3)),
    ];
    let walk = [0, 1, 2, 3, 2, 1];
    for j in 0..12 {
        let t = CapEnd::Inner(4 + j);
        let i = (j + 4) % 12;
        for q in 0..3 {
            edges.push((t, CapEnd::Ring((i + q) % 12)));
        }
        let k = ((j + 1) / 2 + 5) % 6;
        edges.push((t, CapEnd::Inner(walk[k])));
        edges.push((t, CapEnd::Inner(walk[(k + 1) % 6])));
    }
    CapDesign { k: 12, inner: PATH12_POINTS.to_vec(), edges }
}

/// Independent vertices a cap adds, as indices into the design's inner list.
fn cap_design(cap: EndCap, k: usize) -> Result<(CapDesign, Vec<usize>)> {
    let bad = || Error::AttachRuleInfeasible(format!("end cap {cap:?} does not fit a {k}-cycle"));
    match cap {
        EndCap::Joined(1) => Ok((CapDesign::joined_to_all(k, vec![(0.0, 0.0)]), vec![0])),
        EndCap::Joined(2) if k == 4 => {
            Ok((CapDesign::joined_to_all(4, vec![(0.35, 0.35), (-0.35, -0.35)]), vec![0, 1]))
        }
        EndCap::Joined(3) if k == 3 => Ok((CapDesign::triple(), vec![0, 1, 2])),
        EndCap::Path12 if k == 12 => Ok((path12_design(), (4..16).collect())),
        EndCap::Crossed if k == 4 => Ok((
            CapDesign {
                k: 4,
                inner: vec![],
                edges: vec![(CapEnd::Ring(0), CapEnd::Ring(2)), (CapEnd::Ring(1), CapEnd::Ring(3))],
            },
            vec![],
        )),
        _ => Err(bad()),
    }
}

fn auto_cap(rule: AttachRule, k: usize) -> EndCap {
    match (rule, k) {
        (AttachRule::Twin, _) => EndCap::Joined(2),
        (AttachRule::Period3, _) => EndCap::Path12,
        (AttachRule::Triangles, _) => EndCap::Joined(3),
        (AttachRule::Window3, 4) => EndCap::Crossed,
        _ => EndCap::None,
    }
}

/// Output of the standard construction: the drawing and a certificate whose
/// pairing is filled in when the wiring provides one.
#[derive(Clone, Debug)]
pub struct Standard {
    pub drawing: OnePlaneDrawing,
    pub certificate: Certificate,
}

/// Builds `s` nested cycles with the given lengths, wires `tau` vertices into
/// each middle face and applies the end caps.
pub fn standard_construction(
    s: usize,
    cycle_lengths: &[usize],
    tau: usize,
    middle_attach: AttachRule,
    end_caps: EndCap,
) -> Result<Standard> {
    if s == 0 || cycle_lengths.len() != s {
        return Err(Error::UnsupportedParams(format!(
            "need s >= 1 and one cycle length per level, got s={s} and {} lengths",
            cycle_lengths.len()
        )));
    }
    if cycle_lengths.iter().any(|&k| k < 3) {
        return Err(Error::UnsupportedParams("cycles need length at least 3".into()));
    }
    let mut rules = Vec::new();
    for w in cycle_lengths.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if !rule_fits(middle_attach, lo, hi, tau) {
            return Err(Error::AttachRuleInfeasible(format!(
                "rule {middle_attach:?} cannot wire {tau} vertices between a {lo}-cycle and a {hi}-cycle"
            )));
        }
        let rule = match middle_attach {
            AttachRule::Auto => rule_for(lo, hi, tau).unwrap(),
            r => r,
        };
        rules.push(rule);
    }
    let first_rule = rules.first().copied().or(match middle_attach {
        AttachRule::Auto => rule_for(cycle_lengths[0], cycle_lengths[0], tau),
        r => Some(r),
    });
    let cap = match end_caps {
        EndCap::Auto => first_rule.map_or(EndCap::None, |r| auto_cap(r, cycle_lengths[0])),
        c => c,
    };
    let d = first_rule.map_or(0, rule_degree);

    let width = *cycle_lengths.iter().min().unwrap() as f64;
    let mut lay = Layout::new(width);
    let mut rings: Vec<Ring> = Vec::new();
    for (i, &k) in cycle_lengths.iter().enumerate() {
        let off = if rules.contains(&AttachRule::Triangles) { 0.5 * (i % 2) as f64 } else { 0.0 };
        let hex = rules.contains(&AttachRule::HexStep) && i > 0 && k > cycle_lengths[i - 1];
        let omit: &[usize] = if hex { &[5] } else { &[] };
        rings.push(lay.ring(k, 2.0 * i as f64, off, true, omit));
    }
    let mut set: Vec<VertexId> = Vec::new();
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    let mut hex_partner: Option<VertexId> = None;
    for (i, &rule) in rules.iter().enumerate() {
        let (lo, hi) = (&rings[i], &rings[i + 1]);
        let mid = 2.0 * i as f64 + 1.0;
        let (lo, hi) = (lo.clone(), hi.clone());
        match rule {
            AttachRule::Twin => {
                for j in 0..lo.len() as i64 {
                    let mut twins = Vec::new();
                    for dy in [-0.25, 0.25] {
                        let p = (lo.pt(j).0 + 0.5 * lo.sp, mid + dy);
                        let t = lay.vertex(p);
                        for q in [j, j + 1] {
                            lay.link(t, p, &lo, q);
                            lay.link(t, p, &hi, q);
                        }
                        twins.push(t);
                    }
                    pairs.push((twins[0], twins[1]));
                    set.extend(twins);
                }
            }
            AttachRule::Period3 => {
                for per in 0..(lo.len() / 3) as i64 {
                    for &(x, y, up, a, b, deg) in &PERIOD3 {
                        let p = (x + 3.0 * per as f64, mid + y);
                        let t = lay.vertex(p);
                        for q in 0..up as i64 {
                            lay.link(t, p, &hi, a + 3 * per + q);
                        }
                        for q in 0..(deg - up) as i64 {
                            lay.link(t, p, &lo, b + 3 * per + q);
                        }
                        set.push(t);
                    }
                }
            }
            AttachRule::Triangles => {
                let k = lo.len() as i64;
                for j in 0..k {
                    lay.link(lo.ids[j as usize], lo.pt(j), &hi, j);
                    lay.link(hi.ids[j as usize], hi.pt(j), &lo, j + 1);
                }
                for j in 0..k {
                    let up = [(lo.id(j), lo.pt(j)), (lo.id(j + 1), lo.pt(j + 1)), (hi.id(j), hi.pt(j))];
                    set.extend(lay.triple(up));
                    let down = [(hi.id(j), hi.pt(j)), (hi.id(j + 1), hi.pt(j + 1)), (lo.id(j + 1), lo.pt(j + 1))];
                    set.extend(lay.triple(down));
                }
            }
            AttachRule::Window3 => {
                for j in 0..lo.len() as i64 {
                    let p = (lo.pt(j).0 + 0.5 * lo.sp, mid);
                    let t = lay.vertex(p);
                    for q in j..j + 3 {
                        lay.link(t, p, &lo, q);
                        lay.link(t, p, &hi, q);
                    }
                    set.push(t);
                }
            }
            AttachRule::HexStep => {
                let (short, long) = if lo.len() < hi.len() { (&lo, &hi) } else { (&hi, &lo) };
                let mut ts = Vec::new();
                for j in 0..short.len() as i64 {
                    let p = (short.pt(j).0 + 0.5 * short.sp, mid);
                    let t = lay.vertex(p);
                    for q in j..j + 3 {
                        lay.link(t, p, short, q);
                    }
                    for q in 2 * j..2 * j + 4 {
                        lay.link(t, p, long, q);
                    }
                    ts.push(t);
                }
                if ts.len() == 3 {
                    pairs.push((ts[0], ts[1]));
                    match hex_partner.take() {
                        Some(t) => pairs.push((t, ts[2])),
                        None => hex_partner = Some(ts[2]),
                    }
                }
                set.extend(ts);
            }
            AttachRule::Auto => unreachable!(),
        }
    }
    if cap != EndCap::None {
        let ends: Vec<(usize, bool)> = if s == 1 && cap == EndCap::Crossed {
            vec![(0, false)]
        } else {
            vec![(0, false), (s - 1, true)]
        };
        for (r, top) in ends {
            let ring = rings[r].clone();
            let (design, is) = cap_design(cap, ring.len())?;
            let inner = lay.cap(&ring, top, &design);
            let added: Vec<VertexId> = is.iter().map(|&i| inner[i]).collect();
            if added.len() == 2 {
                pairs.push((added[0], added[1]));
            }
            set.extend(added);
        }
    }
    let drawing = lay.build((rings[0].edges[0], true))?;
    let mut certificate = Certificate::new(d, set);
    let exact = matches!(first_rule, Some(AttachRule::Twin) | Some(AttachRule::HexStep));
    if exact && 2 * pairs.len() == certificate.set.len() {
        pairs.sort_unstable();
        certificate.pairing = Some(pairs);
    } else if first_rule == Some(AttachRule::Period3) {
        certificate.pairing = find_pairing(&drawing, &certificate.set, 1_000_000);
    }
    Ok(Standard { drawing, certificate })
}
