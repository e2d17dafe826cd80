//! Parameterized generators. Every generator returns a drawing and a
//! certificate whose sizes are checked against closed forms.

mod hubs;
mod layout;
pub mod plain;
mod seven;
pub mod standard;

use serde::{Deserialize, Serialize};

use crate::certify::{check_independent, find_claw_cover, Certificate};
use crate::error::{Error, Result};
use crate::graph_core::OnePlaneDrawing;
use crate::transforms::{augment_with_dual, insert_h3_at_pairing, insert_k2x_at_pairing, remove_claw_cover};
use hubs::{Extras, Strip};
pub use seven::m7_outer;
pub use standard::{standard_construction, AttachRule, EndCap, Standard};

/// Largest vertex count a generator will build.
pub const DEFAULT_LIMIT: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
pub enum Family {
    #[serde(rename = "H3")]
    H3,
    #[serde(rename = "G3")]
    G3,
    #[serde(rename = "G4")]
    G4,
    #[serde(rename = "G5")]
    G5,
    #[serde(rename = "Gd")]
    Gd,
    #[serde(rename = "S3")]
    S3,
    #[serde(rename = "S6")]
    S6,
    #[serde(rename = "S7")]
    S7,
    #[serde(rename = "S13")]
    S13,
    #[serde(rename = "S18")]
    S18,
    #[serde(rename = "M6")]
    M6,
    #[serde(rename = "M7_level")]
    #[value(name = "m7", alias = "m7-level")]
    M7,
    #[serde(rename = "MinDeg7")]
    #[value(name = "mindeg7", alias = "min-deg7")]
    MinDeg7,
    #[serde(rename = "Q_quad")]
    QQuad,
    #[serde(rename = "Q_hat")]
    QHat,
    #[serde(rename = "O_optimal")]
    #[value(name = "o-optimal", alias = "optimal")]
    OOptimal,
    #[serde(rename = "Table1_simple")]
    #[value(name = "table1", alias = "table1-simple")]
    Table1,
}

/// A family tag with its parameters. Unused parameters are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Option<Family>,
    pub s: Option<usize>,
    pub d: Option<usize>,
    pub level: Option<usize>,
    pub k_target: Option<usize>,
    pub m: Option<usize>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec { family: Some(family), ..Default::default() }
    }

    pub fn s(mut self, s: usize) -> Self {
        self.s = Some(s);
        self
    }

    pub fn d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn level(mut self, level: usize) -> Self {
        self.level = Some(level);
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k_target = Some(k);
        self
    }

    pub fn m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub simple: bool,
    pub bigon_free: bool,
    pub min_degree_equals_d: bool,
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub drawing: OnePlaneDrawing,
    pub certificate: Certificate,
    pub predicted_n: usize,
    pub predicted_is_size: usize,
    pub flags: Flags,
}

fn flags_of(dr: &OnePlaneDrawing, c: &Certificate) -> Flags {
    Flags {
        simple: dr.is_simple(),
        bigon_free: dr.is_bigon_free().0,
        min_degree_equals_d: dr.graph().min_degree() == Some(c.d),
    }
}

impl ConstructionResult {
    /// Checks the sizes against the predictions and the certificate for
    /// independence, then records the flags.
    pub fn new(
        drawing: OnePlaneDrawing,
        certificate: Certificate,
        predicted_n: usize,
        predicted_is_size: usize,
    ) -> Result<Self> {
        if drawing.vertex_count() != predicted_n {
            return Err(Error::Inconsistent(format!(
                "{} vertices, expected {predicted_n}",
                drawing.vertex_count()
            )));
        }
        if certificate.set.len() != predicted_is_size {
            return Err(Error::Inconsistent(format!(
                "independent set of size {}, expected {predicted_is_size}",
                certificate.set.len()
            )));
        }
        let audit = check_independent(drawing.graph(), &certificate);
        if !audit.passed {
            return Err(Error::Inconsistent(audit.witnesses.join("; ")));
        }
        let flags = flags_of(&drawing, &certificate);
        if !flags.bigon_free {
            return Err(Error::Inconsistent("drawing has a bigon".into()));
        }
        Ok(ConstructionResult { drawing, certificate, predicted_n, predicted_is_size, flags })
    }

    /// Wraps a drawing loaded from elsewhere; predictions are the actual sizes.
    pub fn from_parts(drawing: OnePlaneDrawing, certificate: Certificate) -> Self {
        let flags = flags_of(&drawing, &certificate);
        ConstructionResult {
            predicted_n: drawing.vertex_count(),
            predicted_is_size: certificate.set.len(),
            drawing,
            certificate,
            flags,
        }
    }
}

fn need(v: Option<usize>, name: &str, family: Family) -> Result<usize> {
    v.ok_or_else(|| Error::UnsupportedParams(format!("{family:?} needs parameter {name}")))
}

fn unsupported(msg: String) -> Error {
    Error::UnsupportedParams(msg)
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(unsupported(msg()))
    }
}

/// Closed-form vertex count and independent-set size.
pub fn predicted_counts(spec: &FamilySpec) -> Result<(usize, usize)> {
    let family = spec.family.ok_or_else(|| unsupported("no family given".into()))?;
    let s = || need(spec.s, "s", family);
    let d = || need(spec.d, "d", family);
    let big = |x: Option<usize>| x.ok_or(Error::LimitExceeded { n: usize::MAX, limit: DEFAULT_LIMIT });
    let pow2 = |e: usize| big(1usize.checked_shl(e as u32).filter(|&p| p <= 1 << 40));
    let out = match family {
        Family::H3 => (4, 2),
        Family::G3 => {
            let s = s()?;
            require(s >= 1, || "G3 needs s >= 1".into())?;
            (2 * s + 2, 2 * s)
        }
        Family::G4 => {
            let s = s()?;
            require(s >= 1, || "G4 needs s >= 1".into())?;
            (12 * s - 4, 8 * s - 4)
        }
        Family::G5 => {
            let s = s()?;
            require(s >= 1, || "G5 needs s >= 1".into())?;
            (28 * s + 16, 16 * s + 8)
        }
        Family::Gd => {
            let d = d()?;
            require(d >= 3, || "Gd needs d >= 3".into())?;
            let base = 3 + (d - 3) % 3;
            let family = [Family::G3, Family::G4, Family::G5][base - 3];
            let (n, i) = predicted_counts(&FamilySpec { family: Some(family), ..spec.clone() })?;
            (n + (d - base) / 3 * i, i)
        }
        Family::S3 => {
            let s = s()?;
            require(s >= 1, || "S3 needs s >= 1".into())?;
            (21 * s - 12, 18 * s - 12)
        }
        Family::S6 => {
            let s = s()?;
            require(s >= 1, || "S6 needs s >= 1".into())?;
            (6 * s - 3, 3 * s - 3)
        }
        Family::S7 => {
            let s = s()?;
            require(s % 2 == 1, || "S7 needs odd s".into())?;
            ((15 * s - 9) / 2, 3 * (s - 1))
        }
        Family::S13 => {
            let s = s()?;
            require(s % 2 == 1, || "S13 needs odd s".into())?;
            (15 * s - 9, 3 * (s - 1))
        }
        Family::S18 => {
            let s = s()?;
            require(s >= 2, || "S18 needs s >= 2".into())?;
            (21 * s + 27, 3 * s + 3)
        }
        Family::M6 => {
            let s = s()?;
            require(s >= 1, || "M6 needs s >= 1".into())?;
            (8 * s - 4, 4 * s - 4)
        }
        Family::M7 => {
            let p = pow2(need(spec.level, "level", family)?)?;
            (27 * p - 9, 9 * p - 6)
        }
        Family::MinDeg7 => {
            let p = pow2(need(spec.k_target, "k_target", family)?)?;
            (63 * p - 18, 24 * p - 12)
        }
        Family::QQuad => {
            let (d, m) = (d()?, need(spec.m, "m", family)?);
            require(d >= 2, || "Q_quad needs d >= 2".into())?;
            require(m >= 2 && m % 2 == 0, || "Q_quad needs an even m >= 2".into())?;
            (m + 2 + (d - 2) * m / 2, m)
        }
        Family::QHat => {
            let (d, s) = (d()?, s()?);
            require((3..=5).contains(&d) && s >= 1, || "Q_hat needs d in 3..=5 and s >= 1".into())?;
            let v = if d == 5 { 10 * s + 2 } else { 2 * (s + 2) };
            (d * v / 2 + 2, v)
        }
        Family::OOptimal => {
            let (n, i) = predicted_counts(&FamilySpec { family: Some(Family::QQuad), ..spec.clone() })?;
            (2 * n - 2, i)
        }
        Family::Table1 => {
            let (d, s) = (d()?, s()?);
            let (base, step) = table1_plan(d, s)?;
            let (n, i) = predicted_counts(&FamilySpec::new(base).s(s))?;
            match step {
                Step::Pairing(x) => (n + x * i / 2, i),
                Step::Claws(c) => (n - c * i / 3, i),
                Step::Nothing => (n, i),
            }
        }
    };
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Pairing(usize),
    Claws(usize),
    Nothing,
}

fn table1_plan(d: usize, s: usize) -> Result<(Family, Step)> {
    let odd = || require(s % 2 == 1, || format!("d={d} needs odd s"));
    Ok(match d {
        8..=11 => {
            odd()?;
            (Family::S7, Step::Pairing(d - 7))
        }
        12 => {
            odd()?;
            (Family::S13, Step::Claws(1))
        }
        13 => {
            odd()?;
            (Family::S13, Step::Nothing)
        }
        14 | 15 => {
            odd()?;
            (Family::S13, Step::Pairing(d - 13))
        }
        16 | 17 => {
            require(s >= 2, || "S18 needs s >= 2".into())?;
            (Family::S18, Step::Claws(18 - d))
        }
        18 => {
            require(s >= 2, || "S18 needs s >= 2".into())?;
            (Family::S18, Step::Nothing)
        }
        _ if d >= 19 => {
            require(s >= 3 && s % 2 == 1, || format!("d={d} needs odd s >= 3"))?;
            (Family::S18, Step::Pairing(d - 18))
        }
        _ => return Err(unsupported(format!("the simple table starts at d=8, got {d}"))),
    })
}

/// Smallest doubling parameter whose min-degree-7 graph has at least `n_min` vertices.
pub fn mindeg7_k_for(n_min: usize) -> usize {
    (0..).find(|&k| 63 * (1usize << k) - 18 >= n_min).unwrap()
}

fn standard(s: usize, lengths: Vec<usize>, tau: usize, rule: AttachRule, cap: EndCap) -> Result<(OnePlaneDrawing, Certificate)> {
    let st = standard_construction(s, &lengths, tau, rule, cap)?;
    Ok((st.drawing, st.certificate))
}

fn g3(s: usize) -> Result<ConstructionResult> {
    let mut res = ConstructionResult::new(plain::h3_drawing(), plain::h3_certificate(), 4, 2)?;
    for _ in 1..s {
        res = glue_h3_outside(&res)?;
    }
    Ok(res)
}

/// Adds one more H3 between the vertices 1 and 3 in the outer face; its
/// two other vertices join the independent set as a new pair.
fn glue_h3_outside(base: &ConstructionResult) -> Result<ConstructionResult> {
    let mut c = Certificate::new(3, vec![1, 3]);
    c.pairing = Some(vec![(1, 3)]);
    let host = ConstructionResult::from_parts(base.drawing.clone(), c);
    let outer = base.drawing.face(base.drawing.outer_face()).to_vec();
    let start = |v| {
        outer
            .iter()
            .find(|&&d| base.drawing.tail(d) == crate::graph_core::Node::Vertex(v))
            .copied()
            .ok_or_else(|| Error::Inconsistent(format!("vertex {v} not on the outer face")))
    };
    let slots = [(start(1)?, start(3)?)];
    let (dr, copies) = crate::transforms::insert_h3_at_slots(&host.drawing, &slots)?;
    let (a, cc) = (copies[0][0], copies[0][1]);
    let mut cert = base.certificate.clone();
    cert.set.extend([a, cc]);
    cert.set.sort_unstable();
    let mut pairs = cert.pairing.take().unwrap_or_default();
    pairs.push((a, cc));
    cert.pairing = Some(pairs);
    ConstructionResult::new(dr, cert, base.predicted_n + 2, base.predicted_is_size + 2)
}

fn hubs_s13(s: usize) -> Result<(OnePlaneDrawing, Certificate)> {
    if s == 1 {
        let g = crate::graph_core::MultiGraph::new(6, (0..6).map(|i| (i, (i + 1) % 6)).collect())?;
        let rot = (0..6)
            .map(|i| vec![crate::graph_core::Dart::new(i, 0, 0), crate::graph_core::Dart::new((i + 5) % 6, 0, 1)])
            .collect();
        let dr = OnePlaneDrawing::new(g, vec![], rot, 0)?;
        let mut c = Certificate::new(13, vec![]);
        c.pairing = Some(vec![]);
        c.claw_cover = Some(vec![]);
        return Ok((dr, c));
    }
    let strips: Vec<Strip> = (0..s - 2).map(|i| if i % 2 == 0 { Strip::Triangles } else { Strip::Squares }).collect();
    let b = hubs::hub_framework(&strips, Extras::Pendants)?;
    let mut c = hubs::certificate(13, &b);
    c.pairing = hubs::row_pairing(&b.rows);
    let mut cover = Vec::new();
    for r in (0..strips.len()).step_by(2) {
        cover.extend(hubs::strip_claws(&b, r));
    }
    cover.sort_unstable();
    c.claw_cover = Some(cover);
    Ok((b.drawing, c))
}

fn hubs_s18(s: usize) -> Result<(OnePlaneDrawing, Certificate)> {
    let strips = vec![Strip::Triangles; s];
    let b = hubs::hub_framework(&strips, Extras::Lenses(3))?;
    let mut c = hubs::certificate(18, &b);
    c.pairing = hubs::row_pairing(&b.rows);
    let mut cover = vec![hubs::cap_claw(&b, false)];
    if s % 2 == 1 {
        cover.push(hubs::cap_claw(&b, true));
        for r in (1..s - 1).step_by(2) {
            cover.extend(hubs::strip_claws(&b, r));
        }
    } else {
        for r in (1..s).step_by(2) {
            cover.extend(hubs::strip_claws(&b, r));
        }
    }
    cover.sort_unstable();
    c.claw_cover = Some(cover);
    Ok((b.drawing, c))
}

/// Builds one instance of a family and checks it against the closed forms.
pub fn generate(spec: &FamilySpec) -> Result<ConstructionResult> {
    generate_with_limit(spec, DEFAULT_LIMIT)
}

pub fn generate_with_limit(spec: &FamilySpec, limit: usize) -> Result<ConstructionResult> {
    let (n, i) = predicted_counts(spec)?;
    if n > limit {
        return Err(Error::LimitExceeded { n, limit });
    }
    let family = spec.family.unwrap();
    let s = spec.s.unwrap_or(1);
    let d = spec.d.unwrap_or(0);
    let built = match family {
        Family::H3 => (plain::h3_drawing(), plain::h3_certificate()),
        Family::G3 => return g3(s),
        Family::G4 => standard(s, vec![4; s], 8, AttachRule::Twin, EndCap::Joined(2))?,
        Family::G5 => standard(s, vec![12; s], 16, AttachRule::Period3, EndCap::Path12)?,
        Family::Gd => {
            let base = 3 + (d - 3) % 3;
            let family = [Family::G3, Family::G4, Family::G5][base - 3];
            let mut res = generate_with_limit(&FamilySpec::new(family).s(s), limit)?;
            for _ in 0..(d - base) / 3 {
                res = insert_h3_at_pairing(&res)?;
            }
            return Ok(res);
        }
        Family::S3 => standard(s, vec![3; s], 18, AttachRule::Triangles, EndCap::Joined(3))?,
        Family::S6 => standard(s, vec![3; s], 3, AttachRule::Window3, EndCap::None)?,
        Family::S7 => {
            let lengths = (0..s).map(|i| if i % 2 == 0 { 3 } else { 6 }).collect();
            standard(s, lengths, 3, AttachRule::HexStep, EndCap::None)?
        }
        Family::S13 => hubs_s13(s)?,
        Family::S18 => hubs_s18(s)?,
        Family::M6 => standard(s, vec![4; s], 4, AttachRule::Window3, EndCap::Crossed)?,
        Family::M7 => seven::m7(spec.level.unwrap())?,
        Family::MinDeg7 => seven::min_deg7(spec.k_target.unwrap())?,
        Family::QQuad => {
            let m = spec.m.unwrap();
            let (dr, c) = plain::k2m(m);
            let res = ConstructionResult::new(dr, c, m + 2, m)?;
            return if d > 2 { insert_k2x_at_pairing(&res, d - 2) } else { Ok(res) };
        }
        Family::QHat => plain::q_hat(d, s)?,
        Family::OOptimal => {
            let q = generate_with_limit(&FamilySpec { family: Some(Family::QQuad), ..spec.clone() }, limit)?;
            return augment_with_dual(&q);
        }
        Family::Table1 => return table1_simple(d, s),
    };
    let (dr, c) = built;
    ConstructionResult::new(dr, c, n, i)
}

/// The simple constructions for thresholds from 8 on: a degree-7, 13 or 18
/// base followed by pairing insertions or claw deletions.
pub fn table1_simple(d: usize, s: usize) -> Result<ConstructionResult> {
    let (base, step) = table1_plan(d, s)?;
    let mut res = generate(&FamilySpec::new(base).s(s))?;
    match step {
        Step::Pairing(x) => res = insert_k2x_at_pairing(&res, x)?,
        Step::Claws(c) => {
            for _ in 0..c {
                if res.certificate.claw_cover.is_none() {
                    let cover = find_claw_cover(res.drawing.graph(), &res.certificate.set, 1_000_000);
                    res.certificate.claw_cover = cover;
                }
                res = remove_claw_cover(&res)?;
            }
        }
        Step::Nothing => {}
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicted_counts_match_examples() {
        let cases = [
            (FamilySpec::new(Family::G3).s(5), (12, 10)),
            (FamilySpec::new(Family::G4).s(3), (32, 20)),
            (FamilySpec::new(Family::G5).s(3), (100, 56)),
            (FamilySpec::new(Family::S3).s(3), (51, 42)),
            (FamilySpec::new(Family::S6).s(4), (21, 9)),
            (FamilySpec::new(Family::S7).s(3), (18, 6)),
            (FamilySpec::new(Family::S13).s(3), (36, 6)),
            (FamilySpec::new(Family::S18).s(2), (69, 9)),
            (FamilySpec::new(Family::M6).s(2), (12, 4)),
            (FamilySpec::new(Family::M7).level(1), (45, 12)),
            (FamilySpec::new(Family::MinDeg7).k(0), (45, 12)),
            (FamilySpec::new(Family::QQuad).d(2).m(6), (8, 6)),
            (FamilySpec::new(Family::OOptimal).d(2).m(6), (14, 6)),
            (FamilySpec::new(Family::Table1).d(9).s(3), (24, 6)),
            (FamilySpec::new(Family::Table1).d(12).s(3), (34, 6)),
            (FamilySpec::new(Family::Table1).d(17).s(2), (66, 9)),
        ];
        for (spec, want) in cases {
            assert_eq!(predicted_counts(&spec).unwrap(), want, "{spec:?}");
        }
    }

    #[test]
    fn parameter_checks() {
        assert!(generate(&FamilySpec::new(Family::S7).s(2)).is_err());
        assert!(generate(&FamilySpec::new(Family::QQuad).d(2).m(5)).is_err());
        assert!(matches!(
            generate(&FamilySpec::new(Family::M7).level(20)),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn mindeg7_size_choice() {
        assert_eq!(mindeg7_k_for(1), 0);
        assert_eq!(mindeg7_k_for(45), 0);
        assert_eq!(mindeg7_k_for(46), 1);
    }
}
