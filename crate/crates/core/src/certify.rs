//! Non-equivalence certificates. Two tests are available: comparing the
//! pinched tangent cones, and comparing the links obtained by breaking
//! every bridge. Neither ever concludes equivalence.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::germ::{break_bridge, tangent_cone, Germ, PinchedLink};
use crate::invariants::{distinguish_profiles, invariant_profile, jones, Profile};
use crate::poly::LaurentPoly;
use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Distinguished,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sampaio,
    BridgeBreak,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub invariant: String,
    pub left: Value,
    pub right: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub mirror_checked: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    fn inconclusive(method: Method) -> Verdict {
        Verdict { kind: VerdictKind::Inconclusive, method, witness: None, mirror_checked: true, notes: Vec::new() }
    }

    fn distinguished(method: Method, witness: Witness) -> Verdict {
        Verdict { kind: VerdictKind::Distinguished, method, witness: Some(witness), mirror_checked: true, notes: Vec::new() }
    }

    pub fn is_distinguished(&self) -> bool {
        self.kind == VerdictKind::Distinguished
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermRef {
    pub label: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub op: String,
    pub args: Value,
    pub result_hash: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub overall: VerdictKind,
    pub verdicts: Vec<Verdict>,
    pub germs: [GermRef; 2],
    pub trace: Vec<TraceEntry>,
}

pub fn content_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn germ_ref(g: &Germ) -> GermRef {
    GermRef { label: g.label.clone(), sha256: content_hash(&g.to_json()) }
}

#[derive(Default)]
struct Trace(Vec<TraceEntry>);

impl Trace {
    fn log(&mut self, op: &str, args: Value, result: &impl Serialize) {
        let text = serde_json::to_string(result).expect("trace values serialize");
        self.0.push(TraceEntry { op: op.to_string(), args, result_hash: content_hash(&text) });
    }
}

/// What the tangent-cone test compares: the circles' Jones polynomials and
/// which circles meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PinchedProfile {
    pub components: usize,
    pub component_jones: Vec<LaurentPoly>,
    /// One entry per pinch: the Jones polynomials of the two circles meeting
    /// there, each pair and the list sorted.
    pub incidences: Vec<(LaurentPoly, LaurentPoly)>,
}

const PINCHED_FIELDS: [&str; 3] = ["component count", "per-component Jones", "pinch incidences"];

fn sorted_pair(a: LaurentPoly, b: LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if a.to_string() <= b.to_string() {
        (a, b)
    } else {
        (b, a)
    }
}

impl PinchedProfile {
    fn normalize(mut self) -> Self {
        self.component_jones.sort_by_cached_key(|p| p.to_string());
        self.incidences = self.incidences.into_iter().map(|(a, b)| sorted_pair(a, b)).collect();
        self.incidences.sort_by_cached_key(|(a, b)| (a.to_string(), b.to_string()));
        self
    }

    pub fn mirrored(&self) -> PinchedProfile {
        PinchedProfile {
            components: self.components,
            component_jones: self.component_jones.iter().map(LaurentPoly::invert_variable).collect(),
            incidences: self.incidences.iter().map(|(a, b)| (a.invert_variable(), b.invert_variable())).collect(),
        }
        .normalize()
    }

    fn differing_fields(&self, other: &PinchedProfile) -> Vec<usize> {
        let mut out = Vec::new();
        if self.components != other.components {
            out.push(0);
        }
        if self.component_jones != other.component_jones {
            out.push(1);
        }
        if self.incidences != other.incidences {
            out.push(2);
        }
        out
    }

    fn field(&self, i: usize) -> Value {
        match i {
            0 => json!(self.components),
            1 => serde_json::to_value(&self.component_jones).unwrap(),
            _ => serde_json::to_value(&self.incidences).unwrap(),
        }
    }
}

pub fn pinched_profile(p: &PinchedLink) -> Result<PinchedProfile> {
    let component_jones = p.components.iter().map(jones).collect::<Result<Vec<_>>>()?;
    let incidences = p
        .incidences
        .iter()
        .map(|&(a, b)| (component_jones[a].clone(), component_jones[b].clone()))
        .collect();
    Ok(PinchedProfile { components: p.components.len(), component_jones, incidences }.normalize())
}

fn profile_field(p: &Profile, name: &str) -> Value {
    match name {
        "component count" => json!(p.components),
        "pairwise linking number" => json!(p.linking_numbers),
        "per-component Jones" => serde_json::to_value(&p.component_jones).unwrap(),
        "whole-link Jones" => serde_json::to_value(&p.jones).unwrap(),
        _ => serde_json::to_value(p).unwrap(),
    }
}

fn sampaio_traced(g1: &Germ, g2: &Germ, trace: &mut Trace) -> Result<Verdict> {
    let mut profiles = Vec::new();
    for (side, g) in [("left", g1), ("right", g2)] {
        let cone = tangent_cone(g)?;
        trace.log("tangent_cone", json!({"germ": side}), &(cone.link.to_pd_string(), &cone.incidences));
        let prof = pinched_profile(&cone)?;
        trace.log("pinched_profile", json!({"germ": side}), &prof);
        profiles.push(prof);
    }
    let (a, b) = (&profiles[0], &profiles[1]);
    let direct = a.differing_fields(b);
    let mirror = a.differing_fields(&b.mirrored());
    if direct.is_empty() || mirror.is_empty() {
        return Ok(Verdict::inconclusive(Method::Sampaio));
    }
    let witness = match direct.iter().find(|f| mirror.contains(f)) {
        Some(&f) => Witness { invariant: PINCHED_FIELDS[f].to_string(), left: a.field(f), right: b.field(f) },
        None => Witness {
            invariant: "pinched profile".to_string(),
            left: serde_json::to_value(a).unwrap(),
            right: serde_json::to_value(b).unwrap(),
        },
    };
    Ok(Verdict::distinguished(Method::Sampaio, witness))
}

/// Compares the tangent cones of two germs.
pub fn sampaio_test(g1: &Germ, g2: &Germ) -> Result<Verdict> {
    sampaio_traced(g1, g2, &mut Trace::default())
}

fn bridge_signature(g: &Germ) -> BTreeMap<(Rational, Rational), Vec<String>> {
    let mut m: BTreeMap<(Rational, Rational), Vec<String>> = BTreeMap::new();
    for b in &g.bridges {
        m.entry((b.q, b.beta)).or_default().push(b.id.clone());
    }
    m
}

fn signature_value(sig: &BTreeMap<(Rational, Rational), Vec<String>>) -> Value {
    Value::Array(
        sig.iter()
            .map(|((q, b), ids)| json!({"q": format_rational(q), "beta": format_rational(b), "sites": ids.len()}))
            .collect(),
    )
}

fn permutations(n: usize) -> usize {
    (1..=n).product()
}

fn break_all(g: &Germ, p: Rational, side: &str, trace: &mut Trace) -> Result<Germ> {
    let mut cur = g.clone();
    let mut ids: Vec<String> = g.bridges.iter().map(|b| b.id.clone()).collect();
    ids.sort();
    for id in ids {
        cur = break_bridge(&cur, &id, p)?;
        trace.log("break_bridge", json!({"germ": side, "site": id, "p": format_rational(&p)}), &cur.to_json());
    }
    Ok(cur)
}

fn bridge_break_traced(g1: &Germ, g2: &Germ, p: Option<Rational>, trace: &mut Trace) -> Result<Verdict> {
    for g in [g1, g2] {
        if g.bridges.is_empty() {
            return Err(Error::NoBridges(g.label.clone()));
        }
    }
    let max_q = g1.bridges.iter().chain(&g2.bridges).map(|b| b.q).max().unwrap();
    let p = p.unwrap_or(max_q + int(1));
    if p <= max_q {
        return Err(Error::BreakExponent { p, max_q });
    }
    let (s1, s2) = (bridge_signature(g1), bridge_signature(g2));
    let counts = |s: &BTreeMap<(Rational, Rational), Vec<String>>| -> Vec<((Rational, Rational), usize)> {
        s.iter().map(|(k, v)| (*k, v.len())).collect()
    };
    if counts(&s1) != counts(&s2) {
        let mut v = Verdict::distinguished(
            Method::BridgeBreak,
            Witness { invariant: "bridge signature".into(), left: signature_value(&s1), right: signature_value(&s2) },
        );
        v.notes.push("relies on bridges mapping to bridges with equal (q, beta), applied per site".into());
        return Ok(v);
    }
    let b1 = break_all(g1, p, "left", trace)?;
    let b2 = break_all(g2, p, "right", trace)?;
    let p1 = invariant_profile(&b1.diagram)?;
    trace.log("invariant_profile", json!({"germ": "left"}), &p1);
    let p2 = invariant_profile(&b2.diagram)?;
    trace.log("invariant_profile", json!({"germ": "right"}), &p2);
    // every site is broken with the same p, so each bijection between
    // same-(q, beta) sites yields this same pair of links
    let bijections: usize = s1.values().map(|ids| permutations(ids.len())).product();
    trace.log("bijections", json!({"count": bijections}), &bijections);
    Ok(match distinguish_profiles(&p1, &p2) {
        None => Verdict::inconclusive(Method::BridgeBreak),
        Some(field) => Verdict::distinguished(
            Method::BridgeBreak,
            Witness { left: profile_field(&p1, &field), right: profile_field(&p2, &field), invariant: field },
        ),
    })
}

/// Compares the links left after breaking every bridge with exponent `p`
/// (default: one more than the largest `q`).
pub fn bridge_break_test(g1: &Germ, g2: &Germ, p: Option<Rational>) -> Result<Verdict> {
    bridge_break_traced(g1, g2, p, &mut Trace::default())
}

/// Runs the tangent-cone test, then the bridge test when either germ
/// carries bridges.
pub fn certify(g1: &Germ, g2: &Germ) -> Result<Certificate> {
    certify_with(g1, g2, None)
}

pub fn certify_with(g1: &Germ, g2: &Germ, p: Option<Rational>) -> Result<Certificate> {
    let mut trace = Trace::default();
    let mut verdicts = vec![sampaio_traced(g1, g2, &mut trace)?];
    if !g1.bridges.is_empty() || !g2.bridges.is_empty() {
        let v = if g1.bridges.is_empty() || g2.bridges.is_empty() {
            // one side has bridges and the other none: the signatures differ
            let s = |g: &Germ| signature_value(&bridge_signature(g));
            let mut v = Verdict::distinguished(
                Method::BridgeBreak,
                Witness { invariant: "bridge signature".into(), left: s(g1), right: s(g2) },
            );
            v.notes.push("relies on bridges mapping to bridges with equal (q, beta), applied per site".into());
            v
        } else {
            bridge_break_traced(g1, g2, p, &mut trace)?
        };
        verdicts.push(v);
    }
    let overall = if verdicts.iter().any(Verdict::is_distinguished) {
        VerdictKind::Distinguished
    } else {
        VerdictKind::Inconclusive
    };
    Ok(Certificate { overall, verdicts, germs: [germ_ref(g1), germ_ref(g2)], trace: trace.0 })
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    /// Re-runs the recorded derivation on the given germs. Fails if the
    /// germs are not the ones certified or any step or verdict differs.
    pub fn replay(&self, g1: &Germ, g2: &Germ) -> Result<()> {
        for (r, g) in self.germs.iter().zip([g1, g2]) {
            if germ_ref(g) != *r {
                return Err(Error::Site(format!("germ {} does not match certificate hash", g.label)));
            }
        }
        let p = self
            .trace
            .iter()
            .find(|t| t.op == "break_bridge")
            .and_then(|t| t.args["p"].as_str())
            .map(crate::rational::parse_rational)
            .transpose()?;
        let again = certify_with(g1, g2, p)?;
        if again.trace != self.trace {
            return Err(Error::Site("replayed trace differs".into()));
        }
        if again.verdicts != self.verdicts {
            return Err(Error::Site("replayed verdicts differ".into()));
        }
        Ok(())
    }
}

/// One named expectation checked by [`verify_corpus`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn kinds(c: &Certificate) -> String {
    c.verdicts
        .iter()
        .map(|v| format!("{:?}={:?}", v.method, v.kind).to_lowercase())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Certifies every named corpus pair against its expected outcome, plus the
/// identity and mirror guards for every corpus germ. Sorted by name.
pub fn verify_corpus() -> Result<Vec<Check>> {
    use crate::corpus::{concrete_names, corpus_germ};
    let mut out = Vec::new();
    let pair = |a: &str, b: &str| -> Result<Certificate> { certify(&corpus_germ(a)?, &corpus_germ(b)?) };

    let c = pair("ex2.X1", "ex2.X2")?;
    let w = c.verdicts[0].witness.as_ref().map(|w| w.invariant.clone()).unwrap_or_default();
    out.push(check("pair ex2.X1 ex2.X2", c.verdicts[0].is_distinguished() && w == "per-component Jones", kinds(&c)));

    let c = pair("ex3.X", "ex3.Y")?;
    let ok = c.verdicts.len() == 2
        && !c.verdicts[0].is_distinguished()
        && c.verdicts[1].witness.as_ref().is_some_and(|w| w.invariant == "pairwise linking number");
    out.push(check("pair ex3.X ex3.Y", ok, kinds(&c)));

    for i in 0..=5 {
        for j in i + 1..=5 {
            let c = pair(&format!("twist.{i}"), &format!("twist.{j}"))?;
            out.push(check(format!("pair twist.{i} twist.{j}"), c.overall == VerdictKind::Distinguished, kinds(&c)));
        }
    }

    let c = pair("universal.trefoil", "universal.fig8")?;
    out.push(check("pair universal.trefoil universal.fig8", c.verdicts[0].is_distinguished(), kinds(&c)));

    for name in concrete_names() {
        let g = corpus_germ(&name)?;
        let c = certify(&g, &g)?;
        out.push(check(format!("self {name}"), c.overall == VerdictKind::Inconclusive, kinds(&c)));
        let c = certify(&g, &g.mirror()?)?;
        out.push(check(format!("mirror {name}"), c.overall == VerdictKind::Inconclusive, kinds(&c)));
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus_germ, knot};
    use crate::diagram::LinkDiagram;

    fn germ(name: &str) -> Germ {
        corpus_germ(name).unwrap()
    }

    #[test]
    fn pinched_profiles() {
        let t = knot("trefoil").unwrap();
        let j3 = jones(&t).unwrap();
        let p = pinched_profile(&tangent_cone(&germ("ex2.X1")).unwrap()).unwrap();
        assert_eq!(p.component_jones, vec![j3.clone(), j3.clone()]);
        assert_eq!(p.incidences.len(), 1);
        let o = pinched_profile(&tangent_cone(&Germ::cone("o", LinkDiagram::unknot())).unwrap()).unwrap();
        assert_eq!(o.components, 1);
        assert!(o.incidences.is_empty());
    }

    #[test]
    fn example_two() {
        let v = sampaio_test(&germ("ex2.X1"), &germ("ex2.X2")).unwrap();
        assert!(v.is_distinguished());
        assert_eq!(v.witness.unwrap().invariant, "per-component Jones");
    }

    #[test]
    fn example_three() {
        let (x, y) = (germ("ex3.X"), germ("ex3.Y"));
        assert_eq!(sampaio_test(&x, &y).unwrap().kind, VerdictKind::Inconclusive);
        let v = bridge_break_test(&x, &y, None).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.invariant, "pairwise linking number");
        assert_eq!((w.left, w.right), (json!([0]), json!([1])));
        let c = certify(&x, &y).unwrap();
        assert_eq!(c.overall, VerdictKind::Distinguished);
        assert_eq!(c.verdicts.len(), 2);
        c.replay(&x, &y).unwrap();
        assert!(c.replay(&y, &x).is_err());
    }

    #[test]
    fn bridge_errors() {
        let x = germ("ex3.X");
        let o = Germ::cone("o", LinkDiagram::unknot());
        assert!(matches!(bridge_break_test(&x, &o, None), Err(Error::NoBridges(_))));
        assert!(matches!(bridge_break_test(&x, &x, Some(int(3))), Err(Error::BreakExponent { .. })));
        assert_eq!(bridge_break_test(&x, &x, None).unwrap().kind, VerdictKind::Inconclusive);
    }

    #[test]
    fn symmetric_and_mirror_safe() {
        let (a, b) = (germ("ex2.X1"), germ("ex2.X2"));
        let ab = sampaio_test(&a, &b).unwrap().witness.unwrap();
        let ba = sampaio_test(&b, &a).unwrap().witness.unwrap();
        assert_eq!((ab.left, ab.right), (ba.right, ba.left));
        let u = germ("universal.trefoil");
        assert_eq!(certify(&u, &u.mirror().unwrap()).unwrap().overall, VerdictKind::Inconclusive);
    }
}
