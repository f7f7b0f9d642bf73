//! Surface germs in R⁴ modeled by their links: a diagram decorated with
//! bridge sites and pinch pairs.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagram::{parse_pd, Crossing, Edge, LinkDiagram};
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};
use crate::reidemeister::{reidemeister, Move};

/// A `(q, β)`-bridge on two co-facial strands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeSite {
    pub id: String,
    pub edges: [Edge; 2],
    pub face: usize,
    #[serde(with = "crate::rational::serde_text")]
    pub q: Rational,
    #[serde(with = "crate::rational::serde_text")]
    pub beta: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::rational::serde_text::option")]
    pub p: Option<Rational>,
}

/// Two arcs of the link with tangency order above one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchPair {
    pub arcs: [Edge; 2],
    #[serde(with = "crate::rational::serde_text")]
    pub tord: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    pub label: String,
    pub diagram: LinkDiagram,
    pub bridges: Vec<BridgeSite>,
    pub pinches: Vec<PinchPair>,
    pub history: Vec<Value>,
}

/// The tangent-cone link: circles meeting at pinch points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinchedLink {
    /// The circles after every pinch pair has been identified.
    pub link: LinkDiagram,
    /// Each circle as its own diagram, in component order of `link`.
    pub components: Vec<LinkDiagram>,
    /// Component pairs meeting at a pinch point, sorted.
    pub incidences: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct DiagramDoc {
    pd: String,
    #[serde(default)]
    free_loops: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GermDoc {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    diagram: DiagramDoc,
    #[serde(default)]
    bridges: Vec<BridgeSite>,
    #[serde(default)]
    pinches: Vec<PinchPair>,
    #[serde(default)]
    history: Vec<Value>,
}

/// Face of `d` bordered by both edges, preferring one where they run
/// anti-parallel.
pub fn shared_face(d: &LinkDiagram, e1: Edge, e2: Edge) -> Option<usize> {
    let faces = d.faces();
    let sides = |f: &crate::diagram::Face| {
        let a: Vec<bool> = f.sides_of(e1).collect();
        let b: Vec<bool> = f.sides_of(e2).collect();
        (a, b)
    };
    let mut fallback = None;
    for (i, f) in faces.iter().enumerate() {
        let (a, b) = sides(f);
        if a.is_empty() || b.is_empty() {
            continue;
        }
        if a.iter().any(|x| b.contains(x)) {
            return Some(i);
        }
        fallback.get_or_insert(i);
    }
    fallback
}

fn check_exponents(q: Rational, beta: Rational) -> Result<()> {
    if !(int(1) < beta && beta < q) {
        return Err(Error::ExponentConstraint(format!(
            "bridge needs 1 < beta < q, got q={}, beta={}",
            format_rational(&q),
            format_rational(&beta)
        )));
    }
    Ok(())
}

impl Germ {
    /// Undecorated germ: the straight cone over a link.
    pub fn cone(label: impl Into<String>, diagram: LinkDiagram) -> Germ {
        Germ { label: label.into(), diagram, bridges: Vec::new(), pinches: Vec::new(), history: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        let edges: BTreeSet<Edge> = self.diagram.edges().into_iter().collect();
        let faces = self.diagram.faces();
        let mut ids = BTreeSet::new();
        for b in &self.bridges {
            if !ids.insert(&b.id) {
                return Err(Error::Site(format!("duplicate bridge id {}", b.id)));
            }
            check_exponents(b.q, b.beta)?;
            if let Some(p) = b.p {
                if p <= b.q {
                    return Err(Error::ExponentConstraint(format!("p={} must exceed q", format_rational(&p))));
                }
            }
            let [e1, e2] = b.edges;
            for e in [e1, e2] {
                if !edges.contains(&e) {
                    return Err(Error::Edge(e));
                }
            }
            if e1 == e2 {
                return Err(Error::NotCofacial(e1, e2));
            }
            let face = faces.get(b.face).ok_or(Error::Face(b.face))?;
            if !face.contains(e1) || !face.contains(e2) {
                return Err(Error::NotCofacial(e1, e2));
            }
        }
        for p in &self.pinches {
            if p.tord <= int(1) {
                return Err(Error::PinchOrder(p.tord));
            }
            for e in p.arcs {
                if !edges.contains(&e) {
                    return Err(Error::Edge(e));
                }
            }
            if p.arcs[0] == p.arcs[1] {
                return Err(Error::Site(format!("pinch pair repeats edge {}", p.arcs[0])));
            }
        }
        Ok(())
    }

    /// Re-derives bridge faces after the diagram changed.
    fn relocate_bridges(mut self) -> Result<Germ> {
        for b in &mut self.bridges {
            b.face = shared_face(&self.diagram, b.edges[0], b.edges[1]).ok_or(Error::NotCofacial(b.edges[0], b.edges[1]))?;
        }
        self.validate()?;
        Ok(self)
    }

    fn site_index(&self, site: &str) -> Result<usize> {
        self.bridges.iter().position(|b| b.id == site).ok_or_else(|| Error::Site(format!("no bridge {site:?}")))
    }

    pub fn from_json(text: &str) -> Result<Germ> {
        let doc: GermDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let dim = doc.dimension.unwrap_or(4);
        if dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let parsed = parse_pd(&doc.diagram.pd)?;
        let diagram = LinkDiagram::new(parsed.crossings().to_vec(), parsed.free_loops() + doc.diagram.free_loops)?;
        let g = Germ { label: doc.label, diagram, bridges: doc.bridges, pinches: doc.pinches, history: doc.history };
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let pd = LinkDiagram::new_unchecked(self.diagram.crossings().to_vec(), 0).to_pd_string();
        let doc = GermDoc {
            label: self.label.clone(),
            dimension: None,
            diagram: DiagramDoc { pd, free_loops: self.diagram.free_loops() },
            bridges: self.bridges.clone(),
            pinches: self.pinches.clone(),
            history: self.history.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("germ documents serialize")
    }

    /// Relabels edges canonically, remapping decorations. Documents written
    /// from canonical germs load back identically.
    pub fn canonical(&self) -> Result<Germ> {
        let mut map = std::collections::HashMap::new();
        let mut next: Edge = 1;
        for comp in self.diagram.components() {
            for e in comp.edges {
                map.insert(e, next);
                next += 1;
            }
        }
        let mut crossings: Vec<Crossing> = self
            .diagram
            .crossings()
            .iter()
            .map(|x| Crossing { edges: x.edges.map(|e| map[&e]), over_forward: x.over_forward })
            .collect();
        crossings.sort_by_key(|x| (*x.edges.iter().min().unwrap(), x.edges));
        let mut g = self.clone();
        g.diagram = LinkDiagram::new(crossings, self.diagram.free_loops())?;
        for b in &mut g.bridges {
            b.edges = b.edges.map(|e| map[&e]);
        }
        for p in &mut g.pinches {
            p.arcs = p.arcs.map(|e| map[&e]);
        }
        g.relocate_bridges()
    }

    /// Mirror image; decorations ride along.
    pub fn mirror(&self) -> Result<Germ> {
        let mut g = self.clone();
        g.diagram = self.diagram.mirror();
        g.relocate_bridges()
    }

    fn record(&mut self, v: Value) {
        self.history.push(v);
    }
}

pub fn load_germ(path: &Path) -> Result<Germ> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Germ::from_json(&text)
}

pub fn save_germ(g: &Germ, path: &Path) -> Result<()> {
    std::fs::write(path, g.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn insert_bridge(g: &Germ, face: usize, edges: [Edge; 2], q: Rational, beta: Rational) -> Result<Germ> {
    check_exponents(q, beta)?;
    let mut id_n = g.bridges.len() + 1;
    while g.bridges.iter().any(|b| b.id == format!("b{id_n}")) {
        id_n += 1;
    }
    let mut out = g.clone();
    out.bridges.push(BridgeSite { id: format!("b{id_n}"), edges, face, q, beta, p: None });
    out.validate()?;
    out.record(json!({"op": "insert-bridge", "site": format!("b{id_n}"), "edges": edges, "face": face,
        "q": format_rational(&q), "beta": format_rational(&beta)}));
    Ok(out)
}

/// The saddle: exchanges the heads of the bridge's two strands.
pub fn break_bridge(g: &Germ, site: &str, p: Rational) -> Result<Germ> {
    let i = g.site_index(site)?;
    let b = g.bridges[i].clone();
    if p <= b.q {
        return Err(Error::ExponentConstraint(format!(
            "break exponent p={} must exceed q={}",
            format_rational(&p),
            format_rational(&b.q)
        )));
    }
    let [e1, e2] = b.edges;
    let faces = g.diagram.faces();
    let face = &faces[b.face];
    let s1: Vec<bool> = face.sides_of(e1).collect();
    if !face.sides_of(e2).any(|s| s1.contains(&s)) {
        return Err(Error::ParallelStrands(e1, e2));
    }
    let before = g.diagram.component_count();
    let mut out = g.clone();
    out.diagram = g.diagram.swap_heads(e1, e2)?;
    let after = out.diagram.component_count();
    debug_assert_eq!(before.abs_diff(after), 1);
    out.bridges.remove(i);
    out.record(json!({"op": "break", "site": site, "p": format_rational(&p)}));
    out.relocate_bridges()
}

/// Inserts `k` signed full twists at a bridge. A finger of the second strand
/// is pushed into the shared face and its two sides cross `2|k|` times; the
/// site moves to the first strand and the finger's tip. The link type is
/// unchanged, while the two circles produced by breaking the site link `k`
/// times.
pub fn twist_bridge(g: &Germ, site: &str, k: i64) -> Result<Germ> {
    if k == 0 {
        return Err(Error::ZeroTwist);
    }
    let i = g.site_index(site)?;
    let b = g.bridges[i].clone();
    let [_, e2] = b.edges;
    let faces = g.diagram.faces();
    let dart = faces[b.face].boundary.iter().find(|f| f.edge == e2).ok_or(Error::NotCofacial(b.edges[0], e2))?;
    // the face is to the left of e2 when its dart runs against e2
    let face_left = !dart.forward;
    let d = &g.diagram;
    let head = d.edge_ends(e2)?.head;
    let n = 2 * k.unsigned_abs() as usize;
    let mut next = d.max_label() + 1;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    // a[0] = e2 .. a[n-1], then the tip, then b[n-1] .. b[0]
    let mut a = vec![e2];
    a.extend((1..n).map(|_| fresh()));
    let tip = fresh();
    let bl: Vec<Edge> = (0..n).map(|_| fresh()).collect();
    let mut crossings = d.crossings().to_vec();
    crossings[head.0].edges[head.1] = bl[0];
    use crate::diagram::Role::*;
    let positive = k > 0;
    for c in 0..n {
        let a_in = a[c];
        let a_out = if c + 1 < n { a[c + 1] } else { tip };
        let b_in = if c + 1 < n { bl[c + 1] } else { tip };
        let b_out = bl[c];
        // P: A runs SW→NE and B runs NW→SE; Q: A runs SE→NW and B NE→SW
        let pattern_p = (c % 2 == 0) == face_left;
        let a_over = pattern_p != positive;
        let (ai, ao, bi, bo) = if a_over {
            (OverIn, OverOut, UnderIn, UnderOut)
        } else {
            (UnderIn, UnderOut, OverIn, OverOut)
        };
        // slots counterclockwise from NE: NE, NW, SW, SE
        let slots = if pattern_p {
            [(a_out, ao), (b_in, bi), (a_in, ai), (b_out, bo)]
        } else {
            [(b_in, bi), (a_out, ao), (b_out, bo), (a_in, ai)]
        };
        crossings.push(crate::diagram::crossing_from_slots(slots));
    }
    let mut out = g.clone();
    out.diagram = LinkDiagram::new(crossings, d.free_loops())?;
    out.bridges[i].edges = [b.edges[0], tip];
    out.record(json!({"op": "twist", "site": site, "k": k}));
    out.relocate_bridges()
}

/// Connected sum of a knot into one component. The band is placed at the
/// lowest edge of the component not carrying a decoration.
pub fn attach_knot(g: &Germ, component: usize, knot: &LinkDiagram) -> Result<Germ> {
    let kc = knot.component_count();
    if kc != 1 {
        return Err(Error::NotAKnot(kc));
    }
    let comps = g.diagram.components();
    let comp = comps.get(component).ok_or(Error::Component(component))?;
    let used: BTreeSet<Edge> = g
        .bridges
        .iter()
        .flat_map(|b| b.edges)
        .chain(g.pinches.iter().flat_map(|p| p.arcs))
        .collect();
    let mut candidates: Vec<Edge> = comp.edges.clone();
    candidates.sort_unstable();
    let e = candidates.iter().copied().find(|e| !used.contains(e)).or(candidates.first().copied());
    let ke = knot.edges().first().copied();
    let mut out = g.clone();
    out.diagram = g.diagram.connected_sum_at(component, e, knot, 0, ke)?;
    out.record(json!({"op": "attach", "component": component, "knot": knot.to_pd_string()}));
    out.relocate_bridges()
}

/// Identifies each pinch pair (bridges included, their strands having
/// tangency order β) to a point. A pair on one circle splits it in two.
pub fn tangent_cone(g: &Germ) -> Result<PinchedLink> {
    let mut pairs: Vec<PinchPair> = g.pinches.clone();
    pairs.extend(g.bridges.iter().map(|b| PinchPair { arcs: b.edges, tord: b.beta }));
    let mut d = g.diagram.clone();
    for p in &pairs {
        if p.tord <= int(1) {
            return Err(Error::PinchOrder(p.tord));
        }
        let comp = d.component_of_edge();
        let [a, b] = p.arcs;
        let (ca, cb) = (
            *comp.get(&a).ok_or(Error::Edge(a))?,
            *comp.get(&b).ok_or(Error::Edge(b))?,
        );
        if ca == cb {
            d = d.swap_heads(a, b)?;
        }
    }
    let comp = d.component_of_edge();
    let mut incidences: Vec<(usize, usize)> = pairs
        .iter()
        .map(|p| {
            let (x, y) = (comp[&p.arcs[0]], comp[&p.arcs[1]]);
            (x.min(y), x.max(y))
        })
        .collect();
    incidences.sort_unstable();
    let components = (0..d.component_count()).map(|c| d.sublink(&[c])).collect::<Result<Vec<_>>>()?;
    Ok(PinchedLink { link: d, components, incidences })
}

/// Blackboard push-off `K′` of a knot diagram, reversed and running on the
/// left of `K`, joined to `K` by a band at the lowest edge. Returns the
/// diagram and the two band edges.
fn cable_and_band(k: &LinkDiagram) -> Result<(LinkDiagram, Edge, Edge)> {
    use crate::diagram::Role::*;
    let k = k.canonical();
    let n = k.edges().len() as Edge;
    let ext_k = |e: Edge| e;
    let ext_kp = |e: Edge| n + e;
    let mut crossings = Vec::new();
    for (ci, x) in k.crossings().iter().enumerate() {
        let [s, e, nn, w] = x.edges;
        let internal = |j: Edge| 2 * n + 4 * ci as Edge + j + 1;
        let (iv, ivp, ih, ihp) = (internal(0), internal(1), internal(2), internal(3));
        // over runs west to east when not forward; K′ sits on its left
        let sigma_up = !x.over_forward;
        // vertical lines: K at x=0 going north, K′ at x=−ε going south;
        // horizontal lines: K at y=0, K′ at y=±ε
        let lower_is_k = sigma_up;
        let (hk_in_w, hkp_in_w) = (sigma_up, !sigma_up);
        for (vert_is_k, hor_is_k) in [(true, true), (true, false), (false, true), (false, false)] {
            // vertical strand slots S and N
            let lower = hor_is_k == lower_is_k;
            let (vs_ext, vn_ext, vint) = if vert_is_k { (ext_k(s), ext_k(nn), iv) } else { (ext_kp(s), ext_kp(nn), ivp) };
            let (south, north) = if lower { (vs_ext, vint) } else { (vint, vn_ext) };
            let (south_role, north_role) = if vert_is_k { (UnderIn, UnderOut) } else { (UnderOut, UnderIn) };
            // horizontal strand slots W and E; the west line is K′
            let west_point = !vert_is_k;
            let (hw_ext, he_ext, hint) = if hor_is_k { (ext_k(w), ext_k(e), ih) } else { (ext_kp(w), ext_kp(e), ihp) };
            let (west, east) = if west_point { (hw_ext, hint) } else { (hint, he_ext) };
            let in_w = if hor_is_k { hk_in_w } else { hkp_in_w };
            let (west_role, east_role) = if in_w { (OverIn, OverOut) } else { (OverOut, OverIn) };
            crossings.push(crate::diagram::crossing_from_slots([
                (east, east_role),
                (north, north_role),
                (west, west_role),
                (south, south_role),
            ]));
        }
    }
    let cable = LinkDiagram::new(crossings, 0)?;
    let e0 = 1;
    let joined = cable.swap_heads(ext_k(e0), ext_kp(e0))?;
    Ok((joined, ext_k(e0), ext_kp(e0)))
}

/// The universal germ `X_K`: a single unknotted circle whose tangent cone is
/// two copies of `K` meeting at a point.
pub fn build_universal(k: &LinkDiagram, beta: Rational) -> Result<Germ> {
    let kc = k.component_count();
    if kc != 1 {
        return Err(Error::NotAKnot(kc));
    }
    if beta <= int(1) {
        return Err(Error::PinchOrder(beta));
    }
    let base = if k.crossing_count() == 0 {
        reidemeister(k, Move::R1Add { edge: None, positive: true, left: true })?
    } else {
        k.clone()
    };
    let (diagram, a, b) = cable_and_band(&base)?;
    let mut g = Germ::cone("universal", diagram);
    g.pinches.push(PinchPair { arcs: [a, b], tord: beta });
    g.record(json!({"op": "universal", "knot": k.to_pd_string(), "beta": format_rational(&beta)}));
    g.validate()?;
    Ok(g)
}

impl Default for Germ {
    fn default() -> Self {
        Germ::cone("", LinkDiagram::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus_germ, ex3_base, knot};
    use crate::diagram::parse_pd;
    use crate::invariants::{invariant_profile, jones};
    use crate::poly::LaurentPoly;

    fn sorted_jones(ds: &[LinkDiagram]) -> Vec<LaurentPoly> {
        let mut v: Vec<LaurentPoly> = ds.iter().map(|d| jones(d).unwrap()).collect();
        v.sort_by_key(|p| p.to_string());
        v
    }

    fn one() -> LaurentPoly {
        jones(&LinkDiagram::unknot()).unwrap()
    }

    #[test]
    fn json_round_trip() {
        for name in ["ex3.X", "ex3.Y", "ex2.X2", "universal.trefoil"] {
            let g = corpus_germ(name).unwrap();
            let back = Germ::from_json(&g.to_json()).unwrap();
            assert_eq!(back, g, "{name}");
        }
        let minimal = r#"{"label": "o", "diagram": {"pd": "", "free_loops": 1}}"#;
        let g = Germ::from_json(minimal).unwrap();
        assert!(g.bridges.is_empty() && g.pinches.is_empty());
        assert_eq!(g.diagram, LinkDiagram::unknot());
    }

    #[test]
    fn load_errors() {
        let r3 = r#"{"label": "o", "dimension": 3, "diagram": {"pd": "O"}}"#;
        assert!(matches!(Germ::from_json(r3), Err(Error::UnsupportedDimension(3))));
        assert!(matches!(Germ::from_json("{"), Err(Error::Schema(_))));
        let mut doc: Value = serde_json::from_str(&corpus_germ("ex3.X").unwrap().to_json()).unwrap();
        doc["bridges"][0]["beta"] = json!("3");
        assert!(matches!(Germ::from_json(&doc.to_string()), Err(Error::ExponentConstraint(_))));
        doc["bridges"][0]["beta"] = json!("2");
        doc["bridges"][0]["edges"] = json!([1, 99]);
        assert!(matches!(Germ::from_json(&doc.to_string()), Err(Error::Edge(99))));
    }

    #[test]
    fn bridge_insertion() {
        let (d, edges, face) = ex3_base().unwrap();
        let g = insert_bridge(&Germ::cone("x", d.clone()), face, edges, int(3), int(2)).unwrap();
        assert_eq!(g.diagram, d);
        assert_eq!(g.bridges.len(), 1);
        assert_eq!(invariant_profile(&g.diagram).unwrap(), invariant_profile(&d).unwrap());
        let (gc, x) = (g.canonical().unwrap(), corpus_germ("ex3.X").unwrap());
        assert_eq!((gc.diagram, gc.bridges), (x.diagram, x.bridges));
        let t = knot("trefoil").unwrap();
        let faces = t.faces();
        let f0: BTreeSet<Edge> = faces[0].boundary.iter().map(|b| b.edge).collect();
        let outside = t.edges().into_iter().find(|e| !f0.contains(e)).unwrap();
        let inside = *f0.iter().next().unwrap();
        assert!(matches!(
            insert_bridge(&Germ::cone("t", t), 0, [inside, outside], int(3), int(2)),
            Err(Error::NotCofacial(..))
        ));
    }

    #[test]
    fn break_rules() {
        let x = corpus_germ("ex3.X").unwrap();
        assert!(matches!(break_bridge(&x, "b1", int(3)), Err(Error::ExponentConstraint(_))));
        assert!(matches!(break_bridge(&x, "b9", int(4)), Err(Error::Site(_))));
        let b = break_bridge(&x, "b1", int(4)).unwrap();
        assert!(b.bridges.is_empty());
        assert_eq!(b.history.last().unwrap()["p"], json!("4"));
        // parallel strands of the Hopf link's two components
        let h = parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        let faces = h.faces();
        let (fi, pair) = faces
            .iter()
            .enumerate()
            .find_map(|(i, f)| {
                let a = f.boundary[0];
                f.boundary.iter().find(|b| b.edge != a.edge && b.forward != a.forward).map(|b| (i, [a.edge, b.edge]))
            })
            .unwrap();
        let g = Germ {
            bridges: vec![BridgeSite { id: "b1".into(), edges: pair, face: fi, q: int(3), beta: int(2), p: None }],
            ..Germ::cone("h", h)
        };
        assert!(matches!(break_bridge(&g, "b1", int(4)), Err(Error::ParallelStrands(..))));
    }

    #[test]
    fn twist_rules() {
        let x = corpus_germ("ex3.X").unwrap();
        assert!(matches!(twist_bridge(&x, "b1", 0), Err(Error::ZeroTwist)));
        assert!(matches!(twist_bridge(&x, "b2", 1), Err(Error::Site(_))));
        let y = twist_bridge(&x, "b1", 2).unwrap();
        assert_eq!(y.diagram.crossing_count(), x.diagram.crossing_count() + 4);
        assert_eq!(y.bridges.len(), 1);
    }

    #[test]
    fn attaching() {
        let x = corpus_germ("ex3.X").unwrap();
        let same = attach_knot(&x, 0, &LinkDiagram::unknot()).unwrap();
        assert_eq!(invariant_profile(&same.diagram).unwrap(), invariant_profile(&x.diagram).unwrap());
        let t = knot("trefoil").unwrap();
        let with = attach_knot(&x, 0, &t).unwrap();
        assert_eq!(jones(&with.diagram).unwrap(), &jones(&x.diagram).unwrap() * &jones(&t).unwrap());
        assert_eq!(with.bridges.len(), 1);
        assert!(matches!(attach_knot(&x, 3, &t), Err(Error::Component(3))));
        assert!(matches!(attach_knot(&x, 0, &LinkDiagram::unlink(2)), Err(Error::NotAKnot(2))));
    }

    #[test]
    fn cones() {
        let h = parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        let c = tangent_cone(&Germ::cone("h", h.clone())).unwrap();
        assert_eq!(c.link, h);
        assert!(c.incidences.is_empty());
        let again = tangent_cone(&Germ::cone("c", c.link.clone())).unwrap();
        assert_eq!(again, c);

        let j3 = jones(&knot("trefoil").unwrap()).unwrap();
        let x1 = tangent_cone(&corpus_germ("ex2.X1").unwrap()).unwrap();
        assert_eq!(sorted_jones(&x1.components), vec![j3.clone(), j3.clone()]);
        assert_eq!(x1.incidences, vec![(0, 1)]);
        let x2 = tangent_cone(&corpus_germ("ex2.X2").unwrap()).unwrap();
        let mut want = vec![j3, one()];
        want.sort_by_key(|p| p.to_string());
        assert_eq!(sorted_jones(&x2.components), want);
        assert_eq!(x2.incidences.len(), 1);
    }

    #[test]
    fn universal_germs() {
        for name in ["unknot", "trefoil", "figure-eight", "5_1"] {
            let k = knot(name).unwrap();
            let g = build_universal(&k, int(2)).unwrap();
            assert_eq!(g.diagram.component_count(), 1, "{name}");
            assert_eq!(jones(&g.diagram).unwrap(), one(), "{name}");
            let c = tangent_cone(&g).unwrap();
            let jk = jones(&k).unwrap();
            assert_eq!(sorted_jones(&c.components), vec![jk.clone(), jk], "{name}");
            assert_eq!(c.incidences, vec![(0, 1)]);
        }
        assert!(matches!(build_universal(&LinkDiagram::unlink(2), int(2)), Err(Error::NotAKnot(2))));
        assert!(matches!(build_universal(&LinkDiagram::unknot(), int(1)), Err(Error::PinchOrder(_))));
    }
}
