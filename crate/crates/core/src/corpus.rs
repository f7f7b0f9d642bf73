//! Named germs: a pair of pinched granny knots, the bridge pair `X`, `Y`
//! and its twist family, and universal germs `X_K` for small knots.

use crate::diagram::{parse_braid, Edge, LinkDiagram};
use crate::error::{Error, Result};
use crate::germ::{build_universal, insert_bridge, tangent_cone, twist_bridge, Germ, PinchPair};
use crate::invariants::jones;
use crate::rational::int;
use crate::reidemeister::{reidemeister, Move};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusEntry {
    Single(Germ),
    Pair(Germ, Germ),
}

impl CorpusEntry {
    pub fn germs(&self) -> Vec<&Germ> {
        match self {
            CorpusEntry::Single(g) => vec![g],
            CorpusEntry::Pair(a, b) => vec![a, b],
        }
    }
}

/// Knots available as `universal.<name>`, with their braid words.
pub const KNOTS: [(&str, &str); 6] = [
    ("unknot", "braid 1: "),
    ("trefoil", "braid 2: s1 s1 s1"),
    ("figure-eight", "braid 3: s1 s2^-1 s1 s2^-1"),
    ("fig8", "braid 3: s1 s2^-1 s1 s2^-1"),
    ("5_1", "braid 2: s1 s1 s1 s1 s1"),
    ("cinquefoil", "braid 2: s1 s1 s1 s1 s1"),
];

/// Twist indices materialized by `corpus make` and `corpus verify`.
pub const TWIST_RANGE: std::ops::RangeInclusive<i64> = -5..=5;

pub fn knot(name: &str) -> Result<LinkDiagram> {
    let (_, braid) = KNOTS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownCorpus(format!("universal.{name}")))?;
    parse_braid(braid)
}

/// Names accepted by [`corpus`]; parametrized families are listed with a
/// placeholder.
pub fn corpus_names() -> Vec<String> {
    let mut v: Vec<String> = ["ex2.X1", "ex2.X2", "ex3.X", "ex3.Y", "ex3.pair", "twist.<k>"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    v.extend(KNOTS.iter().map(|(n, _)| format!("universal.{n}")));
    v
}

/// Every concrete single-germ name, sorted.
pub fn concrete_names() -> Vec<String> {
    let mut v: Vec<String> = ["ex2.X1", "ex2.X2", "ex3.X", "ex3.Y"].iter().map(|s| s.to_string()).collect();
    v.extend(TWIST_RANGE.map(|k| format!("twist.{k}")));
    v.extend(KNOTS.iter().map(|(n, _)| format!("universal.{n}")));
    v.sort();
    v
}

pub fn corpus(name: &str) -> Result<CorpusEntry> {
    let unknown = || Error::UnknownCorpus(name.to_string());
    let g = match name {
        "ex2.X1" => ex2(true)?,
        "ex2.X2" => ex2(false)?,
        "ex3.X" => ex3_x()?,
        "ex3.Y" => relabel(twist(1)?, "ex3.Y"),
        "ex3.pair" => return Ok(CorpusEntry::Pair(ex3_x()?, relabel(twist(1)?, "ex3.Y"))),
        _ => {
            if let Some(k) = name.strip_prefix("twist.") {
                let k: i64 = k.parse().map_err(|_| unknown())?;
                relabel(twist(k)?, name)
            } else if let Some(kn) = name.strip_prefix("universal.") {
                let k = knot(kn)?;
                relabel(build_universal(&k, int(2))?.canonical()?, name)
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(CorpusEntry::Single(g))
}

/// The single germ of a name; pairs are rejected.
pub fn corpus_germ(name: &str) -> Result<Germ> {
    match corpus(name)? {
        CorpusEntry::Single(g) => Ok(g),
        CorpusEntry::Pair(..) => Err(Error::UnknownCorpus(format!("{name} names a pair"))),
    }
}

fn relabel(mut g: Germ, label: &str) -> Germ {
    g.label = label.to_string();
    g
}

/// An unknot drawn with two kinks; returns it with its two long arcs and
/// the face they share anti-parallel.
pub fn ex3_base() -> Result<(LinkDiagram, [Edge; 2], usize)> {
    let one = reidemeister(&LinkDiagram::unknot(), Move::R1Add { edge: None, positive: true, left: true })?;
    // either loop of the figure-eight curve serves as the outer arc
    let big = one.edges()[0];
    for left in [true, false] {
        let two = reidemeister(&one, Move::R1Add { edge: Some(big), positive: false, left })?.canonical();
        let ends = two.ends();
        let long: Vec<Edge> = two.edges().into_iter().filter(|e| ends[e].tail.0 != ends[e].head.0).collect();
        if long.len() != 2 {
            continue;
        }
        let faces = two.faces();
        for (i, f) in faces.iter().enumerate() {
            let a: Vec<bool> = f.sides_of(long[0]).collect();
            if f.sides_of(long[1]).any(|s| a.contains(&s)) {
                return Ok((two, [long[0], long[1]], i));
            }
        }
    }
    unreachable!("one side of the second kink leaves the long arcs co-facial")
}

fn ex3_x() -> Result<Germ> {
    let (d, edges, face) = ex3_base()?;
    let g = insert_bridge(&Germ::cone("ex3.X", d), face, edges, int(3), int(2))?;
    g.canonical()
}

fn twist(k: i64) -> Result<Germ> {
    let x = ex3_x()?;
    if k == 0 {
        return Ok(relabel(x, "twist.0"));
    }
    let id = x.bridges[0].id.clone();
    twist_bridge(&x, &id, k)?.canonical()
}

/// Granny knot pinched at two arcs. `bouquet_of_knots` selects the pinch
/// that separates the two trefoil summands; otherwise the first pinch (in
/// edge order) whose cone is a trefoil and an unknot.
fn ex2(bouquet_of_knots: bool) -> Result<Germ> {
    let trefoil = knot("trefoil")?;
    let shift = trefoil.max_label();
    let granny = trefoil.connected_sum(0, &trefoil, 0)?;
    let label = if bouquet_of_knots { "ex2.X1" } else { "ex2.X2" };
    let tord = int(2);
    let band = [1, 1 + shift];
    let with_pinch = |arcs: [Edge; 2]| {
        let mut g = Germ::cone(label, granny.clone());
        g.pinches.push(PinchPair { arcs, tord });
        g
    };
    if bouquet_of_knots {
        return with_pinch(band).canonical();
    }
    let j_trefoil = jones(&trefoil)?;
    let unknot = jones(&LinkDiagram::unknot())?;
    let faces = granny.faces();
    let mut pairs: Vec<[Edge; 2]> = Vec::new();
    for f in &faces {
        for a in &f.boundary {
            for b in &f.boundary {
                if a.edge < b.edge && a.forward == b.forward {
                    pairs.push([a.edge, b.edge]);
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    for arcs in pairs {
        let g = with_pinch(arcs);
        let Ok(cone) = tangent_cone(&g) else { continue };
        if cone.components.len() != 2 {
            continue;
        }
        let mut js = cone.components.iter().map(jones).collect::<Result<Vec<_>>>()?;
        js.sort_by_key(|p| p.to_string());
        let mut want = vec![j_trefoil.clone(), unknot.clone()];
        want.sort_by_key(|p| p.to_string());
        if js == want {
            return g.canonical();
        }
    }
    unreachable!("the granny knot has a pinch splitting off an unknot")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::break_bridge;
    use crate::invariants::{invariant_profile, linking_number};

    #[test]
    fn unknown_names() {
        assert!(matches!(corpus("nope"), Err(Error::UnknownCorpus(_))));
        assert!(matches!(corpus("twist.x"), Err(Error::UnknownCorpus(_))));
        assert!(matches!(corpus("universal.7_4"), Err(Error::UnknownCorpus(_))));
        assert!(corpus_germ("ex3.pair").is_err());
    }

    #[test]
    fn ex3_shape() {
        let x = corpus_germ("ex3.X").unwrap();
        assert_eq!(x.bridges.len(), 1);
        assert_eq!(x.bridges[0].q, int(3));
        assert_eq!(x.bridges[0].beta, int(2));
        assert_eq!(x.diagram.component_count(), 1);
        let broken = break_bridge(&x, "b1", int(4)).unwrap();
        let p = invariant_profile(&broken.diagram).unwrap();
        assert_eq!(p.components, 2);
        assert_eq!(p.linking_numbers, vec![0]);
    }

    #[test]
    fn pair_matches_singles() {
        let CorpusEntry::Pair(x, y) = corpus("ex3.pair").unwrap() else { panic!() };
        assert_eq!(x, corpus_germ("ex3.X").unwrap());
        assert_eq!(y, corpus_germ("ex3.Y").unwrap());
        assert_eq!(corpus_germ("twist.0").unwrap().diagram, x.diagram);
    }

    #[test]
    fn twist_linking() {
        for k in [-2i64, 1, 3] {
            let g = corpus_germ(&format!("twist.{k}")).unwrap();
            assert_eq!(g.diagram.crossing_count(), 2 + 2 * k.unsigned_abs() as usize);
            let b = break_bridge(&g, "b1", int(4)).unwrap();
            assert_eq!(b.diagram.component_count(), 2);
            assert_eq!(linking_number(&b.diagram, 0, 1).unwrap(), k);
            // the twist is undone by rotating the finger: the link stays trivial
            assert_eq!(jones(&g.diagram).unwrap(), jones(&LinkDiagram::unknot()).unwrap());
        }
    }
}
