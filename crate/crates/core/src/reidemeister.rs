//! Single Reidemeister moves on PD diagrams.

use std::collections::BTreeSet;

use crate::diagram::{Crossing, Edge, LinkDiagram};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Kink on `edge` (or on a free loop when `None`). `positive` is the
    /// sign of the new crossing; `left` puts the loop on the left of the
    /// strand.
    R1Add { edge: Option<Edge>, positive: bool, left: bool },
    /// Remove the kink at a crossing.
    R1Remove { crossing: usize },
    /// Push `over` across `under`; both must border `face`.
    R2Add { face: usize, over: Edge, under: Edge },
    /// Remove the bigon `face`.
    R2Remove { face: usize },
    /// Slide across the triangle `face`.
    R3 { face: usize },
}

pub fn reidemeister(d: &LinkDiagram, mv: Move) -> Result<LinkDiagram> {
    match mv {
        Move::R1Add { edge, positive, left } => r1_add(d, edge, positive, left),
        Move::R1Remove { crossing } => r1_remove(d, crossing),
        Move::R2Add { face, over, under } => r2_add(d, face, over, under),
        Move::R2Remove { face } => r2_remove(d, face),
        Move::R3 { face } => r3(d, face),
    }
}

fn r1_add(d: &LinkDiagram, edge: Option<Edge>, positive: bool, left: bool) -> Result<LinkDiagram> {
    let max = d.max_label();
    let mut crossings = d.crossings().to_vec();
    let mut free = d.free_loops();
    let (e, l, f) = match edge {
        None => {
            if free == 0 {
                return Err(Error::PatternNotFound("no free loop for R1+".into()));
            }
            free -= 1;
            (max + 1, max + 2, max + 1)
        }
        Some(e) => {
            let ends = d.edge_ends(e)?;
            let f = max + 2;
            crossings[ends.head.0].edges[ends.head.1] = f;
            (e, max + 1, f)
        }
    };
    let x = match (left, positive) {
        (true, true) => Crossing { edges: [e, f, l, l], over_forward: false },
        (false, false) => Crossing { edges: [e, l, l, f], over_forward: true },
        (true, false) => Crossing { edges: [l, e, f, l], over_forward: true },
        (false, true) => Crossing { edges: [l, l, f, e], over_forward: false },
    };
    crossings.push(x);
    LinkDiagram::new(crossings, free)
}

/// Crossings carrying a kink: one label at two cyclically adjacent positions.
pub fn kink_crossings(d: &LinkDiagram) -> Vec<usize> {
    d.crossings()
        .iter()
        .enumerate()
        .filter(|(_, x)| (0..4).any(|p| x.edges[p] == x.edges[(p + 1) % 4]))
        .map(|(c, _)| c)
        .collect()
}

fn r1_remove(d: &LinkDiagram, crossing: usize) -> Result<LinkDiagram> {
    if !kink_crossings(d).contains(&crossing) {
        return Err(Error::PatternNotFound(format!("no kink at crossing {crossing}")));
    }
    let drop = BTreeSet::from([crossing]);
    Ok(d.without_crossings(&drop))
}

fn r2_add(d: &LinkDiagram, face: usize, over: Edge, under: Edge) -> Result<LinkDiagram> {
    let faces = d.faces();
    let f = faces.get(face).ok_or(Error::Face(face))?;
    if over == under {
        return Err(Error::PatternNotFound("R2+ needs two distinct edges".into()));
    }
    let fo = f.boundary.iter().find(|b| b.edge == over).ok_or(Error::NotCofacial(over, under))?;
    let fu = f.boundary.iter().find(|b| b.edge == under).ok_or(Error::NotCofacial(over, under))?;
    let ends = d.ends();
    let max = d.max_label();
    let mut next = max + 1;
    let mut fresh = || {
        let e = next;
        next += 1;
        e
    };
    // pieces in dart order; the tail-side piece keeps the old label
    let split = |e: Edge, forward: bool, fresh: &mut dyn FnMut() -> Edge| -> ([Edge; 3], Edge) {
        if forward {
            let p = [e, fresh(), fresh()];
            (p, p[2])
        } else {
            let p = [fresh(), fresh(), e];
            (p, p[0])
        }
    };
    let ([t1, t2, t3], over_head) = split(over, fo.forward, &mut fresh);
    let ([b1, b2, b3], under_head) = split(under, fu.forward, &mut fresh);
    let mut crossings = d.crossings().to_vec();
    let ho = ends[&over].head;
    let hu = ends[&under].head;
    crossings[ho.0].edges[ho.1] = over_head;
    crossings[hu.0].edges[hu.1] = under_head;

    use crate::diagram::Role::*;
    let (oi, oo) = if fo.forward { (OverIn, OverOut) } else { (OverOut, OverIn) };
    let (ui, uo) = if fu.forward { (UnderIn, UnderOut) } else { (UnderOut, UnderIn) };
    // counterclockwise slots E, N, W, S; the over-dart runs west to east
    // above the face and dips across the under-dart twice
    let x1 = crate::diagram::crossing_from_slots([(b2, ui), (t1, oi), (b3, uo), (t2, oo)]);
    let x2 = crate::diagram::crossing_from_slots([(b1, ui), (t3, oo), (b2, uo), (t2, oi)]);
    crossings.push(x1);
    crossings.push(x2);
    LinkDiagram::new(crossings, d.free_loops())
}

fn r2_remove(d: &LinkDiagram, face: usize) -> Result<LinkDiagram> {
    let faces = d.faces();
    let f = faces.get(face).ok_or(Error::Face(face))?;
    let not_found = || Error::PatternNotFound(format!("face {face} is not an R2 bigon"));
    if f.boundary.len() != 2 {
        return Err(not_found());
    }
    let (a, b) = (f.boundary[0], f.boundary[1]);
    if a.dart.0 == b.dart.0 || a.edge == b.edge {
        return Err(not_found());
    }
    let ends = d.ends();
    let over_at = |e: Edge| {
        let en = ends[&e];
        (en.tail.1 % 2 == 1, en.head.1 % 2 == 1)
    };
    let (a0, a1) = over_at(a.edge);
    let (b0, b1) = over_at(b.edge);
    if !(a0 == a1 && b0 == b1 && a0 != b0) {
        return Err(not_found());
    }
    let drop = BTreeSet::from([a.dart.0, b.dart.0]);
    Ok(d.without_crossings(&drop))
}

fn r3(d: &LinkDiagram, face: usize) -> Result<LinkDiagram> {
    let faces = d.faces();
    let f = faces.get(face).ok_or(Error::Face(face))?;
    let not_found = || Error::PatternNotFound(format!("face {face} is not an R3 triangle"));
    if f.boundary.len() != 3 {
        return Err(not_found());
    }
    let corners: BTreeSet<usize> = f.boundary.iter().map(|b| b.dart.0).collect();
    let edges: BTreeSet<Edge> = f.boundary.iter().map(|b| b.edge).collect();
    if corners.len() != 3 || edges.len() != 3 {
        return Err(not_found());
    }
    let ends = d.ends();
    let over_both = edges.iter().any(|e| {
        let en = ends[e];
        en.tail.1 % 2 == 1 && en.head.1 % 2 == 1
    });
    if !over_both {
        return Err(not_found());
    }
    let mut crossings = d.crossings().to_vec();
    for &e in &edges {
        let en = ends[&e];
        let (ct, po) = en.tail;
        let (ch, pi) = en.head;
        let t_in = (ct, (po + 2) % 4);
        let h_out = (ch, (pi + 2) % 4);
        let ext_in = d.label_at(t_in);
        let ext_out = d.label_at(h_out);
        crossings[ct].edges[t_in.1] = e;
        crossings[ct].edges[po] = ext_out;
        crossings[ch].edges[pi] = ext_in;
        crossings[ch].edges[h_out.1] = e;
    }
    LinkDiagram::new(crossings, d.free_loops())
}

/// Faces where [`Move::R3`] applies.
pub fn r3_faces(d: &LinkDiagram) -> Vec<usize> {
    (0..d.faces().len()).filter(|&f| r3(d, f).is_ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_braid, parse_pd};

    fn trefoil() -> LinkDiagram {
        parse_braid("braid 2: s1 s1 s1").unwrap()
    }

    #[test]
    fn r1_on_free_loop() {
        let d = LinkDiagram::unknot();
        for (positive, left) in [(true, true), (true, false), (false, true), (false, false)] {
            let k = reidemeister(&d, Move::R1Add { edge: None, positive, left }).unwrap();
            assert_eq!(k.crossing_count(), 1);
            assert_eq!(k.free_loops(), 0);
            assert_eq!(k.component_count(), 1);
            assert_eq!(k.crossings()[0].sign(), if positive { 1 } else { -1 });
            let back = reidemeister(&k, Move::R1Remove { crossing: 0 }).unwrap();
            assert_eq!(back, LinkDiagram::unknot());
        }
    }

    #[test]
    fn r1_remove_needs_kink() {
        let t = trefoil();
        for c in 0..3 {
            assert!(matches!(
                reidemeister(&t, Move::R1Remove { crossing: c }),
                Err(Error::PatternNotFound(_))
            ));
        }
    }

    #[test]
    fn r1_on_edge_keeps_components() {
        let t = trefoil();
        for e in t.edges() {
            for (positive, left) in [(true, true), (false, false), (true, false), (false, true)] {
                let k = reidemeister(&t, Move::R1Add { edge: Some(e), positive, left }).unwrap();
                assert_eq!(k.crossing_count(), 4);
                assert_eq!(k.component_count(), 1);
                let c = kink_crossings(&k);
                assert_eq!(c, vec![3]);
                let back = reidemeister(&k, Move::R1Remove { crossing: 3 }).unwrap();
                assert!(back.same_up_to_relabeling(&t));
            }
        }
    }

    #[test]
    fn r2_round_trip() {
        let hopf = parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        let faces = hopf.faces();
        let mut done = 0;
        for (fi, f) in faces.iter().enumerate() {
            let es: Vec<Edge> = f.boundary.iter().map(|b| b.edge).collect();
            for &a in &es {
                for &b in &es {
                    if a == b {
                        continue;
                    }
                    let up = reidemeister(&hopf, Move::R2Add { face: fi, over: a, under: b }).unwrap();
                    assert_eq!(up.crossing_count(), 4);
                    assert_eq!(up.component_count(), 2);
                    let bigons: Vec<usize> = (0..up.faces().len())
                        .filter(|&g| reidemeister(&up, Move::R2Remove { face: g }).is_ok())
                        .collect();
                    assert!(!bigons.is_empty());
                    assert!(bigons.iter().any(|&g| reidemeister(&up, Move::R2Remove { face: g })
                        .unwrap()
                        .same_up_to_relabeling(&hopf)));
                    done += 1;
                }
            }
        }
        assert!(done > 0);
    }

    #[test]
    fn r3_on_braid_relation() {
        // s1 s2 s1 has a triangle between its three crossings
        let d = parse_braid("braid 3: s1 s2 s1").unwrap();
        let tri = r3_faces(&d);
        assert!(!tri.is_empty());
        let e = reidemeister(&d, Move::R3 { face: tri[0] }).unwrap();
        assert_eq!(e.crossing_count(), 3);
        assert_eq!(e.component_count(), d.component_count());
        // the move is an involution on the triangle
        let back_faces = r3_faces(&e);
        assert!(back_faces
            .iter()
            .any(|&f| reidemeister(&e, Move::R3 { face: f }).unwrap().same_up_to_relabeling(&d)));
    }
}
