//! Seeded random diagrams and Reidemeister insertions for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{braid_closure, Edge, LinkDiagram};
use crate::reidemeister::{r3_faces, reidemeister, Move};

/// Closure of a random braid word with at most `max_crossings` letters on
/// 1..=4 strands.
pub fn random_braid_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> LinkDiagram {
    let strands = rng.gen_range(1..=4usize);
    let len = if strands == 1 { 0 } else { rng.gen_range(0..=max_crossings) };
    let word: Vec<(usize, bool)> = (0..len).map(|_| (rng.gen_range(0..strands - 1), rng.gen_bool(0.5))).collect();
    braid_closure(strands, &word)
}

/// A random crossing-adding move (R1+, R2+ or R3) valid on `d`.
pub fn random_move<R: Rng>(rng: &mut R, d: &LinkDiagram) -> Move {
    let edges = d.edges();
    let r1 = |rng: &mut R| {
        let edge = if edges.is_empty() || (d.free_loops() > 0 && rng.gen_bool(0.2)) {
            None
        } else {
            Some(*edges.choose(rng).unwrap())
        };
        Move::R1Add { edge, positive: rng.gen_bool(0.5), left: rng.gen_bool(0.5) }
    };
    match rng.gen_range(0..3) {
        0 => r1(rng),
        1 => {
            let faces = d.faces();
            let candidates: Vec<(usize, Vec<Edge>)> = faces
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let mut es: Vec<Edge> = f.boundary.iter().map(|b| b.edge).collect();
                    es.sort_unstable();
                    es.dedup();
                    (i, es)
                })
                .filter(|(_, es)| es.len() >= 2)
                .collect();
            match candidates.choose(rng) {
                None => r1(rng),
                Some((face, es)) => {
                    let pick: Vec<&Edge> = es.choose_multiple(rng, 2).collect();
                    Move::R2Add { face: *face, over: *pick[0], under: *pick[1] }
                }
            }
        }
        _ => match r3_faces(d).choose(rng) {
            Some(&face) => Move::R3 { face },
            None => r1(rng),
        },
    }
}

/// Applies `n` random insertions, returning every intermediate diagram and
/// the move that produced it.
pub fn random_insertions<R: Rng>(rng: &mut R, d: &LinkDiagram, n: usize) -> Vec<(Move, LinkDiagram)> {
    let mut cur = d.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mv = random_move(rng, &cur);
        cur = reidemeister(&cur, mv).expect("random moves are drawn from valid locations");
        out.push((mv, cur.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn seeded_runs_repeat() {
        let mut a = StdRng::seed_from_u64(7);
        let mut b = StdRng::seed_from_u64(7);
        let da = random_braid_diagram(&mut a, 8);
        let db = random_braid_diagram(&mut b, 8);
        assert_eq!(da, db);
        let ma: Vec<Move> = random_insertions(&mut a, &da, 5).into_iter().map(|m| m.0).collect();
        let mb: Vec<Move> = random_insertions(&mut b, &db, 5).into_iter().map(|m| m.0).collect();
        assert_eq!(ma, mb);
    }

    #[test]
    fn moves_keep_components() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..30 {
            let d = random_braid_diagram(&mut rng, 6);
            for (_, e) in random_insertions(&mut rng, &d, 4) {
                assert_eq!(e.component_count(), d.component_count());
            }
        }
    }
}
