//! Writhe, linking numbers, the Kauffman bracket and the Jones polynomial.
//!
//! The bracket uses `⟨X[a,b,c,d]⟩ = A⟨(a,b)(c,d)⟩ + A⁻¹⟨(a,d)(b,c)⟩` and
//! `⟨O⟩ = 1`. Jones is `(−A)^(−3w)⟨D⟩` rewritten with `t = A⁻⁴`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::diagram::{Edge, LinkDiagram};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Var};
use crate::rational::int;

pub const DEFAULT_CROSSING_LIMIT: usize = 24;
pub const BRUTEFORCE_LIMIT: usize = 16;

pub fn writhe(d: &LinkDiagram) -> i64 {
    d.crossings().iter().map(|x| x.sign() as i64).sum()
}

pub fn linking_number(d: &LinkDiagram, c1: usize, c2: usize) -> Result<i64> {
    let n = d.component_count();
    for c in [c1, c2] {
        if c >= n {
            return Err(Error::Component(c));
        }
    }
    if c1 == c2 {
        return Err(Error::Component(c2));
    }
    let total: i64 = d
        .crossings()
        .iter()
        .zip(d.crossing_components())
        .filter(|(_, (u, o))| (*u == c1 && *o == c2) || (*u == c2 && *o == c1))
        .map(|(x, _)| x.sign() as i64)
        .sum();
    Ok(total / 2)
}

/// Integer-exponent polynomial in `A` used inside the state sums.
#[derive(Debug, Clone, Default, PartialEq)]
struct APoly(BTreeMap<i32, i64>);

impl APoly {
    fn monomial(e: i32) -> Self {
        APoly(BTreeMap::from([(e, 1)]))
    }

    fn delta() -> Self {
        APoly(BTreeMap::from([(-2, -1), (2, -1)]))
    }

    fn add_scaled(&mut self, other: &APoly, shift: i32) {
        for (&e, &c) in &other.0 {
            let v = self.0.entry(e + shift).or_insert(0);
            *v += c;
            if *v == 0 {
                self.0.remove(&(e + shift));
            }
        }
    }

    fn mul(&self, other: &APoly) -> APoly {
        let mut out = APoly::default();
        for (&e, &c) in &self.0 {
            for (&f, &k) in &other.0 {
                let v = out.0.entry(e + f).or_insert(0);
                *v += c * k;
            }
        }
        out.0.retain(|_, c| *c != 0);
        out
    }

    fn times_delta_pow(&self, n: usize) -> APoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.mul(&APoly::delta());
        }
        p
    }

    fn into_laurent(self) -> LaurentPoly {
        LaurentPoly::from_ints(Var::A, self.0.into_iter().map(|(e, c)| (e as i64, c)))
    }
}

type Arcs = [(Edge, Edge); 2];

/// The two smoothings of a crossing: `(A-arcs, B-arcs)`.
fn smoothings(x: [Edge; 4]) -> (Arcs, Arcs) {
    let [a, b, c, d] = x;
    ([(a, b), (c, d)], [(a, d), (b, c)])
}

/// Greedy order: each next crossing shares the most labels with the
/// boundary of what has been processed.
fn crossing_order(d: &LinkDiagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut done = vec![false; n];
    let mut open: HashMap<Edge, usize> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&c| !done[c])
            .max_by_key(|&c| {
                let shared = d.crossings()[c].edges.iter().filter(|e| open.contains_key(e)).count();
                (shared, std::cmp::Reverse(c))
            })
            .unwrap();
        done[best] = true;
        order.push(best);
        for &e in &d.crossings()[best].edges {
            *open.entry(e).or_insert(0) += 1;
            if open[&e] == 2 {
                open.remove(&e);
            }
        }
    }
    order
}

/// Connectivity of dangling strand ends plus whether a loop has closed yet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    pairs: Vec<(Edge, Edge)>,
    closed: bool,
}

/// Adds the arcs of one smoothing to a partner map. Returns the number of
/// loops closed.
fn add_arcs(partner: &mut HashMap<Edge, Edge>, arcs: &[(Edge, Edge); 2]) -> usize {
    let mut loops = 0;
    for &(x, y) in arcs {
        if x == y || partner.get(&x) == Some(&y) {
            partner.remove(&x);
            partner.remove(&y);
            loops += 1;
            continue;
        }
        let a = match partner.remove(&x) {
            Some(p) => {
                partner.remove(&p);
                p
            }
            None => x,
        };
        let b = match partner.remove(&y) {
            Some(q) => {
                partner.remove(&q);
                q
            }
            None => y,
        };
        partner.insert(a, b);
        partner.insert(b, a);
    }
    loops
}

fn to_pairs(partner: &HashMap<Edge, Edge>) -> Vec<(Edge, Edge)> {
    let mut v: Vec<(Edge, Edge)> = partner.iter().filter(|(a, b)| a < b).map(|(&a, &b)| (a, b)).collect();
    v.sort_unstable();
    v
}

fn free_loop_factor(d: &LinkDiagram, body: APoly) -> APoly {
    let free = d.free_loops();
    if d.crossing_count() == 0 {
        APoly::monomial(0).times_delta_pow(free.saturating_sub(1))
    } else {
        body.times_delta_pow(free)
    }
}

pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_with_limit(d, DEFAULT_CROSSING_LIMIT)
}

/// Bracket by a state sum over planar tangles, memoizing on boundary
/// connectivity.
pub fn kauffman_bracket_with_limit(d: &LinkDiagram, limit: usize) -> Result<LaurentPoly> {
    let n = d.crossing_count();
    if n > limit {
        return Err(Error::CrossingLimit { crossings: n, limit });
    }
    let mut states: HashMap<State, APoly> = HashMap::new();
    states.insert(State { pairs: Vec::new(), closed: false }, APoly::monomial(0));
    let delta = APoly::delta();
    for c in crossing_order(d) {
        let (sa, sb) = smoothings(d.crossings()[c].edges);
        let mut next: HashMap<State, APoly> = HashMap::with_capacity(states.len() * 2);
        for (state, poly) in &states {
            for (arcs, shift) in [(&sa, 1), (&sb, -1)] {
                let mut partner: HashMap<Edge, Edge> = HashMap::new();
                for &(a, b) in &state.pairs {
                    partner.insert(a, b);
                    partner.insert(b, a);
                }
                let loops = add_arcs(&mut partner, arcs);
                let mut p = poly.clone();
                let mut closed = state.closed;
                for _ in 0..loops {
                    if closed {
                        p = p.mul(&delta);
                    }
                    closed = true;
                }
                let key = State { pairs: to_pairs(&partner), closed };
                next.entry(key).or_default().add_scaled(&p, shift);
            }
        }
        next.retain(|_, p| !p.0.is_empty());
        states = next;
    }
    let body = states.into_values().fold(APoly::default(), |mut acc, p| {
        acc.add_scaled(&p, 0);
        acc
    });
    Ok(free_loop_factor(d, body).into_laurent())
}

/// Exhaustive `2ⁿ`-state sum.
pub fn kauffman_bracket_bruteforce(d: &LinkDiagram) -> Result<LaurentPoly> {
    let n = d.crossing_count();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::CrossingLimit { crossings: n, limit: BRUTEFORCE_LIMIT });
    }
    if n == 0 {
        return Ok(free_loop_factor(d, APoly::default()).into_laurent());
    }
    let labels = d.edges();
    let index: HashMap<Edge, usize> = labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut total = APoly::default();
    for state in 0u32..(1 << n) {
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut a_count = 0i32;
        for (c, x) in d.crossings().iter().enumerate() {
            let (sa, sb) = smoothings(x.edges);
            let arcs = if state >> c & 1 == 0 {
                a_count += 1;
                sa
            } else {
                a_count -= 1;
                sb
            };
            for (u, v) in arcs {
                let (ru, rv) = (find(&mut parent, index[&u]), find(&mut parent, index[&v]));
                parent[ru] = rv;
            }
        }
        let loops = (0..labels.len()).filter(|&i| find(&mut parent, i) == i).count();
        total.add_scaled(&APoly::monomial(0).times_delta_pow(loops - 1), a_count);
    }
    Ok(free_loop_factor(d, total).into_laurent())
}

/// `(−A)^(−3w)·⟨D⟩` in `t = A⁻⁴`.
pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let k = -3 * writhe;
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let factor = LaurentPoly::monomial(Var::A, sign, int(k));
    (&factor * bracket).a_to_t()
}

pub fn jones(d: &LinkDiagram) -> Result<LaurentPoly> {
    Ok(jones_from_bracket(&kauffman_bracket(d)?, writhe(d)))
}

pub fn jones_with_limit(d: &LinkDiagram, limit: usize) -> Result<LaurentPoly> {
    Ok(jones_from_bracket(&kauffman_bracket_with_limit(d, limit)?, writhe(d)))
}

/// Comparison summary of a link. Link components carry no preferred
/// orientation, so linking numbers are stored as absolute values and the
/// whole-link Jones is kept as the set of its values over all component
/// reorientations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub components: usize,
    pub component_jones: Vec<LaurentPoly>,
    pub linking_numbers: Vec<i64>,
    pub jones: Vec<LaurentPoly>,
}

/// Field names in comparison order.
pub const PROFILE_FIELDS: [&str; 4] = ["component count", "pairwise linking number", "per-component Jones", "whole-link Jones"];

fn sort_polys(v: &mut [LaurentPoly]) {
    v.sort_by_cached_key(|p| p.to_string());
}

pub fn invariant_profile(d: &LinkDiagram) -> Result<Profile> {
    let n = d.component_count();
    let mut component_jones = Vec::with_capacity(n);
    for c in 0..n {
        component_jones.push(jones(&d.sublink(&[c])?)?);
    }
    sort_polys(&mut component_jones);
    let mut lk = vec![vec![0i64; n]; n];
    let mut linking_numbers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            lk[i][j] = linking_number(d, i, j)?;
            lk[j][i] = lk[i][j];
            linking_numbers.push(lk[i][j].abs());
        }
    }
    linking_numbers.sort_unstable();
    let whole = jones(d)?;
    Ok(Profile {
        components: n,
        component_jones,
        linking_numbers,
        jones: reorientation_class(&whole, &lk),
    })
}

/// Jones polynomials of every reorientation, sorted and deduplicated:
/// reversing a set `S` of components multiplies by `t^(−3·lk(S, rest))`.
/// Kept as a set so that mirroring commutes with it.
fn reorientation_class(v: &LaurentPoly, lk: &[Vec<i64>]) -> Vec<LaurentPoly> {
    let n = lk.len();
    let bits = n.saturating_sub(1).min(16);
    let mut shifts: Vec<i64> = (0u32..(1 << bits))
        .map(|mask| {
            let in_s = |i: usize| i < bits && mask >> i & 1 == 1;
            let mut lam = 0;
            for i in 0..n {
                for j in 0..n {
                    if in_s(i) && !in_s(j) {
                        lam += lk[i][j];
                    }
                }
            }
            lam
        })
        .collect();
    shifts.sort_unstable();
    shifts.dedup();
    let mut out: Vec<LaurentPoly> =
        shifts.into_iter().map(|lam| &LaurentPoly::monomial(Var::T, 1, int(-3 * lam)) * v).collect();
    sort_polys(&mut out);
    out
}

impl Profile {
    /// The profile of the mirror image: `t ↦ t⁻¹` throughout.
    pub fn mirrored(&self) -> Profile {
        let mut component_jones: Vec<LaurentPoly> =
            self.component_jones.iter().map(LaurentPoly::invert_variable).collect();
        sort_polys(&mut component_jones);
        Profile {
            components: self.components,
            component_jones,
            linking_numbers: self.linking_numbers.clone(),
            jones: {
                let mut j: Vec<LaurentPoly> = self.jones.iter().map(LaurentPoly::invert_variable).collect();
                sort_polys(&mut j);
                j
            },
        }
    }

    /// Indices into [`PROFILE_FIELDS`] of the fields that differ.
    pub fn differing_fields(&self, other: &Profile) -> Vec<usize> {
        let mut out = Vec::new();
        if self.components != other.components {
            out.push(0);
        }
        if self.linking_numbers != other.linking_numbers {
            out.push(1);
        }
        if self.component_jones != other.component_jones {
            out.push(2);
        }
        if self.jones != other.jones {
            out.push(3);
        }
        out
    }
}

/// Distinguishes two profiles up to mirror image. Returns the witness: the
/// first field that differs both directly and against the mirror, or
/// `"profile"` when the two comparisons fail on different fields.
pub fn distinguish_profiles(a: &Profile, b: &Profile) -> Option<String> {
    let direct = a.differing_fields(b);
    let mirror = a.differing_fields(&b.mirrored());
    if direct.is_empty() || mirror.is_empty() {
        return None;
    }
    Some(
        direct
            .iter()
            .find(|f| mirror.contains(f))
            .map(|&f| PROFILE_FIELDS[f].to_string())
            .unwrap_or_else(|| "profile".to_string()),
    )
}
