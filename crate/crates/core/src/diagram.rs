//! Oriented link diagrams in PD form.
//!
//! A crossing lists its four edge labels counterclockwise starting from the
//! incoming under-strand. The under-strand runs from position 0 to
//! position 2; `over_forward` records whether the over-strand runs from
//! position 1 to position 3 (a negative crossing) or from 3 to 1 (positive).
//! Crossing-free unknotted circles are counted in `free_loops`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub type Edge = u32;

/// `(crossing index, position 0..4)`.
pub type Pos = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [Edge; 4],
    pub over_forward: bool,
}

impl Crossing {
    pub fn sign(&self) -> i32 {
        if self.over_forward {
            -1
        } else {
            1
        }
    }

    /// Whether the strand leaves the crossing through `pos`.
    pub fn is_outgoing(&self, pos: usize) -> bool {
        match pos {
            0 => false,
            2 => true,
            1 => !self.over_forward,
            _ => self.over_forward,
        }
    }

    /// Incoming position of the over-strand.
    pub fn over_in(&self) -> usize {
        if self.over_forward {
            1
        } else {
            3
        }
    }

    /// The same crossing seen from the other side of the projection plane.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        if self.over_forward {
            Crossing { edges: [b, c, d, a], over_forward: false }
        } else {
            Crossing { edges: [d, a, b, c], over_forward: true }
        }
    }
}

/// Roles used to assemble a crossing from geometric slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Role {
    UnderIn,
    UnderOut,
    OverIn,
    OverOut,
}

/// Builds a crossing from four slots listed counterclockwise, starting
/// anywhere.
pub(crate) fn crossing_from_slots(slots: [(Edge, Role); 4]) -> Crossing {
    let start = slots.iter().position(|s| s.1 == Role::UnderIn).expect("under-in slot");
    let at = |k: usize| slots[(start + k) % 4];
    debug_assert_eq!(at(2).1, Role::UnderOut);
    Crossing {
        edges: [at(0).0, at(1).0, at(2).0, at(3).0],
        over_forward: at(1).1 == Role::OverIn,
    }
}

/// One oriented component: its edges in traversal order. Empty for a free
/// loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub edges: Vec<Edge>,
}

impl Component {
    pub fn is_free_loop(&self) -> bool {
        self.edges.is_empty()
    }
}

/// An edge occurrence on a face boundary. `forward` means the face lies to
/// the right of the edge's orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceEdge {
    pub edge: Edge,
    pub forward: bool,
    pub dart: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<FaceEdge>,
}

impl Face {
    pub fn contains(&self, e: Edge) -> bool {
        self.boundary.iter().any(|f| f.edge == e)
    }

    pub fn sides_of(&self, e: Edge) -> impl Iterator<Item = bool> + '_ {
        self.boundary.iter().filter(move |f| f.edge == e).map(|f| f.forward)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

/// Tail and head positions of each edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ends {
    pub tail: Pos,
    pub head: Pos,
}

impl LinkDiagram {
    /// Validated diagram from oriented crossings.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self> {
        let d = Self { crossings, free_loops };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        Self { crossings, free_loops }
    }

    /// Orients raw PD tuples. Over-strand directions are propagated from
    /// the under-strands. A component that never passes under is oriented
    /// so that labels increase along it, as in canonical labeling.
    pub fn from_pd_tuples(raw: &[[Edge; 4]], free_loops: usize) -> Result<Self> {
        let mut occ: BTreeMap<Edge, Vec<Pos>> = BTreeMap::new();
        for (c, x) in raw.iter().enumerate() {
            for (p, &e) in x.iter().enumerate() {
                occ.entry(e).or_default().push((c, p));
            }
        }
        if let Some((&label, v)) = occ.iter().find(|(_, v)| v.len() != 2) {
            return Err(Error::LabelCount { label, count: v.len() });
        }
        let other = |c: usize, p: usize| -> Pos {
            let v = &occ[&raw[c][p]];
            if v[0] == (c, p) {
                v[1]
            } else {
                v[0]
            }
        };
        let mut dir: Vec<Option<bool>> = vec![None; raw.len()];
        let outgoing = |dir: &[Option<bool>], (c, p): Pos| -> Option<bool> {
            match p {
                0 => Some(false),
                2 => Some(true),
                1 => dir[c].map(|f| !f),
                _ => dir[c],
            }
        };
        loop {
            let mut progress = true;
            while progress {
                progress = false;
                for c in 0..raw.len() {
                    if dir[c].is_some() {
                        continue;
                    }
                    for p in [1, 3] {
                        let o = other(c, p);
                        if o.0 == c && o.1 % 2 == 1 {
                            continue;
                        }
                        if let Some(out) = outgoing(&dir, o) {
                            let incoming = out;
                            dir[c] = Some(if p == 1 { incoming } else { !incoming });
                            progress = true;
                            break;
                        }
                    }
                }
            }
            match dir.iter().position(|d| d.is_none()) {
                Some(c) => {
                    let (e1, e3) = (raw[c][1], raw[c][3]);
                    dir[c] = Some(if e1.abs_diff(e3) == 1 { e3 > e1 } else { e3 < e1 });
                }
                None => break,
            }
        }
        let crossings = raw
            .iter()
            .zip(dir)
            .map(|(x, d)| Crossing { edges: *x, over_forward: d.unwrap() })
            .collect();
        Self::new(crossings, free_loops)
    }

    pub fn unknot() -> Self {
        Self { crossings: Vec::new(), free_loops: 1 }
    }

    pub fn unlink(n: usize) -> Self {
        Self { crossings: Vec::new(), free_loops: n }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn label_at(&self, (c, p): Pos) -> Edge {
        self.crossings[c].edges[p]
    }

    pub(crate) fn set_label(&mut self, (c, p): Pos, e: Edge) {
        self.crossings[c].edges[p] = e;
    }

    pub fn max_label(&self) -> Edge {
        self.crossings.iter().flat_map(|x| x.edges).max().unwrap_or(0)
    }

    pub fn edges(&self) -> Vec<Edge> {
        let s: BTreeSet<Edge> = self.crossings.iter().flat_map(|x| x.edges).collect();
        s.into_iter().collect()
    }

    pub fn ends(&self) -> BTreeMap<Edge, Ends> {
        let mut tails = HashMap::new();
        let mut heads = HashMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                if x.is_outgoing(p) {
                    tails.insert(x.edges[p], (c, p));
                } else {
                    heads.insert(x.edges[p], (c, p));
                }
            }
        }
        tails
            .into_iter()
            .map(|(e, tail)| (e, Ends { tail, head: heads[&e] }))
            .collect()
    }

    pub fn edge_ends(&self, e: Edge) -> Result<Ends> {
        self.ends().get(&e).copied().ok_or(Error::Edge(e))
    }

    fn validate(&self) -> Result<()> {
        let mut outs: BTreeMap<Edge, (usize, usize)> = BTreeMap::new();
        for x in &self.crossings {
            for p in 0..4 {
                let entry = outs.entry(x.edges[p]).or_default();
                if x.is_outgoing(p) {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                }
            }
        }
        for (&e, &(o, i)) in &outs {
            if o + i != 2 {
                return Err(Error::LabelCount { label: e, count: o + i });
            }
            if o != 1 {
                return Err(Error::Orientation(e));
            }
        }
        self.check_planar()
    }

    /// Union-find over crossings joined by edges; returns a piece id per crossing.
    pub(crate) fn pieces(&self) -> Vec<usize> {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (_, ends) in self.ends() {
            let a = find(&mut parent, ends.tail.0);
            let b = find(&mut parent, ends.head.0);
            parent[a] = b;
        }
        (0..n).map(|i| find(&mut parent, i)).collect()
    }

    fn check_planar(&self) -> Result<()> {
        let pieces = self.pieces();
        let faces = self.crossing_faces();
        let mut euler: BTreeMap<usize, i64> = BTreeMap::new();
        for &root in &pieces {
            // V - E with E = 2V per piece
            *euler.entry(root).or_default() -= 1;
        }
        for f in &faces {
            *euler.entry(pieces[f.boundary[0].dart.0]).or_default() += 1;
        }
        let total: i64 = euler.values().sum();
        if euler.values().any(|&v| v != 2) {
            return Err(Error::NonPlanar { euler: total, pieces: euler.len() });
        }
        Ok(())
    }

    pub(crate) fn crossing_faces(&self) -> Vec<Face> {
        let n = self.crossings.len();
        let mut other = HashMap::with_capacity(4 * n);
        let ends = self.ends();
        for e in ends.values() {
            other.insert(e.tail, e.head);
            other.insert(e.head, e.tail);
        }
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c in 0..n {
            for p in 0..4 {
                if seen[c][p] {
                    continue;
                }
                let mut boundary = Vec::new();
                let mut dart = (c, p);
                while !seen[dart.0][dart.1] {
                    seen[dart.0][dart.1] = true;
                    let x = &self.crossings[dart.0];
                    boundary.push(FaceEdge {
                        edge: x.edges[dart.1],
                        forward: x.is_outgoing(dart.1),
                        dart,
                    });
                    let (c2, p2) = other[&dart];
                    dart = (c2, (p2 + 1) % 4);
                }
                faces.push(Face { boundary });
            }
        }
        faces
    }

    /// Faces of the projection; each free loop contributes an inside and an
    /// outside face with empty boundary lists.
    pub fn faces(&self) -> Vec<Face> {
        let mut faces = self.crossing_faces();
        for _ in 0..2 * self.free_loops {
            faces.push(Face { boundary: Vec::new() });
        }
        faces
    }

    /// Number of connected pieces of the projection, free loops included.
    pub fn piece_count(&self) -> usize {
        let p: BTreeSet<usize> = self.pieces().into_iter().collect();
        p.len() + self.free_loops
    }

    /// Components with crossings (ordered by least edge label, each traced
    /// from that label), followed by free loops.
    pub fn components(&self) -> Vec<Component> {
        let ends = self.ends();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in ends.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut edges = Vec::new();
            let mut e = start;
            loop {
                seen.insert(e);
                edges.push(e);
                let (c, p) = ends[&e].head;
                e = self.crossings[c].edges[(p + 2) % 4];
                if e == start {
                    break;
                }
            }
            out.push(Component { edges });
        }
        out.extend((0..self.free_loops).map(|_| Component { edges: Vec::new() }));
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn component_of_edge(&self) -> HashMap<Edge, usize> {
        let mut m = HashMap::new();
        for (i, c) in self.components().iter().enumerate() {
            for &e in &c.edges {
                m.insert(e, i);
            }
        }
        m
    }

    /// Components of the under- and over-strand of every crossing.
    pub fn crossing_components(&self) -> Vec<(usize, usize)> {
        let comp = self.component_of_edge();
        self.crossings
            .iter()
            .map(|x| (comp[&x.edges[0]], comp[&x.edges[1]]))
            .collect()
    }
}

impl LinkDiagram {
    /// Rebuilds the diagram keeping only components in `keep` and dropping
    /// the crossings in `drop`; strands pass straight through removed
    /// crossings. Edges are relabeled `1..` in traversal order.
    pub(crate) fn rebuild(&self, keep: &BTreeSet<usize>, drop: &BTreeSet<usize>) -> LinkDiagram {
        let comps = self.components();
        let comp_of = self.component_of_edge();
        let kept_crossing = |c: usize| {
            let x = &self.crossings[c];
            !drop.contains(&c)
                && keep.contains(&comp_of[&x.edges[0]])
                && keep.contains(&comp_of[&x.edges[1]])
        };
        let ends = self.ends();
        let mut new_edges: Vec<Option<[Edge; 4]>> = vec![None; self.crossings.len()];
        for c in 0..self.crossings.len() {
            if kept_crossing(c) {
                new_edges[c] = Some([0; 4]);
            }
        }
        let mut free_loops = 0;
        let mut next: Edge = 1;
        for (i, comp) in comps.iter().enumerate() {
            if !keep.contains(&i) {
                continue;
            }
            // passes as incoming positions at kept crossings
            let passes: Vec<Pos> = comp
                .edges
                .iter()
                .map(|e| ends[e].head)
                .filter(|&(c, _)| kept_crossing(c))
                .collect();
            if passes.is_empty() {
                free_loops += 1;
                continue;
            }
            for k in 0..passes.len() {
                let (c, p) = passes[k];
                let (c2, p2) = passes[(k + 1) % passes.len()];
                new_edges[c].as_mut().unwrap()[(p + 2) % 4] = next;
                new_edges[c2].as_mut().unwrap()[p2] = next;
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .zip(new_edges)
            .filter_map(|(x, e)| e.map(|edges| Crossing { edges, over_forward: x.over_forward }))
            .collect();
        LinkDiagram::new_unchecked(crossings, free_loops)
    }

    /// The sublink formed by the listed components; crossings with the
    /// others are forgotten.
    pub fn sublink(&self, keep: &[usize]) -> Result<LinkDiagram> {
        let n = self.component_count();
        if let Some(&bad) = keep.iter().find(|&&c| c >= n) {
            return Err(Error::Component(bad));
        }
        Ok(self.rebuild(&keep.iter().copied().collect(), &BTreeSet::new()))
    }

    /// Drops crossings (strands pass straight through).
    pub(crate) fn without_crossings(&self, drop: &BTreeSet<usize>) -> LinkDiagram {
        let all = (0..self.component_count()).collect();
        self.rebuild(&all, drop)
    }

    /// Exchanges the heads of two edges: `e1: u1→v1, e2: u2→v2` become
    /// `e1: u1→v2, e2: u2→v1`. This is the combinatorial band move; the
    /// result is validated.
    pub(crate) fn swap_heads(&self, e1: Edge, e2: Edge) -> Result<LinkDiagram> {
        let ends = self.ends();
        let h1 = ends.get(&e1).ok_or(Error::Edge(e1))?.head;
        let h2 = ends.get(&e2).ok_or(Error::Edge(e2))?.head;
        let mut d = self.clone();
        d.set_label(h1, e2);
        d.set_label(h2, e1);
        d.validate()?;
        Ok(d)
    }

    /// Same diagram with edges relabeled `1..` by traversal order and
    /// crossings sorted by least label.
    pub fn canonical(&self) -> LinkDiagram {
        let mut map = HashMap::new();
        let mut next: Edge = 1;
        for comp in self.components() {
            for e in comp.edges {
                map.insert(e, next);
                next += 1;
            }
        }
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|x| Crossing { edges: x.edges.map(|e| map[&e]), over_forward: x.over_forward })
            .collect();
        crossings.sort_by_key(|x| (*x.edges.iter().min().unwrap(), x.edges));
        LinkDiagram::new_unchecked(crossings, self.free_loops)
    }

    /// PD text with the current labels, e.g. `X[1,4,2,5] X[3,6,4,1] O`.
    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x.edges[0], x.edges[1], x.edges[2], x.edges[3]))
            .collect();
        parts.extend((0..self.free_loops).map(|_| "O".to_string()));
        parts.join(" ")
    }

    /// Canonical PD text.
    pub fn serialize(&self) -> String {
        self.canonical().to_pd_string()
    }

    pub fn mirror(&self) -> LinkDiagram {
        LinkDiagram::new_unchecked(
            self.crossings.iter().map(Crossing::mirrored).collect(),
            self.free_loops,
        )
    }

    /// Reverses the orientation of one component.
    pub fn reverse_component(&self, comp: usize) -> Result<LinkDiagram> {
        let comps = self.components();
        let target = comps.get(comp).ok_or(Error::Component(comp))?;
        let rev: BTreeSet<Edge> = target.edges.iter().copied().collect();
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let mut y = x.clone();
                if rev.contains(&x.edges[0]) {
                    let [a, b, c, d] = x.edges;
                    y.edges = [c, d, a, b];
                    y.over_forward = !y.over_forward;
                }
                if rev.contains(&x.edges[1]) {
                    y.over_forward = !y.over_forward;
                }
                y
            })
            .collect();
        LinkDiagram::new(crossings, self.free_loops)
    }

    /// Copy of `self` with every label shifted by `offset`.
    pub(crate) fn shifted(&self, offset: Edge) -> LinkDiagram {
        LinkDiagram::new_unchecked(
            self.crossings
                .iter()
                .map(|x| Crossing { edges: x.edges.map(|e| e + offset), over_forward: x.over_forward })
                .collect(),
            self.free_loops,
        )
    }

    /// Split union. Labels of `self` are kept; labels of `other` are shifted
    /// past `self.max_label()`.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let o = other.shifted(self.max_label());
        let mut crossings = self.crossings.clone();
        crossings.extend(o.crossings);
        LinkDiagram::new_unchecked(crossings, self.free_loops + other.free_loops)
    }

    /// Connected sum of component `c1` of `self` with component `c2` of
    /// `other`, banded at their lowest-numbered edges.
    pub fn connected_sum(&self, c1: usize, other: &LinkDiagram, c2: usize) -> Result<LinkDiagram> {
        let e1 = lowest_edge(self, c1)?;
        let e2 = lowest_edge(other, c2)?;
        self.connected_sum_at(c1, e1, other, c2, e2)
    }

    /// Connected sum at declared edges (`None` for a free-loop component).
    /// Labels of `self` are preserved.
    pub fn connected_sum_at(
        &self,
        c1: usize,
        e1: Option<Edge>,
        other: &LinkDiagram,
        c2: usize,
        e2: Option<Edge>,
    ) -> Result<LinkDiagram> {
        let n1 = self.component_count();
        let n2 = other.component_count();
        if c1 >= n1 {
            return Err(Error::Component(c1));
        }
        if c2 >= n2 {
            return Err(Error::Component(c2));
        }
        match (e1, e2) {
            (_, None) => {
                // summing with a free unknot leaves the other side unchanged
                let mut o = other.clone();
                o.free_loops -= 1;
                Ok(self.disjoint_union(&o))
            }
            (None, Some(_)) => {
                let mut s = self.clone();
                s.free_loops -= 1;
                Ok(s.disjoint_union(other))
            }
            (Some(e1), Some(e2)) => {
                let u = self.disjoint_union(other);
                u.swap_heads(e1, e2 + self.max_label())
            }
        }
    }
}

fn lowest_edge(d: &LinkDiagram, comp: usize) -> Result<Option<Edge>> {
    let comps = d.components();
    let c = comps.get(comp).ok_or(Error::Component(comp))?;
    Ok(c.edges.iter().min().copied())
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

/// Parses `X[a,b,c,d]` terms and `O` free-loop terms.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut raw = Vec::new();
    let mut free = 0;
    while i < b.len() {
        match b[i] {
            c if c.is_ascii_whitespace() || c == b',' => i += 1,
            b'O' => {
                free += 1;
                i += 1;
            }
            b'X' => {
                i += 1;
                if b.get(i) != Some(&b'[') {
                    return Err(syntax(i, "expected '[' after X"));
                }
                let close = text[i..]
                    .find(']')
                    .map(|k| i + k)
                    .ok_or_else(|| syntax(i, "unterminated crossing"))?;
                let labels: Vec<&str> = text[i + 1..close].split(',').collect();
                if labels.len() != 4 {
                    return Err(syntax(i, format!("crossing needs 4 labels, found {}", labels.len())));
                }
                let mut x = [0; 4];
                for (k, l) in labels.iter().enumerate() {
                    x[k] = l
                        .trim()
                        .parse::<Edge>()
                        .map_err(|_| syntax(i + 1, format!("bad edge label {:?}", l.trim())))?;
                }
                raw.push(x);
                i = close + 1;
            }
            c => return Err(syntax(i, format!("unexpected {:?}", c as char))),
        }
    }
    LinkDiagram::from_pd_tuples(&raw, free)
}

/// Parses `braid <n>: s1 s2^-1 …` and returns the diagram of its closure.
/// `s_i` is a positive crossing between strands `i` and `i+1`.
pub fn parse_braid(text: &str) -> Result<LinkDiagram> {
    let t = text.trim();
    let rest = t.strip_prefix("braid").ok_or_else(|| syntax(0, "expected 'braid'"))?;
    let colon = rest.find(':').ok_or_else(|| syntax(5, "expected ':'"))?;
    let strands: usize = rest[..colon]
        .trim()
        .parse()
        .map_err(|_| syntax(5, "bad strand count"))?;
    if strands == 0 {
        return Err(syntax(5, "braid needs at least one strand"));
    }
    let mut word = Vec::new();
    let offset = t.len() - rest.len() + colon + 1;
    for tok in rest[colon + 1..].split_whitespace() {
        let pos = offset + rest[colon + 1..].find(tok).unwrap_or(0);
        let body = tok.strip_prefix('s').ok_or_else(|| syntax(pos, format!("bad generator {tok:?}")))?;
        let (idx, inverse) = match body.split_once('^') {
            Some((i, "-1")) => (i, true),
            Some((i, "1")) => (i, false),
            Some(_) => return Err(syntax(pos, format!("bad exponent in {tok:?}"))),
            None => (body, false),
        };
        let idx: usize = idx.parse().map_err(|_| syntax(pos, format!("bad generator {tok:?}")))?;
        if idx == 0 || idx >= strands {
            return Err(Error::BraidGenerator { index: idx, strands });
        }
        word.push((idx - 1, inverse));
    }
    Ok(braid_closure(strands, &word))
}

/// Closure of a braid word; entries are `(left strand index, inverse)`.
pub fn braid_closure(strands: usize, word: &[(usize, bool)]) -> LinkDiagram {
    let mut next: Edge = 1;
    let bottom: Vec<Edge> = (0..strands).map(|i| i as Edge + 1).collect();
    next += strands as Edge;
    let mut current = bottom.clone();
    let mut crossings = Vec::new();
    for &(i, inverse) in word {
        let (l_in, r_in) = (current[i], current[i + 1]);
        let (l_out, r_out) = (next, next + 1);
        next += 2;
        // strand entering bottom-left leaves top-right
        current[i] = r_out;
        current[i + 1] = l_out;
        // slots counterclockwise from NE: NE, NW, SW, SE
        let slots = if inverse {
            [(l_out, Role::UnderOut), (r_out, Role::OverOut), (l_in, Role::UnderIn), (r_in, Role::OverIn)]
        } else {
            [(l_out, Role::OverOut), (r_out, Role::UnderOut), (l_in, Role::OverIn), (r_in, Role::UnderIn)]
        };
        crossings.push(crossing_from_slots(slots));
    }
    // close: top label at position j is identified with bottom label j
    let subst: HashMap<Edge, Edge> = current
        .iter()
        .zip(&bottom)
        .filter(|(t, b)| t != b)
        .map(|(&t, &b)| (t, b))
        .collect();
    let free_loops = current.iter().zip(&bottom).filter(|(t, b)| t == b).count();
    for x in &mut crossings {
        for e in &mut x.edges {
            if let Some(&b) = subst.get(e) {
                *e = b;
            }
        }
    }
    LinkDiagram::new_unchecked(crossings, free_loops).canonical()
}

impl LinkDiagram {
    /// True when the two diagrams differ only by edge labels and crossing
    /// order.
    pub fn same_up_to_relabeling(&self, other: &LinkDiagram) -> bool {
        if self.crossings.len() != other.crossings.len() || self.free_loops != other.free_loops {
            return false;
        }
        let ea = self.ends();
        let eb = other.ends();
        let mut map: HashMap<Edge, Edge> = HashMap::new();
        let mut used: BTreeSet<Edge> = BTreeSet::new();
        extend_match(self, other, &ea, &eb, &mut map, &mut used)
    }
}

fn extend_match(
    a: &LinkDiagram,
    b: &LinkDiagram,
    ea: &BTreeMap<Edge, Ends>,
    eb: &BTreeMap<Edge, Ends>,
    map: &mut HashMap<Edge, Edge>,
    used: &mut BTreeSet<Edge>,
) -> bool {
    let Some(&start) = ea.keys().find(|e| !map.contains_key(e)) else {
        return true;
    };
    let cands: Vec<Edge> = eb.keys().filter(|e| !used.contains(e)).copied().collect();
    for cand in cands {
        let saved_map = map.clone();
        let saved_used = used.clone();
        if propagate(a, b, ea, eb, start, cand, map, used) && extend_match(a, b, ea, eb, map, used) {
            return true;
        }
        *map = saved_map;
        *used = saved_used;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn propagate(
    a: &LinkDiagram,
    b: &LinkDiagram,
    ea: &BTreeMap<Edge, Ends>,
    eb: &BTreeMap<Edge, Ends>,
    start: Edge,
    cand: Edge,
    map: &mut HashMap<Edge, Edge>,
    used: &mut BTreeSet<Edge>,
) -> bool {
    let mut stack = vec![(start, cand)];
    while let Some((x, y)) = stack.pop() {
        match map.get(&x) {
            Some(&z) if z == y => continue,
            Some(_) => return false,
            None => {}
        }
        if used.contains(&y) {
            return false;
        }
        map.insert(x, y);
        used.insert(y);
        for (pa, pb) in [(ea[&x].head, eb[&y].head), (ea[&x].tail, eb[&y].tail)] {
            if pa.1 != pb.1 {
                return false;
            }
            let xa = &a.crossings[pa.0];
            let xb = &b.crossings[pb.0];
            if xa.over_forward != xb.over_forward {
                return false;
            }
            for k in 0..4 {
                stack.push((xa.edges[k], xb.edges[k]));
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const HOPF: &str = "X[1,4,2,3] X[3,2,4,1]";

    #[test]
    fn trefoil_structure() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.faces().len(), 5);
        assert_eq!(t.crossings().iter().map(Crossing::sign).sum::<i32>(), -3);
    }

    #[test]
    fn hopf_structure() {
        let h = parse_pd(HOPF).unwrap();
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.faces().len(), 4);
        let comps = h.components();
        assert_eq!(comps[0].edges, vec![1, 2]);
        assert_eq!(comps[1].edges, vec![3, 4]);
    }

    #[test]
    fn bad_label_count() {
        assert!(matches!(parse_pd("X[1,4,2,3]"), Err(Error::LabelCount { .. })));
        assert!(matches!(parse_pd("X[1,2,3"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_pd("X[1,2,3]"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn free_loop() {
        let o = parse_pd("O").unwrap();
        assert_eq!(o.free_loops(), 1);
        assert_eq!(o.component_count(), 1);
        assert_eq!(o.faces().len(), 2);
        assert_eq!(parse_pd("").unwrap().component_count(), 0);
    }

    #[test]
    fn braids() {
        let t = parse_braid("braid 2: s1 s1 s1").unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.crossings().iter().map(Crossing::sign).sum::<i32>(), 3);
        assert_eq!(parse_braid("braid 2: s1 s1").unwrap().component_count(), 2);
        let e = parse_braid("braid 2: ").unwrap();
        assert_eq!((e.crossing_count(), e.free_loops()), (0, 2));
        assert!(matches!(
            parse_braid("braid 2: s2"),
            Err(Error::BraidGenerator { index: 2, strands: 2 })
        ));
        let f = parse_braid("braid 3: s1 s2^-1 s1 s2^-1").unwrap();
        assert_eq!(f.component_count(), 1);
        assert_eq!(f.crossings().iter().map(Crossing::sign).sum::<i32>(), 0);
        assert!(parse_braid("braid 3: s1 s3 s1").is_err());
        assert!(parse_braid("brad 3: s1").is_err());
    }

    #[test]
    fn mirror_involution() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(t.mirror().crossings().iter().map(Crossing::sign).sum::<i32>(), 3);
    }

    #[test]
    fn connected_sum_counts() {
        let t = parse_pd(TREFOIL).unwrap();
        let g = t.connected_sum(0, &t, 0).unwrap();
        assert_eq!(g.crossing_count(), 6);
        assert_eq!(g.component_count(), 1);
        let h = parse_pd(HOPF).unwrap();
        let s = h.connected_sum(1, &t, 0).unwrap();
        assert_eq!(s.component_count(), 2);
        let u = t.connected_sum(0, &LinkDiagram::unknot(), 0).unwrap();
        assert!(u.same_up_to_relabeling(&t));
    }

    #[test]
    fn round_trip_text() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(parse_pd(&t.to_pd_string()).unwrap(), t);
        let c = t.canonical();
        assert!(c.same_up_to_relabeling(&t));
        assert!(!t.same_up_to_relabeling(&t.mirror()));
    }

    #[test]
    fn sublinks() {
        let h = parse_pd(HOPF).unwrap();
        let s = h.sublink(&[0]).unwrap();
        assert_eq!((s.crossing_count(), s.free_loops()), (0, 1));
        assert!(matches!(h.sublink(&[2]), Err(Error::Component(2))));
    }

    #[test]
    fn reversal() {
        let h = parse_pd(HOPF).unwrap();
        let r = h.reverse_component(0).unwrap();
        let s: i32 = r.crossings().iter().map(Crossing::sign).sum();
        assert_eq!(s, 2);
    }
}
