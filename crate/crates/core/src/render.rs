//! Static SVG drawings. Each connected piece gets a Tutte embedding of the
//! diagram with every edge subdivided twice; the largest face is pinned to a
//! circle.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use crate::diagram::{Edge, LinkDiagram};
use crate::germ::{BridgeSite, Germ, PinchPair};
use crate::rational::format_rational;

const PANEL: f64 = 400.0;
const RADIUS: f64 = 170.0;
const GAP: f64 = 0.3;
const SWEEPS: usize = 2000;

type P = (f64, f64);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum Node {
    Crossing(usize),
    /// `(edge, 0 | 1)`: the subdivision point nearer the tail, then the head.
    Mid(Edge, u8),
}

struct Layout {
    pos: HashMap<Node, P>,
    width: f64,
}

fn edge_nodes(d: &LinkDiagram, e: Edge) -> [Node; 4] {
    let en = d.ends()[&e];
    [Node::Crossing(en.tail.0), Node::Mid(e, 0), Node::Mid(e, 1), Node::Crossing(en.head.0)]
}

fn layout(d: &LinkDiagram) -> Layout {
    let pieces = d.pieces();
    let ends = d.ends();
    let mut roots: Vec<usize> = pieces.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    roots.sort_unstable();
    let faces = d.crossing_faces();
    let mut pos: HashMap<Node, P> = HashMap::new();
    let mut offset = 0.0;
    for &root in &roots {
        let cx = offset + PANEL / 2.0;
        let cy = PANEL / 2.0;
        // outer boundary: the piece's longest face, as a node cycle
        let outer = faces
            .iter()
            .filter(|f| pieces[f.boundary[0].dart.0] == root)
            .max_by_key(|f| f.boundary.len())
            .expect("every piece has a face");
        let mut ring: Vec<Node> = Vec::new();
        for fe in &outer.boundary {
            let nodes = edge_nodes(d, fe.edge);
            let seq: Vec<Node> = if fe.forward { nodes.to_vec() } else { nodes.iter().rev().copied().collect() };
            for n in &seq[..3] {
                if !ring.contains(n) {
                    ring.push(*n);
                }
            }
        }
        for (i, n) in ring.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * i as f64 / ring.len() as f64;
            pos.insert(*n, (cx + RADIUS * a.cos(), cy - RADIUS * a.sin()));
        }
        let fixed: BTreeSet<Node> = ring.iter().copied().collect();
        let mut adj: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
        for (&e, en) in &ends {
            if pieces[en.tail.0] != root {
                continue;
            }
            let ns = edge_nodes(d, e);
            for w in ns.windows(2) {
                adj.entry(w[0]).or_default().push(w[1]);
                adj.entry(w[1]).or_default().push(w[0]);
            }
        }
        for n in adj.keys() {
            pos.entry(*n).or_insert((cx, cy));
        }
        for _ in 0..SWEEPS {
            for (n, nb) in &adj {
                if fixed.contains(n) {
                    continue;
                }
                let (sx, sy) = nb.iter().fold((0.0, 0.0), |(x, y), m| (x + pos[m].0, y + pos[m].1));
                let k = nb.len() as f64;
                pos.insert(*n, (sx / k, sy / k));
            }
        }
        offset += PANEL;
    }
    let width = offset + PANEL * d.free_loops() as f64;
    Layout { pos, width: width.max(PANEL) }
}

fn lerp(a: P, b: P, t: f64) -> P {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

fn path(points: &[P]) -> String {
    let mut s = String::new();
    for (i, p) in points.iter().enumerate() {
        let _ = write!(s, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, p.0, p.1);
    }
    s
}

fn edge_midpoint(d: &LinkDiagram, lay: &Layout, e: Edge) -> Option<P> {
    let ns = edge_nodes(d, e);
    Some(lerp(*lay.pos.get(&ns[1])?, *lay.pos.get(&ns[2])?, 0.5))
}

/// SVG for a diagram with optional decorations.
pub fn render_svg(d: &LinkDiagram, bridges: &[BridgeSite], pinches: &[PinchPair]) -> String {
    let lay = layout(d);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#,
        w = lay.width,
        h = PANEL
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let ends = d.ends();
    let comps = d.components();
    let crossing_comps = comps.iter().filter(|c| !c.is_free_loop()).count();
    for (ci, comp) in comps.iter().enumerate() {
        let _ = writeln!(out, r#"<g class="component" data-component="{ci}" fill="none" stroke="black" stroke-width="2">"#);
        if comp.is_free_loop() {
            let k = ci - crossing_comps;
            let cx = lay.width - PANEL * (d.free_loops() - k) as f64 + PANEL / 2.0;
            let _ = writeln!(out, r#"<circle cx="{cx:.2}" cy="{:.2}" r="{RADIUS:.2}"/>"#, PANEL / 2.0);
        }
        for &e in &comp.edges {
            let en = ends[&e];
            let ns = edge_nodes(d, e);
            let mut pts: Vec<P> = ns.iter().map(|n| lay.pos[n]).collect();
            // under-strand ends stop short of the crossing
            if en.tail.1.is_multiple_of(2) {
                pts[0] = lerp(pts[0], pts[1], GAP);
            }
            if en.head.1.is_multiple_of(2) {
                pts[3] = lerp(pts[3], pts[2], GAP);
            }
            let _ = writeln!(out, r#"<path data-edge="{e}" d="{}"/>"#, path(&pts));
        }
        let _ = writeln!(out, "</g>");
    }
    for (c, x) in d.crossings().iter().enumerate() {
        let p = lay.pos[&Node::Crossing(c)];
        let _ = writeln!(
            out,
            r#"<circle class="crossing" data-crossing="{c}" data-sign="{}" cx="{:.2}" cy="{:.2}" r="1.5" fill="none"/>"#,
            x.sign(),
            p.0,
            p.1
        );
    }
    let mut annotate = |class: &str, a: Edge, b: Edge, text: String| {
        if let (Some(p), Some(q)) = (edge_midpoint(d, &lay, a), edge_midpoint(d, &lay, b)) {
            let m = lerp(p, q, 0.5);
            let _ = writeln!(
                out,
                r#"<g class="{class}"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/><text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{text}</text></g>"#,
                p.0, p.1, q.0, q.1, m.0, m.1 - 4.0
            );
        }
    };
    for b in bridges {
        let text = format!("q={}, β={}", format_rational(&b.q), format_rational(&b.beta));
        annotate("bridge", b.edges[0], b.edges[1], text);
    }
    for p in pinches {
        annotate("pinch", p.arcs[0], p.arcs[1], format!("tord={}", format_rational(&p.tord)));
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_germ(g: &Germ) -> String {
    render_svg(&g.diagram, &g.bridges, &g.pinches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_germ;
    use crate::diagram::parse_pd;

    #[test]
    fn hopf_drawing() {
        let h = parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        let svg = render_svg(&h, &[], &[]);
        assert_eq!(svg.matches(r#"class="component""#).count(), 2);
        assert_eq!(svg.matches(r#"class="crossing""#).count(), 2);
        assert_eq!(svg, render_svg(&h, &[], &[]));
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn bridge_label() {
        let svg = render_germ(&corpus_germ("ex3.X").unwrap());
        assert_eq!(svg.matches("q=3, β=2").count(), 1);
    }

    #[test]
    fn free_loops_and_split_pieces() {
        let d = parse_pd("X[1,4,2,3] X[3,2,4,1] X[5,8,6,7] X[7,6,8,5] O").unwrap();
        let svg = render_svg(&d, &[], &[]);
        assert_eq!(svg.matches(r#"class="component""#).count(), 5);
        assert!(svg.contains("<circle cx="));
        assert!(!svg.contains("NaN"));
    }
}
