//! Gauss linking integral of two closed polylines, summed exactly over
//! segment pairs as signed solid angles.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub type Point = [f64; 3];

/// Closest approach allowed between the two curves.
pub const CONTACT_TOLERANCE: f64 = 1e-9;

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Point, b: Point) -> Point {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn unit(a: Point) -> Point {
    let n = dot(a, a).sqrt();
    if n == 0.0 {
        [0.0; 3]
    } else {
        [a[0] / n, a[1] / n, a[2] / n]
    }
}

fn segment_distance(p1: Point, p2: Point, p3: Point, p4: Point) -> f64 {
    let d1 = sub(p2, p1);
    let d2 = sub(p4, p3);
    let r = sub(p1, p3);
    let (a, e, f) = (dot(d1, d1), dot(d2, d2), dot(d2, r));
    let (s, t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return dot(r, r).sqrt();
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(d1, r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(d1, d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    let c1 = [p1[0] + d1[0] * s, p1[1] + d1[1] * s, p1[2] + d1[2] * s];
    let c2 = [p3[0] + d2[0] * t, p3[1] + d2[1] * t, p3[2] + d2[2] * t];
    let g = sub(c1, c2);
    dot(g, g).sqrt()
}

/// Signed solid angle subtended by segment `p3→p4` as seen sweeping along
/// `p1→p2`.
fn segment_pair(p1: Point, p2: Point, p3: Point, p4: Point) -> f64 {
    let r13 = sub(p3, p1);
    let r14 = sub(p4, p1);
    let r23 = sub(p3, p2);
    let r24 = sub(p4, p2);
    let n = [
        unit(cross(r13, r14)),
        unit(cross(r14, r24)),
        unit(cross(r24, r23)),
        unit(cross(r23, r13)),
    ];
    let mut omega = 0.0;
    for k in 0..4 {
        omega += dot(n[k], n[(k + 1) % 4]).clamp(-1.0, 1.0).asin();
    }
    let s = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
    if s > 0.0 {
        omega
    } else if s < 0.0 {
        -omega
    } else {
        0.0
    }
}

/// Linking number of two closed polylines (the last vertex joins the
/// first).
pub fn gauss_linking_integral(a: &[Point], b: &[Point]) -> Result<f64> {
    let mut total = 0.0;
    for i in 0..a.len() {
        let (p1, p2) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (p3, p4) = (b[j], b[(j + 1) % b.len()]);
            let dist = segment_distance(p1, p2, p3, p4);
            if dist < CONTACT_TOLERANCE {
                return Err(Error::PolylinesIntersect(dist));
            }
            total += segment_pair(p1, p2, p3, p4);
        }
    }
    Ok(total / (4.0 * PI))
}

fn sample(n: usize, f: impl Fn(f64) -> Point) -> Vec<Point> {
    (0..n).map(|i| f(2.0 * PI * i as f64 / n as f64)).collect()
}

/// Two round unit circles through each other's centers in orthogonal
/// planes.
pub fn hopf_embedding(n: usize) -> (Vec<Point>, Vec<Point>) {
    let a = sample(n, |s| [s.cos(), s.sin(), 0.0]);
    let b = sample(n, |s| [1.0 + s.cos(), 0.0, s.sin()]);
    (a, b)
}

/// Two unit circles ten units apart.
pub fn separated_embedding(n: usize) -> (Vec<Point>, Vec<Point>) {
    let a = sample(n, |s| [s.cos(), s.sin(), 0.0]);
    let b = sample(n, |s| [10.0 + s.cos(), s.sin(), 0.0]);
    (a, b)
}

/// The two strands of the `(2, 2k)` torus link on a torus with radii
/// `R = 2`, `r = 1`.
pub fn torus_link_embedding(k: u32, n: usize) -> (Vec<Point>, Vec<Point>) {
    let strand = |j: f64| {
        move |s: f64| {
            let phase = k as f64 * s + j * PI;
            let rad = 2.0 + phase.cos();
            [rad * s.cos(), rad * s.sin(), phase.sin()]
        }
    };
    (sample(n, strand(0.0)), sample(n, strand(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let (a, b) = hopf_embedding(200);
        assert!((gauss_linking_integral(&a, &b).unwrap().abs() - 1.0).abs() < 1e-3);
        let (a, b) = separated_embedding(64);
        assert!(gauss_linking_integral(&a, &b).unwrap().abs() < 1e-3);
        let (a, b) = torus_link_embedding(2, 400);
        assert!((gauss_linking_integral(&a, &b).unwrap().abs() - 2.0).abs() < 1e-3);
    }

    #[test]
    fn reversing_negates() {
        let (a, mut b) = hopf_embedding(50);
        let x = gauss_linking_integral(&a, &b).unwrap();
        b.reverse();
        let y = gauss_linking_integral(&a, &b).unwrap();
        assert!((x + y).abs() < 1e-9);
    }

    #[test]
    fn contact_rejected() {
        let a = sample(8, |s| [s.cos(), s.sin(), 0.0]);
        assert!(matches!(gauss_linking_integral(&a, &a), Err(Error::PolylinesIntersect(_))));
    }
}
