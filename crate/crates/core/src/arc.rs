//! Puiseux-parametrized arcs `γ(t)` in R³/R⁴ with exact rational exponents.
//!
//! Tangency order is read off the difference series; floats only enter in
//! [`sample_arc`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, to_f64, Rational};

pub const COORDS: [char; 4] = ['x', 'y', 'z', 'w'];

/// Slack added past the highest exponent when a truncation order is not given.
pub const DEFAULT_SLACK: i64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exponent: Rational,
    pub coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxArc {
    dimension: usize,
    coords: Vec<Vec<Term>>,
    truncation_order: Rational,
}

/// Result of [`tord`]. `Infinite` means the two series agree up to the
/// common truncation order, which does not certify equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tord {
    Finite(Rational),
    Infinite { truncation_limited: bool },
}

impl Tord {
    pub fn finite(self) -> Option<Rational> {
        match self {
            Tord::Finite(r) => Some(r),
            Tord::Infinite { .. } => None,
        }
    }

    /// `min` with ∞ as the top element.
    pub fn min(self, other: Tord) -> Tord {
        match (self, other) {
            (Tord::Finite(a), Tord::Finite(b)) => Tord::Finite(a.min(b)),
            (Tord::Finite(a), _) | (_, Tord::Finite(a)) => Tord::Finite(a),
            (a, _) => a,
        }
    }

    pub fn ge(self, other: Tord) -> bool {
        match (self, other) {
            (Tord::Infinite { .. }, _) => true,
            (Tord::Finite(_), Tord::Infinite { .. }) => false,
            (Tord::Finite(a), Tord::Finite(b)) => a >= b,
        }
    }
}

impl fmt::Display for Tord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tord::Finite(r) => f.write_str(&format_rational(r)),
            Tord::Infinite { .. } => f.write_str("inf"),
        }
    }
}

impl PuiseuxArc {
    /// Builds an arc from `(coordinate index, exponent, coefficient)` terms.
    /// Like terms are merged and zero coefficients dropped.
    pub fn from_terms(
        dimension: usize,
        terms: impl IntoIterator<Item = (usize, Rational, Rational)>,
        slack: Rational,
    ) -> Result<Self> {
        if dimension != 3 && dimension != 4 {
            return Err(Error::UnsupportedDimension(dimension));
        }
        let mut maps = vec![BTreeMap::<Rational, Rational>::new(); dimension];
        for (axis, exponent, coefficient) in terms {
            if axis >= dimension {
                return Err(Error::DimensionMismatch(axis + 1, dimension));
            }
            if !exponent.is_positive() {
                return Err(Error::NonPositiveExponent(exponent));
            }
            *maps[axis].entry(exponent).or_insert_with(Rational::zero) += coefficient;
        }
        let coords: Vec<Vec<Term>> = maps
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(exponent, coefficient)| Term {
                        exponent,
                        coefficient,
                    })
                    .collect()
            })
            .collect();
        let top = coords
            .iter()
            .flatten()
            .map(|t| t.exponent)
            .max()
            .unwrap_or_else(Rational::zero);
        Ok(Self {
            dimension,
            coords,
            truncation_order: top + slack,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self, axis: usize) -> &[Term] {
        &self.coords[axis]
    }

    pub fn truncation_order(&self) -> Rational {
        self.truncation_order
    }

    pub fn with_truncation(mut self, order: Rational) -> Self {
        self.truncation_order = order;
        self
    }
}

impl fmt::Display for PuiseuxArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (axis, terms) in self.coords.iter().enumerate() {
            let mut s = format!("{}=", COORDS[axis]);
            if terms.is_empty() {
                s.push('0');
            }
            for (i, t) in terms.iter().enumerate() {
                let c = t.coefficient;
                if i > 0 {
                    s.push_str(if c.is_negative() { "-" } else { "+" });
                } else if c.is_negative() {
                    s.push('-');
                }
                let a = c.abs();
                if a != int(1) {
                    s.push_str(&format!("({})*", format_rational(&a)));
                }
                s.push_str(&format!("t^({})", format_rational(&t.exponent)));
            }
            parts.push(s);
        }
        f.write_str(&parts.join("; "))
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    /// `7`, `3/2` or `(3/2)`, optionally signed inside parentheses.
    fn number(&mut self) -> Result<Rational> {
        let paren = self.eat(b'(');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || matches!(self.src[self.pos], b'/' | b'-'))
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value = parse_rational(text).map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("bad number {text:?}"),
        })?;
        if paren && !self.eat(b')') {
            return self.err("expected ')'");
        }
        Ok(value)
    }

    /// `[coef*]t[^exp]` or a bare coefficient (exponent 0).
    fn term(&mut self) -> Result<(Rational, Rational)> {
        let mut coef = int(1);
        if self.peek() != Some(b't') {
            coef = self.number()?;
            if !self.eat(b'*') {
                return Ok((int(0), coef));
            }
        }
        if !self.eat(b't') {
            return self.err("expected 't'");
        }
        let exponent = if self.eat(b'^') { self.number()? } else { int(1) };
        Ok((exponent, coef))
    }
}

/// Parses `x=t^2; y=-t^(3/2)+2*t^3; z=0`. Omitted coordinates are zero; a
/// leading `dim=3;` selects R³.
pub fn parse_puiseux_arc(text: &str) -> Result<PuiseuxArc> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut dimension = 4;
    let mut terms = Vec::new();
    let mut seen = [false; 4];
    while let Some(b) = cur.peek() {
        if b == b';' {
            cur.pos += 1;
            continue;
        }
        if text[cur.pos..].starts_with("dim") {
            cur.pos += 3;
            if !cur.eat(b'=') {
                return cur.err("expected '=' after dim");
            }
            let d = cur.number()?;
            if d != int(3) && d != int(4) {
                return Err(Error::UnsupportedDimension(d.to_integer().max(0) as usize));
            }
            dimension = d.to_integer() as usize;
            continue;
        }
        let Some(axis) = COORDS.iter().position(|&c| c as u8 == b) else {
            return cur.err(format!("unknown coordinate {:?}", b as char));
        };
        if seen[axis] {
            return cur.err(format!("coordinate {} assigned twice", COORDS[axis]));
        }
        seen[axis] = true;
        cur.pos += 1;
        if !cur.eat(b'=') {
            return cur.err("expected '='");
        }
        let mut sign = int(1);
        if cur.eat(b'-') {
            sign = int(-1);
        } else {
            cur.eat(b'+');
        }
        loop {
            let (exponent, coef) = cur.term()?;
            if exponent.is_zero() && coef.is_zero() {
                // literal `0`
            } else if !exponent.is_positive() {
                return Err(Error::NonPositiveExponent(exponent));
            } else {
                terms.push((axis, exponent, sign * coef));
            }
            if cur.eat(b'+') {
                sign = int(1);
            } else if cur.eat(b'-') {
                sign = int(-1);
            } else {
                break;
            }
        }
        match cur.peek() {
            None | Some(b';') => {}
            Some(c) => return cur.err(format!("unexpected {:?}", c as char)),
        }
    }
    PuiseuxArc::from_terms(dimension, terms, int(DEFAULT_SLACK))
}

/// Smallest exponent with a nonzero coefficient in `b - a`, looking only at
/// exponents up to the common truncation order.
pub fn tord(a: &PuiseuxArc, b: &PuiseuxArc) -> Result<Tord> {
    if a.dimension != b.dimension {
        return Err(Error::DimensionMismatch(a.dimension, b.dimension));
    }
    let limit = a.truncation_order.min(b.truncation_order);
    let mut best: Option<Rational> = None;
    for axis in 0..a.dimension {
        let mut diff = BTreeMap::<Rational, Rational>::new();
        for t in &b.coords[axis] {
            *diff.entry(t.exponent).or_insert_with(Rational::zero) += t.coefficient;
        }
        for t in &a.coords[axis] {
            *diff.entry(t.exponent).or_insert_with(Rational::zero) -= t.coefficient;
        }
        if let Some((&e, _)) = diff.iter().find(|(e, c)| !c.is_zero() && **e <= limit) {
            best = Some(best.map_or(e, |b| b.min(e)));
        }
    }
    Ok(match best {
        Some(e) => Tord::Finite(e),
        None => Tord::Infinite {
            truncation_limited: true,
        },
    })
}

/// The corner arcs `m, n, m', n'` of a `(q, β)`-bridge: `(∓t^β, ±t^q, 0, 0)`.
/// `m, n` lie on the sheet `y = +t^q`, `m', n'` on `y = -t^q`; `m, m'` have
/// `x = -t^β`.
pub fn bridge_corner_arcs(q: Rational, beta: Rational) -> Result<[PuiseuxArc; 4]> {
    if !(beta > int(1) && beta < q) {
        return Err(Error::ExponentConstraint(format!(
            "bridge needs 1 < beta < q, got q={}, beta={}",
            format_rational(&q),
            format_rational(&beta)
        )));
    }
    let corner = |sx: i64, sy: i64| {
        PuiseuxArc::from_terms(
            4,
            [(0, beta, int(sx)), (1, q, int(sy))],
            int(DEFAULT_SLACK),
        )
    };
    Ok([corner(-1, 1)?, corner(1, 1)?, corner(-1, -1)?, corner(1, -1)?])
}

/// Floating evaluation of each coordinate at `0 < t ≤ 1`.
pub fn sample_arc(a: &PuiseuxArc, t: f64) -> Result<Vec<f64>> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::SampleOutOfRange(t));
    }
    Ok(a.coords
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|term| to_f64(&term.coefficient) * t.powf(to_f64(&term.exponent)))
                .sum()
        })
        .collect())
}

/// Least-squares slope of `log‖a(t) - b(t)‖` against `log t` on a
/// logarithmic grid over `[t_lo, t_hi]`.
pub fn log_log_slope(a: &PuiseuxArc, b: &PuiseuxArc, t_lo: f64, t_hi: f64, samples: usize) -> Result<f64> {
    let mut xs = Vec::with_capacity(samples);
    let mut ys = Vec::with_capacity(samples);
    for i in 0..samples {
        let s = i as f64 / (samples - 1) as f64;
        let t = (t_lo.ln() + s * (t_hi.ln() - t_lo.ln())).exp();
        let pa = sample_arc(a, t)?;
        let pb = sample_arc(b, t)?;
        let d: f64 = pa.iter().zip(&pb).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt();
        xs.push(t.ln());
        ys.push(d.ln());
    }
    let n = samples as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn parses_plain_arc() {
        let a = parse_puiseux_arc("x=t^2; y=t^3; z=0; w=0").unwrap();
        assert_eq!(a.dimension(), 4);
        assert_eq!(a.terms(0), &[Term { exponent: int(2), coefficient: int(1) }]);
        assert_eq!(a.terms(1), &[Term { exponent: int(3), coefficient: int(1) }]);
        assert!(a.terms(2).is_empty() && a.terms(3).is_empty());
        assert_eq!(a.truncation_order(), int(3 + DEFAULT_SLACK));
    }

    #[test]
    fn parses_fractional_negative() {
        let a = parse_puiseux_arc("x=-t^(3/2)").unwrap();
        assert_eq!(a.terms(0), &[Term { exponent: rat(3, 2), coefficient: int(-1) }]);
        let b = parse_puiseux_arc("x = 2*t - (1/3)*t^(5/2); dim=4").unwrap();
        assert_eq!(b.terms(0).len(), 2);
        assert_eq!(b.terms(0)[1].coefficient, rat(-1, 3));
    }

    #[test]
    fn rejects_zero_exponent() {
        assert_eq!(
            parse_puiseux_arc("x=t^0"),
            Err(Error::NonPositiveExponent(int(0)))
        );
        assert!(matches!(parse_puiseux_arc("x=3"), Err(Error::NonPositiveExponent(_))));
        assert!(matches!(parse_puiseux_arc("q=t"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_puiseux_arc("x=t^2 y"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn display_reparses() {
        let a = parse_puiseux_arc("x=-t^(3/2)+(2/3)*t^2; z=t").unwrap();
        assert_eq!(parse_puiseux_arc(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn tord_examples() {
        let a = parse_puiseux_arc("x=t^2; y=t^3").unwrap();
        let b = parse_puiseux_arc("x=-t^2; y=t^3").unwrap();
        assert_eq!(tord(&a, &b).unwrap(), Tord::Finite(int(2)));

        let a = parse_puiseux_arc("x=t; y=t^(3/2)").unwrap();
        let b = parse_puiseux_arc("x=t; y=-t^(3/2)").unwrap();
        assert_eq!(tord(&a, &b).unwrap(), Tord::Finite(rat(3, 2)));

        assert_eq!(
            tord(&a, &a).unwrap(),
            Tord::Infinite { truncation_limited: true }
        );
    }

    #[test]
    fn tord_ignores_terms_past_truncation() {
        let a = parse_puiseux_arc("x=t").unwrap().with_truncation(int(2));
        let b = parse_puiseux_arc("x=t+t^5").unwrap();
        assert_eq!(tord(&a, &b).unwrap(), Tord::Infinite { truncation_limited: true });
    }

    #[test]
    fn tord_dimension_mismatch() {
        let a = parse_puiseux_arc("dim=3; x=t").unwrap();
        let b = parse_puiseux_arc("x=t").unwrap();
        assert_eq!(tord(&a, &b), Err(Error::DimensionMismatch(3, 4)));
        assert!(parse_puiseux_arc("dim=3; w=t").is_err());
    }

    #[test]
    fn corner_arcs() {
        let [m, n, m2, n2] = bridge_corner_arcs(int(3), int(2)).unwrap();
        assert_eq!(m, parse_puiseux_arc("x=-t^2; y=t^3").unwrap());
        assert_eq!(n2, parse_puiseux_arc("x=t^2; y=-t^3").unwrap());
        assert_eq!(tord(&m, &n).unwrap(), Tord::Finite(int(2)));
        assert_eq!(tord(&m, &m2).unwrap(), Tord::Finite(int(3)));
        assert_eq!(tord(&n, &n2).unwrap(), Tord::Finite(int(3)));
        assert_eq!(tord(&m, &n2).unwrap(), Tord::Finite(int(2)));
        assert!(bridge_corner_arcs(int(3), int(3)).is_err());
        assert!(bridge_corner_arcs(int(3), int(1)).is_err());
    }

    #[test]
    fn sampling() {
        let a = parse_puiseux_arc("x=t^2; y=t^3").unwrap();
        assert_eq!(sample_arc(&a, 1.0).unwrap(), vec![1.0, 1.0, 0.0, 0.0]);
        assert_eq!(sample_arc(&a, 0.5).unwrap(), vec![0.25, 0.125, 0.0, 0.0]);
        assert_eq!(sample_arc(&a, 0.0), Err(Error::SampleOutOfRange(0.0)));
        assert!(sample_arc(&a, 1.5).is_err());
    }
}
