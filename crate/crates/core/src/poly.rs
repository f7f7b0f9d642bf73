//! Sparse Laurent polynomials with rational exponents and integer
//! coefficients. Kauffman brackets live in `A`, Jones polynomials in `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    A,
    T,
}

impl Var {
    fn symbol(self) -> char {
        match self {
            Var::A => 'A',
            Var::T => 't',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<Rational, i64>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        Self {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 1, int(0))
    }

    pub fn monomial(var: Var, coeff: i64, exp: Rational) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(var: Var, terms: impl IntoIterator<Item = (Rational, i64)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Integer-exponent shorthand, e.g. `from_ints(T, [(-4, -1), (-3, 1), (-1, 1)])`.
    pub fn from_ints(var: Var, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        Self::from_terms(var, terms.into_iter().map(|(e, c)| (int(e), c)))
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rational, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn coeff(&self, exp: Rational) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: Rational, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `x ↦ x^k` for the polynomial's variable.
    pub fn scale_exponents(&self, k: Rational) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, c)| (e * k, c)))
    }

    /// `t ↦ t⁻¹`.
    pub fn invert_variable(&self) -> Self {
        self.scale_exponents(int(-1))
    }

    /// Rewrites a polynomial in `A` as one in `t` via `t = A⁻⁴`.
    pub fn a_to_t(&self) -> Self {
        assert_eq!(self.var, Var::A);
        Self::from_terms(Var::T, self.terms().map(|(e, c)| (e / int(-4), c)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.var, self.terms().map(|(e, c)| (e, -c)))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = LaurentPoly::zero(self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// `-1*t^(-4) + 1*t^(-3) + 1*t^(-1)`, exponent ascending; `0` if empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| format!("{}*{}^({})", c, self.var.symbol(), format_rational(&e)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: String| Error::Syntax { pos: 0, msg };
        let var = if s.contains('A') { Var::A } else { Var::T };
        let mut p = LaurentPoly::zero(var);
        if s == "0" {
            return Ok(p);
        }
        for part in s.split(" + ") {
            let (c, rest) = part
                .split_once('*')
                .ok_or_else(|| bad(format!("bad term {part:?}")))?;
            let c: i64 = c.trim().parse().map_err(|_| bad(format!("bad coefficient {c:?}")))?;
            let rest = rest.trim();
            let inner = rest
                .strip_prefix(var.symbol())
                .and_then(|r| r.strip_prefix("^("))
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| bad(format!("bad monomial {rest:?}")))?;
            p.add_term(parse_rational(inner)?, c);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn arithmetic_cancels_zeros() {
        let a = LaurentPoly::from_ints(Var::A, [(2, -1), (-2, -1)]);
        let b = LaurentPoly::from_ints(Var::A, [(2, 1)]);
        let s = &a + &b;
        assert_eq!(s, LaurentPoly::from_ints(Var::A, [(-2, -1)]));
        let sq = a.pow(2);
        assert_eq!(sq, LaurentPoly::from_ints(Var::A, [(4, 1), (0, 2), (-4, 1)]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn a_to_t_quarters() {
        let delta = LaurentPoly::from_ints(Var::A, [(2, -1), (-2, -1)]);
        let t = delta.a_to_t();
        assert_eq!(
            t,
            LaurentPoly::from_terms(Var::T, [(rat(-1, 2), -1), (rat(1, 2), -1)])
        );
        assert_eq!(t.to_string(), "-1*t^(-1/2) + -1*t^(1/2)");
    }

    #[test]
    fn text_round_trip() {
        let p = LaurentPoly::from_terms(Var::T, [(rat(-4, 1), -1), (rat(-3, 1), 1), (rat(1, 2), 7)]);
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        let z = LaurentPoly::zero(Var::T);
        assert_eq!(z.to_string().parse::<LaurentPoly>().unwrap(), z);
        assert!("1*x^(2)".parse::<LaurentPoly>().is_err());
    }
}
