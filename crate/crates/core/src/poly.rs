//! Sparse bivariate polynomials in `x` and `y` over exact rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qarith::{parse_scalar, pow, q_binomial, q_number, triangular, QContext, Scalar};
use crate::series::Coefficient;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// `sum c_{ij} x^i y^j`, keyed by `(i, j)`. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

/// One `{i, j, c}` record of the wire format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub i: u32,
    pub j: u32,
    pub c: String,
}

impl BiPoly {
    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Scalar::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Scalar::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Scalar)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Scalar)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(0, 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    pub fn eval(&self, x0: &Scalar, y0: &Scalar) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (&(i, j), c)| {
            acc + c * pow(x0, i as u64) * pow(y0, j as u64)
        })
    }

    /// Substitutes `var -> c * var`.
    pub fn substitute_scaled(&self, var: Var, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), coeff)| {
            let e = match var {
                Var::X => i,
                Var::Y => j,
            };
            ((i, j), coeff * pow(c, e as u64))
        }))
    }

    /// Substitutes the constant `c` for `var`, leaving a polynomial in the
    /// other variable.
    pub fn specialize(&self, var: Var, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), coeff)| match var {
            Var::X => ((0, j), coeff * pow(c, i as u64)),
            Var::Y => ((i, 0), coeff * pow(c, j as u64)),
        }))
    }

    /// Jackson derivative in `x` with `y` held fixed:
    /// `x^i y^j -> [i]_q x^{i-1} y^j`.
    pub fn q_derivative_x(&self, ctx: &QContext) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(i, _), _)| i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * q_number(i as u64, ctx))),
        )
    }

    /// Jackson derivative in `y` with `x` held fixed.
    pub fn q_derivative_y(&self, ctx: &QContext) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * q_number(j as u64, ctx))),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn to_wire(&self) -> Vec<MonomialRecord> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| MonomialRecord {
                i,
                j,
                c: c.to_string(),
            })
            .collect()
    }

    pub fn from_wire(records: &[MonomialRecord]) -> Result<Self> {
        let mut p = Self::zero();
        for r in records {
            p.add_term(r.i, r.j, parse_scalar(&r.c)?);
        }
        Ok(p)
    }
}

/// Symbolic `(x+y)_q^n = sum_k [n k]_q q^{k(k-1)/2} x^{n-k} y^k`.
pub fn q_add_pow_poly(n: u32, ctx: &QContext) -> BiPoly {
    BiPoly::from_terms((0..=n).map(|k| {
        let c = q_binomial(n as u64, k as i64, ctx) * ctx.q_pow(triangular(k as u64));
        ((n - k, k), c)
    }))
}

impl Zero for BiPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        Self::constant(Scalar::one())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for BiPoly {
            type Output = BiPoly;

            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&BiPoly> for BiPoly {
            type Output = BiPoly;

            fn $method(self, rhs: &BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Coefficient for BiPoly {
    fn from_scalar(s: &Scalar) -> Self {
        BiPoly::constant(s.clone())
    }

    fn scale(&self, s: &Scalar) -> Self {
        BiPoly::scale(self, s)
    }

    fn inverse(&self) -> Option<Self> {
        if !self.is_constant() || self.is_zero() {
            return None;
        }
        Some(BiPoly::constant(self.constant_term().recip()))
    }
}

/// Renders as a sum of `c*x^i*y^j` terms, e.g. `-3/4 + 2*x^1*y^0`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*x^{i}*y^{j}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

/// Parses the `c*x^i*y^j` sum form produced by `Display`.
impl std::str::FromStr for BiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::MalformedTable(format!("bad polynomial term in {s:?}"));
        let mut p = Self::zero();
        for term in s.split(" + ") {
            let mut parts = term.split('*');
            let c = parse_scalar(parts.next().ok_or_else(bad)?)?;
            let i = parts
                .next()
                .and_then(|t| t.strip_prefix("x^"))
                .and_then(|t| t.parse().ok())
                .ok_or_else(bad)?;
            let j = parts
                .next()
                .and_then(|t| t.strip_prefix("y^"))
                .and_then(|t| t.parse().ok())
                .ok_or_else(bad)?;
            p.add_term(i, j, c);
        }
        Ok(p)
    }
}
