//! Exact rational scalars and the scalar q-combinatorial primitives:
//! q-numbers, q-factorials, Gaussian binomials, q-shifted factorials and
//! the q-analogue of `(x+y)^n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always held in lowest terms with a
/// positive denominator.
pub type Scalar = num_rational::BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (optionally signed) into an exact rational.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let trimmed = text.trim();
    let bad = || Error::BadRational(text.to_string());
    match trimmed.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(num, den))
        }
        None => BigInt::from_str(trimmed)
            .map(Scalar::from_integer)
            .map_err(|_| bad()),
    }
}

/// `base^exp` for a non-negative exponent, by repeated squaring.
pub fn pow(base: &Scalar, exp: u64) -> Scalar {
    num_traits::pow(base.clone(), exp as usize)
}

/// `base^exp` for a signed exponent; `base` must be nonzero when `exp < 0`.
pub fn pow_signed(base: &Scalar, exp: i64) -> Scalar {
    if exp >= 0 {
        pow(base, exp as u64)
    } else {
        pow(&base.recip(), exp.unsigned_abs())
    }
}

/// `k(k-1)/2`, the exponent of the q-power in `E_q` and `(x+y)_q^n`.
pub fn triangular(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// The deformation parameter. `q = 1` switches every primitive to its
/// classical limit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QContext {
    q: Scalar,
    is_limit_one: bool,
}

impl QContext {
    pub fn new(q: Scalar) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::NonPositiveQ(q.to_string()));
        }
        let is_limit_one = q.is_one();
        Ok(Self { q, is_limit_one })
    }

    /// The classical context `q = 1`.
    pub fn classical() -> Self {
        Self {
            q: Scalar::one(),
            is_limit_one: true,
        }
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn is_limit_one(&self) -> bool {
        self.is_limit_one
    }

    pub fn q_pow(&self, exp: u64) -> Scalar {
        pow(&self.q, exp)
    }
}

impl FromStr for QContext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QContext::new(parse_scalar(s)?)
    }
}

impl fmt::Debug for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QContext(q={})", self.q)
    }
}

impl fmt::Display for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// `[a]_q = (1 - q^a)/(1 - q)`, and `a` itself at `q = 1`.
pub fn q_number(a: u64, ctx: &QContext) -> Scalar {
    if ctx.is_limit_one() {
        return Scalar::from_integer(BigInt::from(a));
    }
    let one = Scalar::one();
    (&one - ctx.q_pow(a)) / (&one - ctx.q())
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u64, ctx: &QContext) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc * q_number(k, ctx))
}

/// Gaussian binomial `[n k]_q`; zero when `k` lies outside `0..=n`.
pub fn q_binomial(n: u64, k: i64, ctx: &QContext) -> Scalar {
    if k < 0 || k as u64 > n {
        return Scalar::zero();
    }
    let k = k as u64;
    q_factorial(n, ctx) / (q_factorial(k, ctx) * q_factorial(n - k, ctx))
}

/// q-shifted factorial `(a;q)_n = prod_{j<n} (1 - q^j a)`.
pub fn q_pochhammer(a: &Scalar, ctx: &QContext, n: u64) -> Scalar {
    let one = Scalar::one();
    (0..n).fold(Scalar::one(), |acc, j| acc * (&one - ctx.q_pow(j) * a))
}

/// `(x+y)_q^n = sum_k [n k]_q q^{k(k-1)/2} x^{n-k} y^k`, with `0^0 = 1`.
pub fn q_add_pow(x: &Scalar, y: &Scalar, n: u64, ctx: &QContext) -> Scalar {
    (0..=n)
        .map(|k| {
            q_binomial(n, k as i64, ctx) * ctx.q_pow(triangular(k)) * pow(x, n - k) * pow(y, k)
        })
        .fold(Scalar::zero(), |acc, term| acc + term)
}

/// Precomputed q-numbers, q-factorials and Gaussian binomials up to a
/// fixed size, for the verifier's inner loops.
#[derive(Clone, Debug)]
pub struct QCombinatorics {
    ctx: QContext,
    numbers: Vec<Scalar>,
    factorials: Vec<Scalar>,
    binomials: Vec<Vec<Scalar>>,
}

impl QCombinatorics {
    pub fn new(ctx: &QContext, max_n: u64) -> Self {
        let numbers: Vec<Scalar> = (0..=max_n).map(|a| q_number(a, ctx)).collect();
        let mut factorials = Vec::with_capacity(numbers.len());
        let mut acc = Scalar::one();
        factorials.push(acc.clone());
        for number in numbers.iter().skip(1) {
            acc *= number;
            factorials.push(acc.clone());
        }
        let binomials = (0..=max_n as usize)
            .map(|n| {
                (0..=n)
                    .map(|k| &factorials[n] / (&factorials[k] * &factorials[n - k]))
                    .collect()
            })
            .collect();
        Self {
            ctx: ctx.clone(),
            numbers,
            factorials,
            binomials,
        }
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn max_n(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn number(&self, a: usize) -> &Scalar {
        &self.numbers[a]
    }

    pub fn factorial(&self, n: usize) -> &Scalar {
        &self.factorials[n]
    }

    /// `[n k]_q` for `0 <= k <= n <= max_n`.
    pub fn binomial(&self, n: usize, k: usize) -> &Scalar {
        &self.binomials[n][k]
    }

    /// Table of `(x+y)_q^j` for `j = 0..=len-1` at fixed scalars.
    pub fn add_pows(&self, x: &Scalar, y: &Scalar, len: usize) -> Vec<Scalar> {
        (0..len)
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        self.binomial(n, k)
                            * self.ctx.q_pow(triangular(k as u64))
                            * pow(x, (n - k) as u64)
                            * pow(y, k as u64)
                    })
                    .fold(Scalar::zero(), |acc, term| acc + term)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(num: i64, den: i64) -> QContext {
        QContext::new(ratio(num, den)).unwrap()
    }

    // Gaussian binomial through the q-Pascal rule, independent of factorials.
    fn pascal_binomial(n: u64, k: u64, ctx: &QContext) -> Scalar {
        if k > n {
            return Scalar::zero();
        }
        if k == 0 || k == n {
            return Scalar::one();
        }
        pascal_binomial(n - 1, k - 1, ctx) + ctx.q_pow(k) * pascal_binomial(n - 1, k, ctx)
    }

    #[test]
    fn q_number_examples() {
        let half = ctx(1, 2);
        assert_eq!(q_number(0, &half), scalar(0));
        assert_eq!(q_number(1, &half), scalar(1));
        assert_eq!(q_number(3, &half), ratio(7, 4));
        assert_eq!(q_number(1, &ctx(5, 3)), scalar(1));
    }

    #[test]
    fn q_number_is_geometric_sum() {
        for c in [ctx(1, 3), ctx(2, 3), ctx(7, 5)] {
            for a in 0..12 {
                let sum = (0..a).fold(Scalar::zero(), |acc, j| acc + c.q_pow(j));
                assert_eq!(q_number(a, &c), sum);
            }
        }
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(0, &ctx(1, 2)), scalar(1));
        assert_eq!(q_factorial(3, &ctx(1, 2)), ratio(21, 8));
        assert_eq!(q_factorial(4, &QContext::classical()), scalar(24));
    }

    #[test]
    fn classical_limit_of_numbers_and_factorials() {
        let one = QContext::classical();
        let mut fact = scalar(1);
        for n in 0..15u64 {
            if n > 0 {
                fact *= scalar(n as i64);
            }
            assert_eq!(q_number(n, &one), scalar(n as i64));
            assert_eq!(q_factorial(n, &one), fact);
        }
    }

    #[test]
    fn q_binomial_examples() {
        let half = ctx(1, 2);
        assert_eq!(q_binomial(5, 0, &half), scalar(1));
        assert_eq!(q_binomial(4, 2, &half), ratio(35, 16));
        assert_eq!(q_binomial(6, 9, &half), scalar(0));
        assert_eq!(q_binomial(6, -1, &half), scalar(0));
    }

    #[test]
    fn q_binomial_matches_pascal_and_pochhammer_forms() {
        for c in [ctx(1, 3), ctx(1, 2), ctx(2, 3)] {
            let q = c.q().clone();
            for n in 0..=12u64 {
                for k in 0..=n {
                    let b = q_binomial(n, k as i64, &c);
                    assert_eq!(b, pascal_binomial(n, k, &c), "pascal n={n} k={k}");
                    let shifted = q_pochhammer(&q, &c, n)
                        / (q_pochhammer(&q, &c, n - k) * q_pochhammer(&q, &c, k));
                    assert_eq!(b, shifted, "(q;q) form n={n} k={k}");
                    assert_eq!(b, q_binomial(n, (n - k) as i64, &c), "symmetry");
                }
            }
        }
    }

    #[test]
    fn q_binomial_classical_limit() {
        let one = QContext::classical();
        assert_eq!(q_binomial(10, 3, &one), scalar(120));
        assert_eq!(q_binomial(12, 6, &one), scalar(924));
    }

    #[test]
    fn q_pochhammer_examples() {
        let half = ctx(1, 2);
        assert_eq!(q_pochhammer(&ratio(9, 7), &half, 0), scalar(1));
        assert_eq!(q_pochhammer(&ratio(1, 2), &half, 2), ratio(3, 8));
        for n in 1..5 {
            assert_eq!(q_pochhammer(&scalar(1), &ctx(2, 3), n), scalar(0));
        }
    }

    #[test]
    fn q_add_pow_examples() {
        let half = ctx(1, 2);
        assert_eq!(q_add_pow(&ratio(3, 5), &scalar(-4), 0, &half), scalar(1));
        let one = QContext::classical();
        assert_eq!(q_add_pow(&scalar(1), &scalar(2), 3, &one), scalar(27));
        // n = 2: x^2 + [2]_q x y + q y^2
        let (x, y) = (ratio(2, 3), ratio(-5, 7));
        let expected = &x * &x + q_number(2, &half) * &x * &y + ratio(1, 2) * &y * &y;
        assert_eq!(q_add_pow(&x, &y, 2, &half), expected);
    }

    #[test]
    fn q_add_pow_classical_is_binomial_power() {
        let one = QContext::classical();
        for n in 0..=10u64 {
            for (x, y) in [(ratio(1, 2), ratio(-3, 4)), (scalar(2), scalar(5))] {
                assert_eq!(q_add_pow(&x, &y, n, &one), pow(&(&x + &y), n));
            }
        }
    }

    #[test]
    fn q_add_pow_one_minus_one_vanishes() {
        // (1 + (-1))_q^j = (1;q)_j = 0 for j >= 1.
        for c in [ctx(1, 3), ctx(1, 2), QContext::classical()] {
            assert_eq!(q_add_pow(&scalar(1), &scalar(-1), 0, &c), scalar(1));
            for j in 1..8 {
                assert_eq!(q_add_pow(&scalar(1), &scalar(-1), j, &c), scalar(0));
            }
        }
    }

    #[test]
    fn combinatorics_table_agrees_with_direct_calls() {
        let c = ctx(2, 3);
        let table = QCombinatorics::new(&c, 9);
        for n in 0..=9usize {
            assert_eq!(table.number(n), &q_number(n as u64, &c));
            assert_eq!(table.factorial(n), &q_factorial(n as u64, &c));
            for k in 0..=n {
                assert_eq!(table.binomial(n, k), &q_binomial(n as u64, k as i64, &c));
            }
        }
        let pows = table.add_pows(&ratio(1, 3), &scalar(-1), 6);
        for (j, value) in pows.iter().enumerate() {
            assert_eq!(value, &q_add_pow(&ratio(1, 3), &scalar(-1), j as u64, &c));
        }
    }

    #[test]
    fn rejects_non_positive_q() {
        assert!(matches!(
            QContext::new(scalar(0)),
            Err(Error::NonPositiveQ(_))
        ));
        assert!(QContext::new(ratio(-1, 2)).is_err());
        assert!("0".parse::<QContext>().is_err());
        assert!("1/0".parse::<QContext>().is_err());
        assert!("abc".parse::<QContext>().is_err());
        assert!("1".parse::<QContext>().unwrap().is_limit_one());
        assert!(!"2/3".parse::<QContext>().unwrap().is_limit_one());
    }

    #[test]
    fn parse_and_render_rationals() {
        assert_eq!(parse_scalar("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_scalar(" 6/8 ").unwrap(), ratio(3, 4));
        assert_eq!(parse_scalar("17").unwrap(), scalar(17));
        assert_eq!(ratio(-6, 8).to_string(), "-3/4");
        assert_eq!(scalar(5).to_string(), "5");
    }
}
