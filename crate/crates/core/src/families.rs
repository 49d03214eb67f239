//! q-Bernoulli and q-Genocchi numbers and polynomials of integer order
//! `alpha`, read off their generating functions
//!
//! ```text
//! (t / (e_q(t) - 1))^alpha  e_q(tx) E_q(ty) = sum B_n(x, y) t^n / [n]_q!
//! (2t / (e_q(t) + 1))^alpha e_q(tx) E_q(ty) = sum G_n(x, y) t^n / [n]_q!
//! ```
//!
//! Polynomials are produced two independent ways (series engine over
//! `BiPoly`, and the summation formulas from the numbers), and the
//! classical `q = 1` numbers have their own recurrence-based oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{BiPoly, MonomialRecord};
use crate::qarith::{parse_scalar, ratio, triangular, QCombinatorics, QContext, Scalar};
use crate::series::{build_Eq, build_eq, FactorialForm, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Bernoulli,
    Genocchi,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Bernoulli => "bernoulli",
            FamilyKind::Genocchi => "genocchi",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bernoulli" => Ok(FamilyKind::Bernoulli),
            "genocchi" => Ok(FamilyKind::Genocchi),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// A family together with its order `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub kind: FamilyKind,
    pub order: u32,
}

impl FamilyId {
    pub fn new(kind: FamilyKind, order: u32) -> Self {
        Self { kind, order }
    }

    pub fn genocchi(order: u32) -> Self {
        Self::new(FamilyKind::Genocchi, order)
    }

    pub fn bernoulli(order: u32) -> Self {
        Self::new(FamilyKind::Bernoulli, order)
    }
}

/// Order-one base series through `t^order`: `t/(e_q(t)-1)` or
/// `t * (2/(e_q(t)+1))`.
pub fn base_series(kind: FamilyKind, ctx: &QContext, order: usize) -> Series<Scalar> {
    match kind {
        FamilyKind::Bernoulli => {
            let e = build_eq(ctx, order + 1);
            let e_minus_one = e.sub(&Series::one(order + 1)).expect("same order");
            e_minus_one
                .shift_div_t()
                .expect("e_q - 1 has no constant term")
                .reciprocal()
                .expect("constant term is 1")
        }
        FamilyKind::Genocchi => {
            let half_sum = build_eq(ctx, order)
                .add(&Series::one(order))
                .expect("same order")
                .scale(&ratio(1, 2));
            half_sum.reciprocal().expect("constant term is 1").mul_t()
        }
    }
}

/// The order-`alpha` generating function without the `e_q E_q` factor,
/// exact through `t^max_n`.
pub fn generating_series(family: FamilyId, ctx: &QContext, max_n: usize) -> Series<Scalar> {
    let budget = max_n + family.order as usize + 2;
    base_series(family.kind, ctx, budget)
        .pow(family.order)
        .truncate(max_n)
}

/// `B^(alpha)_{n,q}` or `G^(alpha)_{n,q}` for `n = 0..=max_n`.
pub fn compute_numbers(family: FamilyId, ctx: &QContext, max_n: usize) -> Vec<Scalar> {
    FactorialForm::from_series(&generating_series(family, ctx, max_n), ctx).values
}

/// Polynomials through the series engine over `BiPoly`: the scalar
/// generating function times `e_q(tx) E_q(ty)`.
pub fn compute_polys_direct(family: FamilyId, ctx: &QContext, max_n: usize) -> Vec<BiPoly> {
    let base = generating_series(family, ctx, max_n).map(|c| BiPoly::constant(c.clone()));
    let e_x = build_eq(ctx, max_n);
    let e_x = Series::from_coeffs(
        e_x.coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| BiPoly::monomial(n as u32, 0, c.clone()))
            .collect(),
    );
    let big_e_y = build_Eq(ctx, max_n);
    let big_e_y = Series::from_coeffs(
        big_e_y
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| BiPoly::monomial(0, n as u32, c.clone()))
            .collect(),
    );
    let full = base
        .mul(&e_x)
        .and_then(|s| s.mul(&big_e_y))
        .expect("all series share one order");
    FactorialForm::from_series(&full, ctx).values
}

/// Polynomials rebuilt from the numbers:
/// `P_n(x,0) = sum [n k] P_k x^{n-k}`, then
/// `P_n(x,y) = sum [n k] q^{(n-k)(n-k-1)/2} P_k(x,0) y^{n-k}`.
pub fn polys_from_numbers(numbers: &[Scalar], ctx: &QContext) -> Vec<BiPoly> {
    if numbers.is_empty() {
        return Vec::new();
    }
    let comb = QCombinatorics::new(ctx, numbers.len() as u64 - 1);
    let in_x: Vec<BiPoly> = (0..numbers.len())
        .map(|n| {
            BiPoly::from_terms(
                (0..=n).map(|k| (((n - k) as u32, 0), comb.binomial(n, k) * &numbers[k])),
            )
        })
        .collect();
    (0..numbers.len())
        .map(|n| {
            (0..=n).fold(BiPoly::zero(), |acc, k| {
                let weight = comb.binomial(n, k) * ctx.q_pow(triangular((n - k) as u64));
                let y_pow = BiPoly::monomial(0, (n - k) as u32, weight);
                acc + &in_x[k] * &y_pow
            })
        })
        .collect()
}

pub fn compute_polys_summation(family: FamilyId, ctx: &QContext, max_n: usize) -> Vec<BiPoly> {
    polys_from_numbers(&compute_numbers(family, ctx, max_n), ctx)
}

/// Numbers (and optionally polynomials) of one family at one `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyTable {
    pub family: FamilyId,
    pub ctx: QContext,
    pub numbers: Vec<Scalar>,
    pub polys: Option<Vec<BiPoly>>,
}

impl FamilyTable {
    pub fn numbers_only(family: FamilyId, ctx: &QContext, max_n: usize) -> Self {
        Self {
            family,
            ctx: ctx.clone(),
            numbers: compute_numbers(family, ctx, max_n),
            polys: None,
        }
    }

    pub fn with_polys(family: FamilyId, ctx: &QContext, max_n: usize) -> Self {
        Self {
            family,
            ctx: ctx.clone(),
            numbers: compute_numbers(family, ctx, max_n),
            polys: Some(compute_polys_direct(family, ctx, max_n)),
        }
    }

    pub fn max_n(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn number(&self, n: usize) -> &Scalar {
        &self.numbers[n]
    }

    /// Panics on a numbers-only table.
    pub fn poly(&self, n: usize) -> &BiPoly {
        &self
            .polys
            .as_ref()
            .expect("table built without polynomials")[n]
    }

    /// Adds `delta` to number `n` and regenerates the polynomials from the
    /// perturbed numbers, keeping the table self-consistent.
    pub fn perturb_number(&mut self, n: usize, delta: &Scalar) {
        self.numbers[n] += delta;
        if self.polys.is_some() {
            self.polys = Some(polys_from_numbers(&self.numbers, &self.ctx));
        }
    }

    pub fn to_record(&self) -> TableRecord {
        TableRecord {
            family: self.family.kind,
            order: self.family.order,
            q: self.ctx.q().to_string(),
            max_n: self.max_n(),
            numbers: self.numbers.iter().map(ToString::to_string).collect(),
            polys: self
                .polys
                .as_ref()
                .map(|ps| ps.iter().map(BiPoly::to_wire).collect()),
        }
    }

    pub fn from_record(record: &TableRecord) -> Result<Self> {
        let ctx = QContext::new(parse_scalar(&record.q)?)?;
        let numbers = record
            .numbers
            .iter()
            .map(|s| parse_scalar(s))
            .collect::<Result<Vec<_>>>()?;
        if numbers.len() != record.max_n + 1 {
            return Err(Error::MalformedTable(format!(
                "max_n is {} but {} numbers are listed",
                record.max_n,
                numbers.len()
            )));
        }
        let polys = match &record.polys {
            Some(ps) if ps.len() != numbers.len() => {
                return Err(Error::MalformedTable(format!(
                    "{} polynomials for {} numbers",
                    ps.len(),
                    numbers.len()
                )))
            }
            Some(ps) => Some(
                ps.iter()
                    .map(|p| BiPoly::from_wire(p))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        Ok(Self {
            family: FamilyId::new(record.family, record.order),
            ctx,
            numbers,
            polys,
        })
    }
}

/// JSON form of a table; rationals are `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub family: FamilyKind,
    pub order: u32,
    pub q: String,
    pub max_n: usize,
    pub numbers: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polys: Option<Vec<Vec<MonomialRecord>>>,
}

pub(crate) fn int_binomial(n: usize, k: usize) -> Scalar {
    Scalar::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// Classical Bernoulli numbers from `sum_{k=0}^{n} C(n+1,k) B_k = 0`.
pub fn classical_bernoulli(max_n: usize) -> Vec<Scalar> {
    let mut b: Vec<Scalar> = Vec::with_capacity(max_n + 1);
    b.push(Scalar::one());
    for n in 1..=max_n {
        let sum = (0..n).fold(Scalar::zero(), |acc, k| {
            acc + int_binomial(n + 1, k) * &b[k]
        });
        b.push(-sum / int_binomial(n + 1, n));
    }
    b
}

/// Classical Genocchi numbers `G_n = 2 (1 - 2^n) B_n`.
pub fn classical_genocchi(max_n: usize) -> Vec<Scalar> {
    classical_bernoulli(max_n)
        .into_iter()
        .enumerate()
        .map(|(n, b)| {
            let two_n = Scalar::from_integer(BigInt::one() << n);
            Scalar::from_integer(BigInt::from(2)) * (Scalar::one() - two_n) * b
        })
        .collect()
}

/// Classical numbers of integer order `alpha`, by repeated binomial
/// convolution of the order-one oracle (order 0 is `1, 0, 0, ...`).
pub fn classical_numbers_of_order(kind: FamilyKind, order: u32, max_n: usize) -> Vec<Scalar> {
    let base = match kind {
        FamilyKind::Bernoulli => classical_bernoulli(max_n),
        FamilyKind::Genocchi => classical_genocchi(max_n),
    };
    let mut acc: Vec<Scalar> = (0..=max_n)
        .map(|n| {
            if n == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    for _ in 0..order {
        acc = (0..=max_n)
            .map(|n| {
                (0..=n).fold(Scalar::zero(), |s, k| {
                    s + int_binomial(n, k) * &acc[n - k] * &base[k]
                })
            })
            .collect();
    }
    acc
}

/// Appell polynomials `P_n(x) = sum C(n,k) a_k x^{n-k}` as polynomials in `x`.
pub fn classical_polys_in_x(numbers: &[Scalar]) -> Vec<BiPoly> {
    (0..numbers.len())
        .map(|n| {
            BiPoly::from_terms(
                (0..=n).map(|k| (((n - k) as u32, 0), int_binomial(n, k) * &numbers[k])),
            )
        })
        .collect()
}

/// `P_n(x + y) = sum C(n,k) a_k (x+y)^{n-k}` expanded in `x` and `y`.
pub fn classical_polys_shifted(numbers: &[Scalar]) -> Vec<BiPoly> {
    let x_plus_y = &BiPoly::x() + &BiPoly::y();
    (0..numbers.len())
        .map(|n| {
            (0..=n).fold(BiPoly::zero(), |acc, k| {
                acc + x_plus_y
                    .pow((n - k) as u32)
                    .scale(&(int_binomial(n, k) * &numbers[k]))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_add_pow_poly;
    use crate::qarith::{q_number, scalar};

    fn ctx(num: i64, den: i64) -> QContext {
        QContext::new(ratio(num, den)).unwrap()
    }

    #[test]
    fn genocchi_order_one_leading_numbers() {
        for c in [ctx(1, 2), ctx(1, 3), QContext::classical()] {
            let g = compute_numbers(FamilyId::genocchi(1), &c, 4);
            assert_eq!(g[0], scalar(0));
            assert_eq!(g[1], scalar(1));
            assert_eq!(g[2], -(scalar(1) + c.q()) / scalar(2));
        }
        assert_eq!(
            compute_numbers(FamilyId::genocchi(1), &ctx(1, 2), 2)[2],
            ratio(-3, 4)
        );
    }

    #[test]
    fn bernoulli_order_one_leading_numbers() {
        for c in [ctx(1, 2), ctx(2, 3), QContext::classical()] {
            let b = compute_numbers(FamilyId::bernoulli(1), &c, 3);
            let two = q_number(2, &c);
            let three = q_number(3, &c);
            assert_eq!(b[0], scalar(1));
            assert_eq!(b[1], -two.recip());
            assert_eq!(b[2], two.recip() - three.recip());
        }
        let classical = compute_numbers(FamilyId::bernoulli(1), &QContext::classical(), 2);
        assert_eq!(classical, vec![scalar(1), ratio(-1, 2), ratio(1, 6)]);
    }

    #[test]
    fn order_zero_is_the_unit_sequence() {
        for kind in [FamilyKind::Bernoulli, FamilyKind::Genocchi] {
            let nums = compute_numbers(FamilyId::new(kind, 0), &ctx(1, 2), 5);
            assert_eq!(nums[0], scalar(1));
            assert!(nums[1..].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn classical_oracles() {
        let b = classical_bernoulli(16);
        assert_eq!(&b[..3], &[scalar(1), ratio(-1, 2), ratio(1, 6)]);
        assert_eq!(b[4], ratio(-1, 30));
        let g = classical_genocchi(16);
        for (n, v) in [
            (0, 0),
            (1, 1),
            (2, -1),
            (4, 1),
            (6, -3),
            (8, 17),
            (10, -155),
            (12, 2073),
        ] {
            assert_eq!(g[n], scalar(v), "G_{n}");
        }
        for n in (3..=15).step_by(2) {
            assert!(g[n].is_zero() && b[n].is_zero());
        }
    }

    #[test]
    fn classical_limit_of_numbers() {
        let one = QContext::classical();
        assert_eq!(
            compute_numbers(FamilyId::genocchi(1), &one, 16),
            classical_genocchi(16)
        );
        assert_eq!(
            compute_numbers(FamilyId::bernoulli(1), &one, 16),
            classical_bernoulli(16)
        );
        for order in 0..=3 {
            for kind in [FamilyKind::Bernoulli, FamilyKind::Genocchi] {
                assert_eq!(
                    compute_numbers(FamilyId::new(kind, order), &one, 10),
                    classical_numbers_of_order(kind, order, 10)
                );
            }
        }
    }

    #[test]
    fn order_two_is_self_convolution() {
        // sum_k [n k]_q G_{n-k} G_k over the order-one table.
        for c in [ctx(1, 2), QContext::classical()] {
            let comb = QCombinatorics::new(&c, 10);
            for kind in [FamilyKind::Bernoulli, FamilyKind::Genocchi] {
                let one = compute_numbers(FamilyId::new(kind, 1), &c, 10);
                let two = compute_numbers(FamilyId::new(kind, 2), &c, 10);
                for n in 0..=10 {
                    let conv = (0..=n).fold(Scalar::zero(), |acc, k| {
                        acc + comb.binomial(n, k) * &one[n - k] * &one[k]
                    });
                    assert_eq!(two[n], conv, "{kind} n={n}");
                }
            }
        }
    }

    #[test]
    fn genocchi_vanishes_below_its_order() {
        for c in [ctx(1, 3), ctx(1, 2), QContext::classical()] {
            for order in 0..=4u32 {
                let g = compute_numbers(FamilyId::genocchi(order), &c, 8);
                for (n, v) in g.iter().take(order as usize).enumerate() {
                    assert!(v.is_zero(), "alpha={order} n={n}");
                }
                let b = compute_numbers(FamilyId::bernoulli(order), &c, 2);
                assert_eq!(b[0], scalar(1));
            }
        }
    }

    #[test]
    fn direct_polys_examples() {
        let c = ctx(1, 2);
        let g0 = compute_polys_direct(FamilyId::genocchi(0), &c, 6);
        for (n, p) in g0.iter().enumerate() {
            assert_eq!(p, &q_add_pow_poly(n as u32, &c));
        }
        let g1 = compute_polys_direct(FamilyId::genocchi(1), &c, 3);
        assert_eq!(g1[0], BiPoly::zero());
        assert_eq!(g1[1], BiPoly::constant(scalar(1)));
    }

    #[test]
    fn direct_polys_at_origin_are_the_numbers() {
        let c = ctx(2, 3);
        for family in [FamilyId::genocchi(2), FamilyId::bernoulli(1)] {
            let table = FamilyTable::with_polys(family, &c, 8);
            for n in 0..=8 {
                assert_eq!(&table.poly(n).eval(&scalar(0), &scalar(0)), table.number(n));
            }
        }
    }

    #[test]
    fn summation_path_matches_direct_path() {
        for c in [ctx(1, 3), ctx(1, 2), QContext::classical()] {
            for order in 0..=2 {
                for kind in [FamilyKind::Bernoulli, FamilyKind::Genocchi] {
                    let id = FamilyId::new(kind, order);
                    assert_eq!(
                        compute_polys_direct(id, &c, 10),
                        compute_polys_summation(id, &c, 10),
                        "{kind} alpha={order} q={c}"
                    );
                }
            }
        }
        assert_eq!(
            compute_polys_summation(FamilyId::genocchi(1), &ctx(1, 2), 0),
            vec![BiPoly::zero()]
        );
    }

    #[test]
    fn classical_limit_of_polynomials() {
        let one = QContext::classical();
        let g = compute_polys_direct(FamilyId::genocchi(1), &one, 8);
        assert_eq!(g, classical_polys_shifted(&classical_genocchi(8)));
        let b = compute_polys_direct(FamilyId::bernoulli(1), &one, 8);
        assert_eq!(b, classical_polys_shifted(&classical_bernoulli(8)));
    }

    #[test]
    fn perturbation_keeps_table_consistent() {
        let c = ctx(1, 2);
        let mut table = FamilyTable::with_polys(FamilyId::genocchi(1), &c, 6);
        table.perturb_number(3, &scalar(1));
        for n in 0..=6 {
            assert_eq!(&table.poly(n).eval(&scalar(0), &scalar(0)), table.number(n));
        }
        let fresh = FamilyTable::with_polys(FamilyId::genocchi(1), &c, 6);
        assert_eq!(table.poly(2), fresh.poly(2));
        assert_ne!(table.poly(3), fresh.poly(3));
    }

    #[test]
    fn table_record_round_trip() {
        let c = ctx(1, 2);
        for table in [
            FamilyTable::with_polys(FamilyId::genocchi(2), &c, 5),
            FamilyTable::numbers_only(FamilyId::bernoulli(1), &c, 5),
        ] {
            let json = serde_json::to_string(&table.to_record()).unwrap();
            let record: TableRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(FamilyTable::from_record(&record).unwrap(), table);
        }
    }

    #[test]
    fn malformed_records_are_rejected() {
        let mut record =
            FamilyTable::numbers_only(FamilyId::genocchi(1), &ctx(1, 2), 3).to_record();
        record.max_n = 7;
        assert!(matches!(
            FamilyTable::from_record(&record),
            Err(Error::MalformedTable(_))
        ));
        record.max_n = 3;
        record.q = "-1".into();
        assert!(FamilyTable::from_record(&record).is_err());
    }

    #[test]
    fn family_kind_parsing() {
        assert_eq!(
            "Genocchi".parse::<FamilyKind>().unwrap(),
            FamilyKind::Genocchi
        );
        assert_eq!(
            "bernoulli".parse::<FamilyKind>().unwrap(),
            FamilyKind::Bernoulli
        );
        assert!("euler".parse::<FamilyKind>().is_err());
    }
}
