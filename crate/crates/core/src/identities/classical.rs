//! The `q = 1` slice: the q-tables against independent classical oracles,
//! and the two classical Genocchi-Bernoulli connection formulas, all built
//! from the recurrence-based oracle without touching the q-engine.

use num_traits::Zero;

use super::{m_pow, Checker, Params, Slice};
use crate::families::{
    classical_bernoulli, classical_genocchi, classical_numbers_of_order, classical_polys_in_x,
    classical_polys_shifted, int_binomial, FamilyKind,
};
use crate::poly::BiPoly;
use crate::qarith::{pow, ratio, scalar, Scalar};

/// `P_n(y + c) = sum_i C(n,i) a_i (y + c)^{n-i}` as a polynomial in `y`.
fn appell_in_y(numbers: &[Scalar], n: usize, c: &Scalar) -> BiPoly {
    let shifted_pow = |e: usize| {
        BiPoly::from_terms(
            (0..=e).map(|l| ((0, l as u32), int_binomial(e, l) * pow(c, (e - l) as u64))),
        )
    };
    (0..=n).fold(BiPoly::zero(), |acc, i| {
        acc + shifted_pow(n - i).scale(&(int_binomial(n, i) * &numbers[i]))
    })
}

fn unit_sequence(len: usize) -> Vec<Scalar> {
    (0..len)
        .map(|n| if n == 0 { scalar(1) } else { scalar(0) })
        .collect()
}

pub(super) fn classical_limits(s: &Slice<'_>, ck: &mut Checker) {
    let n_max = s.grid.n_max;
    for &alpha in &s.grid.alpha_set {
        for kind in [FamilyKind::Bernoulli, FamilyKind::Genocchi] {
            let numbers = classical_numbers_of_order(kind, alpha, n_max);
            let polys = classical_polys_shifted(&numbers);
            let table = s.table(kind, alpha);
            for n in 0..=n_max {
                let p = Params::n(n).alpha(alpha);
                ck.scalar(
                    "q-number at q=1 equals classical number",
                    p,
                    table.number(n),
                    &numbers[n],
                );
                ck.poly(
                    "q-polynomial at q=1 equals classical P_n(x+y)",
                    p,
                    table.poly(n),
                    &polys[n],
                );
            }
        }
    }
    plain_connection(s, ck);
    scaled_connection(s, ck, false);
}

/// The scaled formula with `G_k` read literally as the order-one Genocchi
/// polynomial.
pub(super) fn scaled_as_printed(s: &Slice<'_>, ck: &mut Checker) {
    scaled_connection(s, ck, true);
}

/// `G_n(x+y) = sum C(n,k) 2/(k+1) ((k+1) y^k - G_{k+1}(y)) B_{n-k}(x)`.
fn plain_connection(s: &Slice<'_>, ck: &mut Checker) {
    let n_max = s.grid.n_max;
    let genocchi = classical_genocchi(n_max + 1);
    let b_x = classical_polys_in_x(&classical_bernoulli(n_max));
    let lhs = classical_polys_shifted(&genocchi);
    for n in 0..=n_max {
        let rhs = (0..=n).fold(BiPoly::zero(), |acc, k| {
            let lead = BiPoly::monomial(0, k as u32, scalar(k as i64 + 1));
            let inner = &lead - &appell_in_y(&genocchi, k + 1, &scalar(0));
            let w = int_binomial(n, k) * ratio(2, k as i64 + 1);
            acc + &inner.scale(&w) * &b_x[n - k]
        });
        ck.poly(
            "classical connection formula",
            Params::n(n).alpha(1),
            &lhs[n],
            &rhs,
        );
    }
}

/// `G_n(x+y) = sum C(n,k) m^{k+1-n}/(k+1) [2(k+1)(y+c)^k - G_{k+1}(y+c)
///   - G_{k+1}(y)] B_{n-k}(mx)` with `c = 1/m - 1`.
fn scaled_connection(s: &Slice<'_>, ck: &mut Checker, literal: bool) {
    let n_max = s.grid.n_max;
    let genocchi = classical_genocchi(n_max + 1);
    let bernoulli = classical_bernoulli(n_max);
    let lhs = classical_polys_shifted(&genocchi);
    // The first bracket term is the order-0 polynomial (y + 1/m - 1)^k
    // unless read literally.
    let first = if literal {
        genocchi.clone()
    } else {
        unit_sequence(n_max + 2)
    };
    let formula = if literal {
        "scaled classical connection formula as printed"
    } else {
        "scaled classical connection formula, order-0 first term"
    };
    for &m in &s.grid.m_set {
        let c = ratio(1, m as i64) - scalar(1);
        let b_mx: Vec<BiPoly> = classical_polys_in_x(&bernoulli)
            .iter()
            .map(|p| p.substitute_scaled(crate::poly::Var::X, &scalar(m as i64)))
            .collect();
        for n in 0..=n_max {
            let rhs = (0..=n).fold(BiPoly::zero(), |acc, k| {
                let bracket = &(&appell_in_y(&first, k, &c).scale(&scalar(2 * (k as i64 + 1)))
                    - &appell_in_y(&genocchi, k + 1, &c))
                    - &appell_in_y(&genocchi, k + 1, &scalar(0));
                let w =
                    int_binomial(n, k) * m_pow(m, k as i64 + 1 - n as i64) / scalar(k as i64 + 1);
                acc + &bracket.scale(&w) * &b_mx[n - k]
            });
            ck.poly(formula, Params::n(n).alpha(1).m(m), &lhs[n], &rhs);
        }
    }
}
