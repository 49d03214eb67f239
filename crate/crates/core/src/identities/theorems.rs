//! Genocchi-Bernoulli connection formulas (Theorems S-P1, S-P11) and their
//! corollaries.
//!
//! Both theorems have the shape
//!
//! ```text
//! G_n(x,y) = sum_k w_{n,k} / (m^{n-k-1} [k+1]_q) * C_k * B_{n-k}(...)
//! C_k = 2[k+1]_q sum_{j<=k} [k j]_q s_{k-j} L_j
//!       - sum_{j<=k+1} [k+1 j]_q s_{k+1-j} U_j - T_{k+1}
//! ```
//!
//! with `w_{n,k} = [n k]_q` (or 1 for the literal S-P1 statement), and the
//! shift weights `s_e`, lower/upper sequences `L`, `U` and tail `T` chosen
//! per formula.

use num_traits::Zero;

use super::{m_pow, Checker, Params, Slice, Sp1Variant};
use crate::poly::{BiPoly, Var};
use crate::qarith::{scalar, triangular, Scalar};

fn at_x(p: &BiPoly, c: i64) -> BiPoly {
    p.specialize(Var::X, &scalar(c))
}

fn at_y(p: &BiPoly, c: i64) -> BiPoly {
    p.specialize(Var::Y, &scalar(c))
}

/// `C_k` for `k = 0..=n_max`. `lower` needs `n_max + 1` entries, `upper`
/// and `tail` need `n_max + 2`.
fn brackets(
    s: &Slice<'_>,
    shift: &dyn Fn(usize) -> Scalar,
    lower: &[BiPoly],
    upper: &[BiPoly],
    tail: &[BiPoly],
) -> Vec<BiPoly> {
    (0..=s.grid.n_max)
        .map(|k| {
            let low = (0..=k)
                .fold(BiPoly::zero(), |acc, j| {
                    acc + lower[j].scale(&(s.binom(k, j) * shift(k - j)))
                })
                .scale(&(scalar(2) * s.qnum(k + 1)));
            let up = (0..=k + 1).fold(BiPoly::zero(), |acc, j| {
                acc + upper[j].scale(&(s.binom(k + 1, j) * shift(k + 1 - j)))
            });
            &(&low - &up) - &tail[k + 1]
        })
        .collect()
}

/// `sum_k w_{n,k} m^{-(n-k-1)} / [k+1] * C_k * partner_{n-k}`.
fn connection(
    s: &Slice<'_>,
    n: usize,
    m: u32,
    with_binomial: bool,
    brackets: &[BiPoly],
    partner: &[BiPoly],
) -> BiPoly {
    (0..=n).fold(BiPoly::zero(), |acc, k| {
        let mut w = m_pow(m, k as i64 + 1 - n as i64) / s.qnum(k + 1);
        if with_binomial {
            w *= s.binom(n, k);
        }
        acc + &brackets[k].scale(&w) * &partner[n - k]
    })
}

fn seq(len: usize, f: impl Fn(usize) -> BiPoly) -> Vec<BiPoly> {
    (0..len).map(f).collect()
}

/// `B_j(0, m y)` for `j = 0..=n_max`.
fn bernoulli_in_my(s: &Slice<'_>, m: u32) -> Vec<BiPoly> {
    seq(s.grid.n_max + 1, |j| {
        at_x(s.b(1, j), 0).substitute_scaled(Var::Y, &scalar(m as i64))
    })
}

/// `B_j(m x, 0)` for `j = 0..=n_max`.
fn bernoulli_in_mx(s: &Slice<'_>, m: u32) -> Vec<BiPoly> {
    seq(s.grid.n_max + 1, |j| {
        at_y(s.b(1, j), 0).substitute_scaled(Var::X, &scalar(m as i64))
    })
}

pub(super) fn theorem_sp1(s: &Slice<'_>, ck: &mut Checker, variant: Sp1Variant) {
    let len = s.grid.n_max + 2;
    for alpha in s.positive_alphas() {
        let lower = seq(len, |j| at_y(s.g(alpha - 1, j), -1));
        let upper = seq(len, |j| at_y(s.g(alpha, j), -1));
        let tail = seq(len, |j| at_y(s.g(alpha, j), 0));
        for &m in &s.grid.m_set {
            let shift = |e: usize| m_pow(m, -(e as i64));
            let c = brackets(s, &shift, &lower, &upper, &tail);
            let partner = bernoulli_in_my(s, m);
            for n in 0..=s.grid.n_max {
                let rhs = connection(s, n, m, variant == Sp1Variant::WithBinomial, &c, &partner);
                let formula = match variant {
                    Sp1Variant::WithBinomial => "S-P1 with [n k]_q weight",
                    Sp1Variant::AsPrinted => "S-P1 as printed (no [n k]_q weight)",
                };
                ck.poly(formula, Params::n(n).alpha(alpha).m(m), s.g(alpha, n), &rhs);
            }
        }
    }
}

pub(super) fn theorem_sp11(s: &Slice<'_>, ck: &mut Checker) {
    let len = s.grid.n_max + 2;
    for alpha in s.positive_alphas() {
        let lower = seq(len, |j| at_x(s.g(alpha - 1, j), 0));
        let upper = seq(len, |j| at_x(s.g(alpha, j), 0));
        for &m in &s.grid.m_set {
            let pows = s.shifted_pows(m);
            let shift = |e: usize| pows[e].clone();
            let c = brackets(s, &shift, &lower, &upper, &upper);
            let partner = bernoulli_in_mx(s, m);
            for n in 0..=s.grid.n_max {
                let rhs = connection(s, n, m, true, &c, &partner);
                ck.poly("S-P11", Params::n(n).alpha(alpha).m(m), s.g(alpha, n), &rhs);
            }
        }
    }
}

/// Corollary 1 (both displays), the order-alpha number form, Corollary 3
/// and Corollary 4 with the `2 B_n(x,0)` term restored.
pub(super) fn corollaries(s: &Slice<'_>, ck: &mut Checker) {
    let len = s.grid.n_max + 2;
    let ctx = s.ctx();

    // Corollary 1: order-0 Genocchi terms written out explicitly.
    let explicit_y = seq(len, |j| {
        BiPoly::monomial(0, j as u32, ctx.q_pow(triangular(j as u64)))
    });
    let explicit_x_minus_one = seq(len, |j| at_y(&s.add_pow[j], -1));
    let g_0y = seq(len, |j| at_x(s.g(1, j), 0));
    let g_xm1 = seq(len, |j| at_y(s.g(1, j), -1));
    let g_x0 = seq(len, |j| at_y(s.g(1, j), 0));
    for &m in &s.grid.m_set {
        let pows = s.shifted_pows(m);
        let shift_y = |e: usize| pows[e].clone();
        let c = brackets(s, &shift_y, &explicit_y, &g_0y, &g_0y);
        let partner = bernoulli_in_mx(s, m);
        for n in 0..=s.grid.n_max {
            let rhs = connection(s, n, m, true, &c, &partner);
            ck.poly(
                "Corollary 1, first display",
                Params::n(n).alpha(1).m(m),
                s.g(1, n),
                &rhs,
            );
        }

        let shift_x = |e: usize| m_pow(m, -(e as i64));
        let c = brackets(s, &shift_x, &explicit_x_minus_one, &g_xm1, &g_x0);
        let partner = bernoulli_in_my(s, m);
        for n in 0..=s.grid.n_max {
            let rhs = connection(s, n, m, true, &c, &partner);
            ck.poly(
                "Corollary 1, second display",
                Params::n(n).alpha(1).m(m),
                s.g(1, n),
                &rhs,
            );
        }

        // Number form of order alpha (S-P11 at y = 0).
        let partner = bernoulli_in_mx(s, m);
        for alpha in s.positive_alphas() {
            let lower = seq(len, |j| BiPoly::constant(s.g_num(alpha - 1, j).clone()));
            let upper = seq(len, |j| BiPoly::constant(s.g_num(alpha, j).clone()));
            let c = brackets(s, &shift_y, &lower, &upper, &upper);
            for n in 0..=s.grid.n_max {
                let rhs = connection(s, n, m, true, &c, &partner);
                let lhs = at_y(s.g(alpha, n), 0);
                ck.poly(
                    "order-alpha number form",
                    Params::n(n).alpha(alpha).m(m),
                    &lhs,
                    &rhs,
                );
            }
        }
    }

    // Corollary 3.
    let b_x0 = seq(len, |j| at_y(s.b(1, j), 0));
    for n in 0..=s.grid.n_max {
        let rhs = (0..=n).fold(BiPoly::zero(), |acc, k| {
            let lead =
                BiPoly::monomial(0, k as u32, s.qnum(k + 1) * ctx.q_pow(triangular(k as u64)));
            let inner = &lead - &g_0y[k + 1];
            let w = s.binom(n, k) * scalar(2) / s.qnum(k + 1);
            acc + &inner.scale(&w) * &b_x0[n - k]
        });
        ck.poly("Corollary 3", Params::n(n).alpha(1), s.g(1, n), &rhs);
    }

    corollary4(s, ck, true);
}

/// Corollary 4 exactly as displayed, which omits the `2 B_n(x,0)` term.
pub(super) fn corollary4_as_printed(s: &Slice<'_>, ck: &mut Checker) {
    corollary4(s, ck, false);
}

fn corollary4(s: &Slice<'_>, ck: &mut Checker, with_leading_term: bool) {
    let b_x0 = seq(s.grid.n_max + 1, |j| at_y(s.b(1, j), 0));
    let (poly_label, number_label) = if with_leading_term {
        ("Corollary 4 polynomial form", "Corollary 4 number form")
    } else {
        (
            "Corollary 4 polynomial form as printed",
            "Corollary 4 number form as printed",
        )
    };
    for n in 0..=s.grid.n_max {
        let p = Params::n(n).alpha(1);
        let weight = |k: usize| s.binom(n, k) * scalar(2) / s.qnum(k + 1) * s.g_num(1, k + 1);
        let mut rhs = (0..=n).fold(BiPoly::zero(), |acc, k| acc - b_x0[n - k].scale(&weight(k)));
        let mut rhs_num =
            (0..=n).fold(Scalar::zero(), |acc, k| acc - weight(k) * s.b_num(1, n - k));
        if with_leading_term {
            rhs = &rhs + &b_x0[n].scale(&scalar(2));
            rhs_num += scalar(2) * s.b_num(1, n);
        }
        ck.poly(poly_label, p, &at_y(s.g(1, n), 0), &rhs);
        ck.scalar(number_label, p, s.g_num(1, n), &rhs_num);
    }
}
