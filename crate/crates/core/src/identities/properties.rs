//! Elementary properties of the q-Genocchi polynomials of order alpha.

use num_traits::Zero;

use super::{Checker, Params, Slice};
use crate::poly::{BiPoly, Var};
use crate::qarith::{scalar, triangular, Scalar};

fn x_pow(n: usize, c: Scalar) -> BiPoly {
    BiPoly::monomial(n as u32, 0, c)
}

fn y_pow(n: usize, c: Scalar) -> BiPoly {
    BiPoly::monomial(0, n as u32, c)
}

fn at_x(p: &BiPoly, c: i64) -> BiPoly {
    p.specialize(Var::X, &scalar(c))
}

fn at_y(p: &BiPoly, c: i64) -> BiPoly {
    p.specialize(Var::Y, &scalar(c))
}

/// Special values at order 0.
pub(super) fn property1(s: &Slice<'_>, ck: &mut Checker) {
    for n in 0..=s.grid.n_max {
        let p = Params::n(n).alpha(0);
        let g = s.g(0, n);
        ck.poly("G^(0)_n(x,0) = x^n", p, &at_y(g, 0), &x_pow(n, scalar(1)));
        let expected = y_pow(n, s.ctx().q_pow(triangular(n as u64)));
        ck.poly("G^(0)_n(0,y) = q^{n(n-1)/2} y^n", p, &at_x(g, 0), &expected);
    }
}

/// Summation formulas.
pub(super) fn property2(s: &Slice<'_>, ck: &mut Checker) {
    for &alpha in &s.grid.alpha_set {
        for n in 0..=s.grid.n_max {
            let p = Params::n(n).alpha(alpha);
            let g = s.g(alpha, n);

            let via_add_pow = (0..=n).fold(BiPoly::zero(), |acc, k| {
                acc + s.add_pow[n - k].scale(&(s.binom(n, k) * s.g_num(alpha, k)))
            });
            ck.poly("G_n(x,y) = sum [n k] G_k (x+y)_q^{n-k}", p, g, &via_add_pow);

            if alpha >= 1 {
                let mixed = (0..=n).fold(BiPoly::zero(), |acc, k| {
                    acc + s
                        .g(1, k)
                        .scale(&(s.binom(n, k) * s.g_num(alpha - 1, n - k)))
                });
                ck.poly(
                    "G^(a)_n(x,y) = sum [n k] G^(a-1)_{n-k} G^(1)_k(x,y)",
                    p,
                    g,
                    &mixed,
                );
            }

            let from_x_side = (0..=n).fold(BiPoly::zero(), |acc, k| {
                let w = s.binom(n, k) * s.ctx().q_pow(triangular((n - k) as u64));
                acc + &at_y(s.g(alpha, k), 0) * &y_pow(n - k, w)
            });
            ck.poly(
                "G_n(x,y) = sum [n k] q^{(n-k)(n-k-1)/2} G_k(x,0) y^{n-k}",
                p,
                g,
                &from_x_side,
            );

            let from_y_side = (0..=n).fold(BiPoly::zero(), |acc, k| {
                acc + &at_x(s.g(alpha, k), 0) * &x_pow(n - k, s.binom(n, k).clone())
            });
            ck.poly("G_n(x,y) = sum [n k] G_k(0,y) x^{n-k}", p, g, &from_y_side);

            let x_only = (0..=n).fold(BiPoly::zero(), |acc, k| {
                acc + x_pow(n - k, s.binom(n, k) * s.g_num(alpha, k))
            });
            ck.poly("G_n(x,0) = sum [n k] G_k x^{n-k}", p, &at_y(g, 0), &x_only);

            let y_only = (0..=n).fold(BiPoly::zero(), |acc, k| {
                let w = s.binom(n, k) * s.ctx().q_pow(triangular((n - k) as u64));
                acc + y_pow(n - k, w * s.g_num(alpha, k))
            });
            ck.poly(
                "G_n(0,y) = sum [n k] q^{(n-k)(n-k-1)/2} G_k y^{n-k}",
                p,
                &at_x(g, 0),
                &y_only,
            );
        }
    }
}

/// Difference equations, `alpha >= 1`, `n >= 1`.
pub(super) fn property3(s: &Slice<'_>, ck: &mut Checker) {
    for alpha in s.positive_alphas() {
        for n in 1..=s.grid.n_max {
            let p = Params::n(n).alpha(alpha);
            let g = s.g(alpha, n);
            let two_qn = scalar(2) * s.qnum(n);
            let lower = s.g(alpha - 1, n - 1);

            let lhs = &at_x(g, 1) + &at_x(g, 0);
            let rhs = at_x(lower, 0).scale(&two_qn);
            ck.poly(
                "G_n(1,y) + G_n(0,y) = 2[n] G^(a-1)_{n-1}(0,y)",
                p,
                &lhs,
                &rhs,
            );

            let lhs = &at_y(g, 0) + &at_y(g, -1);
            let rhs = at_y(lower, -1).scale(&two_qn);
            ck.poly(
                "G_n(x,0) + G_n(x,-1) = 2[n] G^(a-1)_{n-1}(x,-1)",
                p,
                &lhs,
                &rhs,
            );
        }
    }
}

/// Jackson derivatives in `x` and in `y`.
pub(super) fn property4(s: &Slice<'_>, ck: &mut Checker) {
    for &alpha in &s.grid.alpha_set {
        for n in 1..=s.grid.n_max {
            let p = Params::n(n).alpha(alpha);
            let g = s.g(alpha, n);
            let prev = s.g(alpha, n - 1);
            let rhs = prev.scale(s.qnum(n));
            ck.poly(
                "D_{q,x} G_n(x,y) = [n] G_{n-1}(x,y)",
                p,
                &g.q_derivative_x(s.ctx()),
                &rhs,
            );
            let rhs = prev.substitute_scaled(Var::Y, s.q).scale(s.qnum(n));
            ck.poly(
                "D_{q,y} G_n(x,y) = [n] G_{n-1}(x,qy)",
                p,
                &g.q_derivative_y(s.ctx()),
                &rhs,
            );
        }
    }
}

/// Addition theorem for orders `alpha + beta <= max(alpha_set)`.
pub(super) fn property5(s: &Slice<'_>, ck: &mut Checker) {
    let Some(max_alpha) = s.grid.max_alpha() else {
        return;
    };
    for &alpha in &s.grid.alpha_set {
        for &beta in &s.grid.alpha_set {
            if alpha + beta > max_alpha {
                continue;
            }
            for n in 0..=s.grid.n_max {
                let p = Params::n(n).alpha(alpha).beta(beta);
                let rhs = (0..=n).fold(BiPoly::zero(), |acc, k| {
                    let left = at_y(s.g(alpha, n - k), 0).scale(s.binom(n, k));
                    acc + &left * &at_x(s.g(beta, k), 0)
                });
                let formula = "G^(a+b)_n(x,y) = sum [n k] G^(a)_{n-k}(x,0) G^(b)_k(0,y)";
                ck.poly(formula, p, s.g(alpha + beta, n), &rhs);
            }
        }
    }
}

/// Recurrence at `x = 1/m`, with `(1/m - 1)_q^j` from the q-analogue power.
pub(super) fn property6(s: &Slice<'_>, ck: &mut Checker) {
    for alpha in s.positive_alphas() {
        for &m in &s.grid.m_set {
            let shift = s.shifted_pows(m);
            let inv_m = crate::qarith::ratio(1, m as i64);
            for n in 0..=s.grid.n_max {
                let p = Params::n(n).alpha(alpha).m(m);
                let lhs = (0..=n).fold(s.g(alpha, n).specialize(Var::X, &inv_m), |acc, k| {
                    acc + at_x(s.g(alpha, k), 0).scale(&(s.binom(n, k) * &shift[n - k]))
                });
                let rhs = if n == 0 {
                    BiPoly::zero()
                } else {
                    (0..n)
                        .fold(BiPoly::zero(), |acc, k| {
                            let w = s.binom(n - 1, k) * &shift[n - 1 - k];
                            acc + at_x(s.g(alpha - 1, k), 0).scale(&w)
                        })
                        .scale(&(scalar(2) * s.qnum(n)))
                };
                let formula = "G_n(1/m,y) + sum [n k] (1/m-1)_q^{n-k} G_k(0,y) \
                               = 2[n] sum [n-1 k] (1/m-1)_q^{n-1-k} G^(a-1)_k(0,y)";
                ck.poly(formula, p, &lhs, &rhs);
            }
        }
    }
}
