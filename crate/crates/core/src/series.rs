//! Truncated formal power series `c_0 + c_1 t + ... + c_N t^N` over an
//! exact coefficient ring, plus the q-exponentials and the Jackson
//! derivative acting on them.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qarith::{q_factorial, q_number, triangular, QContext, Scalar};

/// A commutative ring the series engine can run over.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_scalar(s: &Scalar) -> Self;

    fn scale(&self, s: &Scalar) -> Self;

    /// Multiplicative inverse, or `None` when the element is not a unit.
    fn inverse(&self) -> Option<Self>;
}

impl Coefficient for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }

    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }

    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Series truncated at order `N`: exactly `N + 1` stored coefficients, each
/// exact through `t^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Coefficient> Series<R> {
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least c_0");
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| R::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = R::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_fn(self.order(), |n| {
            self.coeffs[n].clone() + other.coeffs[n].clone()
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_fn(self.order(), |n| {
            self.coeffs[n].clone() - other.coeffs[n].clone()
        }))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_fn(self.order(), |n| {
            (0..=n).fold(R::zero(), |acc, k| {
                acc + self.coeffs[k].clone() * other.coeffs[n - k].clone()
            })
        }))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_fn(self.order(), |n| self.coeffs[n].scale(s))
    }

    /// `1/f` through order `N` by `g_0 = 1/c_0`,
    /// `g_n = -(1/c_0) sum_{k=1..n} c_k g_{n-k}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::NotInvertible {
                index: 0,
                value: format!("{:?}", self.coeffs[0]),
            })?;
        let mut g: Vec<R> = Vec::with_capacity(self.coeffs.len());
        g.push(c0_inv.clone());
        for n in 1..=self.order() {
            let sum = (1..=n).fold(R::zero(), |acc, k| {
                acc + self.coeffs[k].clone() * g[n - k].clone()
            });
            g.push(-(c0_inv.clone() * sum));
        }
        Ok(Self { coeffs: g })
    }

    /// `f^power`; `f^0` is the constant series 1.
    pub fn pow(&self, power: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = power;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("equal orders");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("equal orders");
            }
        }
        result
    }

    /// `g(t) = f(c t)`, i.e. `g_n = c^n f_n`.
    pub fn scale_arg(&self, c: &Scalar) -> Self {
        let mut factor = Scalar::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|coeff| {
                let scaled = coeff.scale(&factor);
                factor *= c;
                scaled
            })
            .collect();
        Self { coeffs }
    }

    /// `f(t)/t` for `f` with zero constant term; the result has order `N - 1`.
    pub fn shift_div_t(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant(format!("{:?}", self.coeffs[0])));
        }
        if self.order() == 0 {
            return Err(Error::OrderExhausted);
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `t f(t)` kept at the same order (the top coefficient falls off).
    pub fn mul_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(R::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Jackson derivative: `sum c_n t^n` maps to `sum c_n [n]_q t^{n-1}`,
    /// at order `N - 1`. A constant-order series maps to the zero constant.
    pub fn q_derivative(&self, ctx: &QContext) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |n| {
            self.coeffs[n + 1].scale(&q_number(n as u64 + 1, ctx))
        })
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// `e_q(t) = sum t^n / [n]_q!`.
pub fn build_eq(ctx: &QContext, order: usize) -> Series<Scalar> {
    let mut fact = Scalar::one();
    Series::from_fn(order, |n| {
        if n > 0 {
            fact *= q_number(n as u64, ctx);
        }
        fact.recip()
    })
}

/// `E_q(t) = sum q^{n(n-1)/2} t^n / [n]_q!`.
#[allow(non_snake_case)]
pub fn build_Eq(ctx: &QContext, order: usize) -> Series<Scalar> {
    let mut fact = Scalar::one();
    Series::from_fn(order, |n| {
        if n > 0 {
            fact *= q_number(n as u64, ctx);
        }
        ctx.q_pow(triangular(n as u64)) / &fact
    })
}

/// Coefficients `a_n` of `f(t) = sum a_n t^n / [n]_q!`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorialForm<R> {
    pub values: Vec<R>,
}

impl<R: Coefficient> FactorialForm<R> {
    pub fn from_series(series: &Series<R>, ctx: &QContext) -> Self {
        let mut fact = Scalar::one();
        let values = series
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= q_number(n as u64, ctx);
                }
                c.scale(&fact)
            })
            .collect();
        Self { values }
    }

    pub fn to_series(&self, ctx: &QContext) -> Series<R> {
        Series::from_coeffs(
            self.values
                .iter()
                .enumerate()
                .map(|(n, a)| a.scale(&q_factorial(n as u64, ctx).recip()))
                .collect(),
        )
    }
}
