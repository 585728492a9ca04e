//! Truncated formal power series in `x` with rational-function coefficients.
//!
//! A [`TruncSeries`] of order `N` keeps the coefficients of `x^0 .. x^{N-1}`.
//! Every operation is degree-graded: output coefficient `k` only depends on
//! input coefficients `0..=k`, so truncation never corrupts retained terms.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{factorial, rat, QPoly, QRatFun, Rational};
use crate::{Error, Result};

/// Order used when callers do not pick one.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<QRatFun>,
}

impl TruncSeries {
    pub fn new(coeffs: Vec<QRatFun>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn from_polys(coeffs: impl IntoIterator<Item = QPoly>) -> Result<Self> {
        Self::new(coeffs.into_iter().map(QRatFun::from).collect())
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Result<Self> {
        Self::new(coeffs.into_iter().map(QRatFun::constant).collect())
    }

    /// Shorthand for series with integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::from_rationals(coeffs.iter().map(|&c| rat(c)))
    }

    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "series order must be positive");
        Self {
            coeffs: vec![QRatFun::zero(); order],
        }
    }

    pub fn constant(c: QRatFun, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(QRatFun::one(), order)
    }

    /// `c * x`, truncated.
    pub fn linear(c: QRatFun, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = c;
        }
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::linear(QRatFun::one(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &QRatFun {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[QRatFun] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<QRatFun> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QRatFun::is_zero)
    }

    /// Keeps the first `order` coefficients (padding with zeros if longer).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order > 0, "series order must be positive");
        let mut coeffs: Vec<_> = self.coeffs.iter().take(order).cloned().collect();
        coeffs.resize(order, QRatFun::zero());
        Self { coeffs }
    }

    fn same_order(&self, other: &Self) -> Result<usize> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(self.order())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Cauchy product truncated to the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let n = self.same_order(other)?;
        Ok(Self {
            coeffs: (0..n).map(|k| self.cauchy_term(other, k)).collect(),
        })
    }

    fn cauchy_term(&self, other: &Self, k: usize) -> QRatFun {
        let mut acc = QRatFun::zero();
        for i in 0..=k {
            let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a * b;
            }
        }
        acc
    }

    pub fn scale(&self, c: &QRatFun) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// `d/dx`; the result has order `N - 1`.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() < 2 {
            return Err(Error::EmptySeries);
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&rat(k as i64)))
                .collect(),
        })
    }

    /// Antiderivative with zero constant term; the result has order `N + 1`.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(QRatFun::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&Rational::new(1.into(), (k as i64 + 1).into())));
        }
        Self { coeffs }
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].recip().map_err(|_| Error::NonInvertibleSeries)?;
        let n = self.order();
        let mut out: Vec<QRatFun> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = QRatFun::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc = acc + &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-(&acc * &c0_inv));
        }
        Ok(Self { coeffs: out })
    }

    /// `exp(f)` for `f(0) = 0`, from `n E_n = sum_k k f_k E_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition {
                op: "exp",
                requirement: "a zero constant term",
            });
        }
        let n = self.order();
        let mut out: Vec<QRatFun> = Vec::with_capacity(n);
        out.push(QRatFun::one());
        for m in 1..n {
            let mut acc = QRatFun::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc = acc + (&self.coeffs[k] * &out[m - k]).scale(&rat(k as i64));
                }
            }
            out.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
        }
        Ok(Self { coeffs: out })
    }

    /// `log(f)` for `f(0) = 1`, from `f L' = f'`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition {
                op: "log",
                requirement: "constant term 1",
            });
        }
        let n = self.order();
        let mut out: Vec<QRatFun> = Vec::with_capacity(n);
        out.push(QRatFun::zero());
        for m in 1..n {
            // m L_m = m f_m - sum_{k=1}^{m-1} k L_k f_{m-k}
            let mut acc = self.coeffs[m].scale(&rat(m as i64));
            for (k, lk) in out.iter().enumerate().skip(1) {
                let f = &self.coeffs[m - k];
                if !lk.is_zero() && !f.is_zero() {
                    acc = acc - (lk * f).scale(&rat(k as i64));
                }
            }
            out.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
        }
        Ok(Self { coeffs: out })
    }

    /// `f^b = exp(b log f)` for `f(0) = 1`.
    pub fn pow(&self, b: &Rational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition {
                op: "pow",
                requirement: "constant term 1",
            });
        }
        if b.is_zero() {
            return Ok(Self::one(self.order()));
        }
        self.log()?.scale(&QRatFun::constant(b.clone())).exp()
    }

    /// `self(inner(x))` for `inner(0) = 0`, by Horner's rule. The result has
    /// the smaller of the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Precondition {
                op: "compose",
                requirement: "an inner series with zero constant term",
            });
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n - 1].clone(), n);
        for k in (0..n - 1).rev() {
            acc = acc.checked_mul(&inner)?;
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(x)) = x`, by Newton's method
    /// `g <- g - (f(g) - x) / f'(g)`.
    pub fn comp_inverse(&self) -> Result<Self> {
        let n = self.order();
        if !self.coeffs[0].is_zero() || n < 2 || self.coeffs[1].is_zero() {
            return Err(Error::Precondition {
                op: "comp_inverse",
                requirement: "zero constant term and an invertible linear term",
            });
        }
        let x = Self::x(n);
        let mut g = Self::linear(self.coeffs[1].recip()?, n);
        let fprime = self.derivative()?;
        // each step doubles the number of correct terms
        let mut budget = usize::BITS as usize;
        loop {
            let residual = self.compose(&g)?.checked_sub(&x)?;
            if residual.is_zero() {
                return Ok(g);
            }
            budget -= 1;
            assert!(budget > 0, "Newton iteration failed to converge");
            // f'(g) has order n-1; its x^{n-1} term only meets the vanishing
            // constant term of the residual, so padding with zero is exact
            let step = fprime.compose(&g)?.inverse()?.truncate(n);
            g = g.checked_sub(&residual.checked_mul(&step)?)?;
        }
    }

    /// `n! [x^n]` for every retained `n`: the sequence whose exponential
    /// generating function this is.
    pub fn egf_terms(&self) -> Vec<QRatFun> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&factorial(n)))
            .collect()
    }
}

/// `exp(c (1 - q) x)` truncated to `order`.
fn exp_scaled(c: &Rational, order: usize) -> Result<TruncSeries> {
    let rate = QPoly::linear(c.clone(), -c.clone());
    TruncSeries::linear(rate.into(), order).exp()
}

/// `(1 - q) e^{a(1-q)x} / (1 - q e^{d(1-q)x})`, the `b = 1` base of the
/// Eulerian exponential generating function.
pub fn eulerian_egf_base(a: &Rational, d: &Rational, order: usize) -> Result<TruncSeries> {
    let one_minus_q: QRatFun = QPoly::from_ints(&[1, -1]).into();
    let numer = exp_scaled(a, order)?.scale(&one_minus_q);
    let denom = TruncSeries::one(order).checked_sub(&exp_scaled(d, order)?.scale(&QPoly::q().into()))?;
    numer.checked_mul(&denom.inverse()?)
}

/// `g(x) = ((1 - q) e^{a(1-q)x} / (1 - q e^{d(1-q)x}))^b`.
pub fn eulerian_egf(a: &Rational, b: &Rational, d: &Rational, order: usize) -> Result<TruncSeries> {
    eulerian_egf_base(a, d, order)?.pow(b)
}

/// `f(x) = (e^{d(1-q)x} - 1) / (d (1 - q e^{d(1-q)x}))`, the second half of
/// the Riordan pair for the Eulerian family. Needs `d != 0`.
pub fn eulerian_riordan_f(d: &Rational, order: usize) -> Result<TruncSeries> {
    if d.is_zero() {
        return Err(Error::Precondition {
            op: "eulerian_riordan_f",
            requirement: "d != 0",
        });
    }
    let e = exp_scaled(d, order)?;
    let numer = e.checked_sub(&TruncSeries::one(order))?;
    let denom = TruncSeries::one(order)
        .checked_sub(&e.scale(&QPoly::q().into()))?
        .scale(&QRatFun::constant(d.clone()));
    numer.checked_mul(&denom.inverse()?)
}

/// `T_0(q), ..., T_{n-1}(q)` from the exponential generating function.
///
/// Fails with [`Error::NotPolynomial`] if some `n! [x^n] g` keeps a
/// denominator, which would indicate an arithmetic bug.
pub fn egf_coefficients(a: &Rational, b: &Rational, d: &Rational, n: usize) -> Result<Vec<QPoly>> {
    if n == 0 {
        return Err(Error::EmptySeries);
    }
    eulerian_egf(a, b, d, n)?
        .egf_terms()
        .into_iter()
        .enumerate()
        .map(|(index, c)| c.into_poly().ok_or(Error::NotPolynomial { index }))
        .collect()
}
