use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, Rational};
use crate::error::{Error, Result};

/// Power series in `t` known exactly through `t^order`.
///
/// Coefficients are ordinary (not exponential); `egf_coefficient` applies the
/// factorial when a caller wants `t^n/n!` semantics. Anything above `order` is
/// unknown and never read. Binary operations truncate to the smaller order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`. At order 0 this is the zero series.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Builds a series from ordinary coefficients `c_0..=c_order`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least the constant term");
        Self { coeffs }
    }

    /// Builds the series `sum a_n t^n / n!` from exponential coefficients.
    pub fn from_egf(values: &[Rational]) -> Self {
        Self::from_coeffs(
            values
                .iter()
                .enumerate()
                .map(|(n, v)| v / Rational::from_integer(factorial(n)))
                .collect(),
        )
    }

    /// `log(1+t) = t - t^2/2 + t^3/3 - ...` through `t^order`.
    pub fn log1p(order: usize) -> Self {
        let mut s = Self::zero(order);
        for i in 1..=order {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            s.coeffs[i] = Rational::new(BigInt::from(sign), BigInt::from(i));
        }
        s
    }

    /// `e^t - 1` through `t^order`.
    pub fn expm1(order: usize) -> Self {
        let mut s = Self::zero(order);
        for i in 1..=order {
            s.coeffs[i] = Rational::new(BigInt::one(), factorial(i));
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^i`.
    pub fn coeff(&self, i: usize) -> Result<&Rational> {
        self.coeffs.get(i).ok_or(Error::TruncationTooSmall {
            index: i,
            order: self.order(),
        })
    }

    /// `n!` times the coefficient of `t^n`.
    pub fn egf_coefficient(&self, n: usize) -> Result<Rational> {
        Ok(self.coeff(n)? * Rational::from_integer(factorial(n)))
    }

    /// Drops every coefficient above `order` (no-op if already lower).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `a(-t)`.
    pub fn negate_variable(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
                .collect(),
        }
    }

    /// `a^k` by repeated squaring; `a^0` is the constant series 1.
    pub fn pow(&self, mut k: usize) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for j in 1..=n {
                acc += &self.coeffs[j] * &out[n - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// `exp(a)` for `a` with zero constant term, via `n g_n = sum_j j a_j g_{n-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(Rational::one());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc += &self.coeffs[j] * Rational::from_integer(j.into()) * &out[n - j];
            }
            out.push(acc / Rational::from_integer(n.into()));
        }
        Ok(Self { coeffs: out })
    }

    /// `outer(inner(t))`, with Horner nesting in the inner series.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = outer.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for c in outer.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Divides by `t^j`; the first `j` coefficients must vanish.
    pub fn shift_divide(&self, j: usize) -> Result<Self> {
        if j > self.order() {
            return Err(Error::TruncationTooSmall {
                index: j,
                order: self.order(),
            });
        }
        if self.coeffs[..j].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible { shift: j });
        }
        Ok(Self {
            coeffs: self.coeffs[j..].to_vec(),
        })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Cauchy product truncated at the smaller order.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}
