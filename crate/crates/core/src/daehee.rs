//! First- and second-kind Daehee numbers and polynomials of order `k`.
//!
//! Each quantity has at least two independent routes:
//!
//! * closed form `D_n^(k) = S1(n+k, k) / C(n+k, k)`;
//! * generating function `(log(1+t)/t)^k` (first kind) and
//!   `((1-t) log(1-t) / (-t))^k` (second kind);
//! * Stirling-Bernoulli sums `sum_l S1(n,l) B_l^(k)` and `sum_l [n l] B_l^(k)`;
//! * `k`-fold binomial convolution of the order-1 sequence
//!   `D_m = (-1)^m m!/(m+1)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{factorial, int, sign, Rational, RationalPolynomial, TruncatedSeries};
use crate::bernoulli::BernoulliTable;
use crate::combinat::{binomial, falling_factorial_poly, StirlingSource};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    First,
    Second,
}

/// A Daehee family: kind plus order `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DaeheeKind {
    kind: Kind,
    order: usize,
}

impl DaeheeKind {
    pub fn new(kind: Kind, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self { kind, order })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::ZeroOrder)
    } else {
        Ok(())
    }
}

fn check_truncation(n: usize, truncation: usize) -> Result<()> {
    if truncation < n {
        return Err(Error::TruncationTooSmall {
            index: n,
            order: truncation,
        });
    }
    Ok(())
}

fn rational(i: impl Into<BigInt>) -> Rational {
    Rational::from_integer(i.into())
}

/// `(log(1+t)/t)^k` through `t^order`.
pub fn daehee1_series(k: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::log1p(order + 1)
        .shift_divide(1)
        .expect("log(1+t) has zero constant term")
        .pow(k)
}

/// `((1-t) log(1-t) / (-t))^k` through `t^order`.
pub fn daehee2_series(k: usize, order: usize) -> TruncatedSeries {
    // -log(1-t)/t is log1p with t -> -t, negated, then shifted down
    let neg_log = -&TruncatedSeries::log1p(order + 1).negate_variable();
    let quotient = neg_log.shift_divide(1).expect("zero constant term");
    let one_minus_t = &TruncatedSeries::one(order) - &TruncatedSeries::variable(order);
    (&one_minus_t * &quotient).pow(k)
}

/// `D_n^(k)` from `(log(1+t)/t)^k` truncated at `truncation`.
pub fn daehee1_number_gf(n: usize, k: usize, truncation: usize) -> Result<Rational> {
    check_order(k)?;
    check_truncation(n, truncation)?;
    daehee1_series(k, truncation).egf_coefficient(n)
}

/// `D̂_n^(k)` from `((1-t) log(1-t) / (-t))^k` truncated at `truncation`.
pub fn daehee2_number_gf(n: usize, k: usize, truncation: usize) -> Result<Rational> {
    check_order(k)?;
    check_truncation(n, truncation)?;
    daehee2_series(k, truncation).egf_coefficient(n)
}

/// Order-1 Daehee number `D_n = (-1)^n n!/(n+1)`.
pub fn daehee_order1(n: usize) -> Rational {
    Rational::new(BigInt::from(sign(n)) * factorial(n), BigInt::from(n + 1))
}

/// `c_n = sum_j C(n,j) a_j b_{n-j}`: the product of two EGFs, coefficientwise.
pub fn binomial_convolution(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| {
            (0..=n)
                .map(|j| rational(binomial(n as i64, j)) * &a[j] * &b[n - j])
                .fold(Rational::zero(), |acc, v| acc + v)
        })
        .collect()
}

/// `D_n^(k)` as the `k`-fold binomial convolution of `D_0..D_n`.
pub fn daehee1_number_multinomial(n: usize, k: usize) -> Result<Rational> {
    Ok(daehee1_numbers_multinomial(n, k)?.swap_remove(n))
}

/// `D_0^(k) .. D_n^(k)` by iterated convolution.
pub fn daehee1_numbers_multinomial(n: usize, k: usize) -> Result<Vec<Rational>> {
    check_order(k)?;
    let base: Vec<Rational> = (0..=n).map(daehee_order1).collect();
    let mut acc = base.clone();
    for _ in 1..k {
        acc = binomial_convolution(&acc, &base);
    }
    Ok(acc)
}

/// Routes that need Stirling and Bernoulli tables.
///
/// Generic over the Stirling source so a verification run can be pointed at a
/// tampered table.
#[derive(Clone, Copy, Debug)]
pub struct Daehee<'a, S: ?Sized> {
    stirling: &'a S,
    bernoulli: &'a BernoulliTable,
}

impl<'a, S: StirlingSource + ?Sized> Daehee<'a, S> {
    pub fn new(stirling: &'a S, bernoulli: &'a BernoulliTable) -> Self {
        Self {
            stirling,
            bernoulli,
        }
    }

    /// `D_n^(k) = S1(n+k, k) / C(n+k, k)`.
    pub fn number1_closed(&self, n: usize, k: usize) -> Result<Rational> {
        check_order(k)?;
        let s1 = self.stirling.stirling1(n + k, k)?;
        Ok(Rational::new(s1, binomial((n + k) as i64, k)))
    }

    /// `D_n^(k) = sum_l S1(n,l) B_l^(k)`.
    pub fn number1_stirling_bernoulli(&self, n: usize, k: usize) -> Result<Rational> {
        check_order(k)?;
        let mut acc = Rational::zero();
        for l in 0..=n {
            acc += rational(self.stirling.stirling1(n, l)?) * self.bernoulli.number(l, k);
        }
        Ok(acc)
    }

    /// `D_n^(k)(x) = sum_l S1(n,l) B_l^(k)(x)`.
    pub fn poly1(&self, n: usize, k: usize) -> Result<RationalPolynomial> {
        check_order(k)?;
        let mut acc = RationalPolynomial::zero();
        for l in 0..=n {
            let s = rational(self.stirling.stirling1(n, l)?);
            acc = &acc + &self.bernoulli.poly(l, k).scale(&s);
        }
        Ok(acc)
    }

    /// `D̂_n^(k) = sum_l [n l] B_l^(k)`.
    pub fn number2(&self, n: usize, k: usize) -> Result<Rational> {
        check_order(k)?;
        let mut acc = Rational::zero();
        for l in 0..=n {
            acc += rational(self.stirling.stirling1_unsigned(n, l)?) * self.bernoulli.number(l, k);
        }
        Ok(acc)
    }

    /// `D̂_n^(k)(x) = sum_l (-1)^(n-l) S1(n,l) B_l^(k)(-x)`.
    pub fn poly2(&self, n: usize, k: usize) -> Result<RationalPolynomial> {
        check_order(k)?;
        let mut acc = RationalPolynomial::zero();
        for l in 0..=n {
            let s = rational(self.stirling.stirling1_unsigned(n, l)?);
            acc = &acc + &self.bernoulli.poly(l, k).reflect().scale(&s);
        }
        Ok(acc)
    }
}

/// `D_n^(k)(x)` read off `(log(1+t)/t)^k (1+t)^x`:
/// `sum_j C(n,j) D_j^(k) (x)_(n-j)`, with the numbers taken from the series.
pub fn daehee1_poly_gf(n: usize, k: usize) -> Result<RationalPolynomial> {
    check_order(k)?;
    let series = daehee1_series(k, n);
    let mut acc = RationalPolynomial::zero();
    for j in 0..=n {
        let c = rational(binomial(n as i64, j)) * series.egf_coefficient(j)?;
        acc = &acc + &falling_factorial_poly(n - j).scale(&c);
    }
    Ok(acc)
}

/// `D̂_n^(k)(x)` read off `((1-t)log(1-t)/(-t))^k (1-t)^x`:
/// `sum_j C(n,j) D̂_j^(k) (-1)^(n-j) (x)_(n-j)`.
pub fn daehee2_poly_gf(n: usize, k: usize) -> Result<RationalPolynomial> {
    check_order(k)?;
    let series = daehee2_series(k, n);
    let mut acc = RationalPolynomial::zero();
    for j in 0..=n {
        let c = rational(binomial(n as i64, j)) * series.egf_coefficient(j)? * int(sign(n - j));
        acc = &acc + &falling_factorial_poly(n - j).scale(&c);
    }
    Ok(acc)
}

/// EGF coefficient `n` of `(log(1+t)/t)^k (1+t)^x` at a fixed rational `x`,
/// with `(1+t)^x` realised as `exp(x log(1+t))`.
pub fn daehee1_value_gf(n: usize, k: usize, x: &Rational) -> Result<Rational> {
    check_order(k)?;
    let power = TruncatedSeries::log1p(n).scale(x).exp()?;
    (&daehee1_series(k, n) * &power).egf_coefficient(n)
}
