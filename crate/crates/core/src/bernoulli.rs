//! Nörlund (higher-order) Bernoulli numbers `B_n^(a)` and polynomials
//! `B_n^(a)(x)`, the coefficients of `(t/(e^t-1))^a e^(xt)`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{Rational, RationalPolynomial, TruncatedSeries};
use crate::combinat::binomial;

/// `t/(e^t - 1)` through `t^order`, as the reciprocal of `(e^t - 1)/t`.
pub fn bernoulli_base_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::expm1(order + 1)
        .shift_divide(1)
        .and_then(|s| s.recip())
        .expect("(e^t-1)/t has constant term 1")
}

/// `B_n^(alpha)`: `n!` times the `t^n` coefficient of `(t/(e^t-1))^alpha`.
pub fn bernoulli_number(n: usize, alpha: usize) -> Rational {
    bernoulli_base_series(n)
        .pow(alpha)
        .egf_coefficient(n)
        .expect("series built to order n")
}

/// Assembles `sum_l C(n,l) B_l x^(n-l)` from `numbers[0..=n]`.
fn poly_from_numbers(n: usize, numbers: &[Rational]) -> RationalPolynomial {
    let mut coeffs = Vec::with_capacity(n + 1);
    for power in 0..=n {
        let l = n - power;
        coeffs.push(&numbers[l] * Rational::from_integer(binomial(n as i64, l)));
    }
    RationalPolynomial::from_coeffs(coeffs)
}

/// `B_n^(alpha)(x) = sum_l C(n,l) B_l^(alpha) x^(n-l)`.
pub fn bernoulli_poly(n: usize, alpha: usize) -> RationalPolynomial {
    let powered = bernoulli_base_series(n).pow(alpha);
    let numbers: Vec<Rational> = (0..=n).map(|l| powered.egf_coefficient(l).unwrap()).collect();
    poly_from_numbers(n, &numbers)
}

pub fn bernoulli_poly_at(n: usize, alpha: usize, x0: &Rational) -> Rational {
    bernoulli_poly(n, alpha).eval(x0)
}

/// Precomputed `B_n^(alpha)` for `n <= n_max`, `alpha <= alpha_max`.
///
/// Requests outside the table fall back to direct computation, so lookups are
/// total; the table only saves work on a verification grid.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    n_max: usize,
    base: TruncatedSeries,
    // rows[alpha][n]
    rows: Vec<Vec<Rational>>,
}

impl BernoulliTable {
    pub fn new(n_max: usize, alpha_max: usize) -> Self {
        let base = bernoulli_base_series(n_max);
        let mut rows = Vec::with_capacity(alpha_max + 1);
        let mut power = TruncatedSeries::one(n_max);
        for alpha in 0..=alpha_max {
            if alpha > 0 {
                power = &power * &base;
            }
            rows.push((0..=n_max).map(|n| power.egf_coefficient(n).unwrap()).collect());
        }
        Self { n_max, base, rows }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn alpha_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn number(&self, n: usize, alpha: usize) -> Rational {
        match self.rows.get(alpha).and_then(|row| row.get(n)) {
            Some(v) => v.clone(),
            None if n <= self.n_max => self.base.pow(alpha).egf_coefficient(n).unwrap(),
            None => bernoulli_number(n, alpha),
        }
    }

    /// `B_0^(alpha) .. B_n^(alpha)`.
    pub fn numbers(&self, n: usize, alpha: usize) -> Vec<Rational> {
        if let Some(row) = self.rows.get(alpha).filter(|_| n <= self.n_max) {
            return row[..=n].to_vec();
        }
        let powered = if n <= self.n_max {
            self.base.pow(alpha)
        } else {
            bernoulli_base_series(n).pow(alpha)
        };
        (0..=n).map(|l| powered.egf_coefficient(l).unwrap()).collect()
    }

    pub fn poly(&self, n: usize, alpha: usize) -> RationalPolynomial {
        poly_from_numbers(n, &self.numbers(n, alpha))
    }

    pub fn poly_at(&self, n: usize, alpha: usize, x0: &Rational) -> Rational {
        self.poly(n, alpha).eval(x0)
    }
}

/// Where to evaluate a Bernoulli polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    /// Keep `x` symbolic.
    Symbolic,
    At(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliRequest {
    pub n: usize,
    pub alpha: usize,
    pub shift: Evaluation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BernoulliValue {
    Number(Rational),
    Polynomial(RationalPolynomial),
}

impl BernoulliRequest {
    /// The number `B_n^(alpha)`, i.e. the polynomial at `x = 0`.
    pub fn number(n: usize, alpha: usize) -> Self {
        Self {
            n,
            alpha,
            shift: Evaluation::At(Rational::zero()),
        }
    }

    pub fn resolve(&self, table: &BernoulliTable) -> BernoulliValue {
        match &self.shift {
            Evaluation::Symbolic => BernoulliValue::Polynomial(table.poly(self.n, self.alpha)),
            Evaluation::At(x) if x.is_zero() => {
                BernoulliValue::Number(table.number(self.n, self.alpha))
            }
            Evaluation::At(x) => BernoulliValue::Number(table.poly_at(self.n, self.alpha, x)),
        }
    }
}

/// `B_n^(1)`, the classical Bernoulli numbers with `B_1 = -1/2`.
pub fn classical_bernoulli(n_max: usize) -> Vec<Rational> {
    let s = bernoulli_base_series(n_max);
    (0..=n_max).map(|n| s.egf_coefficient(n).unwrap()).collect()
}

/// Order-1 polynomial `B_n(x)` built from classical numbers; used by the
/// Faulhaber power sums.
pub fn classical_poly(n: usize, classical: &[Rational]) -> RationalPolynomial {
    poly_from_numbers(n, classical)
}
