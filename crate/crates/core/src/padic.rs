//! Desk-scale witnesses of the p-adic invariant (Volkenborn) integral
//!
//! `I(f) = lim_N p^-N sum_{x < p^N} f(x)`.
//!
//! For polynomial integrands the limit is exact: `I(x^j) = B_j`, so
//! [`volkenborn_exact`] reduces to Bernoulli moments. The literal partial sums
//! exist to watch the limit happen, measured by the p-adic valuation of the
//! error. Multivariate integrands `f(x_1 + ... + x_k + c)` are integrated one
//! variable at a time, keeping a univariate polynomial in the running shift.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{Rational, RationalPolynomial};
use crate::bernoulli::{classical_bernoulli, classical_poly};
use crate::combinat::{binomial, falling_factorial_poly, rising_factorial_poly};
use crate::daehee::Kind;
use crate::error::{Error, Result};

/// Largest literal partial sum (in evaluated terms) attempted by default.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// p-adic valuation; `Infinite` is the valuation of zero and compares above
/// every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(r) = v_p(numerator) - v_p(denominator)`.
pub fn valuation(r: &Rational, p: u64) -> Result<Valuation> {
    check_prime(p)?;
    if r.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigInt::from(p);
    Ok(Valuation::Finite(
        int_valuation(r.numer(), &p) - int_valuation(r.denom(), &p),
    ))
}

/// How a partial sum may be evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialSumBudget {
    /// Maximum number of integrand evaluations for the literal loop.
    pub max_terms: u128,
    /// Fall back to Faulhaber power sums when the loop would exceed `max_terms`.
    pub closed_form: bool,
}

impl Default for PartialSumBudget {
    fn default() -> Self {
        Self {
            max_terms: DEFAULT_BUDGET,
            closed_form: true,
        }
    }
}

/// Integrates `f(x_1 + ... + x_k + c)` over all `x_i` against a functional
/// given by its moments `moments[j] = ∫ x^j`, returning a polynomial in `c`.
///
/// Each step uses `(x + c)^i = sum_j C(i,j) x^j c^(i-j)`.
pub fn integrate_shifted(
    f: &RationalPolynomial,
    k: usize,
    moments: &[Rational],
) -> RationalPolynomial {
    let mut g = f.clone();
    for _ in 0..k {
        let degree = g.degree().map_or(0, |d| d + 1);
        let mut out = vec![Rational::zero(); degree];
        for (i, a) in g.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, m) in moments.iter().enumerate().take(i + 1) {
                out[i - j] += a * m * Rational::from_integer(binomial(i as i64, j));
            }
        }
        g = RationalPolynomial::from_coeffs(out);
    }
    g
}

fn degree_of(f: &RationalPolynomial) -> usize {
    f.degree().unwrap_or(0)
}

/// Exact `I(f) = sum_l f_l B_l`.
pub fn volkenborn_exact(f: &RationalPolynomial) -> Rational {
    let b = classical_bernoulli(degree_of(f));
    f.coeffs()
        .iter()
        .zip(&b)
        .fold(Rational::zero(), |acc, (c, m)| acc + c * m)
}

/// `∫...∫ f(x_1 + ... + x_k + c) dμ...dμ` as a polynomial in `c`.
pub fn volkenborn_exact_iterated(f: &RationalPolynomial, k: usize) -> RationalPolynomial {
    integrate_shifted(f, k, &classical_bernoulli(degree_of(f)))
}

/// Averages `(1/M) sum_{x<M} x^j` for `j <= degree`, via
/// `sum_{x<M} x^j = (B_{j+1}(M) - B_{j+1}) / (j+1)`.
pub fn partial_moments(degree: usize, modulus: &BigInt) -> Vec<Rational> {
    let b = classical_bernoulli(degree + 1);
    let m = Rational::from_integer(modulus.clone());
    (0..=degree)
        .map(|j| {
            let power_sum = (classical_poly(j + 1, &b).eval(&m) - &b[j + 1])
                / Rational::from_integer(BigInt::from(j + 1));
            power_sum / &m
        })
        .collect()
}

fn modulus(p: u64, depth: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), depth as usize)
}

fn literal_terms(p: u64, depth: u32, k: usize) -> u128 {
    u32::try_from(k)
        .ok()
        .and_then(|k| depth.checked_mul(k))
        .and_then(|e| u128::from(p).checked_pow(e))
        .unwrap_or(u128::MAX)
}

/// Literal `p^(-kN) sum_{0 <= x_i < p^N} f(x_1 + ... + x_k)`.
///
/// The caller is responsible for the loop size; see [`volkenborn_partial_multi`].
pub fn volkenborn_partial_literal(f: &RationalPolynomial, k: usize, p: u64, depth: u32) -> Rational {
    // Clear denominators so the loop runs on integers.
    let scale = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let integer: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    let eval = |x: &BigInt| {
        integer
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    };
    let m = modulus(p, depth);
    let m_small = m.to_usize().expect("literal loop size fits in memory");

    let total = if k == 1 {
        let mut total = BigInt::zero();
        let mut x = BigInt::zero();
        for _ in 0..m_small {
            total += eval(&x);
            x += 1u32;
        }
        total
    } else {
        let values: Vec<BigInt> = (0..=k * (m_small - 1)).map(|s| eval(&BigInt::from(s))).collect();
        let mut digits = vec![0usize; k];
        let mut total = BigInt::zero();
        loop {
            total += &values[digits.iter().sum::<usize>()];
            let mut i = 0;
            while i < k {
                digits[i] += 1;
                if digits[i] < m_small {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        total
    };
    let denominator = num_traits::pow(m, k) * scale;
    Rational::new(total, denominator)
}

/// Faulhaber route for the same `k`-fold partial sum.
pub fn volkenborn_partial_closed(f: &RationalPolynomial, k: usize, p: u64, depth: u32) -> Rational {
    let moments = partial_moments(degree_of(f), &modulus(p, depth));
    integrate_shifted(f, k, &moments).eval(&Rational::zero())
}

/// `p^-N sum_{x < p^N} f(x)`.
pub fn volkenborn_partial(
    f: &RationalPolynomial,
    p: u64,
    depth: u32,
    budget: PartialSumBudget,
) -> Result<Rational> {
    volkenborn_partial_multi(f, 1, p, depth, budget)
}

/// `k`-fold partial sum; literal when within budget, otherwise closed form if
/// allowed.
pub fn volkenborn_partial_multi(
    f: &RationalPolynomial,
    k: usize,
    p: u64,
    depth: u32,
    budget: PartialSumBudget,
) -> Result<Rational> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    let terms = literal_terms(p, depth, k);
    if terms <= budget.max_terms {
        Ok(volkenborn_partial_literal(f, k, p, depth))
    } else if budget.closed_form {
        Ok(volkenborn_partial_closed(f, k, p, depth))
    } else {
        Err(Error::BudgetExceeded {
            terms,
            budget: budget.max_terms,
        })
    }
}

/// A Daehee integrand: `(x_1+...+x_k + x)_n` for the first kind and
/// `(x_1+...+x_k - x)^(n)` for the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaeheeIntegrand {
    pub kind: Kind,
    pub order: usize,
    pub n: usize,
    pub x: Rational,
}

impl DaeheeIntegrand {
    /// The integrand as a polynomial in the sum `x_1 + ... + x_k`.
    pub fn polynomial(&self) -> RationalPolynomial {
        match self.kind {
            Kind::First => falling_factorial_poly(self.n).shift(&self.x),
            Kind::Second => rising_factorial_poly(self.n).shift(&-&self.x),
        }
    }
}

/// The `k`-fold Volkenborn integral defining `D_n^(k)(x)` or `D̂_n^(k)(x)`,
/// kept as a polynomial in `x`.
pub fn daehee_integral_poly(kind: Kind, n: usize, k: usize) -> Result<RationalPolynomial> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(match kind {
        Kind::First => volkenborn_exact_iterated(&falling_factorial_poly(n), k),
        Kind::Second => volkenborn_exact_iterated(&rising_factorial_poly(n), k).reflect(),
    })
}

/// The integral for one concrete integrand.
pub fn volkenborn_exact_multi(integrand: &DaeheeIntegrand) -> Result<Rational> {
    if integrand.order == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(volkenborn_exact_iterated(&integrand.polynomial(), integrand.order).eval(&Rational::zero()))
}

/// `(I(f_1), I(f), f'(0))` where `f_1(x) = f(x+1)`; the first minus the second
/// equals the third.
pub fn difference_identity_check(f: &RationalPolynomial) -> (Rational, Rational, Rational) {
    let shifted = volkenborn_exact(&f.shift(&Rational::one()));
    let plain = volkenborn_exact(f);
    let slope = f.derivative().eval(&Rational::zero());
    (shifted, plain, slope)
}

/// One depth of a convergence run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolkenbornProbe {
    pub p: u64,
    pub depth: u32,
    pub order: usize,
    pub integrand: RationalPolynomial,
    pub partial_sum: Rational,
    pub exact_value: Rational,
    /// `v_p(partial_sum - exact_value)`.
    pub valuation: Valuation,
}

impl VolkenbornProbe {
    pub fn error(&self) -> Rational {
        &self.partial_sum - &self.exact_value
    }
}

pub fn convergence_probe(
    f: &RationalPolynomial,
    p: u64,
    depths: RangeInclusive<u32>,
    budget: PartialSumBudget,
) -> Result<Vec<VolkenbornProbe>> {
    convergence_probe_multi(f, 1, p, depths, budget)
}

/// Partial sums of the `k`-fold integral of `f(x_1 + ... + x_k)` at each depth,
/// with the valuation of their error against the exact integral.
pub fn convergence_probe_multi(
    f: &RationalPolynomial,
    k: usize,
    p: u64,
    depths: RangeInclusive<u32>,
    budget: PartialSumBudget,
) -> Result<Vec<VolkenbornProbe>> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    let exact = volkenborn_exact_iterated(f, k).eval(&Rational::zero());
    depths
        .map(|depth| {
            let partial = volkenborn_partial_multi(f, k, p, depth, budget)?;
            let valuation = valuation(&(&partial - &exact), p)?;
            Ok(VolkenbornProbe {
                p,
                depth,
                order: k,
                integrand: f.clone(),
                partial_sum: partial,
                exact_value: exact.clone(),
                valuation,
            })
        })
        .collect()
}
