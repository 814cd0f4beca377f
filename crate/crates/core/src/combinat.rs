//! Stirling numbers of both kinds, generalized binomials, multinomials, and
//! falling/rising factorial polynomials.
//!
//! The Stirling tables come from the integer recurrences only, so they can act
//! as an oracle against anything derived from the series engine.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{factorial, int, Rational, RationalPolynomial};
use crate::error::{Error, Result};

/// Read access to Stirling numbers. Verification code is generic over this so
/// that a tampered table can be swapped in.
pub trait StirlingSource {
    /// Largest `n` the source can answer for.
    fn max_n(&self) -> usize;

    /// Signed first kind `S1(n, l)`: coefficient of `x^l` in `(x)_n`.
    fn stirling1(&self, n: usize, l: usize) -> Result<BigInt>;

    /// Second kind `S2(m, n)`: partitions of an `m`-set into `n` blocks.
    fn stirling2(&self, m: usize, n: usize) -> Result<BigInt>;

    /// `[n l] = (-1)^(n-l) S1(n, l)`, never negative.
    fn stirling1_unsigned(&self, n: usize, l: usize) -> Result<BigInt> {
        let s = self.stirling1(n, l)?;
        Ok(if (n - l).is_multiple_of(2) { s } else { -s })
    }
}

/// Triangular tables of `S1` and `S2` for `0 <= l <= n <= max_n`.
#[derive(Clone, Debug)]
pub struct StirlingCache {
    max_n: usize,
    s1: Vec<Vec<BigInt>>,
    s2: Vec<Vec<BigInt>>,
}

impl StirlingCache {
    pub fn new(max_n: usize) -> Self {
        let mut s1: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        let mut s2: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        s1.push(vec![BigInt::one()]);
        s2.push(vec![BigInt::one()]);
        for n in 0..max_n {
            // S1(n+1, l) = S1(n, l-1) - n S1(n, l)
            // S2(n+1, l) = l S2(n, l) + S2(n, l-1)
            let prev1 = &s1[n];
            let prev2 = &s2[n];
            let mut row1 = vec![BigInt::zero(); n + 2];
            let mut row2 = vec![BigInt::zero(); n + 2];
            for l in 0..=n + 1 {
                let below1 = if l >= 1 { prev1[l - 1].clone() } else { BigInt::zero() };
                let same1 = prev1.get(l).cloned().unwrap_or_default();
                row1[l] = below1 - BigInt::from(n) * same1;

                let below2 = if l >= 1 { prev2[l - 1].clone() } else { BigInt::zero() };
                let same2 = prev2.get(l).cloned().unwrap_or_default();
                row2[l] = BigInt::from(l) * same2 + below2;
            }
            s1.push(row1);
            s2.push(row2);
        }
        Self { max_n, s1, s2 }
    }

    fn check(&self, n: usize, l: usize) -> Result<()> {
        if l > n || n > self.max_n {
            return Err(Error::StirlingOutOfRange {
                n,
                l,
                max_n: self.max_n,
            });
        }
        Ok(())
    }
}

impl StirlingSource for StirlingCache {
    fn max_n(&self) -> usize {
        self.max_n
    }

    fn stirling1(&self, n: usize, l: usize) -> Result<BigInt> {
        self.check(n, l)?;
        Ok(self.s1[n][l].clone())
    }

    fn stirling2(&self, m: usize, n: usize) -> Result<BigInt> {
        self.check(m, n)?;
        Ok(self.s2[m][n].clone())
    }
}

impl<S: StirlingSource + ?Sized> StirlingSource for &S {
    fn max_n(&self) -> usize {
        (**self).max_n()
    }

    fn stirling1(&self, n: usize, l: usize) -> Result<BigInt> {
        (**self).stirling1(n, l)
    }

    fn stirling2(&self, m: usize, n: usize) -> Result<BigInt> {
        (**self).stirling2(m, n)
    }
}

/// Generalized binomial `C(a, m) = (a)_m / m!`; `a` may be negative.
pub fn binomial(a: i64, m: usize) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..m {
        num *= BigInt::from(a) - BigInt::from(i);
    }
    num / factorial(m)
}

/// `n! / (parts[0]! parts[1]! ...)`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigInt> {
    let sum: usize = parts.iter().sum();
    if sum != n {
        return Err(Error::MultinomialMismatch { n, sum });
    }
    Ok(parts
        .iter()
        .fold(factorial(n), |acc, &p| acc / factorial(p)))
}

/// `(x)_n = x(x-1)...(x-n+1)`, built by multiplying out linear factors.
pub fn falling_factorial_poly(n: usize) -> RationalPolynomial {
    (0..n).fold(RationalPolynomial::one(), |acc, i| {
        &acc * &RationalPolynomial::linear(Rational::one(), int(-(i as i64)))
    })
}

/// `x^(n) = x(x+1)...(x+n-1)`.
pub fn rising_factorial_poly(n: usize) -> RationalPolynomial {
    (0..n).fold(RationalPolynomial::one(), |acc, i| {
        &acc * &RationalPolynomial::linear(Rational::one(), int(i as i64))
    })
}

/// The binomial polynomial `C(x, n) = (x)_n / n!`.
pub fn binomial_poly(n: usize) -> RationalPolynomial {
    falling_factorial_poly(n).scale(&Rational::new(BigInt::one(), factorial(n)))
}
