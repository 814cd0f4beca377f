use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;

/// Dense univariate polynomial in `x` over the rationals.
///
/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are stripped, so the
/// zero polynomial has no coefficients and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `a*x + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![b, a])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        Self { coeffs }
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero above the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x0 + c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Affine substitution `p(a*x + b)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let inner = Self::linear(a.clone(), b.clone());
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &inner) + &Self::constant(c.clone())
        })
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
                .collect(),
        }
    }

    /// `p(x + b)`.
    pub fn shift(&self, b: &Rational) -> Self {
        self.compose_affine(&Rational::one(), b)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: Self) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: Self) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::from_coeffs(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}
