//! Executable identity catalogue.
//!
//! Every identity is a pair of independently computed sides evaluated over an
//! `(n, k)` grid (plus sampled `x` for the polynomial ones). Polynomial
//! identities are compared coefficientwise; the samples are a redundant smoke
//! check on top.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use core::time::Duration;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{factorial, int, rat, sign, Rational, RationalPolynomial, TruncatedSeries};
use crate::bernoulli::BernoulliTable;
use crate::combinat::{binomial, binomial_poly, StirlingCache, StirlingSource};
use crate::daehee::{
    daehee1_numbers_multinomial, daehee1_poly_gf, daehee1_series, daehee2_series, Daehee,
};
use crate::error::{Error, Result};
use crate::padic::{difference_identity_check, volkenborn_exact_iterated};

macro_rules! identities {
    ($($id:ident => $name:literal, $poly:literal, $desc:literal;)*) => {
        /// One checkable identity.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum IdentityId {
            $($id,)*
        }

        impl IdentityId {
            /// Every identity, in reporting order.
            pub const ALL: [IdentityId; 18] = [$(IdentityId::$id,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(IdentityId::$id => $name,)*
                }
            }

            /// Whether both sides are polynomials in `x`.
            pub fn is_polynomial(self) -> bool {
                match self {
                    $(IdentityId::$id => $poly,)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(IdentityId::$id => $desc,)*
                }
            }
        }

        impl FromStr for IdentityId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(IdentityId::$id),)*
                    _ => Err(Error::UnknownIdentity),
                }
            }
        }
    };
}

identities! {
    T1 => "T1", false, "D_n^(k) = S1(n+k,k)/C(n+k,k) equals the t^n/n! coefficient of (log(1+t)/t)^k";
    C2 => "C2", false, "D_n^(k) = B_n^(n+k+1)(1)";
    T3a => "T3a", false, "D_n^(k) = sum over l_1+..+l_k=n of C(n; l_1..l_k) D_l_1 .. D_l_k";
    T3b => "T3b", false, "D_n^(k) = sum_l S1(n,l) B_l^(k)";
    T4 => "T4", false, "B_m^(k) = sum_n D_n^(k) S2(m,n)";
    T5 => "T5", true, "D_n^(k)(x) = sum_l S1(n,l) B_l^(k)(x)";
    T6 => "T6", true, "D_n^(k)(x) = B_n^(n+k+1)(x+1)";
    T7 => "T7", true, "B_m^(k)(x) = sum_n S2(m,n) D_n^(k)(x)";
    T8 => "T8", false, "second kind: sum_l [n l] B_l^(k) equals the coefficient of ((1-t)log(1-t)/(-t))^k";
    T9 => "T9", false, "B_m^(k) = sum_n second-kind D_n^(k) (-1)^(n-m) S2(m,n)";
    T10 => "T10", true, "(-1)^n second-kind D_n^(k)(x) = B_n^(n+k+1)(x+k+1)";
    T11 => "T11", true, "B_m^(k)(-x) = sum_n second-kind D_n^(k)(x) (-1)^(m-n) S2(m,n)";
    T12 => "T12", true, "(-1)^n D_n^(k)(x)/n! = sum_m C(n-1,n-m)/m! (-1)^m second-kind D_m^(k)(-x)";
    E36 => "E36", true, "second-kind D_n^(k)(x)/n! = sum_m C(n-1,n-m)/m! D_m^(k)(-x)";
    E4 => "E4", false, "I(f(x+1)) - I(f) = f'(0) for f = x^n";
    E9 => "E9", false, "k-fold invariant integral of C(x_1+..+x_k, n) equals D_n^(k)/n!";
    E12 => "E12", false, "t^n coefficient of (log(1+t)/t)^k equals B_n^(n+k+1)(1)/n!";
    E19 => "E19", false, "t^n/n! coefficient of (log(1+t)/t)^k (1+t)^x equals B_n^(n+k+1)(x+1)";
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ranges swept by a check: `0 <= n <= n_max`, `1 <= k <= k_max`, and the
/// sampled shifts `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub n_max: usize,
    pub k_max: usize,
    pub x_samples: Vec<Rational>,
}

impl Grid {
    pub fn new(n_max: usize, k_max: usize, x_samples: Vec<Rational>) -> Self {
        Self {
            n_max,
            k_max,
            x_samples,
        }
    }

    /// `{0, 1, -1, 1/2, -3/2}`.
    pub fn default_samples() -> Vec<Rational> {
        alloc::vec![int(0), int(1), int(-1), rat(1, 2), rat(-3, 2)]
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self::new(20, 6, Self::default_samples())
    }
}

/// Where an identity was evaluated. `k` is absent for identities that do not
/// depend on an order; `x` is present only for sampled evaluations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPoint {
    pub n: usize,
    pub k: Option<usize>,
    pub x: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Number(Rational),
    Polynomial(RationalPolynomial),
}

impl Value {
    fn eval(&self, x: &Rational) -> Value {
        match self {
            Value::Number(v) => Value::Number(v.clone()),
            Value::Polynomial(p) => Value::Number(p.eval(x)),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(v) => write!(f, "{v}"),
            Value::Polynomial(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub point: GridPoint,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub grid: Grid,
    pub status: Status,
    pub first_failure: Option<Failure>,
    /// Number of equalities asserted, samples included.
    pub points_checked: usize,
    /// Wall time; left at zero here, filled in by callers that own a clock.
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn rational(i: BigInt) -> Rational {
    Rational::from_integer(i)
}

/// Precomputed sides shared by many identities, indexed `[k - 1][n]`.
#[derive(Clone, Debug)]
struct Tables {
    series1: Vec<TruncatedSeries>,
    series2: Vec<TruncatedSeries>,
    convolution: Vec<Vec<Rational>>,
    poly1: Vec<Vec<RationalPolynomial>>,
    poly2: Vec<Vec<RationalPolynomial>>,
}

/// Holds the caches for one grid capacity and evaluates identities on it.
#[derive(Clone, Debug)]
pub struct Verifier<S = StirlingCache> {
    stirling: S,
    bernoulli: BernoulliTable,
    n_max: usize,
    k_max: usize,
    tables: Tables,
}

impl Verifier<StirlingCache> {
    /// Caches sized for grids up to `n_max`, `k_max`.
    pub fn new(n_max: usize, k_max: usize) -> Self {
        Self::with_stirling(StirlingCache::new(n_max + k_max), n_max, k_max)
            .expect("Stirling cache sized for the grid")
    }
}

impl<S: StirlingSource> Verifier<S> {
    /// Uses an arbitrary Stirling source, which must cover `n_max + k_max`.
    pub fn with_stirling(stirling: S, n_max: usize, k_max: usize) -> Result<Self> {
        let k_max = k_max.max(1);
        let truncation = n_max + k_max + 2;
        let bernoulli = BernoulliTable::new(n_max, n_max + k_max + 1);
        let (poly1, poly2) = {
            let d = Daehee::new(&stirling, &bernoulli);
            let mut poly1 = Vec::with_capacity(k_max);
            let mut poly2 = Vec::with_capacity(k_max);
            for k in 1..=k_max {
                poly1.push((0..=n_max).map(|n| d.poly1(n, k)).collect::<Result<Vec<_>>>()?);
                poly2.push((0..=n_max).map(|n| d.poly2(n, k)).collect::<Result<Vec<_>>>()?);
            }
            (poly1, poly2)
        };
        let tables = Tables {
            series1: (1..=k_max).map(|k| daehee1_series(k, truncation)).collect(),
            series2: (1..=k_max).map(|k| daehee2_series(k, truncation)).collect(),
            convolution: (1..=k_max)
                .map(|k| daehee1_numbers_multinomial(n_max, k))
                .collect::<Result<_>>()?,
            poly1,
            poly2,
        };
        Ok(Self {
            stirling,
            bernoulli,
            n_max,
            k_max,
            tables,
        })
    }

    pub fn stirling(&self) -> &S {
        &self.stirling
    }

    pub fn bernoulli(&self) -> &BernoulliTable {
        &self.bernoulli
    }

    fn daehee(&self) -> Daehee<'_, S> {
        Daehee::new(&self.stirling, &self.bernoulli)
    }

    fn check_capacity(&self, n: usize, k: usize) -> Result<()> {
        if n > self.n_max || k > self.k_max {
            return Err(Error::TruncationTooSmall {
                index: n.max(k),
                order: self.n_max,
            });
        }
        Ok(())
    }

    fn gf1(&self, n: usize, k: usize) -> Result<Rational> {
        self.tables.series1[k - 1].egf_coefficient(n)
    }

    fn gf2(&self, n: usize, k: usize) -> Result<Rational> {
        self.tables.series2[k - 1].egf_coefficient(n)
    }

    fn poly1(&self, n: usize, k: usize) -> &RationalPolynomial {
        &self.tables.poly1[k - 1][n]
    }

    fn poly2(&self, n: usize, k: usize) -> &RationalPolynomial {
        &self.tables.poly2[k - 1][n]
    }

    fn s2(&self, m: usize, n: usize) -> Result<Rational> {
        Ok(rational(self.stirling.stirling2(m, n)?))
    }

    /// Both sides of `id` at `point`. With `point.x` set, polynomial sides are
    /// evaluated there.
    pub fn evaluate(&self, id: IdentityId, point: &GridPoint) -> Result<(Value, Value)> {
        let (lhs, rhs) = self.sides(id, point)?;
        Ok(match (&point.x, id.is_polynomial()) {
            (Some(x), true) => (lhs.eval(x), rhs.eval(x)),
            _ => (lhs, rhs),
        })
    }

    fn sides(&self, id: IdentityId, point: &GridPoint) -> Result<(Value, Value)> {
        use IdentityId::*;
        use Value::{Number as N, Polynomial as P};

        let n = point.n;
        if id == E4 {
            let (shifted, plain, slope) = difference_identity_check(&RationalPolynomial::monomial(n));
            return Ok((N(shifted - plain), N(slope)));
        }
        let k = point.k.ok_or(Error::ZeroOrder)?;
        if k == 0 {
            return Err(Error::ZeroOrder);
        }
        self.check_capacity(n, k)?;
        let d = self.daehee();
        let n_fact = Rational::from_integer(factorial(n));
        // C(n-1, n-m)/m!, total in n thanks to the generalized binomial
        let reflection_weight =
            |m: usize| Rational::new(binomial(n as i64 - 1, n - m), factorial(m));

        Ok(match id {
            T1 => (N(d.number1_closed(n, k)?), N(self.gf1(n, k)?)),
            C2 => (
                N(d.number1_closed(n, k)?),
                N(self.bernoulli.poly_at(n, n + k + 1, &Rational::one())),
            ),
            T3a => (
                N(d.number1_closed(n, k)?),
                N(self.tables.convolution[k - 1][n].clone()),
            ),
            T3b => (N(d.number1_closed(n, k)?), N(d.number1_stirling_bernoulli(n, k)?)),
            T4 => {
                let mut sum = Rational::zero();
                for j in 0..=n {
                    sum += self.gf1(j, k)? * self.s2(n, j)?;
                }
                (N(self.bernoulli.number(n, k)), N(sum))
            }
            T5 => (P(self.poly1(n, k).clone()), P(daehee1_poly_gf(n, k)?)),
            T6 => (
                P(self.poly1(n, k).clone()),
                P(self.bernoulli.poly(n, n + k + 1).shift(&Rational::one())),
            ),
            T7 => {
                let mut sum = RationalPolynomial::zero();
                for j in 0..=n {
                    sum = &sum + &self.poly1(j, k).scale(&self.s2(n, j)?);
                }
                (P(self.bernoulli.poly(n, k)), P(sum))
            }
            T8 => (N(d.number2(n, k)?), N(self.gf2(n, k)?)),
            T9 => {
                let mut sum = Rational::zero();
                for j in 0..=n {
                    sum += self.gf2(j, k)? * self.s2(n, j)? * int(sign(n + j));
                }
                (N(self.bernoulli.number(n, k)), N(sum))
            }
            T10 => (
                P(self.poly2(n, k).scale(&int(sign(n)))),
                P(self.bernoulli.poly(n, n + k + 1).shift(&int(k as i64 + 1))),
            ),
            T11 => {
                let mut sum = RationalPolynomial::zero();
                for j in 0..=n {
                    let w = self.s2(n, j)? * int(sign(n + j));
                    sum = &sum + &self.poly2(j, k).scale(&w);
                }
                (P(self.bernoulli.poly(n, k).reflect()), P(sum))
            }
            T12 => {
                let lhs = self.poly1(n, k).scale(&(int(sign(n)) / &n_fact));
                let mut sum = RationalPolynomial::zero();
                for m in 0..=n {
                    let w = reflection_weight(m) * int(sign(m));
                    sum = &sum + &self.poly2(m, k).reflect().scale(&w);
                }
                (P(lhs), P(sum))
            }
            E36 => {
                let lhs = self.poly2(n, k).scale(&n_fact.recip());
                let mut sum = RationalPolynomial::zero();
                for m in 0..=n {
                    sum = &sum + &self.poly1(m, k).reflect().scale(&reflection_weight(m));
                }
                (P(lhs), P(sum))
            }
            E9 => {
                let integral = volkenborn_exact_iterated(&binomial_poly(n), k).eval(&Rational::zero());
                (N(integral), N(d.number1_closed(n, k)? / n_fact))
            }
            E12 => (
                N(self.tables.series1[k - 1].coeff(n)?.clone()),
                N(self.bernoulli.poly_at(n, n + k + 1, &Rational::one()) / n_fact),
            ),
            E19 => {
                let x = point.x.clone().unwrap_or_else(Rational::zero);
                let power = TruncatedSeries::log1p(n).scale(&x).exp()?;
                let series = &self.tables.series1[k - 1].truncate(n) * &power;
                (
                    N(series.egf_coefficient(n)?),
                    N(self.bernoulli.poly_at(n, n + k + 1, &(x + Rational::one()))),
                )
            }
            E4 => unreachable!("handled above"),
        })
    }

    /// Checks `id` at every grid point; stops at the first failure.
    pub fn check_identity(&self, id: IdentityId, grid: &Grid) -> Result<VerificationReport> {
        let mut points_checked = 0;
        let mut first_failure = None;
        let ks: Vec<Option<usize>> = if id == IdentityId::E4 {
            alloc::vec![None]
        } else {
            (1..=grid.k_max).map(Some).collect()
        };

        'grid: for n in 0..=grid.n_max {
            for &k in &ks {
                let base = GridPoint { n, k, x: None };
                let mut candidates: Vec<(GridPoint, Value, Value)> = Vec::new();
                if id == IdentityId::E19 {
                    for x in &grid.x_samples {
                        let point = GridPoint { x: Some(x.clone()), ..base.clone() };
                        let (lhs, rhs) = self.evaluate(id, &point)?;
                        candidates.push((point, lhs, rhs));
                    }
                } else {
                    let (lhs, rhs) = self.sides(id, &base)?;
                    if id.is_polynomial() {
                        for x in &grid.x_samples {
                            let point = GridPoint { x: Some(x.clone()), ..base.clone() };
                            candidates.push((point, lhs.eval(x), rhs.eval(x)));
                        }
                    }
                    candidates.insert(0, (base, lhs, rhs));
                }
                for (point, lhs, rhs) in candidates {
                    points_checked += 1;
                    if lhs != rhs {
                        first_failure = Some(Failure { point, lhs, rhs });
                        break 'grid;
                    }
                }
            }
        }

        Ok(VerificationReport {
            identity: id,
            grid: grid.clone(),
            status: if first_failure.is_none() { Status::Pass } else { Status::Fail },
            first_failure,
            points_checked,
            elapsed: Duration::ZERO,
        })
    }

    /// Every identity in [`IdentityId::ALL`] order.
    pub fn check_all(&self, grid: &Grid) -> Result<Vec<VerificationReport>> {
        IdentityId::ALL
            .iter()
            .map(|&id| self.check_identity(id, grid))
            .collect()
    }
}

/// One-shot convenience: builds a [`Verifier`] sized for `grid` and checks `id`.
pub fn check_identity(id: IdentityId, grid: &Grid) -> Result<VerificationReport> {
    Verifier::new(grid.n_max, grid.k_max).check_identity(id, grid)
}

pub fn check_all(grid: &Grid) -> Result<Vec<VerificationReport>> {
    Verifier::new(grid.n_max, grid.k_max).check_all(grid)
}
