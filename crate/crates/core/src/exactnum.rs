//! Exact rational arithmetic, combinatorial helpers and truncated power series.
//!
//! Rationals are `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so structural equality is numeric equality.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parse `"p/q"` or `"p"`; the result is always reduced.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<BigInt>().ok()?,
            q.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= j;
    }
    Rational::from_integer(acc)
}

/// `n (n-1) ... (n-a+1)`; the empty product is 1.
pub fn falling_factorial(n: i64, a: u32) -> Rational {
    let mut acc = BigInt::one();
    for j in 0..i64::from(a) {
        let f = n - j;
        if f == 0 {
            return Rational::zero();
        }
        acc *= f;
    }
    Rational::from_integer(acc)
}

/// Generalized binomial coefficient: `n^(k falling) / k!` for `k >= 0`, zero for `k < 0`.
/// Valid for negative `n`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let k = u32::try_from(k).expect("binomial: k out of range");
    falling_factorial(n, k) / factorial(k)
}

pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Power series in `z` truncated after `order` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Result<Self> {
        Self::new((0..order).map(f).collect())
    }

    /// `1 + 0 z + ... ` to the given order.
    pub fn one(order: usize) -> Result<Self> {
        Self::from_fn(order, |i| {
            if i == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        let order = self.order();
        let mut out = vec![Rational::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplicative inverse via the triangular recurrence
    /// `r_0 = 1/a_0`, `r_k = -(a_1 r_{k-1} + ... + a_k r_0) / a_0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = a0.recip();
        let mut r: Vec<Rational> = Vec::with_capacity(self.order());
        r.push(inv0.clone());
        for k in 1..self.order() {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &r[k - j];
            }
            r.push(-acc * &inv0);
        }
        Ok(Self { coeffs: r })
    }
}

/// `sum_n (-1)^n z^n / (n!)^2`, the series behind `J0(sqrt(4z))`.
pub fn inverse_square_factorial_series(order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_fn(order, |n| {
        let f = factorial(n as u32);
        sign(n as i64) / (&f * &f)
    })
}

/// `sum_n (-1)^n z^n / (n! (n+1)!)`, the series behind `J1(sqrt(4z)) / sqrt(z)`.
pub fn factorial_pair_series(order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_fn(order, |n| {
        sign(n as i64) / (factorial(n as u32) * factorial(n as u32 + 1))
    })
}
