//! Truncated power series with exact rational coefficients.
//!
//! A [`Series`] of truncation order `N` carries the coefficients of
//! `φ^0 ..= φ^N`; everything beyond is unknown. Binary operations take the
//! smaller of the two orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series of the given truncation order; missing coefficients
    /// are zero and surplus ones are dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Series { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn from_integers(coeffs: Vec<BigInt>, order: usize) -> Self {
        Self::new(
            coeffs.into_iter().map(Rational::from_integer).collect(),
            order,
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The coordinate `φ` itself.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], order)
    }

    /// `Σ_{n ≤ N} φⁿ`, i.e. `1/(1-φ)`.
    pub fn geometric(order: usize) -> Self {
        Self::new(vec![Rational::one(); order + 1], order)
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `φⁿ`; zero past the truncation order is *not* implied,
    /// so asking for it panics.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.truncation_order(),
            "cannot raise truncation order"
        );
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `φ^k`; the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Division by `φ^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.truncation_order() {
            return Err(Error::Precondition("shift exceeds truncation order".into()));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Precondition(format!(
                "series is not divisible by φ^{k}"
            )));
        }
        Ok(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn try_div(&self, other: &Series) -> Result<Series> {
        let n = self.truncation_order().min(other.truncation_order());
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = b0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &other.coeffs[j] * &out[k - j];
            }
            out.push(acc * &inv0);
        }
        Ok(Series { coeffs: out })
    }

    /// `Θ = φ d/dφ`; multiplies the n-th coefficient by n.
    pub fn theta(&self) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * rat(n as i64))
                .collect(),
        }
    }

    /// Inverse of [`Series::theta`] on series with zero constant term.
    pub fn integrate_theta(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "integrate_theta needs zero constant term".into(),
            ));
        }
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c / rat(n as i64)),
        );
        Ok(Series { coeffs })
    }

    /// `exp(s)` for `s(0) = 0`, via `n eₙ = Σ k sₖ e_{n-k}`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        let n = self.truncation_order();
        let ds = self.theta();
        let mut e: Vec<Rational> = Vec::with_capacity(n + 1);
        e.push(Rational::one());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                acc += &ds.coeffs[k] * &e[m - k];
            }
            e.push(acc / rat(m as i64));
        }
        Ok(Series { coeffs: e })
    }

    /// `log(s)` for `s(0) = 1`, via `Θ log s = Θs / s`.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        self.theta().try_div(self)?.integrate_theta()
    }

    /// Derivative of the logarithm, `Θ log s = Θs / s`, for any unit `s`.
    pub fn log_theta(&self) -> Result<Series> {
        self.theta().try_div(self)
    }

    /// `s^e` for a unit series with constant term 1 and rational `e`.
    pub fn pow_rational(&self, e: &Rational) -> Result<Series> {
        self.log()?.scale(e).exp()
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.truncation_order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner)` by Horner's rule; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "inner series must have zero constant term".into(),
            ));
        }
        let n = self.truncation_order().min(inner.truncation_order());
        let inner = inner.truncate(n);
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion: `bₙ = [wⁿ⁻¹](w/a(w))ⁿ / n`.
    pub fn reversion(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "reversion needs zero constant term".into(),
            ));
        }
        let n = self.truncation_order();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        if self.coeffs[1].is_zero() {
            return Err(Error::Precondition(
                "reversion needs a nonzero linear term".into(),
            ));
        }
        let h = Series::one(n - 1).try_div(&self.shift_down(1)?)?;
        let mut out = vec![Rational::zero(); n + 1];
        let mut power = Series::one(n - 1);
        for k in 1..=n {
            power = &power * &h;
            out[k] = power.coeffs[k - 1].clone() / rat(k as i64);
        }
        Ok(Series { coeffs: out })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.truncation_order().min(rhs.truncation_order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.truncation_order().min(rhs.truncation_order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.truncation_order().min(rhs.truncation_order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{}", fmt_rational(c))?,
                1 => write!(f, "{}*φ", fmt_rational(c))?,
                _ => write!(f, "{}*φ^{}", fmt_rational(c), n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(φ^{})", self.truncation_order() + 1)
    }
}

/// Wire form: `{"order": N, "coeffs": ["1", "20", ...]}`.
#[derive(Serialize, Deserialize)]
struct SeriesDoc {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesDoc {
            order: self.truncation_order(),
            coeffs: self.coeffs.iter().map(fmt_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = SeriesDoc::deserialize(d)?;
        let coeffs = doc
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Series::new(coeffs, doc.order))
    }
}
