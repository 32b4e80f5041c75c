//! Arithmetic in ℚ and in quadratic fields ℚ(α), α a root of an irreducible
//! quadratic. Elements are coordinate vectors in the power basis `1, α`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{rational_sqrt, Poly};
use crate::rational::{fmt_rational, Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    /// Monic minimal polynomial of the generator (degree 1 or 2).
    min_poly: Poly,
}

impl NumberField {
    /// ℚ itself, presented as ℚ[x]/(x).
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            min_poly: Poly::from_ints(&[0, 1]),
        })
    }

    /// ℚ[x]/(p) for an irreducible `p` of degree ≤ 2 (made monic here).
    pub fn new(p: &Poly) -> Result<Arc<Self>> {
        let min_poly = p.monic();
        match min_poly.degree() {
            Some(1) => Ok(Arc::new(NumberField { min_poly })),
            Some(2) => {
                let b = min_poly.coeff(1);
                let c = min_poly.coeff(0);
                let disc = &b * &b - Rational::from_integer(4.into()) * &c;
                if rational_sqrt(&disc).is_some() {
                    return Err(Error::Precondition(format!(
                        "{} is reducible over the rationals",
                        min_poly
                    )));
                }
                Ok(Arc::new(NumberField { min_poly }))
            }
            _ => Err(Error::Precondition(
                "minimal polynomial must have degree 1 or 2".into(),
            )),
        }
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    pub fn min_poly(&self) -> &Poly {
        &self.min_poly
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberFieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl NumberFieldElement {
    pub fn from_coords(field: &Arc<NumberField>, mut coords: Vec<Rational>) -> Self {
        coords.resize(field.degree(), Rational::zero());
        // in degree 1 the basis element is 1 and the class of x is -c0
        NumberFieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        Self::from_coords(field, vec![q])
    }

    /// The class of `x`, i.e. the root α defining the field.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        if field.degree() == 1 {
            Self::from_rational(field, -field.min_poly.coeff(0))
        } else {
            Self::from_coords(field, vec![Rational::zero(), Rational::one()])
        }
    }

    /// The other root of the minimal polynomial: `-b - α` for `x² + b x + c`.
    pub fn conjugate(&self) -> Self {
        if self.field.degree() == 1 {
            return self.clone();
        }
        let b = self.field.min_poly.coeff(1);
        // a0 + a1 α  ->  a0 + a1 (-b - α)
        let a0 = &self.coords[0] - &self.coords[1] * &b;
        let a1 = -self.coords[1].clone();
        Self::from_coords(&self.field, vec![a0, a1])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_coords(&self.field, coords))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_coords(&self.field, coords))
    }

    pub fn neg(&self) -> Self {
        Self::from_coords(&self.field, self.coords.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_coords(&self.field, self.coords.iter().map(|c| c * q).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let a = Poly::new(self.coords.clone());
        let b = Poly::new(other.coords.clone());
        let r = (&a * &b).div_rem(&self.field.min_poly).1;
        Ok(Self::from_coords(&self.field, r.coeffs().to_vec()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(Self::from_rational(&self.field, self.coords[0].recip()));
        }
        // (a + bα)(a + bᾱ) = a² + a b (α + ᾱ) + b² α ᾱ = a² - a b p1 + b² p0
        let conj = self.conjugate();
        let norm = self.mul(&conj)?.as_rational().expect("norm is rational");
        Ok(conj.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.mul(&other.inv()?)
    }

    /// Evaluates a rational polynomial at this element.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        let mut acc = Self::from_rational(&self.field, Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).unwrap();
            acc.coords[0] += c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_rational(&self.field, Rational::one());
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }
}

/// `n = k² m` with `m` free of the squares of primes below 10⁴.
fn square_split(n: &Integer) -> (Integer, Integer) {
    let mut k = Integer::one();
    let mut m = n.clone();
    let mut p = 2u32;
    while p < 10_000 {
        let pp = Integer::from(p * p);
        if pp > m.abs() {
            break;
        }
        while (&m % &pp).is_zero() {
            m /= &pp;
            k *= p;
        }
        p += 1;
    }
    (k, m)
}

/// `a + b·√d`
fn fmt_surd(a: &Rational, b: &Rational, d: &Integer) -> String {
    let mut out = String::new();
    if !a.is_zero() {
        out += &fmt_rational(a);
        out += if b.is_negative() { " - " } else { " + " };
    } else if b.is_negative() {
        out.push('-');
    }
    let b = b.abs();
    if !b.is_one() {
        out += &fmt_rational(&b);
        out.push('*');
    }
    out + &format!("√{d}")
}

/// Quadratic elements print in radical form, taking the generator to be
/// `(−p₁ + √Δ)/2` for the monic minimal polynomial `x² + p₁x + p₀`.
impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", fmt_rational(&q));
        }
        let (p0, p1) = (self.field.min_poly.coeff(0), self.field.min_poly.coeff(1));
        let disc = &p1 * &p1 - Rational::from_integer(4.into()) * &p0;
        // √(n/d) = √(n d)/d
        let (k, m) = square_split(&(disc.numer() * disc.denom()));
        let root_scale = Rational::new(k, disc.denom().clone());
        let half = Rational::new(1.into(), 2.into());
        let a = &self.coords[0] - &self.coords[1] * &p1 * &half;
        let b = &self.coords[1] * &half * root_scale;
        write!(f, "{}", fmt_surd(&a, &b, &m))
    }
}
