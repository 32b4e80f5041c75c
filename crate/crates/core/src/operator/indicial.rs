//! Local exponents and Riemann P-schemes.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{ThetaOperator, Transform};
use crate::error::{Error, Result};
use crate::numberfield::{NumberField, NumberFieldElement};
use crate::poly::Poly;
use crate::rational::{fmt_rational, from_int, rat, Integer, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    Rational(Rational),
    Algebraic(NumberFieldElement),
    Infinity,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Location::Algebraic(a) => write!(f, "{a}"),
            Location::Infinity => write!(f, "∞"),
        }
    }
}

/// Roots of an indicial polynomial: the rational ones with multiplicity,
/// and any factor whose roots are not rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Exponents {
    pub roots: Vec<Rational>,
    /// The part of the indicial polynomial with no rational roots, in `ρ`.
    pub unresolved: Option<String>,
}

impl Exponents {
    pub fn is_resolved(&self) -> bool {
        self.unresolved.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PSchemePoint {
    pub location: Location,
    pub exponents: Exponents,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PScheme {
    pub points: Vec<PSchemePoint>,
}

impl PScheme {
    /// Sum of all resolved exponents and the value `6 (#points − 2)`
    /// required of a fourth-order Fuchsian operator.
    pub fn fuchs_relation(&self) -> (Rational, Rational) {
        let total = self
            .points
            .iter()
            .flat_map(|p| p.exponents.roots.iter())
            .sum();
        let n = self.points.len() as i64;
        (total, rat((n - 2) * 6))
    }
}

fn stirling2(n: usize, k: usize) -> Integer {
    let mut s = vec![vec![Integer::zero(); n + 1]; n + 1];
    s[0][0] = Integer::one();
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = &s[i - 1][j - 1] + &s[i - 1][j] * Integer::from(j);
        }
    }
    s[n][k].clone()
}

/// `L = Σ_k A_k(φ) (d/dφ)^k` from `Θ^i = Σ_k S(i,k) φ^k (d/dφ)^k`.
fn derivative_form(op: &ThetaOperator) -> Vec<Poly> {
    let r = op.order();
    (0..=r)
        .map(|k| {
            let mut acc = Poly::zero();
            for i in k..=r {
                let s = stirling2(i, k);
                if !s.is_zero() {
                    acc = &acc + &op.c_poly(i).scale(&from_int(s));
                }
            }
            &acc * &Poly::monomial(Rational::one(), k)
        })
        .collect()
}

/// `ρ (ρ−1) ⋯ (ρ−k+1)`
fn falling(k: usize) -> Poly {
    let mut p = Poly::constant(Rational::one());
    for m in 0..k {
        p = &p * &Poly::linear_root(&rat(m as i64));
    }
    p
}

/// Taylor coefficients of `p` at `x0`, up to and including `u^max`.
fn taylor_at(p: &Poly, x0: &NumberFieldElement, max: usize) -> Vec<NumberFieldElement> {
    let field = x0.field();
    let mut out = Vec::new();
    let mut d = p.clone();
    let mut fact = Rational::one();
    for m in 0..=max {
        if m > 0 {
            d = d.derivative();
            fact *= rat(m as i64);
        }
        out.push(x0.eval_poly(&d).scale(&fact.recip()));
        if d.is_zero() {
            out.resize(
                max + 1,
                NumberFieldElement::from_rational(field, Rational::zero()),
            );
            break;
        }
    }
    out
}

fn roots_over_q(parts: &[Poly]) -> Exponents {
    let p = parts
        .iter()
        .cloned()
        .reduce(|a, b| {
            if b.is_zero() {
                a
            } else if a.is_zero() {
                b
            } else {
                a.gcd(&b)
            }
        })
        .unwrap();
    let mut roots = Vec::new();
    let mut rest = p.clone();
    for (r, m) in p.rational_roots() {
        for _ in 0..m {
            roots.push(r.clone());
            rest = rest.div_rem(&Poly::linear_root(&r)).0;
        }
    }
    roots.sort();
    let full = parts.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let unresolved = if parts.len() == 1 {
        (rest.degree().unwrap_or(0) > 0).then(|| rest.monic().display_in("ρ"))
    } else if roots.len() < full {
        let show: Vec<String> = parts
            .iter()
            .map(|q| format!("({})", q.display_in("ρ")))
            .collect();
        Some(format!("{} + {}*α", show[0], show[1]))
    } else {
        None
    };
    Exponents { roots, unresolved }
}

fn indicial_at_point(op: &ThetaOperator, x0: &NumberFieldElement) -> Vec<Poly> {
    let ak = derivative_form(op);
    let deg = ak.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let taylor: Vec<Vec<NumberFieldElement>> = ak.iter().map(|a| taylor_at(a, x0, deg)).collect();
    let vals: Vec<Option<usize>> = taylor
        .iter()
        .map(|t| t.iter().position(|c| !c.is_zero()))
        .collect();
    let m = vals
        .iter()
        .enumerate()
        .filter_map(|(k, v)| v.map(|v| v as i64 - k as i64))
        .min()
        .unwrap_or(0);
    // split Σ_k [u^{v_k}]A_k · falling(k) into the coordinates of 1 and α
    let field_deg = x0.field().degree();
    let mut parts = vec![Poly::zero(); field_deg];
    for (k, v) in vals.iter().enumerate() {
        let Some(v) = v else { continue };
        if *v as i64 - k as i64 != m {
            continue;
        }
        let c = &taylor[k][*v];
        let f = falling(k);
        for (part, coord) in parts.iter_mut().zip(c.coords()) {
            *part = &*part + &f.scale(coord);
        }
    }
    parts
}

/// Local exponents of `op` at `at`. Finite points other than 0 must be roots of
/// the leading coefficient. At an irrational point the indicial polynomial has
/// coefficients in ℚ(α); its rational roots are those of the gcd of the
/// coordinate polynomials, and anything left over is reported unresolved.
pub fn indicial_exponents(op: &ThetaOperator, at: &Location) -> Result<Exponents> {
    let lead = op.c_poly(op.order());
    match at {
        Location::Infinity => {
            let inv = op.transform(&Transform::Invert)?;
            indicial_exponents(&inv, &Location::Rational(Rational::zero()))
        }
        Location::Rational(q) => {
            if !q.is_zero() && !lead.eval(q).is_zero() {
                return Err(Error::NotSingular(fmt_rational(q)));
            }
            let x0 = NumberFieldElement::from_rational(&NumberField::rationals(), q.clone());
            Ok(roots_over_q(&indicial_at_point(op, &x0)))
        }
        Location::Algebraic(a) => {
            if !a.eval_poly(&lead).is_zero() {
                return Err(Error::NotSingular(a.to_string()));
            }
            Ok(roots_over_q(&indicial_at_point(op, a)))
        }
    }
}

/// The P-scheme: 0, every root of the leading coefficient (conjugate roots of a
/// quadratic factor as the generator of its field and its conjugate), and ∞.
pub fn pscheme(op: &ThetaOperator) -> Result<PScheme> {
    let mut locations = vec![Location::Rational(Rational::zero())];
    let lf = op.leading_coefficient_factor();
    let mut quadratics = Vec::new();
    let mut linears = Vec::new();
    for (f, _) in &lf.factors {
        let p = Poly::from_integers(f);
        match p.degree() {
            Some(1) => {
                let r = -p.coeff(0) / p.coeff(1);
                if !r.is_zero() {
                    linears.push(r);
                }
            }
            Some(2) => quadratics.push(p),
            _ => {
                return Err(Error::Precondition(format!(
                    "leading factor {p} has no supported roots"
                )))
            }
        }
    }
    if let Some((f, _)) = &lf.unresolved {
        return Err(Error::Precondition(format!(
            "leading coefficient has unresolved factor {}",
            Poly::from_integers(f)
        )));
    }
    for q in quadratics {
        let field: Arc<NumberField> = NumberField::new(&q)?;
        let a = NumberFieldElement::generator(&field);
        locations.push(Location::Algebraic(a.conjugate()));
        locations.push(Location::Algebraic(a));
    }
    linears.sort();
    locations.extend(linears.into_iter().map(Location::Rational));
    locations.push(Location::Infinity);
    let points = locations
        .into_iter()
        .map(|location| {
            let exponents = indicial_exponents(op, &location)?;
            Ok(PSchemePoint {
                location,
                exponents,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PScheme { points })
}
