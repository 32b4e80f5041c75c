//! Differential operators `L = Σ c_ij φ^j Θ^i` with integer coefficients,
//! where `Θ = φ d/dφ`.
//!
//! Two views of the coefficient matrix are used throughout:
//! `C_i(φ) = Σ_j c_ij φ^j` (coefficient of `Θ^i`) and
//! `P_j(x) = Σ_i c_ij x^i`, so that `L = Σ_j φ^j P_j(Θ)`.

mod indicial;

pub use indicial::{indicial_exponents, pscheme, Exponents, Location, PScheme, PSchemePoint};

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::linalg;
use crate::poly::Poly;
use crate::rational::{
    from_int, gcd_of, lcm_of_denominators, parse_integer, rat, Integer, Rational,
};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOperator {
    coeffs: Vec<Vec<Integer>>,
    canonical: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    /// `φ → 1/φ`, `Θ → −Θ`, then multiplied through by `φ^d`.
    Invert,
    /// `φ → c φ`.
    Rescale(Rational),
    /// `φ → −φ`.
    Negate,
    /// `Θ → Θ + c`, i.e. conjugation by `φ^c`.
    Gauge(Rational),
}

impl ThetaOperator {
    /// Builds an operator from `c[i][j]` (row = Θ-power, column = φ-power).
    /// Rows may have different lengths; the matrix is padded and trimmed.
    pub fn new(mut coeffs: Vec<Vec<Integer>>) -> Self {
        let width = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        for row in coeffs.iter_mut() {
            row.resize(width, Integer::zero());
        }
        let mut op = ThetaOperator {
            coeffs,
            canonical: false,
        };
        op.trim();
        op
    }

    pub fn from_i64(coeffs: &[&[i64]]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|r| r.iter().map(|&c| Integer::from(c)).collect())
                .collect(),
        )
    }

    /// Parses a printed operator such as `T^4 - 9*p*(3*T+1)^2*(3*T+2)^2`
    /// (`T` = Θ, `p` = φ, every φ-power written to the left of its Θ-polynomial).
    pub fn parse(src: &str) -> Result<Self> {
        Ok(Self::new(Expr::parse(src)?.eval_operator()?.to_matrix()))
    }

    fn from_rational(coeffs: Vec<Vec<Rational>>) -> Self {
        let l = lcm_of_denominators(coeffs.iter().flatten());
        let lq = from_int(l);
        Self::new(
            coeffs
                .iter()
                .map(|r| r.iter().map(|q| (q * &lq).to_integer()).collect())
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().iter().all(Zero::is_zero) {
            self.coeffs.pop();
        }
        let width = self.coeffs.first().map_or(0, Vec::len);
        let mut keep = width;
        while keep > 1 && self.coeffs.iter().all(|r| r[keep - 1].is_zero()) {
            keep -= 1;
        }
        for r in self.coeffs.iter_mut() {
            r.truncate(keep);
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn phi_degree(&self) -> usize {
        self.coeffs.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    pub fn coeffs(&self) -> &[Vec<Integer>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Integer {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Integer::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// `C_i(φ)`, the coefficient of `Θ^i`.
    pub fn c_poly(&self, i: usize) -> Poly {
        match self.coeffs.get(i) {
            Some(row) => Poly::from_integers(row),
            None => Poly::zero(),
        }
    }

    /// `P_j(x) = Σ_i c_ij x^i`, the Θ-polynomial multiplying `φ^j`.
    pub fn p_poly(&self, j: usize) -> Poly {
        let col: Vec<Integer> = (0..=self.order()).map(|i| self.coeff(i, j)).collect();
        Poly::from_integers(&col)
    }

    fn from_p_polys(ps: &[Poly]) -> Self {
        let r = ps.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let coeffs: Vec<Vec<Rational>> = (0..=r)
            .map(|i| ps.iter().map(|p| p.coeff(i)).collect())
            .collect();
        Self::from_rational(coeffs)
    }

    /// Integer, primitive, no common power of φ, and the leading
    /// Θ-coefficient `C_r` has positive lowest nonzero coefficient.
    pub fn canonical(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        let shift = (0..self.phi_degree() + 1)
            .find(|&j| coeffs.iter().any(|r| !r[j].is_zero()))
            .unwrap_or(0);
        for r in coeffs.iter_mut() {
            r.drain(..shift);
        }
        let g = gcd_of(coeffs.iter().flatten());
        if !g.is_zero() {
            let top = coeffs.last().unwrap();
            let lead = top
                .iter()
                .find(|c| !c.is_zero())
                .cloned()
                .unwrap_or_else(Integer::one);
            let g = if lead.is_negative() { -g } else { g };
            for c in coeffs.iter_mut().flatten() {
                *c /= &g;
            }
        }
        let mut op = Self::new(coeffs);
        op.canonical = true;
        op
    }

    /// `L(s)`. The result keeps the truncation order of `s`: the coefficient
    /// of `φⁿ` in `L(s)` only involves `s_0 ..= s_n`.
    pub fn apply(&self, s: &Series) -> Series {
        let n_max = s.truncation_order();
        let ps: Vec<Poly> = (0..=self.phi_degree()).map(|j| self.p_poly(j)).collect();
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut acc = Rational::zero();
            for (j, p) in ps.iter().enumerate() {
                if j > n || p.is_zero() {
                    continue;
                }
                let c = s.coeff(n - j);
                if !c.is_zero() {
                    acc += p.eval(&rat((n - j) as i64)) * c;
                }
            }
            out.push(acc);
        }
        Series::new(out, n_max)
    }

    /// The power-series solution with `a_0 = a0`, from
    /// `a_n = −Σ_{j≥1} P_j(n−j) a_{n−j} / P_0(n)`.
    pub fn recurrence_solve(&self, a0: &Rational, order: usize) -> Result<Series> {
        let p0 = self.p_poly(0);
        if self.c_poly(self.order()).coeff(0).is_zero() {
            return Err(Error::Precondition(
                "leading coefficient vanishes at 0".into(),
            ));
        }
        if !p0.eval(&Rational::zero()).is_zero() {
            return Err(Error::Precondition(
                "0 is not an indicial root at φ = 0".into(),
            ));
        }
        let ps: Vec<Poly> = (0..=self.phi_degree()).map(|j| self.p_poly(j)).collect();
        let mut a = vec![a0.clone()];
        for n in 1..=order {
            let d = p0.eval(&rat(n as i64));
            if d.is_zero() {
                return Err(Error::Resonance(n));
            }
            let mut acc = Rational::zero();
            for (j, p) in ps.iter().enumerate().skip(1) {
                if j > n {
                    break;
                }
                acc += p.eval(&rat((n - j) as i64)) * &a[n - j];
            }
            a.push(-acc / d);
        }
        Ok(Series::new(a, order))
    }

    pub fn transform(&self, t: &Transform) -> Result<Self> {
        let d = self.phi_degree();
        let ps: Vec<Poly> = (0..=d).map(|j| self.p_poly(j)).collect();
        let out: Vec<Poly> = match t {
            Transform::Invert => (0..=d)
                .map(|k| {
                    let p = &ps[d - k];
                    let c =
                        p.coeffs()
                            .iter()
                            .enumerate()
                            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() });
                    Poly::new(c.collect())
                })
                .collect(),
            Transform::Rescale(c) => {
                if c.is_zero() {
                    return Err(Error::Precondition("rescale by zero".into()));
                }
                let mut f = Rational::one();
                ps.iter()
                    .map(|p| {
                        let q = p.scale(&f);
                        f *= c;
                        q
                    })
                    .collect()
            }
            Transform::Negate => return self.transform(&Transform::Rescale(rat(-1))),
            Transform::Gauge(c) => ps.iter().map(|p| p.taylor_shift(c)).collect(),
        };
        Ok(Self::from_p_polys(&out).canonical())
    }

    pub fn transform_chain(&self, chain: &[Transform]) -> Result<Self> {
        let mut op = self.clone();
        for t in chain {
            op = op.transform(t)?;
        }
        Ok(op.canonical())
    }

    /// Factorization of the leading coefficient `C_r(φ)` into its integer
    /// content and primitive irreducible factors with positive leading
    /// coefficient, plus any part that could not be split.
    pub fn leading_coefficient_factor(&self) -> LeadingFactorization {
        let c = self.c_poly(self.order());
        let (factors, unresolved) = c.factor();
        let mut content = c.leading().cloned().unwrap_or_else(Rational::zero);
        let mut out = Vec::new();
        for (f, m) in factors {
            let ints = f.primitive_integer();
            let lead = from_int(ints.last().unwrap().clone());
            for _ in 0..m {
                content /= &lead;
            }
            out.push((ints, m));
        }
        let unresolved = unresolved.map(|(f, m)| {
            let ints = f.primitive_integer();
            let lead = from_int(ints.last().unwrap().clone());
            for _ in 0..m {
                content /= &lead;
            }
            (ints, m)
        });
        out.sort_by_key(|(f, _)| std::cmp::Reverse(f.len()));
        LeadingFactorization {
            content,
            factors: out,
            unresolved,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeadingFactorization {
    pub content: Rational,
    /// Primitive integer polynomials (coefficients low to high) with multiplicity.
    pub factors: Vec<(Vec<Integer>, usize)>,
    pub unresolved: Option<(Vec<Integer>, usize)>,
}

pub fn operator_equal(a: &ThetaOperator, b: &ThetaOperator) -> bool {
    a.canonical().coeffs == b.canonical().coeffs
}

/// Fits an operator of the given order and φ-degree to `s` with the default margin of 10.
pub fn fit_operator(s: &Series, order: usize, phi_degree: usize) -> Result<Option<ThetaOperator>> {
    fit_operator_with_margin(s, order, phi_degree, 10)
}

/// Solves `L(s) = 0` for the coefficients of `L`. The matrix row `n` has entry
/// `(n−j)^i s_{n−j}` in the column of `c_ij`.
pub fn fit_operator_with_margin(
    s: &Series,
    order: usize,
    phi_degree: usize,
    margin: usize,
) -> Result<Option<ThetaOperator>> {
    let unknowns = (order + 1) * (phi_degree + 1);
    if s.truncation_order() < unknowns + margin {
        return Err(Error::Precondition(format!(
            "fitting needs series order ≥ {}, got {}",
            unknowns + margin,
            s.truncation_order()
        )));
    }
    let col = |i: usize, j: usize| j * (order + 1) + i;
    let rows: Vec<Vec<Rational>> = (0..=s.truncation_order())
        .map(|n| {
            let mut row = vec![Rational::zero(); unknowns];
            for j in 0..=phi_degree.min(n) {
                let v = s.coeff(n - j);
                let base = rat((n - j) as i64);
                let mut pw = Rational::one();
                for i in 0..=order {
                    row[col(i, j)] = &pw * v;
                    pw *= &base;
                }
            }
            row
        })
        .collect();
    let ns = linalg::nullspace(&rows, unknowns);
    match ns.len() {
        0 => Ok(None),
        1 => {
            let v = &ns[0];
            let coeffs = (0..=order)
                .map(|i| (0..=phi_degree).map(|j| v[col(i, j)].clone()).collect())
                .collect();
            Ok(Some(ThetaOperator::new(coeffs).canonical()))
        }
        k => Err(Error::AmbiguousNullspace(k)),
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorDoc {
    order: usize,
    coeffs: Vec<Vec<serde_json::Value>>,
}

fn json_integer(v: &serde_json::Value) -> Result<Integer> {
    match v {
        serde_json::Value::String(s) => parse_integer(s),
        serde_json::Value::Number(n) => parse_integer(&n.to_string()),
        _ => Err(Error::Parse(format!("expected integer, got {v}"))),
    }
}

impl ThetaOperator {
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs = self
            .coeffs
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| serde_json::Value::String(c.to_string()))
                    .collect()
            })
            .collect();
        serde_json::to_value(OperatorDoc {
            order: self.order(),
            coeffs,
        })
        .unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: OperatorDoc = serde_json::from_value(v.clone())?;
        if doc.coeffs.len() != doc.order + 1 {
            return Err(Error::Parse(format!(
                "operator of order {} needs {} rows",
                doc.order,
                doc.order + 1
            )));
        }
        let coeffs = doc
            .coeffs
            .iter()
            .map(|r| r.iter().map(json_integer).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

impl Serialize for ThetaOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ThetaOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for j in 0..=self.phi_degree() {
            let p = self.p_poly(j);
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({})", p.display_in("Θ"))?,
                1 => write!(f, "φ*({})", p.display_in("Θ"))?,
                _ => write!(f, "φ^{j}*({})", p.display_in("Θ"))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn d9() -> ThetaOperator {
        ThetaOperator::parse("T^4 - 9*p*(3*T+1)^2*(3*T+2)^2").unwrap()
    }

    #[test]
    fn theta_four_kills_constants() {
        let op = ThetaOperator::parse("T^4").unwrap();
        assert!(op.apply(&Series::one(10)).is_zero());
    }

    #[test]
    fn recurrence_matches_closed_form() {
        let s = d9().recurrence_solve(&rat(1), 3).unwrap();
        assert_eq!(s.coeff(1), &rat(36));
        assert_eq!(s.coeff(2), &rat(8100));
        assert!(d9().apply(&s).is_zero());
    }

    #[test]
    fn resonance_is_an_error() {
        // P_0(x) = x (x - 2)
        let op = ThetaOperator::parse("T^2 - 2*T - p").unwrap();
        assert!(matches!(
            op.recurrence_solve(&rat(1), 5),
            Err(Error::Resonance(2))
        ));
    }

    #[test]
    fn fit_geometric_series() {
        let op = fit_operator(&Series::geometric(20), 1, 1).unwrap().unwrap();
        // (1 − φ)Θ − φ
        assert!(operator_equal(
            &op,
            &ThetaOperator::parse("T - p*T - p").unwrap()
        ));
        assert!(op.is_canonical());
    }

    #[test]
    fn fit_needs_enough_terms() {
        assert!(matches!(
            fit_operator(&Series::geometric(5), 1, 1),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            fit_operator(&Series::geometric(30), 1, 2),
            Err(Error::AmbiguousNullspace(2))
        ));
    }

    #[test]
    fn canonical_form() {
        let op = ThetaOperator::parse("-14*p*T^2 - 7*p^2")
            .unwrap()
            .canonical();
        assert_eq!(
            op.coeffs(),
            &[
                vec![int(0), int(1)],
                vec![int(0), int(0)],
                vec![int(2), int(0)]
            ]
        );
        let scaled = ThetaOperator::new(
            d9().coeffs()
                .iter()
                .map(|r| r.iter().map(|c| c * 7).collect())
                .collect(),
        );
        assert!(operator_equal(&scaled, &d9()));
        assert!(!operator_equal(
            &ThetaOperator::parse("T^4").unwrap(),
            &d9()
        ));
    }

    #[test]
    fn transforms() {
        let op = d9();
        let back = op
            .transform(&Transform::Invert)
            .unwrap()
            .transform(&Transform::Invert)
            .unwrap();
        assert!(operator_equal(&back, &op));
        let r = op
            .transform(&Transform::Rescale(frac(3, 5)))
            .unwrap()
            .transform(&Transform::Rescale(frac(5, 3)))
            .unwrap();
        assert!(operator_equal(&r, &op));
        assert!(operator_equal(
            &op.transform(&Transform::Rescale(rat(1))).unwrap(),
            &op
        ));
        assert!(op.transform(&Transform::Rescale(rat(0))).is_err());
        // conjugating by φ^c shifts the indicial roots at 0 by −c
        let g = op.transform(&Transform::Gauge(frac(1, 2))).unwrap();
        assert!(g.p_poly(0).eval(&frac(-1, 2)).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let op = d9();
        let v = op.to_json();
        assert_eq!(v["order"], 4);
        assert_eq!(v["coeffs"][4][1], "-729");
        assert_eq!(ThetaOperator::from_json(&v).unwrap(), op);
        let num = serde_json::json!({"order": 1, "coeffs": [[0, -1], [1, -1]]});
        assert!(operator_equal(
            &ThetaOperator::from_json(&num).unwrap(),
            &ThetaOperator::parse("T - p*T - p").unwrap()
        ));
    }

    #[test]
    fn leading_factorization_of_hypergeometric() {
        let lf = d9().leading_coefficient_factor();
        // C_4 = 1 − 729 φ
        assert_eq!(lf.factors, vec![(vec![int(-1), int(729)], 1)]);
        assert_eq!(lf.content, rat(-1));
        assert!(lf.unresolved.is_none());
    }
}
