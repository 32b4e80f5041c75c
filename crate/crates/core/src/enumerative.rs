//! Yukawa couplings and genus 0/1 BPS (Gopakumar-Vafa) invariants.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_basis, inverse_mirror_map, mirror_map, FrobeniusBasis};
use crate::numberfield::{NumberField, NumberFieldElement};
use crate::operator::{indicial_exponents, Location, ThetaOperator};
use crate::poly::Poly;
use crate::rational::{fmt_rational, from_int, parse_rational, rat, Integer, Rational};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq)]
pub struct GVTable {
    pub family: String,
    pub genus: u8,
    pub entries: BTreeMap<usize, Rational>,
    pub assumptions: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct GVTableDoc {
    family: String,
    genus: u8,
    invariants: BTreeMap<String, String>,
    #[serde(default)]
    assumptions: BTreeMap<String, String>,
}

impl GVTable {
    pub fn new(family: &str, genus: u8) -> Self {
        GVTable {
            family: family.into(),
            genus,
            entries: BTreeMap::new(),
            assumptions: BTreeMap::new(),
        }
    }

    pub fn get(&self, d: usize) -> Rational {
        self.entries.get(&d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_degree(&self) -> usize {
        self.entries.keys().copied().max().unwrap_or(0)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    /// Entries `1..=max_degree` as integers; fails on the first non-integral one.
    pub fn integers(&self) -> Result<Vec<Integer>> {
        (1..=self.max_degree())
            .map(|d| {
                let v = self.get(d);
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(Error::NonIntegral(format!(
                        "{} genus {} degree {d}: {}",
                        self.family,
                        self.genus,
                        fmt_rational(&v)
                    )))
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = GVTableDoc {
            family: self.family.clone(),
            genus: self.genus,
            invariants: self
                .entries
                .iter()
                .map(|(d, v)| (d.to_string(), fmt_rational(v)))
                .collect(),
            assumptions: self.assumptions.clone(),
        };
        serde_json::to_value(doc).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: GVTableDoc = serde_json::from_value(v.clone())?;
        let mut entries = BTreeMap::new();
        for (k, v) in doc.invariants {
            let d: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree {k}")))?;
            entries.insert(d, parse_rational(&v)?);
        }
        Ok(GVTable {
            family: doc.family,
            genus: doc.genus,
            entries,
            assumptions: doc.assumptions,
        })
    }
}

/// Classical invariants entering the couplings.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumerativeInputs {
    pub deg: Rational,
    pub c2h: Rational,
    pub chi: Rational,
    pub h11: Rational,
}

/// `E(φ) = exp(−½ ∫₀^φ C₃(x)/(x C₄(x)) dx)`; the Yukawa coupling in φ is
/// `deg · E(φ) / φ³`.
pub fn yukawa_phi(op: &ThetaOperator, order: usize) -> Result<Series> {
    let r = op.order();
    if r < 1 {
        return Err(Error::Precondition("operator has order 0".into()));
    }
    let c_top = Series::new(op.c_poly(r).coeffs().to_vec(), order);
    let c_sub = Series::new(op.c_poly(r - 1).coeffs().to_vec(), order);
    if !c_sub.coeff(0).is_zero() {
        return Err(Error::Precondition("C₃(0) ≠ 0".into()));
    }
    c_sub
        .try_div(&c_top)?
        .integrate_theta()?
        .scale(&-(rat(1) / rat(2)))
        .exp()
}

/// Everything the q-expansions need, computed once per operator.
#[derive(Clone, Debug)]
pub struct QData {
    pub basis: FrobeniusBasis,
    pub q_of_phi: Series,
    pub phi_of_q: Series,
    /// `φ(q)/q`
    pub u: Series,
    /// `(q dφ/dq)/q`
    pub v: Series,
    /// `Φ₀(φ(q))`
    pub phi0_q: Series,
}

impl QData {
    pub fn new(op: &ThetaOperator, order: usize) -> Result<Self> {
        let basis = frobenius_basis(op, order, 1)?;
        let q_of_phi = mirror_map(&basis)?;
        let phi_of_q = inverse_mirror_map(&q_of_phi)?;
        let u = phi_of_q.shift_down(1)?.truncate(order);
        let v = &u + &u.theta();
        let phi0_q = basis.phi0.compose(&phi_of_q)?;
        Ok(QData {
            basis,
            q_of_phi,
            phi_of_q,
            u,
            v,
            phi0_q,
        })
    }

    pub fn order(&self) -> usize {
        self.phi0_q.truncation_order()
    }

    /// Pulls a φ-series back along the inverse mirror map.
    pub fn in_q(&self, s: &Series) -> Result<Series> {
        s.compose(&self.phi_of_q)
    }
}

/// `K_ttt(q) = deg · (q φ'/φ)³ · E(φ(q)) / Φ₀(φ(q))²`
pub fn yukawa_q(op: &ThetaOperator, deg: &Rational, order: usize) -> Result<Series> {
    yukawa_from(&QData::new(op, order)?, op, deg)
}

pub fn yukawa_from(qd: &QData, op: &ThetaOperator, deg: &Rational) -> Result<Series> {
    let n = qd.order();
    let e = qd.in_q(&yukawa_phi(op, n)?)?;
    let jac = qd.v.try_div(&qd.u)?;
    let num = &jac.pow(3) * &e;
    Ok(num.try_div(&qd.phi0_q.pow(2))?.scale(deg))
}

/// Inverts `K = deg + Σ_d n_d d³ q^d / (1 − q^d)` degree by degree.
pub fn gv_genus0(k: &Series, max_d: usize) -> Result<GVTable> {
    if k.truncation_order() < max_d {
        return Err(Error::Precondition(format!(
            "coupling known to order {} < {max_d}",
            k.truncation_order()
        )));
    }
    let mut t = GVTable::new("", 0);
    for m in 1..=max_d {
        let mut c = k.coeff(m).clone();
        for d in divisors_below(m) {
            c -= t.get(d) * rat((d * d * d) as i64);
        }
        t.entries.insert(m, c / rat((m * m * m) as i64));
    }
    Ok(t)
}

/// `deg + Σ_d n_d d³ q^d/(1 − q^d)` to order `order`.
pub fn yukawa_from_table(deg: &Rational, table: &GVTable, order: usize) -> Series {
    let mut c = vec![Rational::zero(); order + 1];
    c[0] = deg.clone();
    for (&d, n) in &table.entries {
        if d == 0 {
            continue;
        }
        let w = n * rat((d * d * d) as i64);
        let mut m = d;
        while m <= order {
            c[m] += &w;
            m += d;
        }
    }
    Series::new(c, order)
}

fn divisors_below(m: usize) -> impl Iterator<Item = usize> {
    (1..m).filter(move |d| m.is_multiple_of(*d))
}

/// The normalized product of the leading-coefficient factors whose roots
/// have local exponents (0, 1, 1, 2).
pub fn conifold_discriminant(op: &ThetaOperator) -> Result<Poly> {
    let lf = op.leading_coefficient_factor();
    let mut disc = Poly::constant(Rational::one());
    for (f, _) in &lf.factors {
        let p = Poly::from_integers(f);
        if p.coeff(0).is_zero() {
            continue;
        }
        let loc = match p.degree() {
            Some(1) => Location::Rational(-p.coeff(0) / p.coeff(1)),
            Some(2) => Location::Algebraic(NumberFieldElement::generator(&NumberField::new(&p)?)),
            _ => continue,
        };
        let e = indicial_exponents(op, &loc)?;
        if e.roots == [rat(0), rat(1), rat(1), rat(2)] {
            disc = &disc * &p;
        }
    }
    normalize_disc(&disc)
}

pub fn normalize_disc(p: &Poly) -> Result<Poly> {
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return Err(Error::Precondition("discriminant vanishes at 0".into()));
    }
    Ok(p.scale(&c0.recip()))
}

/// BCOV at genus one. With `φ = q u` and `q dφ/dq = q v`,
/// `Θ_q F₁ + c₂H/24 = ½[e Θ log Φ₀ + Θ log v − ⅙ Θ log disc − (c₂H/12 + 1) Θ log u]`
/// where `e = χ/12 − 3 − h¹¹`, and this equals `Σ_m q^m Σ_{d|m} d (n⁰_d/12 + n¹_d)`.
pub fn bcov_genus1(
    qd: &QData,
    inputs: &EnumerativeInputs,
    disc: &Poly,
    n0: &GVTable,
    max_d: usize,
) -> Result<GVTable> {
    if qd.order() < max_d {
        return Err(Error::Precondition(format!(
            "series order {} < {max_d}",
            qd.order()
        )));
    }
    let disc = normalize_disc(disc)?;
    let n = qd.order();
    let e = &inputs.chi / rat(12) - rat(3) - &inputs.h11;
    let disc_q = qd.in_q(&Series::new(disc.coeffs().to_vec(), n))?;
    let lhs = &(&(&qd.phi0_q.log_theta()?.scale(&e) + &qd.v.log_theta()?)
        - &disc_q.log_theta()?.scale(&(rat(1) / rat(6))))
        - &qd.u.log_theta()?.scale(&(&inputs.c2h / rat(12) + rat(1)));
    let lhs = lhs.scale(&(rat(1) / rat(2)));
    let mut g: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut t = GVTable::new(&n0.family, 1);
    for m in 1..=max_d {
        let mut c = lhs.coeff(m).clone();
        for d in divisors_below(m) {
            c -= &g[&d] * rat(d as i64);
        }
        let gm = c / rat(m as i64);
        t.entries.insert(m, &gm - n0.get(m) / rat(12));
        g.insert(m, gm);
    }
    t.assumptions.insert("disc".into(), disc.display_in("φ"));
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    BpsToGw,
    GwToBps,
}

/// Multicover conversion. Genus 0: `N_d = Σ_{k|d} n_{d/k}/k³`. Genus 1:
/// `N¹_d = Σ_{k|d} (n⁰_{d/k}/12 + n¹_{d/k})/k`, which needs the genus-0 BPS table.
pub fn gw_bps_convert(
    table: &GVTable,
    direction: Direction,
    max_d: usize,
    genus0_bps: Option<&GVTable>,
) -> Result<GVTable> {
    let weight = |k: usize| -> Rational {
        match table.genus {
            0 => rat(1) / rat((k * k * k) as i64),
            _ => rat(1) / rat(k as i64),
        }
    };
    let shift = |d: usize| -> Result<Rational> {
        match table.genus {
            0 => Ok(Rational::zero()),
            1 => {
                let g0 = genus0_bps.ok_or_else(|| {
                    Error::MissingData("genus-1 conversion needs the genus-0 BPS table".into())
                })?;
                Ok(g0.get(d) / rat(12))
            }
            g => Err(Error::Precondition(format!("genus {g} is not supported"))),
        }
    };
    let mut out = GVTable::new(&table.family, table.genus);
    out.assumptions = table.assumptions.clone();
    match direction {
        Direction::BpsToGw => {
            for d in 1..=max_d {
                let mut acc = Rational::zero();
                for k in (1..=d).filter(|k| d % k == 0) {
                    acc += (table.get(d / k) + shift(d / k)?) * weight(k);
                }
                out.entries.insert(d, acc);
            }
        }
        Direction::GwToBps => {
            let mut g: BTreeMap<usize, Rational> = BTreeMap::new();
            for d in 1..=max_d {
                let mut acc = table.get(d);
                for k in (2..=d).filter(|k| d % k == 0) {
                    acc -= &g[&(d / k)] * weight(k);
                }
                out.entries.insert(d, &acc - shift(d)?);
                g.insert(d, acc);
            }
        }
    }
    Ok(out)
}

/// Virtual invariants at a second MUM point. The classical numbers are inputs;
/// the genus-one table is produced only when `c2h` and `chi` are given.
pub fn virtual_invariants(
    op: &ThetaOperator,
    virtual_deg: &Rational,
    c2h: Option<&Rational>,
    chi: Option<&Rational>,
    max_d: usize,
    order: usize,
) -> Result<(GVTable, Option<GVTable>)> {
    let qd = QData::new(op, order)?;
    let k = yukawa_from(&qd, op, virtual_deg)?;
    let mut n0 = gv_genus0(&k, max_d)?;
    n0.assumptions
        .insert("virtual_degree".into(), fmt_rational(virtual_deg));
    let n1 = match (c2h, chi) {
        (Some(c2h), Some(chi)) => {
            let inputs = EnumerativeInputs {
                deg: virtual_deg.clone(),
                c2h: c2h.clone(),
                chi: chi.clone(),
                h11: rat(1),
            };
            let mut t = bcov_genus1(&qd, &inputs, &conifold_discriminant(op)?, &n0, max_d)?;
            t.assumptions
                .insert("virtual_degree".into(), fmt_rational(virtual_deg));
            Some(t)
        }
        _ => None,
    };
    Ok((n0, n1))
}

pub fn integer_table(family: &str, genus: u8, values: &[Integer]) -> GVTable {
    let mut t = GVTable::new(family, genus);
    for (i, v) in values.iter().enumerate() {
        t.entries.insert(i + 1, from_int(v.clone()));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn quintic() -> ThetaOperator {
        ThetaOperator::parse("T^4 - 5*p*(5*T+1)*(5*T+2)*(5*T+3)*(5*T+4)").unwrap()
    }

    #[test]
    fn quintic_yukawa_shape() {
        let e = yukawa_phi(&quintic(), 6).unwrap();
        let expect = Series::one(6)
            .try_div(&Series::from_ints(&[1, -3125], 6))
            .unwrap();
        assert_eq!(e, expect);
        assert_eq!(
            yukawa_phi(&ThetaOperator::parse("T^4").unwrap(), 4).unwrap(),
            Series::one(4)
        );
    }

    #[test]
    fn quintic_instantons() {
        let k = yukawa_q(&quintic(), &rat(5), 4).unwrap();
        assert_eq!(k.coeff(0), &rat(5));
        let t = gv_genus0(&k, 3).unwrap();
        assert_eq!(
            t.integers().unwrap(),
            vec![
                Integer::from(2875),
                Integer::from(609250),
                Integer::from(317206375)
            ]
        );
    }

    #[test]
    fn quintic_genus_one() {
        let qd = QData::new(&quintic(), 6).unwrap();
        let k = yukawa_from(&qd, &quintic(), &rat(5)).unwrap();
        let n0 = gv_genus0(&k, 5).unwrap();
        let inputs = EnumerativeInputs {
            deg: rat(5),
            c2h: rat(50),
            chi: rat(-200),
            h11: rat(1),
        };
        let disc = conifold_discriminant(&quintic()).unwrap();
        assert_eq!(disc, Poly::from_ints(&[1, -3125]));
        let n1 = bcov_genus1(&qd, &inputs, &disc, &n0, 5).unwrap();
        let known: [i64; 5] = [0, 0, 609250, 3721431625, 12129909700200];
        assert_eq!(
            n1.integers().unwrap(),
            known.iter().map(|&x| Integer::from(x)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn multicover_examples() {
        let mut t = GVTable::new("x", 0);
        t.entries.insert(1, rat(647));
        let gw = gw_bps_convert(&t, Direction::BpsToGw, 2, None).unwrap();
        assert_eq!(gw.get(2), frac(647, 8));
        let back = gw_bps_convert(&gw, Direction::GwToBps, 2, None).unwrap();
        assert_eq!(back.get(1), rat(647));
        assert_eq!(back.get(2), rat(0));
        let g1 = GVTable::new("x", 1);
        assert!(matches!(
            gw_bps_convert(&g1, Direction::BpsToGw, 2, None),
            Err(Error::MissingData(_))
        ));
    }

    #[test]
    fn table_json() {
        let mut t = GVTable::new("x13", 0);
        t.entries.insert(1, rat(647));
        let v = t.to_json();
        assert_eq!(v["invariants"]["1"], "647");
        assert_eq!(GVTable::from_json(&v).unwrap(), t);
    }

    #[test]
    fn trivial_coupling_has_no_instantons() {
        let t = gv_genus0(&Series::constant(rat(13), 5), 5).unwrap();
        assert!(t.entries.values().all(Zero::is_zero));
    }
}
