//! Frobenius solutions at a point of maximally unipotent monodromy and the
//! mirror map.
//!
//! The solutions come from the deformed recurrence for `φ^ε Σ a_n(ε) φⁿ`,
//! computed in `ℚ[ε]/(ε^{depth+1})`: the coefficient of `ε^k` is
//! `Σ_{m ≤ k} log(φ)^{k−m}/(k−m)! · A_m(φ)` with `A_m = Σ_n [ε^m]a_n φⁿ`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::operator::ThetaOperator;
use crate::poly::Poly;
use crate::rational::{rat, Rational};
use crate::series::Series;

/// Truncated polynomial in ε.
#[derive(Clone, Debug)]
struct Eps(Vec<Rational>);

impl Eps {
    fn mul(&self, o: &Eps) -> Eps {
        let k = self.0.len();
        let mut out = vec![Rational::zero(); k];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate().take(k - i) {
                out[i + j] += a * b;
            }
        }
        Eps(out)
    }

    fn inv(&self) -> Eps {
        let k = self.0.len();
        let inv0 = self.0[0].recip();
        let mut out = vec![Rational::zero(); k];
        out[0] = inv0.clone();
        for n in 1..k {
            let mut acc = Rational::zero();
            for j in 1..=n {
                acc += &self.0[j] * &out[n - j];
            }
            out[n] = -acc * &inv0;
        }
        Eps(out)
    }

    /// `p(x + ε)` truncated.
    fn eval_shifted(p: &Poly, x: &Rational, k: usize) -> Eps {
        let mut d = p.clone();
        let mut fact = Rational::one();
        let mut out = Vec::with_capacity(k);
        for m in 0..k {
            if m > 0 {
                d = d.derivative();
                fact *= rat(m as i64);
            }
            out.push(d.eval(x) / &fact);
        }
        Eps(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusBasis {
    pub phi0: Series,
    pub psi: Series,
    pub log2: Option<Series>,
    pub log3: Option<Series>,
}

/// `Σ_k log(φ)^k · strata[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries {
    pub strata: Vec<Series>,
}

impl LogSeries {
    /// `Θ(log^k s) = log^k Θs + k log^{k−1} s`
    pub fn theta(&self) -> LogSeries {
        let strata = (0..self.strata.len())
            .map(|k| {
                let mut s = self.strata[k].theta();
                if let Some(next) = self.strata.get(k + 1) {
                    s = &s + &next.scale(&rat(k as i64 + 1));
                }
                s
            })
            .collect();
        LogSeries { strata }
    }

    pub fn apply(&self, op: &ThetaOperator) -> LogSeries {
        let order = self
            .strata
            .iter()
            .map(Series::truncation_order)
            .min()
            .unwrap_or(0);
        let mut out: Vec<Series> = vec![Series::zero(order); self.strata.len()];
        let mut pow = self.clone();
        for i in 0..=op.order() {
            let c = op.c_poly(i);
            if !c.is_zero() {
                let c = Series::new(c.coeffs().to_vec(), order);
                for (o, s) in out.iter_mut().zip(&pow.strata) {
                    *o = &*o + &(&c * s);
                }
            }
            pow = pow.theta();
        }
        LogSeries { strata: out }
    }

    pub fn is_zero(&self) -> bool {
        self.strata.iter().all(Series::is_zero)
    }
}

impl FrobeniusBasis {
    /// `Φ₁ = log(φ) Φ₀ + Ψ` as a log-series.
    pub fn phi1(&self) -> LogSeries {
        LogSeries {
            strata: vec![self.psi.clone(), self.phi0.clone()],
        }
    }
}

/// Frobenius basis to φ-order `order`; `depth` ∈ {1, 2, 3} is the highest log power.
pub fn frobenius_basis(op: &ThetaOperator, order: usize, depth: usize) -> Result<FrobeniusBasis> {
    if !(1..=3).contains(&depth) {
        return Err(Error::Precondition("depth must be 1, 2 or 3".into()));
    }
    let p0 = op.p_poly(0);
    let r = op.order();
    let mum = p0.degree() == Some(r) && p0.coeffs()[..r].iter().all(Zero::is_zero);
    if !mum || r <= depth {
        return Err(Error::Precondition(
            "operator is not maximally unipotent at 0".into(),
        ));
    }
    let k = depth + 1;
    let ps: Vec<Poly> = (0..=op.phi_degree()).map(|j| op.p_poly(j)).collect();
    let mut a: Vec<Eps> = Vec::with_capacity(order + 1);
    let mut one = vec![Rational::zero(); k];
    one[0] = Rational::one();
    a.push(Eps(one));
    for n in 1..=order {
        let mut acc = Eps(vec![Rational::zero(); k]);
        for (j, p) in ps.iter().enumerate().skip(1) {
            if j > n {
                break;
            }
            let t = Eps::eval_shifted(p, &rat((n - j) as i64), k).mul(&a[n - j]);
            for (x, y) in acc.0.iter_mut().zip(t.0) {
                *x -= y;
            }
        }
        let d = Eps::eval_shifted(&p0, &rat(n as i64), k);
        if d.0[0].is_zero() {
            return Err(Error::Resonance(n));
        }
        a.push(acc.mul(&d.inv()));
    }
    let stratum = |m: usize| Series::new(a.iter().map(|e| e.0[m].clone()).collect(), order);
    Ok(FrobeniusBasis {
        phi0: stratum(0),
        psi: stratum(1),
        log2: (depth >= 2).then(|| stratum(2)),
        log3: (depth >= 3).then(|| stratum(3)),
    })
}

/// `q(φ) = φ exp(Ψ/Φ₀)`, known to one order beyond the basis.
pub fn mirror_map(basis: &FrobeniusBasis) -> Result<Series> {
    Ok(basis.psi.try_div(&basis.phi0)?.exp()?.shift_up(1))
}

/// `φ(q)`, the compositional inverse of the mirror map.
pub fn inverse_mirror_map(q_of_phi: &Series) -> Result<Series> {
    if q_of_phi.truncation_order() >= 1 && !q_of_phi.coeff(1).is_one() {
        return Err(Error::Precondition(
            "mirror map must have unit linear term".into(),
        ));
    }
    q_of_phi.reversion()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d9() -> ThetaOperator {
        ThetaOperator::parse("T^4 - 9*p*(3*T+1)^2*(3*T+2)^2").unwrap()
    }

    #[test]
    fn pure_log_basis() {
        let b = frobenius_basis(&ThetaOperator::parse("T^4").unwrap(), 8, 3).unwrap();
        assert_eq!(b.phi0, Series::one(8));
        assert!(b.psi.is_zero());
        assert_eq!(mirror_map(&b).unwrap(), Series::variable(9));
    }

    #[test]
    fn log_solution_is_annihilated() {
        let op = d9();
        let b = frobenius_basis(&op, 12, 3).unwrap();
        assert_eq!(b.phi0, op.recurrence_solve(&rat(1), 12).unwrap());
        assert!(b.psi.coeff(0).is_zero());
        assert!(b.phi1().apply(&op).is_zero());
        let half = rat(1) / rat(2);
        let two = LogSeries {
            strata: vec![b.log2.clone().unwrap(), b.psi.clone(), b.phi0.scale(&half)],
        };
        assert!(two.apply(&op).is_zero());
    }

    #[test]
    fn mirror_map_is_normalized_and_integral() {
        let b = frobenius_basis(&d9(), 10, 1).unwrap();
        let q = mirror_map(&b).unwrap();
        assert!(q.coeff(0).is_zero());
        assert!(q.coeff(1).is_one());
        assert!(q.is_integral());
        let back = q.compose(&inverse_mirror_map(&q).unwrap()).unwrap();
        assert_eq!(back, Series::variable(back.truncation_order()));
    }

    #[test]
    fn non_mum_rejected() {
        let op = ThetaOperator::parse("T^2*(T-1)^2 - p").unwrap();
        assert!(frobenius_basis(&op, 5, 1).is_err());
    }
}
