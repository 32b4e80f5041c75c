//! Brute-force period coefficients by constant-term extraction.
//!
//! A system is a list of groups of Laurent monomials `x^e t^k`. The
//! coefficient of `t^N` in the constant term (in `x`) of
//! `∏_groups 1/(1 − Σ_group x^e t^k)` is
//! `Σ ∏_groups multinomial(n_{g,1} + … ; n_{g,1}, …)` over all
//! `n ≥ 0` with `Σ n·e = 0` and `Σ n·k = N`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{factorial, from_int, lcm_of_denominators, Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentMonomial {
    pub x: Vec<i64>,
    pub t: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentMonomialSystem {
    #[serde(default)]
    pub variables: Vec<String>,
    pub rows: Vec<Vec<LaurentMonomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    /// Rank of the lattice of x-null exponent combinations.
    pub rank: usize,
    /// Irreducible nonnegative null combinations up to the search bound, as
    /// multiplicities per monomial in row-major order.
    pub generators: Vec<Vec<u64>>,
    pub t_degrees: Vec<u64>,
    /// Generators are independent, as many as the rank, and account for every
    /// nonnegative null combination up to the bound.
    pub free: bool,
    pub bound: u64,
}

impl LaurentMonomialSystem {
    pub fn new(rows: Vec<Vec<LaurentMonomial>>) -> Result<Self> {
        let sys = LaurentMonomialSystem {
            variables: Vec::new(),
            rows,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let sys: LaurentMonomialSystem = serde_json::from_value(v.clone())?;
        sys.validate()?;
        Ok(sys)
    }

    fn validate(&self) -> Result<()> {
        let n = self.monomials().next().map_or(0, |m| m.x.len());
        if self.monomials().any(|m| m.x.len() != n) {
            return Err(Error::Precondition(
                "exponent vectors differ in length".into(),
            ));
        }
        if self.monomials().any(|m| m.t == 0) {
            return Err(Error::Precondition("t-exponents must be positive".into()));
        }
        Ok(())
    }

    fn monomials(&self) -> impl Iterator<Item = &LaurentMonomial> {
        self.rows.iter().flatten()
    }

    fn nvars(&self) -> usize {
        self.monomials().next().map_or(0, |m| m.x.len())
    }

    fn t_vector(&self) -> Vec<u64> {
        self.monomials().map(|m| m.t as u64).collect()
    }

    /// `(#variables) × (#monomials)` exponent matrix.
    fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.nvars())
            .map(|i| self.monomials().map(|m| m.x[i]).collect())
            .collect()
    }

    fn weight(&self, n: &[u64]) -> Integer {
        let mut k = 0;
        let mut acc = Integer::one();
        for row in &self.rows {
            let part = &n[k..k + row.len()];
            k += row.len();
            let total: u64 = part.iter().sum();
            let mut m = factorial(total);
            for &p in part {
                m /= factorial(p);
            }
            acc *= m;
        }
        acc
    }

    fn kernel(&self) -> Vec<Vec<i64>> {
        let n = self.monomials().count();
        let a = self.exponent_matrix();
        if a.is_empty() {
            return (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect();
        }
        linalg::integer_kernel(&a, n)
    }

    /// All `n ≥ 0` with zero x-exponent and t-degree `t_power`, by walking the
    /// null lattice: fix `rank` coordinates forming an invertible minor of the
    /// kernel basis, solve for the lattice coordinates and filter.
    pub fn null_vectors(&self, t_power: u64) -> Vec<Vec<u64>> {
        let tv = self.t_vector();
        let basis = self.kernel();
        let r = basis.len();
        let n = tv.len();
        if r == 0 {
            return if t_power == 0 {
                vec![vec![0; n]]
            } else {
                Vec::new()
            };
        }
        // B is n × r; pick r independent rows
        let b: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                basis
                    .iter()
                    .map(|v| Rational::from_integer(v[i].into()))
                    .collect()
            })
            .collect();
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..n {
            let mut rows: Vec<Vec<Rational>> = chosen.iter().map(|&c| b[c].clone()).collect();
            rows.push(b[i].clone());
            if linalg::rank(&rows, r) == rows.len() {
                chosen.push(i);
                if chosen.len() == r {
                    break;
                }
            }
        }
        let minv = invert(&chosen.iter().map(|&c| b[c].clone()).collect::<Vec<_>>());
        // λ = adj · v / den with integer adj
        let den = lcm_of_denominators(minv.iter().flatten());
        let adj: Vec<Vec<i64>> = minv
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| i64::try_from((q * from_int(den.clone())).to_integer()).unwrap())
                    .collect()
            })
            .collect();
        let den = i64::try_from(den).unwrap();
        let bounds: Vec<u64> = chosen.iter().map(|&c| t_power / tv[c]).collect();
        let mut out = Vec::new();
        let mut fixed = vec![0u64; r];
        let mut lambda = vec![0i64; r];
        loop {
            let integral = (0..r).all(|i| {
                let s: i64 = (0..r).map(|j| adj[i][j] * fixed[j] as i64).sum();
                lambda[i] = s / den;
                s % den == 0
            });
            if integral {
                let v: Vec<i64> = (0..n)
                    .map(|i| (0..r).map(|j| basis[j][i] * lambda[j]).sum())
                    .collect();
                if v.iter().all(|&x| x >= 0) {
                    let v: Vec<u64> = v.iter().map(|&x| x as u64).collect();
                    if v.iter().zip(&tv).map(|(a, b)| a * b).sum::<u64>() == t_power {
                        out.push(v);
                    }
                }
            }
            let mut k = 0;
            while k < r && fixed[k] == bounds[k] {
                fixed[k] = 0;
                k += 1;
            }
            if k == r {
                break;
            }
            fixed[k] += 1;
        }
        out.sort();
        out
    }

    /// Coefficient of `t^{t_power}` in the constant term.
    pub fn constant_term_coefficient(&self, t_power: u64) -> Integer {
        self.null_vectors(t_power)
            .iter()
            .map(|v| self.weight(v))
            .sum()
    }

    /// Same coefficient by enumerating every `n` of the right t-degree. Exponential;
    /// meant as a cross-check for small `t_power`.
    pub fn constant_term_coefficient_naive(&self, t_power: u64) -> Integer {
        let tv = self.t_vector();
        let a = self.exponent_matrix();
        let mut acc = Integer::zero();
        let mut n = vec![0u64; tv.len()];
        fn go(
            sys: &LaurentMonomialSystem,
            tv: &[u64],
            a: &[Vec<i64>],
            i: usize,
            left: u64,
            n: &mut Vec<u64>,
            acc: &mut Integer,
        ) {
            if i == tv.len() {
                if left == 0
                    && a.iter().all(|row| {
                        row.iter()
                            .zip(n.iter())
                            .map(|(e, k)| e * *k as i64)
                            .sum::<i64>()
                            == 0
                    })
                {
                    *acc += sys.weight(n);
                }
                return;
            }
            for k in 0..=left / tv[i] {
                n[i] = k;
                go(sys, tv, a, i + 1, left - k * tv[i], n, acc);
            }
            n[i] = 0;
        }
        go(self, &tv, &a, 0, t_power, &mut n, &mut acc);
        acc
    }

    /// Rank of the null lattice and the irreducible elements of its
    /// nonnegative part up to t-degree `bound`.
    pub fn solution_basis_check(&self, bound: u64) -> BasisReport {
        let rank = self.kernel().len();
        let tv = self.t_vector();
        let mut all: Vec<Vec<u64>> = Vec::new();
        let mut generators: Vec<Vec<u64>> = Vec::new();
        let mut counts = Vec::new();
        for d in 1..=bound {
            let vs = self.null_vectors(d);
            counts.push(vs.len());
            for v in vs {
                let reducible = all.iter().any(|u| u.iter().zip(&v).all(|(a, b)| a <= b));
                if !reducible {
                    generators.push(v.clone());
                }
                all.push(v);
            }
        }
        let t_degrees: Vec<u64> = generators
            .iter()
            .map(|g| g.iter().zip(&tv).map(|(a, b)| a * b).sum())
            .collect();
        let independent = {
            let rows: Vec<Vec<Rational>> = generators
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect();
            linalg::rank(&rows, tv.len()) == generators.len()
        };
        let free = independent
            && generators.len() == rank
            && (1..=bound).all(|d| counts[d as usize - 1] == compositions(&t_degrees, d));
        BasisReport {
            rank,
            generators,
            t_degrees,
            free,
            bound,
        }
    }
}

/// Number of ways to write `d` as `Σ c_i deg_i` with `c_i ≥ 0`.
fn compositions(degs: &[u64], d: u64) -> usize {
    let mut ways = vec![0usize; d as usize + 1];
    ways[0] = 1;
    for &g in degs {
        for k in g as usize..=d as usize {
            ways[k] += ways[k - g as usize];
        }
    }
    ways[d as usize]
}

fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .expect("invertible minor");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Oracle values at `t^{step·k}` for `k = 0..=count`.
pub fn oracle_period(sys: &LaurentMonomialSystem, step: u64, count: usize) -> Vec<Rational> {
    (0..=count as u64)
        .map(|k| from_int(sys.constant_term_coefficient(step * k)))
        .collect()
}
