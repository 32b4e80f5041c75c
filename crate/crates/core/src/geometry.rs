//! Pfaffians of skew polynomial matrices, Hilbert series of graded
//! resolutions on weighted projective space, and the invariants derived from
//! them (degree, c₂·H, h¹²).

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::poly::Poly;
use crate::rational::{from_int, rat, to_integer, Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSpace {
    weights: Vec<u32>,
}

impl WeightedSpace {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(Error::Precondition("weights must be positive".into()));
        }
        Ok(WeightedSpace { weights })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    /// `|w|`
    pub fn total_weight(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum()
    }

    /// `∏ (1 − t^{w_i})`
    pub fn denominator(&self) -> Poly {
        self.weights
            .iter()
            .fold(Poly::constant(Rational::one()), |acc, &w| {
                &acc * &(&Poly::constant(Rational::one())
                    - &Poly::monomial(Rational::one(), w as usize))
            })
    }

    /// Number of monomials of weighted degree `k`, i.e. `h⁰(O(k))`.
    pub fn h0(&self, k: i64) -> Integer {
        if k < 0 {
            return Integer::zero();
        }
        let k = k as usize;
        let mut c = vec![Integer::zero(); k + 1];
        c[0] = Integer::one();
        for &w in &self.weights {
            let w = w as usize;
            for n in w..=k {
                let prev = c[n - w].clone();
                c[n] += prev;
            }
        }
        c[k].clone()
    }

    /// `h^{dim}(O(k)) = h⁰(O(−|w| − k))` by Serre duality.
    pub fn h_top(&self, k: i64) -> Integer {
        self.h0(-self.total_weight() - k)
    }
}

/// A graded free resolution: position `p` carries `⊕ O(twist)^{mult}` with sign `(−1)^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedResolution {
    pub positions: Vec<Vec<(i64, u64)>>,
}

impl GradedResolution {
    pub fn new(positions: Vec<Vec<(i64, u64)>>) -> Result<Self> {
        if positions.is_empty() || positions.iter().flatten().any(|&(_, m)| m == 0) {
            return Err(Error::Precondition(
                "resolution positions must be nonempty with positive multiplicities".into(),
            ));
        }
        Ok(GradedResolution { positions })
    }

    /// The pfaffian complex `0 → O(−t−2s) → E^∨(−t−s) → E(−s) → O` of a rank-5
    /// bundle `E = ⊕ O(e_i)` with `s = c₁(E) + 2t`.
    pub fn pfaffian(twists: &[i64], t: i64) -> Result<Self> {
        if twists.len().is_multiple_of(2) {
            return Err(Error::Precondition(
                "pfaffian bundle must have odd rank".into(),
            ));
        }
        let r = (twists.len() as i64 - 1) / 2;
        let s = twists.iter().sum::<i64>() + r * t;
        let merge = |v: Vec<i64>| {
            let mut out: Vec<(i64, u64)> = Vec::new();
            let mut v = v;
            v.sort_unstable_by(|a, b| b.cmp(a));
            for k in v {
                match out.last_mut() {
                    Some((tw, m)) if *tw == k => *m += 1,
                    _ => out.push((k, 1)),
                }
            }
            out
        };
        Self::new(vec![
            vec![(0, 1)],
            merge(twists.iter().map(|e| e - s).collect()),
            merge(twists.iter().map(|e| -e - t - s).collect()),
            vec![(-t - 2 * s, 1)],
        ])
    }

    /// Twist of the last term; equals `−|w|` exactly when the zero locus has trivial canonical class.
    pub fn end_twist(&self) -> i64 {
        self.positions.last().unwrap()[0].0
    }
}

/// `num / den` with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) / ({})",
            self.num.display_in("t"),
            self.den.display_in("t")
        )
    }
}

impl RationalFunction {
    /// Largest `k` with `(1 − t)^k | den`.
    pub fn pole_order_at_one(&self) -> usize {
        let lin = Poly::from_ints(&[1, -1]);
        let mut d = self.den.clone();
        let mut k = 0;
        loop {
            let (q, r) = d.div_rem(&lin);
            if !r.is_zero() || d.degree() == Some(0) {
                return k;
            }
            d = q;
            k += 1;
        }
    }

    pub fn is_palindromic_numerator(&self) -> bool {
        let c = self.num.coeffs();
        c.iter().eq(c.iter().rev())
    }
}

/// `Σ_p (−1)^p Σ mult·t^{−twist} / ∏(1 − t^{w_i})`, reduced to lowest terms.
/// A summand `O(−k)` contributes `t^k`; positive twists are rejected.
pub fn hilbert_series(res: &GradedResolution, w: &WeightedSpace) -> Result<RationalFunction> {
    let mut num = Poly::zero();
    for (p, pos) in res.positions.iter().enumerate() {
        let sign = if p % 2 == 0 { rat(1) } else { rat(-1) };
        for &(twist, mult) in pos {
            if twist > 0 {
                return Err(Error::Precondition(format!(
                    "positive twist {twist} in resolution"
                )));
            }
            num = &num + &Poly::monomial(&sign * rat(mult as i64), (-twist) as usize);
        }
    }
    let den = w.denominator();
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
        (num.div_rem(&g).0, den.div_rem(&g).0)
    } else {
        (num, den)
    };
    let c = den.coeff(0);
    if !c.is_one() {
        num = num.scale(&c.recip());
        den = den.scale(&c.recip());
    }
    Ok(RationalFunction { num, den })
}

/// `dim! ×` the leading coefficient of the Hilbert polynomial, read off as
/// `num(1) / (den/(1−t)^{dim+1})(1)`.
pub fn degree_from_hilbert_dim(h: &RationalFunction, dim: usize) -> Result<Integer> {
    let k = h.pole_order_at_one();
    if k != dim + 1 {
        return Err(Error::Precondition(format!(
            "pole order {k} at t = 1, expected {}",
            dim + 1
        )));
    }
    let mut rest = h.den.clone();
    for _ in 0..k {
        rest = rest.div_rem(&Poly::from_ints(&[1, -1])).0;
    }
    to_integer(&(h.num.eval(&rat(1)) / rest.eval(&rat(1))))
}

pub fn degree_from_hilbert(h: &RationalFunction) -> Result<Integer> {
    degree_from_hilbert_dim(h, 3)
}

/// `c₂·H = 12 h⁰(O(H)) − 2 deg`, from Riemann-Roch for `O(H)` on a Calabi-Yau threefold.
pub fn c2h(deg: &Rational, h0: &Rational) -> Result<Integer> {
    to_integer(&(rat(12) * h0 - rat(2) * deg))
        .map_err(|_| Error::NonIntegral(format!("c2·H from deg {deg} and h0 {h0}")))
}

/// `h¹² = Σ_{i=1}^{3} (−1)^{i+1} h⁶(F_i) − Σ_i h⁰(O(w_i))`, where `F_1` is the
/// resolution term of `I²` mapping onto the ideal.
pub fn hodge_h12(w: &WeightedSpace, i2: &[Vec<(i64, u64)>]) -> Result<Integer> {
    if i2.len() != 3 {
        return Err(Error::MissingData(
            "I² resolution needs three positions".into(),
        ));
    }
    let mut acc = Integer::zero();
    for (i, pos) in i2.iter().enumerate() {
        let h: Integer = pos
            .iter()
            .map(|&(tw, m)| w.h_top(tw) * Integer::from(m))
            .sum();
        if i % 2 == 0 {
            acc += h;
        } else {
            acc -= h;
        }
    }
    let tangent: Integer = w.weights().iter().map(|&wi| w.h0(wi as i64)).sum();
    Ok(acc - tangent)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkewPolyMatrix {
    entries: Vec<Vec<MPoly>>,
}

impl SkewPolyMatrix {
    pub fn new(entries: Vec<Vec<MPoly>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Precondition("matrix is not square".into()));
            }
            if !row[i].is_zero() {
                return Err(Error::NotSkew(i, i));
            }
            for j in i + 1..n {
                if !(&row[j] + &entries[j][i]).is_zero() {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        Ok(SkewPolyMatrix { entries })
    }

    /// Reads `{"variables": [...], "entries": [[term list, ...], ...]}`.
    pub fn from_json(v: &serde_json::Value) -> Result<(Self, Vec<String>)> {
        let bad = || Error::Parse("bad matrix document".into());
        let vars: Vec<String> = v["variables"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(bad))
            .collect::<Result<_>>()?;
        let rows = v["entries"].as_array().ok_or_else(bad)?;
        let entries = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|e| MPoly::from_json(vars.len(), e))
                    .collect()
            })
            .collect::<Result<Vec<Vec<MPoly>>>>()?;
        Ok((Self::new(entries)?, vars))
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i][j]
    }

    fn nvars(&self) -> usize {
        self.entries
            .first()
            .and_then(|r| r.first())
            .map_or(0, MPoly::nvars)
    }

    /// The matrix with row and column `k` removed.
    pub fn minor(&self, k: usize) -> SkewPolyMatrix {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        SkewPolyMatrix { entries }
    }
}

/// Pfaffian by expansion along the first remaining row, memoized on index subsets.
pub fn pfaffian(m: &SkewPolyMatrix) -> MPoly {
    fn go(m: &SkewPolyMatrix, set: u64, memo: &mut HashMap<u64, MPoly>) -> MPoly {
        if set == 0 {
            return MPoly::constant(m.nvars(), Rational::one());
        }
        if let Some(p) = memo.get(&set) {
            return p.clone();
        }
        let i = set.trailing_zeros() as usize;
        let rest = set & !(1 << i);
        let mut acc = MPoly::zero(m.nvars());
        let mut sign = true;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = m.entry(i, j);
            if !a.is_zero() {
                let term = a * &go(m, rest & !(1 << j), memo);
                acc = if sign { &acc + &term } else { &acc - &term };
            }
            sign = !sign;
        }
        memo.insert(set, acc.clone());
        acc
    }
    let n = m.size();
    assert!(n < 64, "matrix too large");
    if n % 2 == 1 {
        return MPoly::zero(m.nvars());
    }
    go(m, (1u64 << n) - 1, &mut HashMap::new())
}

/// `P_i = (−1)^{i+1} Pf(M_i)` for `i = 1..n`, with `M_i` the matrix without row and column `i`.
pub fn sub_pfaffians(m: &SkewPolyMatrix) -> Vec<MPoly> {
    (0..m.size())
        .map(|k| {
            let p = pfaffian(&m.minor(k));
            if k % 2 == 0 {
                p
            } else {
                -&p
            }
        })
        .collect()
}

/// Structure-sheaf data of a pfaffian threefold.
#[derive(Clone, Debug, PartialEq)]
pub struct PfaffianGeometry {
    pub hilbert: RationalFunction,
    pub degree: Integer,
    pub h0_h: Integer,
    pub c2h: Integer,
}

pub fn pfaffian_geometry(w: &WeightedSpace, twists: &[i64], t: i64) -> Result<PfaffianGeometry> {
    let res = GradedResolution::pfaffian(twists, t)?;
    if res.end_twist() != -w.total_weight() {
        return Err(Error::Precondition(format!(
            "resolution ends in O({}) but |w| = {}",
            res.end_twist(),
            w.total_weight()
        )));
    }
    let hilbert = hilbert_series(&res, w)?;
    let degree = degree_from_hilbert(&hilbert)?;
    let h0_h = w.h0(1);
    let c2h = c2h(&from_int(degree.clone()), &from_int(h0_h.clone()))?;
    Ok(PfaffianGeometry {
        hilbert,
        degree,
        h0_h,
        c2h,
    })
}
