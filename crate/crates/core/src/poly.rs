//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_rational, gcd_of, lcm_of_denominators, rat, Integer, Rational};

/// Coefficients low to high, no trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_integers(coeffs: &[Integer]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let nq = rem.len().saturating_sub(dd);
        let mut quot = vec![Rational::zero(); nq];
        for k in (0..nq).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<Integer> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = lcm_of_denominators(self.coeffs.iter());
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = gcd_of(ints.iter());
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// `p(x + shift)`
    pub fn taylor_shift(&self, shift: &Rational) -> Poly {
        let mut acc = Poly::zero();
        let lin = Poly::new(vec![shift.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Rational roots with multiplicity, by exact trial of the candidates
    /// allowed by the rational root theorem.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        let mut p = self.clone();
        // zero roots first
        let zeros = p.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if zeros > 0 {
            out.push((Rational::zero(), zeros));
            p = Poly::new(p.coeffs[zeros..].to_vec());
        }
        if p.degree() == Some(0) {
            return out;
        }
        let ints = p.primitive_integer();
        let lead = ints.last().unwrap().abs();
        let konst = ints[0].abs();
        let mut cands: Vec<Rational> = Vec::new();
        for q in divisors(&lead) {
            for pn in divisors(&konst) {
                let r = Rational::new(pn.clone(), q.clone());
                if !cands.contains(&r) {
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
        }
        cands.sort();
        for r in cands {
            let lin = Poly::linear_root(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = p.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                p = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
            if p.degree() == Some(0) {
                break;
            }
        }
        out
    }

    /// Factorisation over ℚ into monic irreducibles with multiplicities,
    /// complete for factors of degree ≤ 3. Returns `(factors, remainder)`;
    /// the remainder is a monic product of unresolved factors of degree ≥ 4
    /// with no rational roots (it may still be reducible).
    pub fn factor(&self) -> (Vec<(Poly, usize)>, Option<(Poly, usize)>) {
        let mut factors = Vec::new();
        let mut unresolved = None;
        for (sqfree, mult) in self.square_free() {
            let mut rest = sqfree.clone();
            for (r, _) in sqfree.rational_roots() {
                let lin = Poly::linear_root(&r);
                rest = rest.div_rem(&lin).0;
                factors.push((lin, mult));
            }
            match rest.degree() {
                Some(0) | None => {}
                Some(d) if d <= 3 => factors.push((rest.monic(), mult)),
                Some(_) => {
                    if let Some((a, b)) = split_quartic(&rest) {
                        factors.push((a, mult));
                        factors.push((b, mult));
                    } else {
                        unresolved = Some((rest.monic(), mult));
                    }
                }
            }
        }
        (factors, unresolved)
    }

    /// Yun's square-free decomposition: monic factors `fᵢ` with `p = c ∏ fᵢ^i`.
    pub fn square_free(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                s.push_str(&fmt_rational(&mag));
            }
            if k > 0 {
                if show_coeff {
                    s.push('*');
                }
                s.push_str(var);
                if k > 1 {
                    s.push_str(&format!("^{k}"));
                }
            }
        }
        s
    }
}

/// Splits a quartic without rational roots into two rational quadratics
/// `(x² + a x + b)(x² + c x + d)`, if such a splitting exists. By Gauss's
/// lemma `b` is a ratio of divisors of the constant and leading coefficients
/// of the primitive integer form.
fn split_quartic(p: &Poly) -> Option<(Poly, Poly)> {
    if p.degree() != Some(4) {
        return None;
    }
    let m = p.monic();
    let ints = m.primitive_integer();
    let (p3, p2, p1, p0) = (m.coeff(3), m.coeff(2), m.coeff(1), m.coeff(0));
    for bq in divisors(&ints[4]) {
        for bn in divisors(&ints[0]) {
            for b in [
                Rational::new(bn.clone(), bq.clone()),
                -Rational::new(bn.clone(), bq.clone()),
            ] {
                let d = &p0 / &b;
                // a + c = p3 and a c = p2 - b - d
                let pr = &p2 - &b - &d;
                let disc = &p3 * &p3 - rat(4) * &pr;
                let Some(root) = rational_sqrt(&disc) else {
                    continue;
                };
                for r in [root.clone(), -root] {
                    let a = (&p3 + &r) / rat(2);
                    let c = (&p3 - &r) / rat(2);
                    if &a * &d + &b * &c == p1 {
                        let f = Poly::new(vec![b.clone(), a, Rational::one()]);
                        let g = Poly::new(vec![d.clone(), c, Rational::one()]);
                        return Some((f, g));
                    }
                }
            }
        }
    }
    None
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Positive divisors by trial division.
pub fn divisors(n: &Integer) -> Vec<Integer> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(Integer, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while m.is_multiple_of(&p) {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}
