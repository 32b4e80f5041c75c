//! A small integer expression language used by the registry for closed-form
//! period rules and printed operators.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := integer | ident | '(' expr ')'
//!        | 'binom' '(' expr ',' expr ')'
//!        | 'sum' '(' ident '=' expr '..' expr ',' expr ')'
//! ```
//!
//! `Θ`/`φ` are accepted as aliases of `T`/`p` in operator expressions.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::rational::{binomial, Integer, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Integer),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Binom(Box<Expr>, Box<Expr>),
    Sum {
        var: String,
        lo: Box<Expr>,
        hi: Box<Expr>,
        body: Box<Expr>,
    },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Integer),
    Ident(String),
    Sym(char),
    DotDot,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c == '.' && chars.get(i + 1) == Some(&'.') {
            out.push(Tok::DotDot);
            i += 2;
        } else if "+-*^(),=".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} in {src:?}"
            )));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected '{c}' at token {}",
                self.pos
            )))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(e)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == "binom" => {
                self.pos += 1;
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Binom(Box::new(a), Box::new(b)))
            }
            Some(Tok::Ident(name)) if name == "sum" => {
                self.pos += 1;
                self.expect('(')?;
                let Some(Tok::Ident(var)) = self.peek().cloned() else {
                    return Err(Error::Parse("sum needs an index variable".into()));
                };
                self.pos += 1;
                self.expect('=')?;
                let lo = self.expr()?;
                if self.peek() != Some(&Tok::DotDot) {
                    return Err(Error::Parse("expected '..' in sum range".into()));
                }
                self.pos += 1;
                let hi = self.expr()?;
                self.expect(',')?;
                let body = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Sum {
                    var,
                    lo: Box::new(lo),
                    hi: Box::new(hi),
                    body: Box::new(body),
                })
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser {
            toks: lex(src)?,
            pos: 0,
        };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in {src:?}")));
        }
        Ok(e)
    }

    /// Integer evaluation. Powers need a non-negative exponent.
    pub fn eval_int(&self, env: &mut HashMap<String, Integer>) -> Result<Integer> {
        Ok(match self {
            Expr::Num(n) => n.clone(),
            Expr::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("unbound variable {v}")))?,
            Expr::Neg(a) => -a.eval_int(env)?,
            Expr::Add(a, b) => a.eval_int(env)? + b.eval_int(env)?,
            Expr::Sub(a, b) => a.eval_int(env)? - b.eval_int(env)?,
            Expr::Mul(a, b) => a.eval_int(env)? * b.eval_int(env)?,
            Expr::Pow(a, b) => {
                let base = a.eval_int(env)?;
                let e = small(&b.eval_int(env)?)?;
                if e < 0 {
                    return Err(Error::Parse(
                        "negative exponent in integer expression".into(),
                    ));
                }
                num_traits::pow(base, e as usize)
            }
            Expr::Binom(a, b) => binomial(small(&a.eval_int(env)?)?, small(&b.eval_int(env)?)?),
            Expr::Sum { var, lo, hi, body } => {
                let lo = small(&lo.eval_int(env)?)?;
                let hi = small(&hi.eval_int(env)?)?;
                let saved = env.get(var).cloned();
                let mut acc = Integer::zero();
                for k in lo..=hi {
                    env.insert(var.clone(), Integer::from(k));
                    acc += body.eval_int(env)?;
                }
                match saved {
                    Some(s) => env.insert(var.clone(), s),
                    None => env.remove(var),
                };
                acc
            }
        })
    }

    /// Evaluates to a bivariate integer polynomial in `T` (Θ) and `p` (φ),
    /// keyed by (Θ-power, φ-power).
    pub fn eval_operator(&self) -> Result<BiPoly> {
        Ok(match self {
            Expr::Num(n) => BiPoly::constant(n.clone()),
            Expr::Var(v) => match v.as_str() {
                "T" | "Θ" | "theta" => BiPoly::monomial(1, 0),
                "p" | "φ" | "phi" => BiPoly::monomial(0, 1),
                _ => return Err(Error::Parse(format!("unknown operator variable {v}"))),
            },
            Expr::Neg(a) => a.eval_operator()?.scale(&-Integer::one()),
            Expr::Add(a, b) => a.eval_operator()?.add(&b.eval_operator()?),
            Expr::Sub(a, b) => a
                .eval_operator()?
                .add(&b.eval_operator()?.scale(&-Integer::one())),
            Expr::Mul(a, b) => a.eval_operator()?.mul(&b.eval_operator()?),
            Expr::Pow(a, b) => {
                let e = small(&b.eval_int(&mut HashMap::new())?)?;
                if e < 0 {
                    return Err(Error::Parse("negative exponent in operator".into()));
                }
                let base = a.eval_operator()?;
                let mut acc = BiPoly::constant(Integer::one());
                for _ in 0..e {
                    acc = acc.mul(&base);
                }
                acc
            }
            Expr::Binom(..) | Expr::Sum { .. } => {
                BiPoly::constant(self.eval_int(&mut HashMap::new())?)
            }
        })
    }
}

impl Expr {
    /// Evaluates to a polynomial in the named variables.
    pub fn eval_mpoly(&self, vars: &[&str]) -> Result<MPoly> {
        let n = vars.len();
        Ok(match self {
            Expr::Num(c) => MPoly::constant(n, Rational::from_integer(c.clone())),
            Expr::Var(v) => match vars.iter().position(|x| x == v) {
                Some(i) => MPoly::var(n, i),
                None => return Err(Error::Parse(format!("unknown variable {v}"))),
            },
            Expr::Neg(a) => -&a.eval_mpoly(vars)?,
            Expr::Add(a, b) => &a.eval_mpoly(vars)? + &b.eval_mpoly(vars)?,
            Expr::Sub(a, b) => &a.eval_mpoly(vars)? - &b.eval_mpoly(vars)?,
            Expr::Mul(a, b) => &a.eval_mpoly(vars)? * &b.eval_mpoly(vars)?,
            Expr::Pow(a, b) => {
                let e = small(&b.eval_int(&mut HashMap::new())?)?;
                if e < 0 {
                    return Err(Error::Parse("negative exponent in polynomial".into()));
                }
                a.eval_mpoly(vars)?.pow(e as u32)
            }
            Expr::Binom(..) | Expr::Sum { .. } => MPoly::constant(
                n,
                Rational::from_integer(self.eval_int(&mut HashMap::new())?),
            ),
        })
    }
}

fn small(n: &Integer) -> Result<i64> {
    n.to_i64()
        .filter(|v| v.abs() < 1 << 40)
        .ok_or_else(|| Error::Parse(format!("{n} out of range")))
}

/// Commutative polynomial in Θ and φ. Operators are written with all φ-powers
/// to the left of Θ-powers, so commutative multiplication is only valid for
/// the coefficient polynomials as printed, which is how the registry uses it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BiPoly {
    pub terms: BTreeMap<(usize, usize), Integer>,
}

impl BiPoly {
    pub fn constant(c: Integer) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        BiPoly { terms }
    }

    pub fn monomial(theta: usize, phi: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((theta, phi), Integer::one());
        BiPoly { terms }
    }

    fn scale(&self, c: &Integer) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            let e = terms.entry(*k).or_insert_with(Integer::zero);
            *e += v;
        }
        terms.retain(|_, v| !v.is_zero());
        BiPoly { terms }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<(usize, usize), Integer> = BTreeMap::new();
        for ((a1, b1), v1) in &self.terms {
            for ((a2, b2), v2) in &o.terms {
                *terms
                    .entry((a1 + a2, b1 + b2))
                    .or_insert_with(Integer::zero) += v1 * v2;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        BiPoly { terms }
    }

    /// Dense matrix `c[i][j]`, i = Θ-power, j = φ-power.
    pub fn to_matrix(&self) -> Vec<Vec<Integer>> {
        let r = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let d = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let mut m = vec![vec![Integer::zero(); d + 1]; r + 1];
        for ((i, j), v) in &self.terms {
            m[*i][*j] = v.clone();
        }
        m
    }
}
