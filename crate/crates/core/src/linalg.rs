//! Exact linear algebra over ℤ and ℚ: fraction-free elimination, nullspaces,
//! Bareiss determinants and integer kernels.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::rational::{from_int, gcd_of, lcm_of_denominators, Integer, Rational};

fn primitive_row(row: &mut [Integer]) {
    let g = gcd_of(row.iter());
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Clears denominators row by row.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<Integer>> {
    rows.iter()
        .map(|r| {
            let l = lcm_of_denominators(r.iter());
            let mut out: Vec<Integer> = r
                .iter()
                .map(|q| (q * from_int(l.clone())).to_integer())
                .collect();
            primitive_row(&mut out);
            out
        })
        .collect()
}

/// Row echelon form by fraction-free (cross-multiplication) elimination,
/// keeping every row primitive. Returns the nonzero rows and their pivot columns.
pub fn echelon(mut rows: Vec<Vec<Integer>>, ncols: usize) -> (Vec<Vec<Integer>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].bits())
        else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        let pv = pivot_row[c].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let a = &pv / &g;
            let b = &row[c] / &g;
            for k in c..ncols {
                row[k] = &row[k] * &a - &pivot_row[k] * &b;
            }
            primitive_row(row);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    echelon(integer_rows(rows), ncols).1.len()
}

/// Basis of the right nullspace { v : M v = 0 } over ℚ, one vector per free column,
/// each scaled to a primitive integer vector.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Integer>> {
    let (ech, pivots) = echelon(integer_rows(rows), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rational::zero(); ncols];
        v[f] = Rational::one();
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let mut s = Rational::zero();
            for k in pc + 1..ncols {
                if !ech[i][k].is_zero() {
                    s += from_int(ech[i][k].clone()) * &v[k];
                }
            }
            v[pc] = -s / from_int(ech[i][pc].clone());
        }
        let l = lcm_of_denominators(v.iter());
        let mut iv: Vec<Integer> = v
            .iter()
            .map(|q| (q * from_int(l.clone())).to_integer())
            .collect();
        primitive_row(&mut iv);
        basis.push(iv);
    }
    basis
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_bareiss(m: &[Vec<Integer>]) -> Integer {
    let n = m.len();
    if n == 0 {
        return Integer::one();
    }
    let mut a: Vec<Vec<Integer>> = m.to_vec();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Integer::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Basis of the integer kernel { v ∈ ℤⁿ : A v = 0 } of an m×n integer matrix,
/// via unimodular column operations on the stacked matrix [A; I].
pub fn integer_kernel(a: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let m = a.len();
    // columns of [A; I]
    let mut cols: Vec<Vec<Integer>> = (0..ncols)
        .map(|j| {
            let mut c: Vec<Integer> = a.iter().map(|row| Integer::from(row[j])).collect();
            c.extend((0..ncols).map(|k| {
                if k == j {
                    Integer::one()
                } else {
                    Integer::zero()
                }
            }));
            c
        })
        .collect();
    let mut done = 0;
    for r in 0..m {
        // gcd-reduce row r over the columns not yet used as pivots
        loop {
            let nz: Vec<usize> = (done..ncols).filter(|&j| !cols[j][r].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    cols.swap(done, j);
                    done += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| cols[j][r].abs()).unwrap();
            for &j in &nz {
                if j == p {
                    continue;
                }
                let q = cols[j][r].div_floor(&cols[p][r]);
                let pc = cols[p].clone();
                for (x, y) in cols[j].iter_mut().zip(&pc) {
                    *x -= &q * y;
                }
            }
        }
    }
    cols[done..]
        .iter()
        .map(|c| {
            c[m..]
                .iter()
                .map(|x| i64::try_from(x).expect("kernel entry fits in i64"))
                .collect()
        })
        .collect()
}
