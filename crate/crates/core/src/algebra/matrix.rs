use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Coeff, Rational};
use crate::par;

/// Determinant by Bareiss fraction-free elimination.
///
/// Every intermediate quotient is exact, so this works over any integral
/// domain whose `div_exact` succeeds on exact multiples.
pub fn determinant<K: Coeff>(m: &[Vec<K>]) -> K {
    let n = m.len();
    if n == 0 {
        return K::one();
    }
    let mut a: Vec<Vec<K>> = m.to_vec();
    let mut sign = false;
    let mut prev = K::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return K::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev).expect("Bareiss step is exact");
            }
            a[i][k] = K::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

fn minor<K: Clone>(m: &[Vec<K>], row: usize, col: usize) -> Vec<Vec<K>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Classical adjugate: `adj[i][j] = (-1)^(i+j) det(minor(j, i))`, so that
/// `adj * m = m * adj = det(m) * I`.
pub fn adjugate<K: Coeff>(m: &[Vec<K>]) -> Vec<Vec<K>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![K::one()]];
    }
    let cells = par::map_range(0..n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        let d = determinant(&minor(m, j, i));
        if (i + j) % 2 == 1 {
            d.neg()
        } else {
            d
        }
    });
    cells.chunks(n).map(|r| r.to_vec()).collect()
}

fn to_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

fn reduce_row(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Solves `a x = b` over `Q` by fraction-free elimination on integer rows.
///
/// Returns `None` when the system is inconsistent. Free variables are set
/// to zero, so the returned solution is determined by the column order.
pub fn solve_linear_system(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut full = r.clone();
            full.push(bi.clone());
            let mut ir = to_integer_row(&full);
            reduce_row(&mut ir);
            ir
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pv - &f * y;
            }
            reduce_row(row);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // rows beyond the rank must be zero on the right-hand side
    if rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![<Rational as Coeff>::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        let row = &rows[i];
        x[c] = Rational::new(row[cols].clone(), row[c].clone());
    }
    Some(x)
}

/// Matrix product, used by tests and by the adjugate cross-checks.
pub fn mat_mul<K: Coeff>(a: &[Vec<K>], b: &[Vec<K>]) -> Vec<Vec<K>> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(K::zero(), |acc, (x, brow)| acc.add(&x.mul(&brow[j])))
                })
                .collect()
        })
        .collect()
}
