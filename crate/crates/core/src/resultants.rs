//! Sylvester resultants, adjugate Bezout cofactors and the graded Bezout
//! solve used at every Hensel level.
//!
//! Univariate polynomials are coefficient vectors in ascending order
//! (`p[k]` multiplies `y^k`) with an explicitly declared degree.

use crate::algebra::{adjugate, determinant, Coeff, Field, Monomial, MultiPoly, Var};
use crate::error::{Error, Result};
use crate::grading::{homogeneous_weight, monic_degree, Weight};

fn coeff<K: Coeff>(p: &[K], k: usize) -> K {
    p.get(k).cloned().unwrap_or_else(K::zero)
}

fn check_declared<K: Coeff>(p: &[K], deg: usize, name: &str) -> Result<()> {
    if p.iter().skip(deg + 1).any(|c| !c.is_zero()) {
        return Err(Error::usage(format!(
            "{name} has degree above its declared degree {deg}"
        )));
    }
    Ok(())
}

/// The `(m+n) x (m+n)` Sylvester matrix: `n` shifted rows of `g`
/// (declared degree `m`) above `m` shifted rows of `h` (declared degree
/// `n`), coefficients in descending order.
pub fn sylvester_matrix<K: Coeff>(g: &[K], m: usize, h: &[K], n: usize) -> Vec<Vec<K>> {
    let size = m + n;
    let mut s = vec![vec![K::zero(); size]; size];
    for k in 0..n {
        for i in 0..=m {
            s[k][k + m - i] = coeff(g, i);
        }
    }
    for k in 0..m {
        for i in 0..=n {
            s[n + k][k + n - i] = coeff(h, i);
        }
    }
    s
}

/// `Res(g, h)` for declared degrees `m` and `n`.
pub fn resultant<K: Coeff>(g: &[K], m: usize, h: &[K], n: usize) -> Result<K> {
    if g.iter().all(Coeff::is_zero) && h.iter().all(Coeff::is_zero) {
        return Err(Error::usage("resultant of two zero polynomials"));
    }
    check_declared(g, m, "g")?;
    check_declared(h, n, "h")?;
    Ok(determinant(&sylvester_matrix(g, m, h, n)))
}

/// Bezout data for a fixed pair `(g, h)`: the resultant and the adjugate
/// of the Sylvester matrix, so that many right-hand sides can be solved.
#[derive(Clone, Debug)]
pub struct BezoutSolver<K> {
    m: usize,
    n: usize,
    res: K,
    adj: Vec<Vec<K>>,
}

impl<K: Coeff> BezoutSolver<K> {
    pub fn new(g: &[K], m: usize, h: &[K], n: usize) -> Result<Self> {
        check_declared(g, m, "g")?;
        check_declared(h, n, "h")?;
        if m + n == 0 {
            return Err(Error::usage("both polynomials are constants"));
        }
        let s = sylvester_matrix(g, m, h, n);
        let res = determinant(&s);
        let adj = adjugate(&s);
        Ok(BezoutSolver { m, n, res, adj })
    }

    pub fn resultant(&self) -> &K {
        &self.res
    }

    /// `(a, b)` with `g*a + h*b = Res(g,h) * f`, `deg a < n`, `deg b < m`.
    /// Entries are integer polynomials in the coefficients of `g`, `h`, `f`.
    pub fn cofactors(&self, f: &[K]) -> Result<(Vec<K>, Vec<K>)> {
        let size = self.m + self.n;
        if f.iter().skip(size).any(|c| !c.is_zero()) {
            return Err(Error::usage(format!("deg f must be below {size}")));
        }
        // row vector f (descending powers) times adj(S)
        let fvec: Vec<K> = (0..size).map(|col| coeff(f, size - 1 - col)).collect();
        let w: Vec<K> = (0..size)
            .map(|j| {
                fvec.iter()
                    .zip(&self.adj)
                    .filter(|(x, _)| !x.is_zero())
                    .fold(K::zero(), |acc, (x, row)| acc.add(&x.mul(&row[j])))
            })
            .collect();
        let a = (0..self.n).map(|k| w[self.n - 1 - k].clone()).collect();
        let b = (0..self.m).map(|k| w[self.n + self.m - 1 - k].clone()).collect();
        Ok((a, b))
    }
}

/// `(a, b)` with `g*a + h*b = Res(g,h) * f` for declared degrees.
pub fn bezout_cofactors<K: Coeff>(g: &[K], m: usize, h: &[K], n: usize, f: &[K]) -> Result<(Vec<K>, Vec<K>)> {
    BezoutSolver::new(g, m, h, n)?.cofactors(f)
}

/// Product of two ascending coefficient vectors.
pub fn poly_mul<K: Coeff>(a: &[K], b: &[K]) -> Vec<K> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![K::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Specialises a bivariate polynomial at `x = 1`, giving coefficients in `y`.
fn at_x_one<K: Coeff>(p: &MultiPoly<K>) -> Vec<K> {
    let d = p.degree_in(Var::Y).unwrap_or(0) as usize;
    let mut out = vec![K::zero(); d + 1];
    for (m, c) in p.terms() {
        let j = m.exp(Var::Y) as usize;
        out[j] = out[j].add(c);
    }
    out
}

/// Solver for `F = G*phi + H*psi` inside the graded ring, for fixed
/// weight-homogeneous `G`, `H` monic in `y`.
#[derive(Clone, Debug)]
pub struct GradedBezout<K> {
    w: Weight,
    xvar: Var,
    s: u64,
    t: u64,
    m: usize,
    n: usize,
    inner: BezoutSolver<K>,
    res_inv: K,
}

impl<K: Field> GradedBezout<K> {
    pub fn new(g: &MultiPoly<K>, h: &MultiPoly<K>, w: Weight) -> Result<Self> {
        let w = w.require_positive_x()?;
        let xvar = crate::grading::x_variable(&g.add(h))?.unwrap_or(Var::X);
        let m = monic_degree(g)? as usize;
        let n = monic_degree(h)? as usize;
        let s = homogeneous_weight(g, w).ok_or_else(|| Error::usage("G is not weight-homogeneous"))?;
        let t = homogeneous_weight(h, w).ok_or_else(|| Error::usage("H is not weight-homogeneous"))?;
        let inner = BezoutSolver::new(&at_x_one(g), m, &at_x_one(h), n)?;
        let res_inv = inner.resultant().inv().ok_or(Error::NotCoprime)?;
        Ok(GradedBezout {
            w,
            xvar,
            s,
            t,
            m,
            n,
            inner,
            res_inv,
        })
    }

    pub fn with_x_variable(mut self, v: Var) -> Self {
        self.xvar = v;
        self
    }

    /// `R = Res_y(G, H)` at `x = 1`.
    pub fn resultant(&self) -> &K {
        self.inner.resultant()
    }

    fn rehomogenize(&self, coeffs: &[K], weight: u64) -> Result<MultiPoly<K>> {
        let mut out = MultiPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self
                .w
                .x_exponent(weight, j as u32)
                .ok_or_else(|| Error::usage("right-hand side is not in the expected graded piece"))?;
            out.add_term(Monomial::from_pairs([(self.xvar, e), (Var::Y, j as u32)]), c);
        }
        Ok(out)
    }

    /// Solves for `F` homogeneous of weight `s + t + i`, `deg_y F < m + n`:
    /// returns `phi` in `R_{t+i}` with `deg_y < n` and `psi` in `R_{s+i}`
    /// with `deg_y < m`.
    pub fn solve(&self, f: &MultiPoly<K>) -> Result<(MultiPoly<K>, MultiPoly<K>)> {
        if f.is_zero() {
            return Ok((MultiPoly::zero(), MultiPoly::zero()));
        }
        let total = homogeneous_weight(f, self.w).ok_or_else(|| Error::usage("F is not weight-homogeneous"))?;
        if total < self.s + self.t {
            return Err(Error::usage("F has weight below s + t"));
        }
        if f.degree_in(Var::Y).unwrap_or(0) as usize >= self.m + self.n {
            return Err(Error::usage("deg_y F must be below deg_y(GH)"));
        }
        let i = total - self.s - self.t;
        let (a, b) = self.inner.cofactors(&at_x_one(f))?;
        let a: Vec<K> = a.iter().map(|c| c.mul(&self.res_inv)).collect();
        let b: Vec<K> = b.iter().map(|c| c.mul(&self.res_inv)).collect();
        Ok((self.rehomogenize(&a, self.t + i)?, self.rehomogenize(&b, self.s + i)?))
    }

    /// The unscaled cofactors `R*phi`, `R*psi` (integral for integer input).
    pub fn solve_scaled(&self, f: &MultiPoly<K>) -> Result<(MultiPoly<K>, MultiPoly<K>)> {
        let (phi, psi) = self.solve(f)?;
        let r = self.resultant();
        Ok((phi.scale(r), psi.scale(r)))
    }
}

/// One-shot graded Bezout solve: `F = G*phi + H*psi`.
pub fn graded_bezout_solve<K: Field>(
    g: &MultiPoly<K>,
    h: &MultiPoly<K>,
    f: &MultiPoly<K>,
    w: Weight,
) -> Result<(MultiPoly<K>, MultiPoly<K>)> {
    let mut solver = GradedBezout::new(g, h, w)?;
    if let Some(v) = crate::grading::x_variable(f)? {
        solver = solver.with_x_variable(v);
    }
    solver.solve(f)
}
