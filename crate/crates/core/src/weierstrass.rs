//! Weierstrass preparation `f = u*w` and approximate roots.
//!
//! Preparation works one power of `X` at a time. Writing `f = sum f_d X^d`
//! with `f_d` polynomials in `Y`, and `f_0 = Y^m u_0` with `u_0(0) = 1`,
//! each step splits
//!
//! `L_d = f_d - sum_{0<e<d} u_e w_{d-e} = u_0 w_d + u_d Y^m`
//!
//! into `w_d = (u_0^{-1} L_d) mod Y^m` and `u_d = (L_d - u_0 w_d) / Y^m`.
//! Nothing is divided by anything but `Y^m` and the unit `u_0`, so integer
//! input gives integer output.

use crate::algebra::{Coeff, Rational, TruncatedSeries, YSeriesPoly};
use crate::error::{Error, Result};

/// `f = u*w` modulo `X^(prec+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PreparedFactorization<K: Coeff> {
    pub u: YSeriesPoly<K>,
    pub w: YSeriesPoly<K>,
    pub prec: u32,
}

impl<K: Coeff> PreparedFactorization<K> {
    pub fn degree(&self) -> usize {
        self.w.degree()
    }
}

type YPoly<K> = Vec<K>;

fn ypoly_sub<K: Coeff>(a: &mut YPoly<K>, b: &[K]) {
    if a.len() < b.len() {
        a.resize(b.len(), K::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.sub(y);
    }
}

fn ypoly_mul<K: Coeff>(a: &[K], b: &[K]) -> YPoly<K> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![K::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Inverse of `u` (with `u[0] = 1`) modulo `Y^m`.
fn inverse_mod<K: Coeff>(u: &[K], m: usize) -> YPoly<K> {
    let mut inv = vec![K::zero(); m];
    if m == 0 {
        return inv;
    }
    inv[0] = K::one();
    for k in 1..m {
        let mut acc = K::zero();
        for i in 1..=k.min(u.len().saturating_sub(1)) {
            acc = acc.add(&u[i].mul(&inv[k - i]));
        }
        inv[k] = acc.neg();
    }
    inv
}

fn to_ypoly<K: Coeff>(var: crate::algebra::Var, prec: u32, rows: &[YPoly<K>]) -> YSeriesPoly<K> {
    let deg = rows.iter().map(Vec::len).max().unwrap_or(0);
    let coeffs = (0..deg)
        .map(|j| {
            let cs = rows.iter().map(|r| r.get(j).cloned().unwrap_or_else(K::zero)).collect();
            TruncatedSeries::from_coeffs(var, prec, cs)
        })
        .collect();
    YSeriesPoly::new(var, prec, coeffs)
}

/// Prepares `f` to `X`-precision `prec` (at most that of `f`). Requires
/// `f(0, Y) = Y^m + (higher powers of Y)` for some `m`.
pub fn weierstrass_prepare<K: Coeff>(f: &YSeriesPoly<K>, prec: u32) -> Result<PreparedFactorization<K>> {
    let prec = prec.min(f.prec());
    let var = f.var();
    let rows: Vec<YPoly<K>> = (0..=prec)
        .map(|d| (0..=f.degree()).map(|j| f.coeff_at(d, j)).collect())
        .collect();
    let m = rows[0].iter().position(|c| !c.is_zero()).ok_or(Error::NotYRegular)?;
    if !rows[0][m].is_one() {
        return Err(Error::usage(format!(
            "the lowest coefficient of f(0,Y) is {}, not 1; divide by it first",
            rows[0][m]
        )));
    }
    let u0: YPoly<K> = rows[0][m..].to_vec();
    let u0_inv = inverse_mod(&u0, m);
    let mut us = vec![u0.clone()];
    let mut mono = vec![K::zero(); m + 1];
    mono[m] = K::one();
    let mut ws = vec![mono];
    for d in 1..=prec as usize {
        let mut l = rows[d].clone();
        for e in 1..d {
            ypoly_sub(&mut l, &ypoly_mul(&us[e], &ws[d - e]));
        }
        let mut wd = ypoly_mul(&u0_inv, &l);
        wd.truncate(m);
        let mut rest = l;
        ypoly_sub(&mut rest, &ypoly_mul(&u0, &wd));
        debug_assert!(rest.iter().take(m).all(K::is_zero));
        let ud = if rest.len() > m { rest[m..].to_vec() } else { Vec::new() };
        us.push(ud);
        ws.push(wd);
    }
    Ok(PreparedFactorization {
        u: to_ypoly(var, prec, &us),
        w: to_ypoly(var, prec, &ws),
        prec,
    })
}

/// Divides `f` by the lowest nonzero coefficient `c` of `f(0, Y)` and
/// returns `(c, f / c)`.
pub fn normalize_leading(f: &YSeriesPoly<Rational>) -> Result<(Rational, YSeriesPoly<Rational>)> {
    let c = (0..=f.degree())
        .map(|j| f.coeff_at(0, j))
        .find(|c| !Coeff::is_zero(c))
        .ok_or(Error::NotYRegular)?;
    let inv = Coeff::inv(&c).expect("nonzero rational");
    Ok((c, f.scale(&inv)))
}

/// The monic `p` of degree `n/d` with `deg_Y(f - p^d) < n - n/d`.
pub fn approximate_root<K: Coeff>(f: &YSeriesPoly<K>, d: u32) -> Result<YSeriesPoly<K>> {
    if !f.is_monic() || f.degree() == 0 {
        return Err(Error::usage("f must be monic of positive degree in Y"));
    }
    let n = f.degree() as u32;
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::usage(format!("{d} does not divide deg f = {n}")));
    }
    let k = n / d;
    let bound = (n - k) as usize;
    let inv_d = K::from_rational(&crate::algebra::rat(1, d as i64));
    let mut p = YSeriesPoly::y_power(f.var(), f.prec(), k);
    // each step strictly lowers deg_Y(f - p^d), so at most n steps
    loop {
        let r = f.sub(&p.pow(d));
        if r.is_zero() || r.degree() < bound {
            return Ok(p);
        }
        let top = r.degree();
        let shift = top - bound;
        let lead = r.coeff(top).scale(&inv_d);
        let mut coeffs = vec![TruncatedSeries::zero(f.var(), f.prec()); shift + 1];
        coeffs[shift] = lead;
        p = p.add(&YSeriesPoly::new(f.var(), f.prec(), coeffs));
    }
}
