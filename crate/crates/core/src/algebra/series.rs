use std::fmt;

use super::{Coeff, Monomial, MultiPoly, Var};
use crate::error::{Error, Result};
use crate::par;

/// Products with at least this many output coefficients are computed in
/// parallel.
const PAR_SERIES_THRESHOLD: usize = 16;

/// A power series in one structural variable known modulo `var^(prec+1)`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<K> {
    var: Var,
    prec: u32,
    coeffs: Vec<K>,
}

impl<K: Coeff> TruncatedSeries<K> {
    pub fn zero(var: Var, prec: u32) -> Self {
        TruncatedSeries {
            var,
            prec,
            coeffs: vec![K::zero(); prec as usize + 1],
        }
    }

    pub fn constant(var: Var, prec: u32, c: K) -> Self {
        let mut s = Self::zero(var, prec);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: Var, prec: u32) -> Self {
        Self::constant(var, prec, K::one())
    }

    /// The series `c * var^k` (zero if `k > prec`).
    pub fn monomial(var: Var, prec: u32, k: u32, c: K) -> Self {
        let mut s = Self::zero(var, prec);
        if k <= prec {
            s.coeffs[k as usize] = c;
        }
        s
    }

    /// Builds from a coefficient list, truncating or zero-padding to `prec`.
    pub fn from_coeffs(var: Var, prec: u32, mut coeffs: Vec<K>) -> Self {
        coeffs.resize(prec as usize + 1, K::zero());
        TruncatedSeries { var, prec, coeffs }
    }

    /// Series of a univariate polynomial in `var`.
    pub fn from_poly(var: Var, prec: u32, p: &MultiPoly<K>) -> Result<Self> {
        let mut s = Self::zero(var, prec);
        for (m, c) in p.terms() {
            let (e, rest) = m.split_off(var);
            if !rest.is_one() {
                return Err(Error::usage(format!("series in {var} contains {rest}")));
            }
            if e <= prec {
                s.coeffs[e as usize] = s.coeffs[e as usize].add(c);
            }
        }
        Ok(s)
    }

    /// The truncation as a polynomial in `var`.
    pub fn to_poly(&self) -> MultiPoly<K> {
        MultiPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(self.var, i as u32), c.clone())),
        )
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of `var^i`, zero beyond the precision.
    pub fn coeff(&self, i: u32) -> K {
        self.coeffs.get(i as usize).cloned().unwrap_or_else(K::zero)
    }

    pub fn set_coeff(&mut self, i: u32, c: K) {
        if i <= self.prec {
            self.coeffs[i as usize] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    /// Index of the first nonzero coefficient; `None` when zero to precision.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| i as u32)
    }

    pub fn truncate(&self, prec: u32) -> Self {
        let prec = prec.min(self.prec);
        TruncatedSeries {
            var: self.var,
            prec,
            coeffs: self.coeffs[..=prec as usize].to_vec(),
        }
    }

    /// Same coefficients, precision changed to `prec`; the caller vouches
    /// for any newly claimed coefficients being zero.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_coeffs(self.var, prec, self.coeffs.clone())
    }

    fn check_var(&self, rhs: &Self) {
        assert_eq!(self.var, rhs.var, "series in different variables");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_var(rhs);
        let prec = self.prec.min(rhs.prec);
        let coeffs = (0..=prec as usize)
            .map(|i| self.coeffs[i].add(&rhs.coeffs[i]))
            .collect();
        TruncatedSeries {
            var: self.var,
            prec,
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_var(rhs);
        let prec = self.prec.min(rhs.prec);
        let coeffs = (0..=prec as usize)
            .map(|i| self.coeffs[i].sub(&rhs.coeffs[i]))
            .collect();
        TruncatedSeries {
            var: self.var,
            prec,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            var: self.var,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(Coeff::neg).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        TruncatedSeries {
            var: self.var,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|k| k.mul(c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_var(rhs);
        let prec = self.prec.min(rhs.prec);
        let a = &self.coeffs;
        let b = &rhs.coeffs;
        let lo_a = a.iter().position(|c| !c.is_zero());
        let lo_b = b.iter().position(|c| !c.is_zero());
        let (Some(lo_a), Some(lo_b)) = (lo_a, lo_b) else {
            return Self::zero(self.var, prec);
        };
        let cell = |k: usize| {
            let mut acc = K::zero();
            if k >= lo_a + lo_b {
                for i in lo_a..=k - lo_b {
                    let (x, y) = (&a[i], &b[k - i]);
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&x.mul(y));
                    }
                }
            }
            acc
        };
        let n = prec as usize + 1;
        let coeffs = if n >= PAR_SERIES_THRESHOLD {
            par::map_range(0..n, cell)
        } else {
            (0..n).map(cell).collect()
        };
        TruncatedSeries {
            var: self.var,
            prec,
            coeffs,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.var, self.prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse to the same precision.
    pub fn invert(&self) -> Result<Self> {
        let c0inv = self.coeffs[0].inv().ok_or(Error::NotInvertible)?;
        let n = self.prec as usize + 1;
        let mut out: Vec<K> = Vec::with_capacity(n);
        out.push(c0inv.clone());
        for k in 1..n {
            let mut acc = K::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
                }
            }
            out.push(acc.mul(&c0inv).neg());
        }
        Ok(TruncatedSeries {
            var: self.var,
            prec: self.prec,
            coeffs: out,
        })
    }

    /// Substitutes `var = new_var^n`: a series known mod `X^(P+1)` becomes
    /// one known mod `T^(n(P+1))`.
    pub fn compose_power(&self, new_var: Var, n: u32) -> Self {
        let prec = n * (self.prec + 1) - 1;
        let mut s = Self::zero(new_var, prec);
        for (i, c) in self.coeffs.iter().enumerate() {
            s.coeffs[i * n as usize] = c.clone();
        }
        s
    }

    /// Inverse of [`compose_power`](Self::compose_power) on the exponents
    /// divisible by `n`; the others are dropped.
    pub fn decimate(&self, new_var: Var, n: u32) -> Self {
        let prec = self.prec / n;
        let coeffs = (0..=prec as usize)
            .map(|i| self.coeffs[i * n as usize].clone())
            .collect();
        TruncatedSeries {
            var: new_var,
            prec,
            coeffs,
        }
    }

    /// Keeps only exponents divisible by `n`.
    pub fn filter_multiples(&self, n: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (i as u32).is_multiple_of(n) {
                    c.clone()
                } else {
                    K::zero()
                }
            })
            .collect();
        TruncatedSeries {
            var: self.var,
            prec: self.prec,
            coeffs,
        }
    }

    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> L) -> TruncatedSeries<L> {
        TruncatedSeries {
            var: self.var,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<K: Coeff> fmt::Display for TruncatedSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly();
        if p.is_zero() {
            write!(f, "O({}^{})", self.var, self.prec + 1)
        } else {
            write!(f, "{p} + O({}^{})", self.var, self.prec + 1)
        }
    }
}

impl<K: Coeff> fmt::Debug for TruncatedSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
