use std::fmt;

use super::{Coeff, Monomial, MultiPoly, TruncatedSeries, Var};
use crate::error::{Error, Result};

/// A polynomial in `Y` whose coefficients are power series in `X` (or `T`)
/// truncated at a common precision.
#[derive(Clone, PartialEq)]
pub struct YSeriesPoly<K> {
    var: Var,
    prec: u32,
    /// `coeffs[j]` multiplies `Y^j`; no trailing zero series.
    coeffs: Vec<TruncatedSeries<K>>,
}

impl<K: Coeff> YSeriesPoly<K> {
    pub fn new(var: Var, prec: u32, coeffs: Vec<TruncatedSeries<K>>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                assert_eq!(c.var(), var, "coefficient in the wrong variable");
                c.truncate(prec)
            })
            .collect::<Vec<_>>();
        let prec = coeffs.iter().map(|c| c.prec()).min().unwrap_or(prec).min(prec);
        let mut p = YSeriesPoly {
            var,
            prec,
            coeffs: coeffs.into_iter().map(|c| c.truncate(prec)).collect(),
        };
        p.trim();
        p
    }

    pub fn zero(var: Var, prec: u32) -> Self {
        YSeriesPoly {
            var,
            prec,
            coeffs: Vec::new(),
        }
    }

    /// `Y^k`.
    pub fn y_power(var: Var, prec: u32, k: u32) -> Self {
        let mut coeffs = vec![TruncatedSeries::zero(var, prec); k as usize + 1];
        coeffs[k as usize] = TruncatedSeries::one(var, prec);
        YSeriesPoly { var, prec, coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Reads a polynomial in `var` and `Y`, truncating at `prec`.
    pub fn from_poly(var: Var, prec: u32, p: &MultiPoly<K>) -> Result<Self> {
        let deg = p.degree_in(Var::Y).unwrap_or(0) as usize;
        let mut coeffs = vec![TruncatedSeries::zero(var, prec); deg + 1];
        for (m, c) in p.terms() {
            let (j, rest) = m.split_off(Var::Y);
            let (i, rest) = rest.split_off(var);
            if !rest.is_one() {
                return Err(Error::usage(format!(
                    "expected a polynomial in {var} and Y, found {rest}"
                )));
            }
            if i <= prec {
                let s = &mut coeffs[j as usize];
                let old: K = s.coeff(i);
                s.set_coeff(i, old.add(c));
            }
        }
        Ok(YSeriesPoly::new(var, prec, coeffs))
    }

    /// The truncation as a polynomial in `var` and `Y`.
    pub fn to_poly(&self) -> MultiPoly<K> {
        let mut out = MultiPoly::zero();
        for (j, s) in self.coeffs.iter().enumerate() {
            for (i, c) in s.coeffs().iter().enumerate() {
                out.add_term(Monomial::from_pairs([(self.var, i as u32), (Var::Y, j as u32)]), c);
            }
        }
        out
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `Y`-degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[TruncatedSeries<K>] {
        &self.coeffs
    }

    /// Coefficient series of `Y^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> TruncatedSeries<K> {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.var, self.prec))
    }

    /// Coefficient of `var^i Y^j`.
    pub fn coeff_at(&self, i: u32, j: usize) -> K {
        self.coeffs.get(j).map(|s| s.coeff(i)).unwrap_or_else(K::zero)
    }

    pub fn is_monic(&self) -> bool {
        match self.coeffs.last() {
            Some(lc) => *lc == TruncatedSeries::one(self.var, self.prec),
            None => false,
        }
    }

    /// Monic and every lower coefficient vanishes at the origin.
    pub fn is_weierstrass(&self) -> bool {
        self.is_monic() && self.coeffs[..self.degree()].iter().all(|c| c.coeff(0).is_zero())
    }

    pub fn truncate(&self, prec: u32) -> Self {
        YSeriesPoly::new(self.var, prec.min(self.prec), self.coeffs.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|j| self.coeff(j).add(&rhs.coeff(j)).truncate(prec))
            .collect();
        YSeriesPoly::new(self.var, prec, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        YSeriesPoly {
            var: self.var,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(TruncatedSeries::neg).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        YSeriesPoly::new(self.var, self.prec, self.coeffs.iter().map(|s| s.scale(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.var, prec);
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut coeffs = vec![TruncatedSeries::zero(self.var, prec); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        YSeriesPoly::new(self.var, prec, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::y_power(self.var, self.prec, 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by a series in the base variable.
    pub fn mul_series(&self, s: &TruncatedSeries<K>) -> Self {
        YSeriesPoly::new(
            self.var,
            self.prec.min(s.prec()),
            self.coeffs.iter().map(|c| c.mul(s)).collect(),
        )
    }

    /// `f(T^n, alpha(T))` with `alpha` a series in `T`; the result has the
    /// precision of `alpha` (or less, if `f` is known too coarsely).
    pub fn substitute_series(&self, n: u32, alpha: &TruncatedSeries<K>) -> TruncatedSeries<K> {
        let composed: Vec<TruncatedSeries<K>> = self.coeffs.iter().map(|c| c.compose_power(alpha.var(), n)).collect();
        let prec = composed
            .iter()
            .map(|c| c.prec())
            .min()
            .unwrap_or(alpha.prec())
            .min(alpha.prec());
        // Horner in Y
        let mut acc = TruncatedSeries::zero(alpha.var(), prec);
        for c in composed.iter().rev() {
            acc = acc.mul(alpha).add(c);
        }
        acc.truncate(prec)
    }

    /// Substitutes `var = new_var^n` in every coefficient.
    pub fn compose_power(&self, new_var: Var, n: u32) -> Self {
        let coeffs: Vec<_> = self.coeffs.iter().map(|c| c.compose_power(new_var, n)).collect();
        let prec = n * (self.prec + 1) - 1;
        YSeriesPoly::new(new_var, prec, coeffs)
    }

    /// `f(var, Y + lambda)`.
    pub fn shift_y(&self, lambda: &TruncatedSeries<K>) -> Self {
        let prec = self.prec.min(lambda.prec());
        let linear = YSeriesPoly::new(
            self.var,
            prec,
            vec![lambda.truncate(prec), TruncatedSeries::one(self.var, prec)],
        );
        let mut acc = Self::zero(self.var, prec);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(&linear)
                .add(&YSeriesPoly::new(self.var, prec, vec![c.truncate(prec)]));
        }
        acc
    }

    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> L + Copy) -> YSeriesPoly<L> {
        YSeriesPoly::new(
            self.var,
            self.prec,
            self.coeffs.iter().map(|s| s.map_coeffs(f)).collect(),
        )
    }
}

impl<K: Coeff> fmt::Display for YSeriesPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly();
        write!(f, "{p} + O({}^{})", self.var, self.prec + 1)
    }
}

impl<K: Coeff> fmt::Debug for YSeriesPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Rational};

    type P = MultiPoly<Rational>;

    fn xy(s: &[(u32, u32, i64)]) -> P {
        P::from_terms(
            s.iter()
                .map(|&(i, j, c)| (Monomial::from_pairs([(Var::X, i), (Var::Y, j)]), int(c))),
        )
    }

    fn series_t(prec: u32, cs: &[(u32, i64)]) -> TruncatedSeries<Rational> {
        let mut s = TruncatedSeries::zero(Var::T, prec);
        for &(i, c) in cs {
            s.set_coeff(i, int(c));
        }
        s
    }

    #[test]
    fn cusp_substitution() {
        let f = YSeriesPoly::from_poly(Var::X, 10, &xy(&[(0, 2, 1), (3, 0, -1)])).unwrap();
        assert!(f.is_weierstrass());
        assert!(f.substitute_series(2, &series_t(12, &[(3, 1)])).is_zero());
        let r = f.substitute_series(2, &series_t(12, &[(3, 1), (4, 1)]));
        assert_eq!(r.order(), Some(7));
        assert_eq!(r.coeff(7), int(2));
        assert_eq!(r.coeff(8), int(1));
    }

    #[test]
    fn line_substitution() {
        let f = YSeriesPoly::from_poly(Var::X, 6, &xy(&[(0, 1, 1), (1, 0, -1)])).unwrap();
        assert!(f.substitute_series(1, &series_t(6, &[(1, 1)])).is_zero());
    }

    #[test]
    fn shift_and_roundtrip() {
        let p = xy(&[(0, 2, 1), (1, 1, 2), (3, 0, 1)]);
        let f = YSeriesPoly::from_poly(Var::X, 8, &p).unwrap();
        assert_eq!(f.to_poly(), p);
        let lam = TruncatedSeries::monomial(Var::X, 8, 1, int(-1));
        let g = f.shift_y(&lam);
        // (Y-X)^2 + 2X(Y-X) + X^3 = Y^2 - X^2 + X^3
        assert_eq!(g.to_poly(), xy(&[(0, 2, 1), (2, 0, -1), (3, 0, 1)]));
    }
}
