use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::{Coeff, Field, Monomial, Rational, Var};
use crate::par;

/// Below this many term products multiplication stays on one thread.
const PAR_MUL_THRESHOLD: usize = 4096;

/// Sparse multivariate polynomial with coefficients in `K`.
///
/// Terms are keyed by [`Monomial`] in graded-lex order; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<K> {
    terms: BTreeMap<Monomial, K>,
}

impl<K: Coeff> MultiPoly<K> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), K::one())
    }

    pub fn term(m: Monomial, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, K)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn constant_term(&self) -> K {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<K> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> L) -> MultiPoly<L> {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly::from_terms(self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))))
    }

    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly::from_terms(self.terms.iter().map(|(k, v)| (k.mul(m), v.mul(c))))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let (a, b) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if a.len() * b.len() < PAR_MUL_THRESHOLD || par::num_threads() == 1 {
            return mul_chunk(a.terms.iter(), b).into_poly();
        }
        let left: Vec<(&Monomial, &K)> = a.terms.iter().collect();
        let chunk = left.len().div_ceil(par::num_threads() * 2).max(1);
        let chunks: Vec<&[(&Monomial, &K)]> = left.chunks(chunk).collect();
        let partial = par::map_collect(&chunks, |c| mul_chunk(c.iter().copied(), b));
        let mut acc = Accum(HashMap::new());
        for p in partial {
            for (m, c) in p.0 {
                acc.add(m, c);
            }
        }
        acc.into_poly()
    }

    pub fn pow(&self, e: u32) -> Self {
        Coeff::pow(self, e)
    }

    /// Replaces `v` by `val` everywhere.
    pub fn substitute(&self, v: Var, val: &MultiPoly<K>) -> Self {
        let mut map = BTreeMap::new();
        map.insert(v, val.clone());
        self.substitute_many(&map)
    }

    /// Simultaneously replaces every variable in `map`.
    pub fn substitute_many(&self, map: &BTreeMap<Var, MultiPoly<K>>) -> Self {
        let mut powers: HashMap<(Var, u32), MultiPoly<K>> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut rest = Monomial::one();
            let mut factor = MultiPoly::one();
            for (v, e) in m.iter() {
                match map.get(&v) {
                    Some(val) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| val.pow(e));
                        factor = factor.mul(pw);
                    }
                    None => rest = rest.mul(&Monomial::var(v, e)),
                }
            }
            out = out.add(&factor.mul_term(&rest, c));
        }
        out
    }

    /// Replaces each listed variable by a coefficient.
    pub fn evaluate_partial(&self, point: &BTreeMap<Var, K>) -> Self {
        let map = point
            .iter()
            .map(|(v, c)| (*v, MultiPoly::constant(c.clone())))
            .collect();
        self.substitute_many(&map)
    }

    /// Full evaluation; `None` if some variable is missing from `point`.
    pub fn evaluate(&self, point: &BTreeMap<Var, K>) -> Option<K> {
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                t = t.mul(&Coeff::pow(point.get(&v)?, e));
            }
            acc = acc.add(&t);
        }
        Some(acc)
    }

    /// Coefficients of `v^0, v^1, ...` as polynomials in the other variables.
    pub fn as_univariate(&self, v: Var) -> Vec<MultiPoly<K>> {
        let deg = match self.degree_in(v) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![MultiPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].add_term(rest, c);
        }
        out
    }

    pub fn from_univariate(v: Var, coeffs: &[MultiPoly<K>]) -> Self {
        let mut out = Self::zero();
        for (e, c) in coeffs.iter().enumerate() {
            out = out.add(&c.mul_term(&Monomial::var(v, e as u32), &K::one()));
        }
        out
    }

    /// Greatest common monomial divisor of all terms (`1` for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Divides every term by `m`; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(MultiPoly { terms })
    }

    /// Multivariate division by leading terms; returns `(q, r)` with
    /// `self = q*d + r` and no term of `r` divisible by `lt(d)` with an
    /// exactly divisible coefficient.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let Some((dm, dc)) = d.leading_term() else {
            return (Self::zero(), self.clone());
        };
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut q = Self::zero();
        let mut r = Self::zero();
        let mut p = self.clone();
        while let Some((pm, pc)) = p.leading_term() {
            let (pm, pc) = (pm.clone(), pc.clone());
            match (pm.div(&dm), pc.div_exact(&dc)) {
                (Some(qm), Some(qc)) => {
                    p = p.sub(&d.mul_term(&qm, &qc));
                    q.add_term(qm, &qc);
                }
                _ => {
                    p.terms.remove(&pm);
                    r.add_term(pm, &pc);
                }
            }
        }
        (q, r)
    }
}

struct Accum<K>(HashMap<Monomial, K>);

impl<K: Coeff> Accum<K> {
    fn add(&mut self, m: Monomial, c: K) {
        match self.0.get_mut(&m) {
            Some(old) => *old = old.add(&c),
            None => {
                self.0.insert(m, c);
            }
        }
    }

    fn into_poly(self) -> MultiPoly<K> {
        MultiPoly {
            terms: self.0.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

fn mul_chunk<'a, K: Coeff>(left: impl Iterator<Item = (&'a Monomial, &'a K)>, right: &MultiPoly<K>) -> Accum<K> {
    let mut acc = Accum(HashMap::new());
    for (m1, c1) in left {
        for (m2, c2) in &right.terms {
            acc.add(m1.mul(m2), c1.mul(c2));
        }
    }
    acc
}

impl<K: Field> MultiPoly<K> {
    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero field element")),
            None => Self::zero(),
        }
    }
}

impl MultiPoly<Rational> {
    /// Lifts a rational polynomial into any coefficient ring.
    pub fn lift<K: Coeff>(&self) -> MultiPoly<K> {
        self.map_coeffs(K::from_rational)
    }
}

impl<K: Coeff> Coeff for MultiPoly<K> {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MultiPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(K::from_rational(q))
    }
    fn inv(&self) -> Option<Self> {
        self.as_constant()?.inv().map(MultiPoly::constant)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
    fn scale(&self, q: &Rational) -> Self {
        MultiPoly::scale(self, &K::from_rational(q))
    }
}

impl<K: Coeff> fmt::Display for MultiPoly<K> {
    /// Canonical text: terms in descending order, `coef*V^e` with unit
    /// coefficients and unit exponents omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut s = c.to_string();
            let negative = s.starts_with('-') && !needs_parens(&s[1..]);
            if negative {
                s.remove(0);
            }
            if needs_parens(&s) {
                s = format!("({s})");
            }
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&s)?;
            } else if s == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{s}*{m}")?;
            }
        }
        Ok(())
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains(' ') || s.contains('+') || s.contains('-') || s.contains('*')
}

impl<K: Coeff> fmt::Debug for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<K: Coeff> std::ops::$tr<&MultiPoly<K>> for &MultiPoly<K> {
            type Output = MultiPoly<K>;
            fn $method(self, rhs: &MultiPoly<K>) -> MultiPoly<K> {
                MultiPoly::$method(self, rhs)
            }
        }
        impl<K: Coeff> std::ops::$tr for MultiPoly<K> {
            type Output = MultiPoly<K>;
            fn $method(self, rhs: MultiPoly<K>) -> MultiPoly<K> {
                MultiPoly::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<K: Coeff> std::ops::Neg for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> MultiPoly<K> {
        MultiPoly::neg(self)
    }
}

impl<K: Coeff> std::ops::Neg for MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> MultiPoly<K> {
        MultiPoly::neg(&self)
    }
}
