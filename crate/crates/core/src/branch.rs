//! Puiseux parametrisations, characteristics and the passage from a
//! parametrisation `(T^n, alpha)` to its Weierstrass polynomial
//! `prod_eps (Y - alpha(eps T))`.
//!
//! Roots of unity never appear: the power sums `sum_eps alpha(eps T)^k` are
//! `n` times the part of `alpha^k` with exponents divisible by `n`, and the
//! elementary symmetric functions follow from Newton's identities (which
//! divide by `k <= n`, fine in characteristic zero).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde_json::{json, Map, Value};

use crate::algebra::json::rational_field;
use crate::algebra::text::{parse_expr, parse_poly};
use crate::algebra::{format_rational, rat, Coeff, Monomial, MultiPoly, Rational, TruncatedSeries, Var, YSeriesPoly};
use crate::error::{Error, Result};

/// Characteristic exponents `(b_0, ..., b_m)` with `b_0 = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Characteristic {
    b: Vec<u32>,
    e: Vec<u32>,
}

impl Characteristic {
    /// Checks `e_0 > e_1 > ... > e_m = 1` and `b_1 < ... < b_m`.
    pub fn new(b: Vec<u32>) -> Result<Self> {
        if b.is_empty() || b[0] == 0 {
            return Err(Error::usage("characteristic needs b_0 >= 1"));
        }
        let mut e = vec![b[0]];
        for k in 1..b.len() {
            let next = e[k - 1].gcd(&b[k]);
            if next == e[k - 1] || b[k] == 0 {
                return Err(Error::usage(format!("b_{k} = {} does not lower the gcd chain", b[k])));
            }
            if k >= 2 && b[k] <= b[k - 1] {
                return Err(Error::usage("characteristic exponents must increase"));
            }
            e.push(next);
        }
        if *e.last().unwrap() != 1 {
            return Err(Error::NotPrimitive {
                gcd: *e.last().unwrap(),
            });
        }
        Ok(Characteristic { b, e })
    }

    /// Parses `3,4` or `(4,6,7)`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let b = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::usage(format!("bad characteristic `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(b)
    }

    pub fn n(&self) -> u32 {
        self.b[0]
    }

    /// Number of characteristic exponents after `b_0`.
    pub fn m(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    /// `b_k`, with `b_{m+1} = None` standing for infinity.
    pub fn b_at(&self, k: usize) -> Option<u32> {
        self.b.get(k).copied()
    }

    pub fn e(&self) -> &[u32] {
        &self.e
    }

    /// `n_k = e_{k-1} / e_k` for `k = 1..=m`.
    pub fn n_k(&self) -> Vec<u32> {
        self.e.windows(2).map(|w| w[0] / w[1]).collect()
    }

    pub fn b_m(&self) -> u32 {
        *self.b.last().unwrap()
    }

    /// `b_bar_k = e_{k-1} b_k + sum_{j<k} (e_{j-1} - e_j) b_j`.
    pub fn b_bar(&self, k: usize) -> u64 {
        let mut s = self.e[k - 1] as u64 * self.b[k] as u64;
        for j in 1..k {
            s += (self.e[j - 1] - self.e[j]) as u64 * self.b[j] as u64;
        }
        s
    }

    /// Membership in `I = e_0 N_+  ∪  U_k (e_k N ∩ [b_k, oo))`.
    pub fn in_index_set(&self, i: u32) -> bool {
        i >= 1
            && (i.is_multiple_of(self.e[0]) || (1..self.b.len()).any(|k| i >= self.b[k] && i.is_multiple_of(self.e[k])))
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.b.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Runs the gcd chain: `b_{k+1}` is the least support element not
/// divisible by `e_k`.
pub fn characteristic_of(n: u32, supp: &BTreeSet<u32>) -> Result<Characteristic> {
    if n == 0 {
        return Err(Error::usage("n must be positive"));
    }
    let g = supp.iter().fold(n, |g, &i| g.gcd(&i));
    if g != 1 {
        return Err(Error::NotPrimitive { gcd: g });
    }
    let mut b = vec![n];
    let mut e = n;
    while e > 1 {
        let next = *supp.iter().find(|&&i| i % e != 0).expect("gcd is 1");
        b.push(next);
        e = e.gcd(&next);
    }
    Characteristic::new(b)
}

/// `I ∩ [1, bound]` in increasing order.
pub fn index_set(ch: &Characteristic, bound: u32) -> Vec<u32> {
    (1..=bound).filter(|&i| ch.in_index_set(i)).collect()
}

/// `{b_1..b_m} ⊆ supp ⊆ I`, which holds exactly when a parametrisation
/// with this support has characteristic `ch`.
pub fn validate_support(ch: &Characteristic, supp: &BTreeSet<u32>) -> bool {
    ch.b[1..].iter().all(|b| supp.contains(b)) && supp.iter().all(|&i| ch.in_index_set(i))
}

/// `sum_{eps^n = 1} eps^i`: `n` when `n | i`, else 0.
pub fn unity_power_sum(n: u32, i: i64) -> i64 {
    if i.rem_euclid(n as i64) == 0 {
        n as i64
    } else {
        0
    }
}

/// `x = T^n`, `y = sum a_i T^i` known through `T^prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxParam<K = Rational> {
    pub n: u32,
    pub coeffs: BTreeMap<u32, K>,
    pub prec: u32,
}

impl<K: Coeff> PuiseuxParam<K> {
    /// Drops zero coefficients; errors on `a_0` or exponents past `prec`.
    pub fn new(n: u32, coeffs: BTreeMap<u32, K>, prec: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("n must be positive"));
        }
        let coeffs: BTreeMap<u32, K> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if coeffs.contains_key(&0) {
            return Err(Error::usage("alpha must have no constant term"));
        }
        if let Some((&i, _)) = coeffs.last_key_value() {
            if i > prec {
                return Err(Error::usage(format!("exponent {i} exceeds the truncation {prec}")));
            }
        }
        Ok(PuiseuxParam { n, coeffs, prec })
    }

    /// Truncation at which a finite `alpha` determines the whole
    /// Weierstrass polynomial.
    pub fn exact_truncation(n: u32, coeffs: &BTreeMap<u32, K>) -> u32 {
        n * coeffs.keys().next_back().copied().unwrap_or(1)
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_primitive(&self) -> bool {
        self.coeffs.keys().fold(self.n, |g, &i| g.gcd(&i)) == 1
    }

    pub fn characteristic(&self) -> Result<Characteristic> {
        characteristic_of(self.n, &self.support())
    }

    /// `alpha` as a series in `T`.
    pub fn alpha(&self) -> TruncatedSeries<K> {
        let mut s = TruncatedSeries::zero(Var::T, self.prec);
        for (&i, c) in &self.coeffs {
            s.set_coeff(i, c.clone());
        }
        s
    }

    /// `alpha(-T)`, the rotation by `eps = -1`.
    pub fn negate_t(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&i, c)| (i, if i % 2 == 1 { c.neg() } else { c.clone() }))
            .collect();
        PuiseuxParam {
            n: self.n,
            coeffs,
            prec: self.prec,
        }
    }

    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> L) -> PuiseuxParam<L> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&i, c)| (i, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        PuiseuxParam {
            n: self.n,
            coeffs,
            prec: self.prec,
        }
    }
}

impl PuiseuxParam<Rational> {
    /// Parses `t^3; t^4 + t^7 + t^10`, optionally ending in `+ O(t^k)`,
    /// which sets the truncation to `k - 1`. Without it the truncation is
    /// [`exact_truncation`](Self::exact_truncation).
    pub fn parse(src: &str) -> Result<Self> {
        let (x, y) = src
            .split_once(';')
            .ok_or_else(|| Error::usage("expected `t^n; alpha`"))?;
        let x = parse_poly(x)?;
        let n = match x.as_monomial_in(Var::T) {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::usage(format!("x-part `{x}` is not t^n"))),
        };
        let parsed = parse_expr(y)?;
        let mut coeffs = BTreeMap::new();
        for (m, c) in parsed.poly.terms() {
            let (i, rest) = m.split_off(Var::T);
            if !rest.is_one() {
                return Err(Error::usage(format!("alpha contains {rest}")));
            }
            coeffs.insert(i, c.clone());
        }
        let prec = match parsed.order {
            Some((Var::T, k)) if k >= 1 => k - 1,
            Some((v, _)) => return Err(Error::usage(format!("order term in {v}, expected T"))),
            None => Self::exact_truncation(n, &coeffs),
        };
        Self::new(n, coeffs, prec)
    }

    /// `{"n":3,"coeffs":{"4":"1"},"truncation":10}`; the truncation may be
    /// omitted.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::usage(format!("malformed parametrisation JSON: {m}"));
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| bad("missing `n`"))?;
        let obj = v
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing `coeffs`"))?;
        let mut coeffs = BTreeMap::new();
        for (k, c) in obj {
            let i: u32 = k.parse().map_err(|_| bad("exponents must be integers"))?;
            coeffs.insert(i, rational_field(Some(c))?);
        }
        let prec = match v.get("truncation") {
            None | Some(Value::Null) => Self::exact_truncation(n, &coeffs),
            Some(t) => t
                .as_u64()
                .and_then(|t| u32::try_from(t).ok())
                .ok_or_else(|| bad("bad `truncation`"))?,
        };
        Self::new(n, coeffs, prec)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(i, c)| (i.to_string(), Value::String(format_rational(c))))
            .collect();
        json!({"n": self.n, "coeffs": coeffs, "truncation": self.prec})
    }
}

impl fmt::Display for PuiseuxParam<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha = MultiPoly::from_terms(self.coeffs.iter().map(|(&i, c)| (Monomial::var(Var::T, i), c.clone())));
        let alpha = if alpha.is_zero() {
            String::new()
        } else {
            format!("{alpha} + ")
        };
        write!(f, "T^{}; {alpha}O(T^{})", self.n, self.prec + 1)
    }
}

/// `prod_eps (Y - alpha(eps T))` with `T^n` replaced by `X`. The `X^i`
/// coefficients are exact for `n*i <= prec`, so the result has
/// `X`-precision `prec / n`.
pub fn weierstrass_from_puiseux<K: Coeff>(p: &PuiseuxParam<K>) -> Result<YSeriesPoly<K>> {
    if !p.is_primitive() {
        let g = p.coeffs.keys().fold(p.n, |g, &i| g.gcd(&i));
        return Err(Error::NotPrimitive { gcd: g });
    }
    Ok(weierstrass_product(p))
}

/// [`weierstrass_from_puiseux`] without the primitivity check; for
/// non-primitive data this is the product over all `n`-th roots of unity,
/// a power of the minimal polynomial.
pub fn weierstrass_product<K: Coeff>(p: &PuiseuxParam<K>) -> YSeriesPoly<K> {
    let n = p.n;
    let alpha = p.alpha();
    let xprec = p.prec / n;
    let nk = K::from_int(n as i64);
    // power sums p_k(X), k = 1..=n
    let mut power = TruncatedSeries::one(Var::T, p.prec);
    let mut sums = Vec::with_capacity(n as usize);
    for _ in 0..n {
        power = power.mul(&alpha);
        sums.push(power.filter_multiples(n).decimate(Var::X, n).scale(&nk));
    }
    // Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    let mut el = vec![TruncatedSeries::one(Var::X, xprec)];
    for k in 1..=n as usize {
        let mut acc = TruncatedSeries::zero(Var::X, xprec);
        for i in 1..=k {
            let t = el[k - i].mul(&sums[i - 1]);
            acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        el.push(acc.scale(&K::from_rational(&rat(1, k as i64))));
    }
    // f = sum_j (-1)^(n-j) e_{n-j} Y^j
    let coeffs = (0..=n as usize)
        .map(|j| {
            let e = &el[n as usize - j];
            if (n as usize - j) % 2 == 1 {
                e.neg()
            } else {
                e.clone()
            }
        })
        .collect();
    YSeriesPoly::new(Var::X, xprec, coeffs)
}

/// A family of parametrisations with characteristic `ch`, generic
/// coefficients `A_i` for `i` in `support`, and truncation `prec`.
/// The open family uses all of `I ∩ [1, prec]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamFamily {
    pub ch: Characteristic,
    pub prec: u32,
    pub support: BTreeSet<u32>,
}

impl ParamFamily {
    pub fn open(ch: &Characteristic, prec: u32) -> Result<Self> {
        Self::closed(ch, prec, index_set(ch, prec).into_iter().collect())
    }

    /// Only the listed exponents carry coefficients; the rest are zero.
    pub fn closed(ch: &Characteristic, prec: u32, support: BTreeSet<u32>) -> Result<Self> {
        if prec < ch.b_m() {
            return Err(Error::InsufficientTruncation {
                needed: ch.b_m(),
                got: prec,
            });
        }
        if !validate_support(ch, &support) {
            return Err(Error::usage(format!(
                "support {support:?} does not fit the characteristic {ch}"
            )));
        }
        if let Some(&i) = support.iter().next_back().filter(|&&i| i > prec) {
            return Err(Error::usage(format!(
                "support element {i} exceeds the truncation {prec}"
            )));
        }
        Ok(ParamFamily {
            ch: ch.clone(),
            prec,
            support,
        })
    }

    pub fn n(&self) -> u32 {
        self.ch.n()
    }

    /// The parametrisation with coefficient `A_i` at `T^i`.
    pub fn generic_param(&self) -> PuiseuxParam<MultiPoly<Rational>> {
        let coeffs = self.support.iter().map(|&i| (i, MultiPoly::var(Var::A(i)))).collect();
        PuiseuxParam {
            n: self.n(),
            coeffs,
            prec: self.prec,
        }
    }

    /// The member with `A_i = values[i]` (missing entries are zero).
    pub fn specialize(&self, values: &BTreeMap<u32, Rational>) -> PuiseuxParam<Rational> {
        let coeffs = self
            .support
            .iter()
            .filter_map(|i| values.get(i).map(|c| (*i, c.clone())))
            .filter(|(_, c)| !Coeff::is_zero(c))
            .collect();
        PuiseuxParam {
            n: self.n(),
            coeffs,
            prec: self.prec,
        }
    }

    pub fn a_vars(&self) -> Vec<Var> {
        self.support.iter().map(|&i| Var::A(i)).collect()
    }
}

/// The polynomials `F_ij` in the `A`-variables with `c_ij = F_ij(a)`.
#[derive(Clone, Debug)]
pub struct SymbolicWeierstrassCoeffs {
    pub family: ParamFamily,
    /// Entries with `n*i <= prec` and `j <= n`, zero ones included.
    pub entries: BTreeMap<(u32, u32), MultiPoly<Rational>>,
}

impl SymbolicWeierstrassCoeffs {
    /// Largest `i` for which `F_ij` is exact.
    pub fn x_precision(&self) -> u32 {
        self.family.prec / self.family.n()
    }

    /// Whether `(i, j)` lies in the window where `F_ij` is determined by
    /// the truncated parametrisation.
    pub fn is_exact(&self, i: u32, j: u32) -> bool {
        i <= self.x_precision() && j <= self.family.n()
    }

    pub fn get(&self, i: u32, j: u32) -> Option<&MultiPoly<Rational>> {
        self.entries.get(&(i, j))
    }

    /// Nonzero `F_ij` with `j < n`, keyed by the variable `C_{i,j}` they
    /// replace.
    pub fn substitution(&self) -> BTreeMap<Var, MultiPoly<Rational>> {
        let n = self.family.n();
        self.entries
            .iter()
            .filter(|((_, j), f)| *j < n && !f.is_zero())
            .map(|(&(i, j), f)| (Var::C(i, j), f.clone()))
            .collect()
    }

    pub fn to_ypoly(&self) -> YSeriesPoly<MultiPoly<Rational>> {
        let n = self.family.n();
        let xp = self.x_precision();
        let coeffs = (0..=n)
            .map(|j| {
                let cs = (0..=xp).map(|i| self.entries[&(i, j)].clone()).collect();
                TruncatedSeries::from_coeffs(Var::X, xp, cs)
            })
            .collect();
        YSeriesPoly::new(Var::X, xp, coeffs)
    }
}

/// Weierstrass coefficients of the open family with characteristic `ch`.
pub fn symbolic_weierstrass_coeffs(ch: &Characteristic, prec: u32) -> Result<SymbolicWeierstrassCoeffs> {
    family_weierstrass_coeffs(&ParamFamily::open(ch, prec)?)
}

pub fn family_weierstrass_coeffs(family: &ParamFamily) -> Result<SymbolicWeierstrassCoeffs> {
    let f = weierstrass_from_puiseux(&family.generic_param())?;
    let n = family.n();
    let mut entries = BTreeMap::new();
    for j in 0..=n {
        let c = f.coeff(j as usize);
        for i in 0..=f.prec() {
            entries.insert((i, j), c.coeff(i));
        }
    }
    Ok(SymbolicWeierstrassCoeffs {
        family: family.clone(),
        entries,
    })
}

/// `T`-order of `f(T^n, alpha(T))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vanishing {
    Order(u32),
    /// Zero through `T^(k-1)`, the available precision.
    AtLeast(u32),
}

impl Vanishing {
    pub fn vanishes(self) -> bool {
        matches!(self, Vanishing::AtLeast(_))
    }
}

impl fmt::Display for Vanishing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vanishing::Order(k) => write!(f, "{k}"),
            Vanishing::AtLeast(k) => write!(f, ">= {k}"),
        }
    }
}

pub fn verify_parametrisation<K: Coeff>(f: &YSeriesPoly<K>, p: &PuiseuxParam<K>) -> Vanishing {
    let r = f.substitute_series(p.n, &p.alpha());
    match r.order() {
        Some(k) => Vanishing::Order(k),
        None => Vanishing::AtLeast(r.prec() + 1),
    }
}

trait AsMonomialIn {
    fn as_monomial_in(&self, v: Var) -> Option<u32>;
}

impl AsMonomialIn for MultiPoly<Rational> {
    /// `Some(k)` when `self` is exactly `v^k`.
    fn as_monomial_in(&self, v: Var) -> Option<u32> {
        let (m, c) = self.leading_term()?;
        if self.len() != 1 || !Coeff::is_one(c) {
            return None;
        }
        let (k, rest) = m.split_off(v);
        rest.is_one().then_some(k)
    }
}
