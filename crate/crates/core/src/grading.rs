//! Weighted gradings of `K[x, y]` and division inside a graded piece.
//!
//! The `x` role is played by whichever of `X` or `T` occurs; `y` is `Y`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Coeff, Monomial, MultiPoly, Var};
use crate::error::{Error, Result};

/// Weight `(a, b)`: the monomial `x^i y^j` has weight `a*i + b*j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub a: u32,
    pub b: u32,
}

impl Weight {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::usage("weight (0,0) is not a grading"));
        }
        Ok(Weight { a, b })
    }

    /// Rejects `a = 0`, where the `x`-exponent cannot be recovered from
    /// the weight and the `y`-degree.
    pub fn require_positive_x(self) -> Result<Self> {
        if self.a == 0 {
            return Err(Error::UnsupportedWeight { a: self.a, b: self.b });
        }
        Ok(self)
    }

    pub fn of_exponents(self, i: u32, j: u32) -> u64 {
        self.a as u64 * i as u64 + self.b as u64 * j as u64
    }

    pub fn of(self, m: &Monomial) -> u64 {
        self.of_exponents(m.exp(Var::X) + m.exp(Var::T), m.exp(Var::Y))
    }

    /// The `x`-exponent giving a term with `y`-degree `j` the weight `t`,
    /// if one exists.
    pub fn x_exponent(self, t: u64, j: u32) -> Option<u32> {
        let yw = self.b as u64 * j as u64;
        if self.a == 0 || t < yw || !(t - yw).is_multiple_of(self.a as u64) {
            return None;
        }
        u32::try_from((t - yw) / self.a as u64).ok()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// The single `x`-like variable occurring in `p`, if any; errors on
/// anything other than `X`, `T`, `Y`, or on `X` and `T` together.
pub fn x_variable<K: Coeff>(p: &MultiPoly<K>) -> Result<Option<Var>> {
    let mut xv = None;
    for v in p.vars() {
        match v {
            Var::Y => {}
            Var::X | Var::T => {
                if xv.is_some_and(|u| u != v) {
                    return Err(Error::usage("polynomial uses both X and T"));
                }
                xv = Some(v);
            }
            other => {
                return Err(Error::usage(format!(
                    "unexpected variable {other} in a bivariate polynomial"
                )))
            }
        }
    }
    Ok(xv)
}

/// Splits `p` into its weight-homogeneous parts.
pub fn graded_components<K: Coeff>(p: &MultiPoly<K>, w: Weight) -> Result<BTreeMap<u64, MultiPoly<K>>> {
    x_variable(p)?;
    let mut out: BTreeMap<u64, MultiPoly<K>> = BTreeMap::new();
    for (m, c) in p.terms() {
        out.entry(w.of(m))
            .or_insert_with(MultiPoly::zero)
            .add_term(m.clone(), c);
    }
    Ok(out)
}

/// The minimal-weight part of `p`.
pub fn initial_form<K: Coeff>(p: &MultiPoly<K>, w: Weight) -> Result<MultiPoly<K>> {
    graded_components(p, w)?
        .into_iter()
        .next()
        .map(|(_, q)| q)
        .ok_or(Error::ZeroPolynomial)
}

/// `Some(t)` when every term of the nonzero `p` has weight `t`.
pub fn homogeneous_weight<K: Coeff>(p: &MultiPoly<K>, w: Weight) -> Option<u64> {
    let mut it = p.terms().map(|(m, _)| w.of(m));
    let t = it.next()?;
    it.all(|s| s == t).then_some(t)
}

/// Checks that `g` is monic in `Y` and returns its `Y`-degree.
pub fn monic_degree<K: Coeff>(g: &MultiPoly<K>) -> Result<u32> {
    let m = g.degree_in(Var::Y).ok_or(Error::ZeroPolynomial)?;
    let lead = g.as_univariate(Var::Y).swap_remove(m as usize);
    if !Coeff::is_one(&lead) {
        return Err(Error::usage(format!("{g} is not monic in Y")));
    }
    Ok(m)
}

/// Division with remainder of weight-homogeneous `f` by weight-homogeneous
/// `g` monic in `Y`: `f = q*g + r` with `deg_Y r < deg_Y g` and both `q*g`
/// and `r` homogeneous of the weight of `f`.
pub fn quasihomogeneous_divide<K: Coeff>(
    f: &MultiPoly<K>,
    g: &MultiPoly<K>,
    w: Weight,
) -> Result<(MultiPoly<K>, MultiPoly<K>)> {
    x_variable(&f.add(g))?;
    let m = monic_degree(g)?;
    if homogeneous_weight(g, w).is_none() {
        return Err(Error::usage("divisor is not weight-homogeneous"));
    }
    if !f.is_zero() && homogeneous_weight(f, w).is_none() {
        return Err(Error::usage("dividend is not weight-homogeneous"));
    }
    let mut q = MultiPoly::zero();
    let mut r = f.clone();
    while let Some(k) = r.degree_in(Var::Y).filter(|&k| k >= m) {
        // lt(r) / y^m, the whole y^k-slice of r
        let top = r
            .filter(|mono| mono.exp(Var::Y) == k)
            .div_monomial(&Monomial::var(Var::Y, m))
            .expect("slice has y-degree k >= m");
        r = r.sub(&top.mul(g));
        q = q.add(&top);
    }
    Ok((q, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;
    use crate::algebra::{int, Rational};
    use proptest::prelude::*;

    type P = MultiPoly<Rational>;

    fn p(s: &str) -> P {
        parse_poly(s).unwrap()
    }

    #[test]
    fn components() {
        let c = graded_components(&p("y^2+x*y+x^3"), Weight::new(1, 1).unwrap()).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&2], p("y^2+x*y"));
        assert_eq!(c[&3], p("x^3"));
        let c = graded_components(&p("y^2-x^3"), Weight::new(2, 3).unwrap()).unwrap();
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![6]);
        assert!(graded_components(&P::zero(), Weight::new(1, 1).unwrap())
            .unwrap()
            .is_empty());
        assert!(graded_components(&p("A4*x"), Weight::new(1, 1).unwrap()).is_err());
    }

    #[test]
    fn initial_forms() {
        let w11 = Weight::new(1, 1).unwrap();
        assert_eq!(initial_form(&p("y^2-x^2+x^3"), w11).unwrap(), p("y^2-x^2"));
        assert_eq!(initial_form(&p("y^2-x^2"), w11).unwrap(), p("y^2-x^2"));
        assert_eq!(initial_form(&p("y+x^2"), Weight::new(1, 3).unwrap()).unwrap(), p("x^2"));
        assert_eq!(initial_form(&P::zero(), w11), Err(Error::ZeroPolynomial));
        assert!(Weight::new(0, 0).is_err());
        assert_eq!(
            Weight::new(0, 1).unwrap().require_positive_x(),
            Err(Error::UnsupportedWeight { a: 0, b: 1 })
        );
    }

    fn check_division(f: &P, g: &P, w: Weight) -> (P, P) {
        let (q, r) = quasihomogeneous_divide(f, g, w).unwrap();
        assert_eq!(&(&q * g) + &r, *f);
        let m = g.degree_in(Var::Y).unwrap();
        assert!(r.is_zero() || r.degree_in(Var::Y).unwrap() < m);
        if let Some(s) = homogeneous_weight(f, w) {
            for t in [&q * g, r.clone()] {
                assert!(t.terms().all(|(mono, _)| w.of(mono) == s));
            }
        }
        (q, r)
    }

    #[test]
    fn division_examples() {
        let w11 = Weight::new(1, 1).unwrap();
        let (q, r) = check_division(&p("y^3"), &p("y-x"), w11);
        assert_eq!((q, r), (p("y^2+x*y+x^2"), p("x^3")));
        let (q, r) = check_division(&p("x^2"), &p("y"), w11);
        assert_eq!((q, r), (P::zero(), p("x^2")));
        let (q, r) = check_division(&p("y^2"), &p("y-x^2"), Weight::new(1, 2).unwrap());
        assert_eq!((q, r), (p("y+x^2"), p("x^4")));
        assert!(quasihomogeneous_divide(&p("y^2"), &p("2*y-x"), w11).is_err());
        assert!(quasihomogeneous_divide(&p("y^2+x"), &p("y-x"), w11).is_err());
    }

    /// Random weight-homogeneous polynomial of weight `t` with integer
    /// coefficients drawn from `cs`.
    fn homogeneous(w: Weight, t: u64, cs: &[i64]) -> P {
        let mut out = P::zero();
        let mut k = 0;
        for j in 0..=(t / w.b.max(1) as u64) as u32 {
            if let Some(i) = w.x_exponent(t, j) {
                let c = cs[k % cs.len()];
                k += 1;
                out.add_term(Monomial::from_pairs([(Var::X, i), (Var::Y, j)]), &int(c));
            }
        }
        out
    }

    proptest! {
        #[test]
        fn division_postconditions(a in 1u32..4, b in 1u32..4, m in 1u32..4, extra in 0u64..8,
                                   cf in prop::collection::vec(-4i64..5, 1..8),
                                   cg in prop::collection::vec(-4i64..5, 1..8)) {
            let w = Weight::new(a, b).unwrap();
            let t = w.of_exponents(0, m);
            // monic g of weight t: y^m plus lower terms of the same weight
            let mut g = homogeneous(w, t, &cg).filter(|mono| mono.exp(Var::Y) < m);
            g.add_term(Monomial::var(Var::Y, m), &int(1));
            let f = homogeneous(w, t + extra, &cf);
            check_division(&f, &g, w);
        }

        #[test]
        fn components_sum_to_input(ts in prop::collection::vec((0u32..5, 0u32..5, -5i64..6), 0..10),
                                   a in 0u32..4, b in 1u32..4) {
            let p = P::from_terms(ts.into_iter().map(|(i, j, c)|
                (Monomial::from_pairs([(Var::X, i), (Var::Y, j)]), int(c))));
            let w = Weight::new(a, b).unwrap();
            let parts = graded_components(&p, w).unwrap();
            let sum = parts.values().fold(P::zero(), |acc, q| &acc + q);
            prop_assert_eq!(sum, p);
            for (t, q) in &parts {
                prop_assert_eq!(homogeneous_weight(q, w), Some(*t));
            }
        }

        #[test]
        fn initial_form_is_multiplicative(
            t1 in prop::collection::vec((0u32..4, 0u32..4, -5i64..6), 1..6),
            t2 in prop::collection::vec((0u32..4, 0u32..4, -5i64..6), 1..6),
            a in 1u32..4, b in 1u32..4) {
            let mk = |ts: Vec<(u32, u32, i64)>| P::from_terms(ts.into_iter().map(|(i, j, c)|
                (Monomial::from_pairs([(Var::X, i), (Var::Y, j)]), int(c))));
            let (p, q) = (mk(t1), mk(t2));
            prop_assume!(!p.is_zero() && !q.is_zero());
            let w = Weight::new(a, b).unwrap();
            prop_assert_eq!(initial_form(&(&p * &q), w).unwrap(),
                            &initial_form(&p, w).unwrap() * &initial_form(&q, w).unwrap());
        }
    }
}
