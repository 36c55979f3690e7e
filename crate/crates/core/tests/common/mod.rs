#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::ToPrimitive;
use plane_branch::algebra::{int, rat, Coeff, Monomial, MultiPoly, Rational, TruncatedSeries, Var, YSeriesPoly};
use plane_branch::branch::{ParamFamily, PuiseuxParam};
use plane_branch::grading::Weight;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Poly = MultiPoly<Rational>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().expect("finite rational")
}

/// Nonzero `p/q` with `|p| <= 9`, `1 <= q <= 4`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-9i64..=9);
    }
    rat(p, rng.gen_range(1..=4))
}

pub fn small_int(rng: &mut impl Rng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

/// Random support in `[1, max]` with `gcd(n, supp) = 1`.
pub fn random_primitive_support(rng: &mut impl Rng, n: u32, max: u32, size: usize) -> BTreeSet<u32> {
    loop {
        let supp: BTreeSet<u32> = (0..size).map(|_| rng.gen_range(1..=max)).collect();
        if supp.iter().fold(n, |g, &i| g.gcd(&i)) == 1 {
            return supp;
        }
    }
}

pub fn random_param(rng: &mut impl Rng, n: u32, prec: u32, size: usize) -> PuiseuxParam {
    let supp = random_primitive_support(rng, n, prec, size);
    let coeffs = supp.iter().map(|&i| (i, small_rational(rng))).collect();
    PuiseuxParam::new(n, coeffs, prec).unwrap()
}

/// Nonzero rational values for every coefficient of the family.
pub fn random_point(rng: &mut impl Rng, family: &ParamFamily) -> BTreeMap<u32, Rational> {
    family.support.iter().map(|&i| (i, small_rational(rng))).collect()
}

/// The numeric Weierstrass coefficients `c_ij` of a parametrisation, keyed
/// by `C(i, j)`.
pub fn c_values(f: &YSeriesPoly<Rational>) -> BTreeMap<Var, Rational> {
    let mut out = BTreeMap::new();
    for j in 0..=f.degree() {
        for i in 0..=f.prec() {
            out.insert(Var::C(i, j as u32), f.coeff_at(i, j));
        }
    }
    out
}

/// `c * x^i * y^j`.
pub fn xy_term(c: Rational, i: u32, j: u32) -> Poly {
    MultiPoly::term(Monomial::from_pairs([(Var::X, i), (Var::Y, j)]), c)
}

/// Random weight-homogeneous `y^m + ...` of weight `b*m` with small integer
/// coefficients.
pub fn random_quasi_monic(rng: &mut impl Rng, w: Weight, m: u32) -> Poly {
    let mut p = xy_term(int(1), 0, m);
    for j in 0..m {
        let rest = w.b as u64 * (m - j) as u64;
        if rest.is_multiple_of(w.a as u64) {
            p = p.add(&xy_term(small_int(rng, 5), (rest / w.a as u64) as u32, j));
        }
    }
    p
}

/// Random weight-homogeneous polynomial of weight `total` with
/// `deg_y < max_y`.
pub fn random_homogeneous(rng: &mut impl Rng, w: Weight, total: u64, max_y: u32) -> Poly {
    let mut p = MultiPoly::zero();
    for j in 0..max_y {
        if let Some(i) = w.x_exponent(total, j) {
            p = p.add(&xy_term(small_int(rng, 6), i, j));
        }
    }
    p
}

/// Random `Y^m * (1 + ...) + X * (...)` with integer coefficients.
pub fn random_y_regular(rng: &mut impl Rng, m: u32, deg: u32, prec: u32) -> YSeriesPoly<Rational> {
    let coeffs = (0..=deg)
        .map(|j| {
            let cs = (0..=prec)
                .map(|i| match (i, j.cmp(&m)) {
                    (0, std::cmp::Ordering::Less) => int(0),
                    (0, std::cmp::Ordering::Equal) => int(1),
                    _ => small_int(rng, 4),
                })
                .collect();
            TruncatedSeries::from_coeffs(Var::X, prec, cs)
        })
        .collect();
    YSeriesPoly::new(Var::X, prec, coeffs)
}

/// Random monic `Y^n + sum_{j<n} a_j(X) Y^j` with rational coefficients.
pub fn random_monic(rng: &mut impl Rng, n: u32, prec: u32) -> YSeriesPoly<Rational> {
    let mut coeffs: Vec<_> = (0..n)
        .map(|_| {
            let cs = (0..=prec).map(|_| small_rational(rng)).collect();
            TruncatedSeries::from_coeffs(Var::X, prec, cs)
        })
        .collect();
    coeffs.push(TruncatedSeries::one(Var::X, prec));
    YSeriesPoly::new(Var::X, prec, coeffs)
}

pub fn is_integral(p: &Poly) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}

pub fn rational_one() -> Rational {
    <Rational as Coeff>::one()
}
