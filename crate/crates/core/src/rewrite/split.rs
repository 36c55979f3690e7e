//! The shifted series `f^(T, Y) = f*(T^n, Y + lambda)`,
//! `lambda = sum_{i < b_m} A_i T^i`, split into factors `f^_1 ... f^_m` by
//! repeated graded Hensel lifting. Block `j < m` is lifted with weight
//! `(1, b_j)` from
//!
//! `G_j = Y^(-e_j) ((Y + A_{b_j} T^{b_j})^{n_j} - A_{b_j}^{n_j} T^{b_j n_j})^{e_j}`,
//! `H_j = Y^{e_j}`,
//!
//! and the last block has initial form `Y^{n_m} - A_{b_m}^{n_m} T^{n_m b_m}`.

use crate::algebra::{Coeff, Monomial, MultiPoly, RationalFunction, TruncatedSeries, Var, YSeriesPoly};
use crate::branch::{family_weierstrass_coeffs, ParamFamily};
use crate::error::{Error, Result};
use crate::grading::{initial_form, Weight};
use crate::hensel::lift_generic;

type RF = RationalFunction;

#[derive(Clone, Debug)]
pub struct ShiftedSplit {
    pub family: ParamFamily,
    pub f_hat: YSeriesPoly<RF>,
    pub factors: Vec<YSeriesPoly<RF>>,
    /// The closed-form initial forms the lifts start from.
    pub seeds: Vec<MultiPoly<RF>>,
    /// Initial forms of the computed factors under weight `(1, b_j)`.
    pub initial_forms: Vec<MultiPoly<RF>>,
    /// `Res_Y(G_j, H_j)` at `T = 1` for each lifted block.
    pub resultants: Vec<RF>,
    /// Weight excess used at each lifted block.
    pub excesses: Vec<u32>,
    pub b_bar: u64,
    /// `T`-order and leading coefficient of `f^(T, 0)`.
    pub leading_order: Option<u32>,
    pub leading_coeff: RF,
    /// `-A_{b_m}^{n_m} prod_{j<m} n_j^{e_j} A_{b_j}^{e_{j-1} - e_j}`.
    pub expected_leading: RF,
}

impl ShiftedSplit {
    /// `prod f^_j = f^` to the common precision of the factors.
    pub fn recombination_holds(&self) -> bool {
        let prod = self
            .factors
            .iter()
            .skip(1)
            .fold(self.factors[0].clone(), |acc, f| acc.mul(f));
        prod.truncate(prod.prec()) == self.f_hat.truncate(prod.prec())
    }

    pub fn seeds_match(&self) -> bool {
        self.seeds == self.initial_forms
    }

    pub fn leading_term_matches(&self) -> bool {
        self.leading_order == u32::try_from(self.b_bar).ok() && self.leading_coeff == self.expected_leading
    }

    /// Denominators of block `j < m` are monomials in
    /// `A_{b_1}, ..., A_{b_j}`; those of block `m` in
    /// `A_{b_1}, ..., A_{b_{m-1}}`.
    pub fn denominators_ok(&self) -> bool {
        let b = self.family.ch.b();
        let m = b.len() - 1;
        self.factors.iter().enumerate().all(|(idx, f)| {
            let j = idx + 1;
            let hi = if j < m { j } else { m - 1 };
            let allowed: Vec<Var> = b[1..=hi].iter().map(|&i| Var::A(i)).collect();
            f.coeffs().iter().all(|s| {
                s.coeffs()
                    .iter()
                    .all(|c| c.denominator_is_monomial() && c.den().vars().iter().all(|v| allowed.contains(v)))
            })
        })
    }
}

/// Excess at each lifted block so that every later block still has
/// enough precision; the last entry is `excess` itself.
fn excess_schedule(family: &ParamFamily, excess: u32) -> Vec<u32> {
    let ch = &family.ch;
    let (b, e, m) = (ch.b(), ch.e(), ch.m());
    let mut x = vec![0u32; m + 1];
    x[m] = excess;
    for j in (1..m).rev() {
        x[j] = b[j + 1] * e[j] + x[j + 1] - b[j];
    }
    x[1..].to_vec()
}

/// Smallest truncation `P` of the parametrisation for which
/// [`split_shifted_series`] has enough precision.
pub fn split_required_truncation(family_ch: &crate::branch::Characteristic, excess: u32) -> u32 {
    let (b, e, m) = (family_ch.b(), family_ch.e(), family_ch.m());
    let n = family_ch.n();
    let mut need: u64 = excess as u64;
    for j in 1..=m {
        need += b[j] as u64 * e[j - 1] as u64;
        if j < m {
            need -= b[j] as u64;
        }
    }
    need = need.max(family_ch.b_bar(m.max(1)));
    // T-precision of f*(T^n, Y) is n(floor(P/n) + 1) - 1
    let k = (need + 1).div_ceil(n as u64) - 1;
    (k * n as u64).max(family_ch.b_m() as u64) as u32
}

fn a_rf(i: u32) -> RF {
    RF::var(Var::A(i))
}

/// `c * T^i * Y^j` over rational functions.
fn term(c: RF, i: u32, j: u32) -> MultiPoly<RF> {
    MultiPoly::term(Monomial::from_pairs([(Var::T, i), (Var::Y, j)]), c)
}

pub fn split_shifted_series(family: &ParamFamily, excess: u32) -> Result<ShiftedSplit> {
    let ch = family.ch.clone();
    let m = ch.m();
    if m == 0 {
        return Err(Error::usage(
            "the split needs at least one characteristic exponent after n",
        ));
    }
    let needed = split_required_truncation(&ch, excess);
    if family.prec < needed {
        return Err(Error::InsufficientTruncation {
            needed,
            got: family.prec,
        });
    }
    let (b, e, nk) = (ch.b(), ch.e(), ch.n_k());
    let n = ch.n();

    let fstar = family_weierstrass_coeffs(family)?.to_ypoly().compose_power(Var::T, n);
    let mut lambda = TruncatedSeries::zero(Var::T, fstar.prec());
    for &i in family.support.iter().filter(|&&i| i < ch.b_m()) {
        lambda.set_coeff(i, MultiPoly::var(Var::A(i)));
    }
    let f_hat = fstar.shift_y(&lambda).map_coeffs(|p| RF::from_poly(p.clone()));

    let schedule = excess_schedule(family, excess);
    let mut current = f_hat.clone();
    let (mut factors, mut seeds, mut initial_forms, mut resultants) = (vec![], vec![], vec![], vec![]);
    for j in 1..m {
        let w = Weight::new(1, b[j])?;
        let a = a_rf(b[j]);
        // (Y + A T^b)^{n_j} - A^{n_j} T^{b n_j}, divided by Y
        let lin = term(RF::one(), 0, 1).add(&term(a.clone(), b[j], 0));
        let inner = lin
            .pow(nk[j - 1])
            .sub(&term(Coeff::pow(&a, nk[j - 1]), b[j] * nk[j - 1], 0));
        let inner = inner
            .div_monomial(&Monomial::var(Var::Y, 1))
            .expect("inner form vanishes at Y = 0");
        let g0 = inner.pow(e[j]);
        let h0 = term(RF::one(), 0, e[j]);
        let lift = lift_generic(&current, w, &g0, &h0, schedule[j - 1])?;
        initial_forms.push(initial_form(&lift.g.to_poly(), w)?);
        seeds.push(g0);
        resultants.push(lift.resultant.clone());
        factors.push(lift.g);
        current = lift.h;
    }
    let w = Weight::new(1, ch.b_m())?;
    let nm = nk[m - 1];
    let last_seed = term(RF::one(), 0, nm).sub(&term(Coeff::pow(&a_rf(ch.b_m()), nm), nm * ch.b_m(), 0));
    initial_forms.push(initial_form(&current.to_poly(), w)?);
    seeds.push(last_seed);
    factors.push(current);

    let c0 = f_hat.coeff(0);
    let leading_order = c0.order();
    let leading_coeff = leading_order.map_or_else(RF::zero, |k| c0.coeff(k));
    let mut expected = Coeff::pow(&a_rf(ch.b_m()), nm).neg();
    for j in 1..m {
        let nj = crate::algebra::int(nk[j - 1] as i64);
        expected = expected
            .scale(&Coeff::pow(&nj, e[j]))
            .mul(&Coeff::pow(&a_rf(b[j]), e[j - 1] - e[j]));
    }
    Ok(ShiftedSplit {
        family: family.clone(),
        f_hat,
        factors,
        seeds,
        initial_forms,
        resultants,
        excesses: schedule[..m - 1].to_vec(),
        b_bar: ch.b_bar(m),
        leading_order,
        leading_coeff,
        expected_leading: expected,
    })
}
