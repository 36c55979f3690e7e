use std::collections::BTreeMap;

use crate::algebra::{rational_content, Coeff, Monomial, MultiPoly, Rational, Var, YSeriesPoly};
use crate::error::{Error, Result};
use crate::invariants::symmetrize;
use crate::weierstrass::{normalize_leading, weierstrass_prepare, PreparedFactorization};

use super::solver::{rewrite_invariant, RewriteContext, RewriteResult};
use super::Budget;

type Poly = MultiPoly<Rational>;

/// A non-degeneracy condition `Q != 0` on the parametrisation coefficients
/// restated as `W != 0` on the Weierstrass coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Translation {
    /// `prod_eps Q(eps . A)`.
    pub symmetrized: Poly,
    pub rewrite: RewriteResult,
    /// `W` with primitive integer coefficients and positive leading
    /// coefficient, in the coefficients of a monic `f`.
    pub w: Poly,
    /// `C_{0,n}^k W(C / C_{0,n})`, the same condition for `f` whose
    /// coefficient `c_{0n}` need not be 1.
    pub homogenized: Poly,
    pub k: u32,
}

fn primitive(p: &Poly) -> Poly {
    let c = rational_content(p);
    p.scale(&Coeff::inv(&c).expect("content is nonzero"))
}

/// `C_{0,n}^k W(C / C_{0,n})` with `k` the smallest multiple of `n` above
/// the degree of `W`.
fn homogenize(w: &Poly, n: u32) -> (Poly, u32) {
    let deg = w.total_degree().unwrap_or(0);
    let k = (deg / n + 1) * n;
    let c0n = Var::C(0, n);
    let out = MultiPoly::from_terms(
        w.terms()
            .map(|(m, c)| (m.mul(&Monomial::var(c0n, k - m.degree())), c.clone())),
    );
    (out, k)
}

/// Symmetrizes `Q`, rewrites the result, and keeps the numerator: since
/// `V(F)` is a monomial in the `A_{b_j}`, which never vanish on the class,
/// `Q = 0` exactly when `W(F) = 0`.
pub fn translate_nondegeneracy(ctx: &RewriteContext, q: &Poly, budget: Budget) -> Result<Translation> {
    let n = ctx.n();
    let symmetrized = symmetrize(q, n)?;
    let rewrite = rewrite_invariant(ctx, &symmetrized, budget)?;
    let w = primitive(&rewrite.w);
    let (homogenized, k) = homogenize(&w, n);
    Ok(Translation {
        symmetrized,
        rewrite,
        w,
        homogenized,
        k,
    })
}

/// [`rewrite_invariant`] applied to a series `f = u * w`: `f` is divided by
/// its coefficient `c_{0n}` and prepared, and the relation is evaluated at
/// the coefficients of the Weierstrass factor.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesRewrite {
    pub normalizer: Rational,
    pub prepared: PreparedFactorization<Rational>,
    pub rewrite: RewriteResult,
    pub w_value: Rational,
    pub v_value: Rational,
    /// `W / V` at the prepared coefficients, when `V` does not vanish.
    pub q_value: Option<Rational>,
}

pub fn rewrite_series_invariant(
    ctx: &RewriteContext,
    f: &YSeriesPoly<Rational>,
    q: &Poly,
    budget: Budget,
) -> Result<SeriesRewrite> {
    let (normalizer, g) = normalize_leading(f)?;
    let prepared = weierstrass_prepare(&g, g.prec())?;
    let n = ctx.n();
    if prepared.degree() != n as usize {
        return Err(Error::usage(format!(
            "the Weierstrass factor has degree {}, the family has n = {n}",
            prepared.degree()
        )));
    }
    let rewrite = rewrite_invariant(ctx, q, budget)?;
    let mut point = BTreeMap::new();
    for v in rewrite.w.vars().into_iter().chain(rewrite.v.vars()) {
        if let Var::C(i, j) = v {
            if i > prepared.prec {
                return Err(Error::InsufficientPrecision(format!(
                    "{v} needs X-precision {i}, the series has {}",
                    prepared.prec
                )));
            }
            point.insert(v, prepared.w.coeff_at(i, j as usize));
        }
    }
    let w_value = rewrite.w.evaluate(&point).expect("all C variables assigned");
    let v_value = rewrite.v.evaluate(&point).expect("all C variables assigned");
    let q_value = Coeff::div_exact(&w_value, &v_value).filter(|_| !Coeff::is_zero(&v_value));
    Ok(SeriesRewrite {
        normalizer,
        prepared,
        rewrite,
        w_value,
        v_value,
        q_value,
    })
}
