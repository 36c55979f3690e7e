//! Graded Hensel lifting: from a coprime factorization `G*H` of the
//! weighted initial form of a Weierstrass polynomial `f` to factors
//! `f = g*h` with `in(g) = G`, `in(h) = H`, solved one weight level at a
//! time.

use crate::algebra::{Coeff, Field, MultiPoly, Rational, Var, YSeriesPoly};
use crate::error::{Error, Result};
use crate::grading::{graded_components, homogeneous_weight, initial_form, monic_degree, Weight};
use crate::resultants::GradedBezout;

/// Result of a lift, with the per-level parts kept for inspection.
#[derive(Clone)]
pub struct HenselLift<K> {
    pub weight: Weight,
    /// Weights of `G` and `H`.
    pub s: u64,
    pub t: u64,
    pub excess: u32,
    /// `Res_y(G, H)` at `x = 1`.
    pub resultant: K,
    /// `g_parts[i]` is the weight `s + i` part of `g`.
    pub g_parts: Vec<MultiPoly<K>>,
    pub h_parts: Vec<MultiPoly<K>>,
    pub g: YSeriesPoly<K>,
    pub h: YSeriesPoly<K>,
}

impl<K: Coeff> HenselLift<K> {
    pub fn g_poly(&self) -> MultiPoly<K> {
        self.g_parts.iter().fold(MultiPoly::zero(), |acc, p| acc.add(p))
    }

    pub fn h_poly(&self) -> MultiPoly<K> {
        self.h_parts.iter().fold(MultiPoly::zero(), |acc, p| acc.add(p))
    }
}

impl<K: Coeff> std::fmt::Debug for HenselLift<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HenselLift")
            .field("weight", &self.weight)
            .field("resultant", &self.resultant)
            .field("g", &self.g)
            .field("h", &self.h)
            .finish()
    }
}

impl HenselLift<Rational> {
    /// Whether `R^(2i-1) g_{s+i}` and `R^(2i-1) h_{t+i}` have integer
    /// coefficients for every level `i >= 1`.
    pub fn scaled_parts_integral(&self) -> bool {
        let r = &self.resultant;
        (1..self.g_parts.len()).all(|i| {
            let scale = Coeff::pow(r, 2 * i as u32 - 1);
            [&self.g_parts[i], &self.h_parts[i]]
                .iter()
                .all(|p| p.terms().all(|(_, c)| (c * &scale).is_integer()))
        })
    }
}

fn check_weierstrass_form<K: Coeff>(p: &MultiPoly<K>, name: &str) -> Result<u32> {
    let m = monic_degree(p)?;
    let pure_y = p.filter(|mono| mono.exp(Var::X) + mono.exp(Var::T) == 0);
    if pure_y != MultiPoly::term(crate::algebra::Monomial::var(Var::Y, m), K::one()) {
        return Err(Error::usage(format!("{name} is not a Weierstrass polynomial")));
    }
    if m == 0 {
        return Err(Error::usage(format!("{name} must have positive degree in Y")));
    }
    Ok(m)
}

/// Lifts `G*H = in_w(f)` to a factorization of `f` up to weight
/// `s + t + excess`, over any coefficient field.
pub fn lift_generic<K: Field>(
    f: &YSeriesPoly<K>,
    w: Weight,
    g0: &MultiPoly<K>,
    h0: &MultiPoly<K>,
    excess: u32,
) -> Result<HenselLift<K>> {
    let w = w.require_positive_x()?;
    let xv = f.var();
    if !f.is_weierstrass() {
        return Err(Error::usage("f is not a Weierstrass polynomial"));
    }
    let m = check_weierstrass_form(g0, "G")?;
    let n = check_weierstrass_form(h0, "H")?;
    let s = homogeneous_weight(g0, w).ok_or_else(|| Error::usage("G is not weight-homogeneous"))?;
    let t = homogeneous_weight(h0, w).ok_or_else(|| Error::usage("H is not weight-homogeneous"))?;

    let fpoly = f.to_poly();
    let init = initial_form(&fpoly, w)?;
    if init.degree_in(Var::Y) != Some(f.degree() as u32) {
        return Err(Error::NotYRegular);
    }
    let gh = g0.mul(h0);
    if init != gh || homogeneous_weight(&init, w) != Some(s + t) || (m + n) as usize != f.degree() {
        return Err(Error::BadInitialForm);
    }
    let top = s + t + excess as u64;
    let known = w.a as u64 * (f.prec() as u64 + 1) - 1;
    if top > known {
        return Err(Error::InsufficientPrecision(format!(
            "weight {top} needed but f is only known through weight {known}"
        )));
    }

    let solver = GradedBezout::new(g0, h0, w)?.with_x_variable(xv);
    let comps = graded_components(&fpoly, w)?;
    let mut g_parts = vec![g0.clone()];
    let mut h_parts = vec![h0.clone()];
    for i in 1..=excess as usize {
        let mut rhs = comps.get(&(s + t + i as u64)).cloned().unwrap_or_else(MultiPoly::zero);
        for k in 1..i {
            rhs = rhs.sub(&g_parts[k].mul(&h_parts[i - k]));
        }
        let (phi, psi) = solver.solve(&rhs)?;
        h_parts.push(phi);
        g_parts.push(psi);
    }

    let out_prec = ((w.b as u64 + excess as u64) / w.a as u64).min(f.prec() as u64) as u32;
    let sum = |parts: &[MultiPoly<K>]| parts.iter().fold(MultiPoly::zero(), |acc, p| acc.add(p));
    let g = YSeriesPoly::from_poly(xv, out_prec, &sum(&g_parts))?;
    let h = YSeriesPoly::from_poly(xv, out_prec, &sum(&h_parts))?;
    Ok(HenselLift {
        weight: w,
        s,
        t,
        excess,
        resultant: solver.resultant().clone(),
        g_parts,
        h_parts,
        g,
        h,
    })
}

/// [`lift_generic`] over the rationals.
pub fn hensel_lift(
    f: &YSeriesPoly<Rational>,
    w: Weight,
    g0: &MultiPoly<Rational>,
    h0: &MultiPoly<Rational>,
    excess: u32,
) -> Result<HenselLift<Rational>> {
    lift_generic(f, w, g0, h0, excess)
}

/// Terms of `g*h - f` of weight at most `bound`; empty when the lift is
/// correct to that weight.
pub fn residual_to_weight<K: Coeff>(
    f: &MultiPoly<K>,
    g: &MultiPoly<K>,
    h: &MultiPoly<K>,
    w: Weight,
    bound: u64,
) -> MultiPoly<K> {
    g.mul(h).sub(f).filter(|mono| w.of(mono) <= bound)
}
