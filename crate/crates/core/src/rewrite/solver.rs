use std::collections::BTreeMap;

use crate::algebra::{solve_linear_system, Coeff, Monomial, MultiPoly, Rational, Var};
use crate::branch::{family_weierstrass_coeffs, Characteristic, ParamFamily, SymbolicWeierstrassCoeffs};
use crate::error::{Error, Result};
use crate::invariants::{a_degree, a_weight, is_un_invariant};
use crate::par;

use super::Budget;

type Poly = MultiPoly<Rational>;

/// An ansatz variable with its bidegree under substitution.
#[derive(Clone, Copy, Debug)]
struct Atom {
    var: Var,
    weight: u64,
    degree: u32,
    is_c: bool,
}

/// A family together with its symbolic Weierstrass coefficients.
#[derive(Clone, Debug)]
pub struct RewriteContext {
    pub coeffs: SymbolicWeierstrassCoeffs,
    subs: BTreeMap<Var, Poly>,
    c_atoms: Vec<Atom>,
}

impl RewriteContext {
    pub fn new(family: &ParamFamily) -> Result<Self> {
        Ok(Self::from_coeffs(family_weierstrass_coeffs(family)?))
    }

    pub fn from_coeffs(coeffs: SymbolicWeierstrassCoeffs) -> Self {
        let n = coeffs.family.n();
        let subs = coeffs.substitution();
        let c_atoms = subs
            .keys()
            .map(|&v| match v {
                Var::C(i, j) => Atom {
                    var: v,
                    weight: n as u64 * i as u64,
                    degree: n - j,
                    is_c: true,
                },
                _ => unreachable!("substitution keys are C variables"),
            })
            .collect();
        RewriteContext { coeffs, subs, c_atoms }
    }

    pub fn family(&self) -> &ParamFamily {
        &self.coeffs.family
    }

    pub fn ch(&self) -> &Characteristic {
        &self.coeffs.family.ch
    }

    pub fn n(&self) -> u32 {
        self.ch().n()
    }

    /// `p(F)`: every `C_ij` replaced by `F_ij` (zero when `F_ij` is).
    pub fn substitute(&self, p: &Poly) -> Poly {
        let mut map = self.subs.clone();
        for v in p.vars() {
            if matches!(v, Var::C(..)) {
                map.entry(v).or_insert_with(MultiPoly::zero);
            }
        }
        p.substitute_many(&map)
    }

    fn check_a_vars(&self, q: &Poly) -> Result<()> {
        for v in q.vars() {
            match v {
                Var::A(i) if self.family().support.contains(&i) => {}
                Var::A(i) => {
                    return Err(Error::usage(format!(
                        "A{i} is not a coefficient of the family (support {:?})",
                        self.family().support
                    )))
                }
                other => {
                    return Err(Error::usage(format!(
                        "unexpected variable {other}, only A variables allowed"
                    )))
                }
            }
        }
        Ok(())
    }

    /// Monomials in `atoms` of bidegree `(w, deg)` with at most `max_c`
    /// `C` factors, in a fixed order.
    fn candidates(atoms: &[Atom], w: u64, deg: u32, max_c: u32) -> Vec<Monomial> {
        fn go(atoms: &[Atom], w: u64, deg: u32, c_left: u32, cur: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
            if w == 0 && deg == 0 {
                out.push(Monomial::from_pairs(cur.iter().copied()));
                return;
            }
            let Some((a, rest)) = atoms.split_first() else {
                return;
            };
            let mut e = 0u32;
            loop {
                let (ew, ed) = (a.weight * e as u64, a.degree * e);
                if ew > w || ed > deg || (a.is_c && e > c_left) {
                    break;
                }
                if e > 0 {
                    cur.push((a.var, e));
                }
                go(
                    rest,
                    w - ew,
                    deg - ed,
                    if a.is_c { c_left - e } else { c_left },
                    cur,
                    out,
                );
                if e > 0 {
                    cur.pop();
                }
                e += 1;
            }
        }
        let mut out = Vec::new();
        go(atoms, w, deg, max_c, &mut Vec::new(), &mut out);
        out
    }

    /// Solves `X(F) = target` for `X` a combination of monomials in the
    /// atoms, one bihomogeneous component of `target` at a time.
    fn solve_target(&self, atoms: &[Atom], target: &Poly, max_c: u32) -> Option<Poly> {
        let mut comps: BTreeMap<(u64, u32), Poly> = BTreeMap::new();
        for (m, c) in target.terms() {
            comps
                .entry((a_weight(m), a_degree(m)))
                .or_insert_with(MultiPoly::zero)
                .add_term(m.clone(), c);
        }
        let comps: Vec<((u64, u32), Poly)> = comps.into_iter().collect();
        let parts = par::map_collect(&comps, |((w, d), g)| {
            let cands = Self::candidates(atoms, *w, *d, max_c);
            self.solve_component(&cands, g)
        });
        parts
            .into_iter()
            .try_fold(MultiPoly::zero(), |acc, p| Some(acc.add(&p?)))
    }

    fn solve_component(&self, cands: &[Monomial], target: &Poly) -> Option<Poly> {
        if cands.is_empty() {
            return None;
        }
        let images: Vec<Poly> = par::map_collect(cands, |m| {
            self.substitute(&MultiPoly::term(m.clone(), <Rational as Coeff>::one()))
        });
        let mut rows: BTreeMap<&Monomial, usize> = BTreeMap::new();
        for p in images.iter().chain(std::iter::once(target)) {
            for (m, _) in p.terms() {
                let k = rows.len();
                rows.entry(m).or_insert(k);
            }
        }
        let zero = <Rational as Coeff>::zero();
        let mut mat = vec![vec![zero.clone(); cands.len()]; rows.len()];
        for (col, p) in images.iter().enumerate() {
            for (m, c) in p.terms() {
                mat[rows[m]][col] = c.clone();
            }
        }
        let mut rhs = vec![zero; rows.len()];
        for (m, c) in target.terms() {
            rhs[rows[m]] = c.clone();
        }
        let x = solve_linear_system(&mat, &rhs)?;
        Some(MultiPoly::from_terms(cands.iter().cloned().zip(x)))
    }
}

/// `Q = W(F) / V(F)` with `V(F) = mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteResult {
    pub w: Poly,
    pub v: Poly,
    pub mu: Monomial,
    /// Exponents of `A_{b_1}, ..., A_{b_m}` in `mu`.
    pub mu_exponents: Vec<u32>,
    /// Budgets of the stage that succeeded.
    pub max_w_degree: u32,
    pub max_den_degree: u32,
    pub truncation: u32,
    pub verified: bool,
}

/// `U_n`-invariant monomials in `A_{b_1}, ..., A_{b_m}` of total degree at
/// most `max_degree`, by total degree and then lexicographically in the
/// exponent vector.
pub fn denominator_candidates(ch: &Characteristic, max_degree: u32) -> Vec<Vec<u32>> {
    let bs = &ch.b()[1..];
    let n = ch.n() as u64;
    graded_exponents(bs.len(), max_degree)
        .into_iter()
        .filter(|l| l.iter().zip(bs).map(|(&e, &b)| e as u64 * b as u64).sum::<u64>() % n == 0)
        .collect()
}

/// All exponent vectors of length `len` with total at most `max`, ordered
/// by total and then lexicographically.
fn graded_exponents(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == len {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=total {
            cur.push(e);
            go(len, total - e, cur, out);
            cur.pop();
        }
    }
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for t in 0..=max {
        go(len, t, &mut Vec::new(), &mut out);
    }
    out
}

fn monomial_of(vars: &[u32], exps: &[u32]) -> Monomial {
    Monomial::from_pairs(vars.iter().zip(exps).map(|(&i, &e)| (Var::A(i), e)))
}

/// Finds `W, V` in the `C` variables with `V(F)` a monomial in the
/// `A_{b_k}` and `Q V(F) = W(F)`, escalating the budget on failure.
/// Failure means nothing was found within the budget, not that no
/// relation exists.
pub fn rewrite_invariant(ctx: &RewriteContext, q: &Poly, budget: Budget) -> Result<RewriteResult> {
    ctx.check_a_vars(q)?;
    let n = ctx.n();
    if !is_un_invariant(q, n) {
        return Err(Error::NotInvariant { n });
    }
    let bs = ctx.ch().b()[1..].to_vec();
    let stages = budget.stages();
    for &(d, l) in &stages {
        let mus = denominator_candidates(ctx.ch(), l);
        let found = par::find_map_first(&mus, |lv| {
            let mu = monomial_of(&bs, lv);
            let mu_poly = MultiPoly::term(mu.clone(), <Rational as Coeff>::one());
            let v = ctx.solve_target(&ctx.c_atoms, &mu_poly, d)?;
            let w = ctx.solve_target(&ctx.c_atoms, &q.mul(&mu_poly), d)?;
            Some((lv.clone(), mu, v, w))
        });
        if let Some((mu_exponents, mu, v, w)) = found {
            let mut res = RewriteResult {
                w,
                v,
                mu,
                mu_exponents,
                max_w_degree: d,
                max_den_degree: l,
                truncation: ctx.family().prec,
                verified: false,
            };
            res.verified = verify_relation(ctx, q, &res);
            if !res.verified {
                return Err(Error::usage("internal error: rewrite failed verification"));
            }
            return Ok(res);
        }
    }
    let (d, l) = *stages.last().unwrap();
    Err(Error::ExhaustedBudget {
        max_w_degree: d,
        max_den_degree: l,
        truncation: ctx.family().prec,
    })
}

/// Checks `V(F) = mu` and `Q V(F) = W(F)` as polynomial identities.
pub fn verify_relation(ctx: &RewriteContext, q: &Poly, res: &RewriteResult) -> bool {
    let vf = ctx.substitute(&res.v);
    vf == MultiPoly::term(res.mu.clone(), <Rational as Coeff>::one()) && q.mul(&vf) == ctx.substitute(&res.w)
}

/// Outcome of the bounded-degree membership test `Q ∈ Q[F]`.
#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Found(Poly),
    /// No `W` of `C`-degree at most `D` with `W(F) = Q`.
    NoneUpToDegree(u32),
}

pub fn subalgebra_membership_check(ctx: &RewriteContext, q: &Poly, max_degree: u32) -> Result<Membership> {
    ctx.check_a_vars(q)?;
    Ok(match ctx.solve_target(&ctx.c_atoms, q, max_degree) {
        Some(w) => Membership::Found(w),
        None => Membership::NoneUpToDegree(max_degree),
    })
}

/// `A_{b_k}^{n_k} N = M(F, A)` with `N` a monomial in
/// `A_{b_1}, ..., A_{b_{k-1}}` and `M` a polynomial in `C` and `A_i`,
/// `i < b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharCoeffRelation {
    pub k: usize,
    pub n_k: u32,
    pub m: Poly,
    pub n_mono: Monomial,
    pub max_w_degree: u32,
    pub max_den_degree: u32,
    pub verified: bool,
}

impl CharCoeffRelation {
    /// `A_{b_k}^{n_k}` for the characteristic of the context.
    pub fn lhs_power(&self, ch: &Characteristic) -> Monomial {
        Monomial::var(Var::A(ch.b()[self.k]), self.n_k)
    }
}

pub fn char_coeff_relation(ctx: &RewriteContext, k: usize, budget: Budget) -> Result<CharCoeffRelation> {
    let ch = ctx.ch();
    if k == 0 || k > ch.m() {
        return Err(Error::usage(format!("level {k} outside 1..={}", ch.m())));
    }
    let bk = ch.b()[k];
    let nk = ch.n_k()[k - 1];
    let lower_b = ch.b()[1..k].to_vec();
    let mut atoms = ctx.c_atoms.clone();
    atoms.extend(ctx.family().support.iter().filter(|&&i| i < bk).map(|&i| Atom {
        var: Var::A(i),
        weight: i as u64,
        degree: 1,
        is_c: false,
    }));
    let lhs = Monomial::var(Var::A(bk), nk);
    let stages = budget.stages();
    for &(d, l) in &stages {
        let ns = graded_exponents(lower_b.len(), l);
        let found = par::find_map_first(&ns, |nv| {
            let nm = monomial_of(&lower_b, nv);
            let target = MultiPoly::term(lhs.mul(&nm), <Rational as Coeff>::one());
            ctx.solve_target(&atoms, &target, d).map(|m| (nm, m))
        });
        if let Some((n_mono, m)) = found {
            let target = MultiPoly::term(lhs.mul(&n_mono), <Rational as Coeff>::one());
            let verified = ctx.substitute(&m) == target;
            if !verified {
                return Err(Error::usage("internal error: relation failed verification"));
            }
            return Ok(CharCoeffRelation {
                k,
                n_k: nk,
                m,
                n_mono,
                max_w_degree: d,
                max_den_degree: l,
                verified,
            });
        }
    }
    let (d, l) = *stages.last().unwrap();
    Err(Error::ExhaustedBudget {
        max_w_degree: d,
        max_den_degree: l,
        truncation: ctx.family().prec,
    })
}

/// The `j` in `0..n_k` with `b_k j ≡ i (mod e_{k-1})`, when one exists.
pub fn j_residue(ch: &Characteristic, k: usize, i: u32) -> Option<u32> {
    let e_prev = ch.e()[k - 1] as u64;
    let bk = ch.b()[k] as u64;
    (0..ch.n_k()[k - 1]).find(|&j| (bk * j as u64) % e_prev == i as u64 % e_prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn a_indices(p: &Poly) -> Vec<u32> {
        p.vars().into_iter().filter_map(Var::a_index).collect()
    }

    fn closed_34() -> RewriteContext {
        let ch = Characteristic::new(vec![3, 4]).unwrap();
        RewriteContext::new(&ParamFamily::closed(&ch, 30, [4, 7, 10].into()).unwrap()).unwrap()
    }

    #[test]
    fn closed_34_rewrites() {
        let ctx = closed_34();
        let b = Budget::default_for(3);
        let r = rewrite_invariant(&ctx, &p("A4*A7^2"), b).unwrap();
        assert_eq!(r.mu, Monomial::var(Var::A(4), 3));
        assert_eq!(r.v, p("-C4_0"));
        assert_eq!(r.w, p("1/9*C5_0^2"));
        assert!(r.verified);

        let r = rewrite_invariant(&ctx, &p("A4^3"), b).unwrap();
        assert_eq!((r.w, r.v, r.mu), (p("-C4_0"), p("1"), Monomial::one()));
        let r = rewrite_invariant(&ctx, &p("1"), b).unwrap();
        assert_eq!((r.w, r.v), (p("1"), p("1")));
        let r = rewrite_invariant(&ctx, &p("0"), b).unwrap();
        assert!(r.w.is_zero());

        assert_eq!(
            rewrite_invariant(&ctx, &p("A7"), b).unwrap_err(),
            Error::NotInvariant { n: 3 }
        );
        assert!(rewrite_invariant(&ctx, &p("A5^3"), b).is_err());
        assert!(matches!(
            rewrite_invariant(&ctx, &p("A4*A7^2"), Budget::new(1, 0)),
            Err(Error::ExhaustedBudget {
                max_w_degree: 1,
                max_den_degree: 0,
                truncation: 30
            })
        ));
        let r = rewrite_invariant(&ctx, &p("A4*A7^2"), Budget::new(1, 0).with_ceiling(4, 8)).unwrap();
        assert_eq!((r.max_w_degree, r.max_den_degree), (4, 4));
    }

    #[test]
    fn membership() {
        let ctx = closed_34();
        assert_eq!(
            subalgebra_membership_check(&ctx, &p("A4*A7^2"), 4).unwrap(),
            Membership::NoneUpToDegree(4)
        );
        assert_eq!(
            subalgebra_membership_check(&ctx, &p("A4^3"), 1).unwrap(),
            Membership::Found(p("-C4_0"))
        );
        assert_eq!(
            subalgebra_membership_check(&ctx, &p("0"), 3).unwrap(),
            Membership::Found(p("0"))
        );
    }

    #[test]
    fn relations() {
        let ctx = closed_34();
        let r = char_coeff_relation(&ctx, 1, Budget::default_for(3)).unwrap();
        assert_eq!((r.m.clone(), r.n_mono.clone(), r.n_k), (p("-C4_0"), Monomial::one(), 3));

        let c23 = Characteristic::new(vec![2, 3]).unwrap();
        let ctx = RewriteContext::new(&ParamFamily::closed(&c23, 6, [3].into()).unwrap()).unwrap();
        let r = char_coeff_relation(&ctx, 1, Budget::default_for(2)).unwrap();
        assert_eq!(r.m, p("-C3_0"));

        let c467 = Characteristic::new(vec![4, 6, 7]).unwrap();
        let ctx = RewriteContext::new(&ParamFamily::open(&c467, 21).unwrap()).unwrap();
        let r = char_coeff_relation(&ctx, 1, Budget::default_for(4)).unwrap();
        assert!(r.n_mono.is_one());
        assert!(a_indices(&r.m).iter().all(|&i| i < 6));
        assert!(r.verified);
        assert!(char_coeff_relation(&ctx, 3, Budget::default_for(4)).is_err());
    }

    #[test]
    fn residues_and_candidates() {
        let ch = Characteristic::new(vec![4, 6, 7]).unwrap();
        assert_eq!(j_residue(&ch, 1, 6), Some(1));
        assert_eq!(j_residue(&ch, 1, 8), Some(0));
        assert_eq!(j_residue(&ch, 1, 10), Some(1));
        assert_eq!(j_residue(&ch, 1, 7), None);
        assert_eq!(j_residue(&ch, 2, 9), Some(1));
        assert_eq!(j_residue(&ch, 2, 8), Some(0));
        let c34 = Characteristic::new(vec![3, 4]).unwrap();
        assert_eq!(denominator_candidates(&c34, 7), vec![vec![0], vec![3], vec![6]]);
        assert_eq!(denominator_candidates(&ch, 2), vec![vec![0, 0], vec![2, 0]]);
        assert_eq!(graded_exponents(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }
}
