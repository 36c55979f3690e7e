//! Rewriting `U_n`-invariant polynomials in the parametrisation
//! coefficients `A_i` as rational functions of the Weierstrass
//! coefficients `C_ij`, with a monomial in `A_{b_1}, ..., A_{b_m}` as the
//! image of the denominator.
//!
//! Relations are found by an ansatz over `C`-monomials (and, for the
//! characteristic relations, low-index `A` variables) solved by exact
//! linear algebra, one bihomogeneous component at a time. `F_ij` has
//! `A`-weight `n*i` and `A`-degree `n-j`, which cuts the ansatz down to the
//! monomials of the right bidegree.

mod series;
mod solver;
mod split;

pub use series::{rewrite_series_invariant, translate_nondegeneracy, SeriesRewrite, Translation};
pub use solver::{
    char_coeff_relation, denominator_candidates, j_residue, rewrite_invariant, subalgebra_membership_check,
    verify_relation, CharCoeffRelation, Membership, RewriteContext, RewriteResult,
};
pub use split::{split_required_truncation, split_shifted_series, ShiftedSplit};

/// Degree budgets for the ansatz search. The search starts at
/// `(max_w_degree, max_den_degree)` and doubles both after each failure,
/// capped at the ceilings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximal total degree of `W` (and `V`) in the `C` variables.
    pub max_w_degree: u32,
    /// Maximal total degree of the denominator monomial.
    pub max_den_degree: u32,
    pub ceiling_w_degree: u32,
    pub ceiling_den_degree: u32,
}

impl Budget {
    /// A single search stage, no escalation.
    pub fn new(max_w_degree: u32, max_den_degree: u32) -> Self {
        Budget {
            max_w_degree,
            max_den_degree,
            ceiling_w_degree: max_w_degree,
            ceiling_den_degree: max_den_degree,
        }
    }

    /// `D = 6`, `L = 3n`.
    pub fn default_for(n: u32) -> Self {
        Self::new(6, 3 * n)
    }

    pub fn with_ceiling(mut self, w: u32, den: u32) -> Self {
        self.ceiling_w_degree = w.max(self.max_w_degree);
        self.ceiling_den_degree = den.max(self.max_den_degree);
        self
    }

    /// The `(D, L)` pairs tried in order.
    pub fn stages(&self) -> Vec<(u32, u32)> {
        let mut out = vec![(self.max_w_degree, self.max_den_degree)];
        loop {
            let (d, l) = *out.last().unwrap();
            let next = (
                (d.max(1) * 2).min(self.ceiling_w_degree),
                (l.max(1) * 2).min(self.ceiling_den_degree),
            );
            if next == (d, l) || (next.0 <= d && next.1 <= l) {
                return out;
            }
            out.push((next.0.max(d), next.1.max(l)));
        }
    }
}
