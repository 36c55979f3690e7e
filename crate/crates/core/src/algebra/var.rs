use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A variable descriptor.
///
/// The derived order is the canonical variable order: all `A_i` (by `i`),
/// then all `C_{i,j}` (by `(i,j)`), then the structural variables. Earlier
/// variables are lexicographically heavier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Puiseux coefficient placeholder `A_i`.
    A(u32),
    /// Weierstrass coefficient placeholder `C_{i,j}` (of `X^i Y^j`).
    C(u32, u32),
    X,
    Y,
    T,
    /// Auxiliary variable used by symmetrization.
    Z,
}

impl Var {
    pub fn is_structural(self) -> bool {
        matches!(self, Var::X | Var::Y | Var::T | Var::Z)
    }

    pub fn a_index(self) -> Option<u32> {
        match self {
            Var::A(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A(i) => write!(f, "A{i}"),
            Var::C(i, j) => write!(f, "C{i}_{j}"),
            Var::X => f.write_str("X"),
            Var::Y => f.write_str("Y"),
            Var::T => f.write_str("T"),
            Var::Z => f.write_str("z"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("unknown variable `{s}`"));
        match s {
            "X" | "x" => return Ok(Var::X),
            "Y" | "y" => return Ok(Var::Y),
            "T" | "t" => return Ok(Var::T),
            "z" | "Z" => return Ok(Var::Z),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('A') {
            return rest.parse().map(Var::A).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix('C') {
            let (i, j) = rest.split_once('_').ok_or_else(bad)?;
            return Ok(Var::C(i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?));
        }
        Err(bad())
    }
}

/// An ordered, duplicate-free set of variables.
///
/// Polynomials key their monomials by [`Var`] directly; a registry is the
/// view used for dense exponent vectors (JSON) and is always kept in the
/// canonical variable order so that the monomial order agrees with it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VarRegistry {
    vars: Vec<Var>,
}

impl VarRegistry {
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Result<Self> {
        let vars: Vec<Var> = vars.into_iter().collect();
        let set: BTreeSet<Var> = vars.iter().copied().collect();
        if set.len() != vars.len() {
            return Err(Error::usage("duplicate variable in registry"));
        }
        Ok(VarRegistry {
            vars: set.into_iter().collect(),
        })
    }

    pub fn xy() -> Self {
        VarRegistry {
            vars: vec![Var::X, Var::Y],
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.vars.binary_search(&v).ok()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.index_of(v).is_some()
    }
}
