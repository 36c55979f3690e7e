use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Coeff, Field, MultiPoly, Rational, Var};

type Poly = MultiPoly<Rational>;

/// Quotient of two rational polynomials, used as the coefficient field
/// `Q(A)` when lifting with symbolic parametrisation coefficients.
///
/// Normal form: the common monomial factor is removed, the denominator has
/// coprime integer coefficients and a positive leading coefficient, and
/// when the denominator divides the numerator exactly it is dropped. No
/// general gcd is taken, so equality compares cross products.
#[derive(Clone)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

/// The rational `c` with `p / c` primitive integral and positive leading
/// coefficient.
pub(crate) fn rational_content(p: &Poly) -> Rational {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    if g.is_zero() {
        return <Rational as Coeff>::one();
    }
    let c = Rational::new(g, l);
    match p.leading_term() {
        Some((_, lc)) if lc.is_negative() => -c,
        _ => c,
    }
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RationalFunction { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        Coeff::is_one(&self.den)
    }

    /// The numerator when the denominator is one.
    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn denominator_is_monomial(&self) -> bool {
        self.den.is_monomial()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !g.is_one() {
            self.num = self.num.div_monomial(&g).expect("content divides");
            self.den = self.den.div_monomial(&g).expect("content divides");
        }
        let c = rational_content(&self.den);
        if !Coeff::is_one(&c) {
            let inv = c.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        if !self.den.is_constant() && !self.den.is_monomial() {
            if let Some(q) = Coeff::div_exact(&self.num, &self.den) {
                self.num = q;
                self.den = Poly::one();
            }
        }
    }

    pub fn evaluate(&self, point: &std::collections::BTreeMap<Var, Rational>) -> Option<Rational> {
        let d = self.den.evaluate(point)?;
        if Coeff::is_zero(&d) {
            return None;
        }
        Some(self.num.evaluate(point)? / d)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Coeff for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
    fn add(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(self.num.add(&rhs.num), self.den.clone());
        }
        if self.den.is_monomial() && rhs.den.is_monomial() {
            // both denominators are c*m; combine over the monomial lcm
            let (m1, c1) = self.den.leading_term().unwrap();
            let (m2, c2) = rhs.den.leading_term().unwrap();
            let l = m1.lcm(m2);
            let f1 = l.div(m1).unwrap();
            let f2 = l.div(m2).unwrap();
            let num = self
                .num
                .mul_term(&f1, &c1.recip())
                .add(&rhs.num.mul_term(&f2, &c2.recip()));
            return RationalFunction::new(num, Poly::term(l, <Rational as Coeff>::one()));
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        RationalFunction::new(num, self.den.mul(&rhs.den))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        RationalFunction::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(Poly::constant(q.clone()))
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| RationalFunction::new(self.den.clone(), self.num.clone()))
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        Some(self.mul(&d.inv()?))
    }
    fn scale(&self, q: &Rational) -> Self {
        if Coeff::is_zero(q) {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }
}

impl Field for RationalFunction {}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.len() > 1 || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
