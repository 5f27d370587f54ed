use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::{gcd, monic};
use super::monomial::Monomial;
use super::poly::Poly;
use super::rational::Rational;
use super::variable::Variable;
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials.
///
/// Values returned by arithmetic are normalized: the denominator has
/// nonnegative exponents, no monomial factor, no factor in common with the
/// numerator, and leading coefficient 1. `den_factors`, when present, is a
/// factorization of `den` kept from construction for pole bookkeeping.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
    den_factors: Option<Vec<(Poly, u32)>>,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one(), den_factors: None }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var(v: Variable) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// `num / den`, normalized.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::MalformedInput("zero denominator".into()));
        }
        Ok(Self::raw(num, den).normalize())
    }

    /// `num / prod(factor^mult)`, kept unnormalized so the factor list
    /// survives; call [`normalize`](Self::normalize) to canonicalize.
    pub fn with_factors(num: Poly, factors: Vec<(Poly, u32)>) -> Result<Self> {
        if factors.iter().any(|(f, _)| f.is_zero()) {
            return Err(Error::MalformedInput("zero denominator factor".into()));
        }
        let den = factors.iter().fold(Poly::one(), |acc, (f, e)| &acc * &f.pow(*e));
        Ok(RationalFunction { num, den, den_factors: Some(factors) })
    }

    fn raw(num: Poly, den: Poly) -> Self {
        RationalFunction { num, den, den_factors: None }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn den_factors(&self) -> Option<&[(Poly, u32)]> {
        self.den_factors.as_deref()
    }

    /// Denominator as a factor list: the stored one or the single factor `den`.
    pub fn factor_list(&self) -> Vec<(Poly, u32)> {
        match &self.den_factors {
            Some(f) => f.clone(),
            None if self.den.is_one() => Vec::new(),
            None => vec![(self.den.clone(), 1)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels common factors and fixes the canonical scaling.
    pub fn normalize(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = self.den.as_term() {
            let num = self.num.mul_monomial(&m.inv()).scale(&c.recip());
            return Self::from_poly(num);
        }
        let (md, dp) = self.den.strip_monomial_content();
        let (mn, np) = self.num.strip_monomial_content();
        let g = gcd(&np, &dp);
        let (np, dp) = if g.is_one() {
            (np, dp)
        } else {
            (np.div_exact_poly(&g).expect("gcd divides"), dp.div_exact_poly(&g).expect("gcd divides"))
        };
        let lc = dp.leading_term().expect("nonzero").1.recip();
        let num = np.mul_monomial(&mn.div(&md)).scale(&lc);
        let den = dp.scale(&lc);
        Self::raw(num, den)
    }

    /// Returns the Laurent polynomial if the (normalized) denominator is 1.
    pub fn as_poly(&self) -> Option<Poly> {
        let n = self.normalize();
        n.den.is_one().then_some(n.num)
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn variables(&self) -> std::collections::BTreeSet<Variable> {
        let mut s = self.num.variables();
        s.extend(self.den.variables());
        s
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::PoleAtSubstitution("inverse of zero".into()));
        }
        Ok(Self::raw(self.den.clone(), self.num.clone()).normalize())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(Self::raw(self.num.pow(e as u32), self.den.pow(e as u32)).normalize())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::raw(self.num.scale(c), self.den.clone()).normalize()
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::raw(&self.num * p, self.den.clone()).normalize()
    }

    /// Equality by cross-multiplication; valid for unnormalized values too.
    pub fn equivalent(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn substitute(&self, bindings: &BTreeMap<Variable, RationalFunction>) -> Result<Self> {
        let num = substitute_poly(&self.num, bindings)?;
        let den = substitute_poly(&self.den, bindings)?;
        if den.is_zero() {
            return Err(Error::PoleAtSubstitution("denominator vanishes after substitution".into()));
        }
        Ok((&num / &den).normalize())
    }

    /// Inverts the variable: `v -> 1/v`.
    pub fn invert_var(&self, v: Variable) -> Self {
        Self::raw(self.num.invert_var(v), self.den.invert_var(v)).normalize()
    }
}

/// Substitutes into a Laurent polynomial. Unit bindings (constant times a
/// monomial) take a fast path.
pub fn substitute_poly(p: &Poly, bindings: &BTreeMap<Variable, RationalFunction>) -> Result<RationalFunction> {
    let mut unit_map = BTreeMap::new();
    let mut all_units = true;
    for (v, b) in bindings {
        let n = b.normalize();
        match (n.num.as_term(), n.den.is_one()) {
            (Some((m, c)), true) => {
                unit_map.insert(*v, (c.clone(), m.clone()));
            }
            _ => {
                all_units = false;
                break;
            }
        }
    }
    if all_units {
        return Ok(RationalFunction::from_poly(p.substitute_monomials(&unit_map)));
    }
    let mut cache: BTreeMap<(Variable, i32), RationalFunction> = BTreeMap::new();
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut term = RationalFunction::constant(c.clone());
        let mut rest = Vec::new();
        for &(v, e) in m.factors() {
            match bindings.get(&v) {
                Some(b) => {
                    let key = (v, e);
                    if let std::collections::btree_map::Entry::Vacant(slot) = cache.entry(key) {
                        if e < 0 && b.is_zero() {
                            return Err(Error::PoleAtSubstitution(format!("{v} -> 0 with negative exponent")));
                        }
                        slot.insert(b.pow(e)?);
                    }
                    term = &term * &cache[&key];
                }
                None => rest.push((v, e)),
            }
        }
        let term = term.mul_poly(&Poly::monomial(Monomial::from_pairs(rest)));
        acc = &acc + &term;
    }
    Ok(acc)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RationalFunction::raw(&self.num + &rhs.num, self.den.clone()).normalize();
        }
        let a = self.normalize();
        let b = rhs.normalize();
        let g = gcd(&a.den, &b.den);
        let a_cof = a.den.div_exact_poly(&g).expect("gcd divides");
        let b_cof = b.den.div_exact_poly(&g).expect("gcd divides");
        let num = &(&a.num * &b_cof) + &(&b.num * &a_cof);
        let den = monic(&(&a.den * &b_cof));
        RationalFunction::raw(num, den).normalize()
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone(), den_factors: self.den_factors.clone() }
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::raw(&self.num * &rhs.num, &self.den * &rhs.den).normalize()
    }
}

/// Panics on division by zero; use [`RationalFunction::inv`] for a checked version.
impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::raw(&self.num * &rhs.den, &self.den * &rhs.num).normalize()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalize();
        if n.den.is_one() {
            write!(f, "{}", n.num)
        } else {
            write!(f, "({})/({})", n.num, n.den)
        }
    }
}
