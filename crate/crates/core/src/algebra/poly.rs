use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::rational::{self, Rational};
use super::variable::Variable;

/// A finite sum of Laurent monomials with exact rational coefficients.
///
/// No zero coefficients are stored. Terms are kept in increasing monomial
/// order; the leading term is the largest one and is rendered first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

pub type Poly = LaurentPolynomial;

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rational::int(n))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn var_pow(v: Variable, e: i32) -> Self {
        Self::monomial(Monomial::var_pow(v, e))
    }

    /// `1 - m` for a monomial `m`, the most common factor shape here.
    pub fn one_minus(m: Monomial) -> Self {
        let mut p = Self::one();
        p.add_term(m, -Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// The single term, if this is `c * m`.
    pub fn as_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// A unit of the Laurent polynomial ring: a nonzero constant times a monomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.contains(v))
    }

    /// `(min, max)` exponent of `v`; `None` for the zero polynomial.
    pub fn degree_range(&self, v: Variable) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exponent(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Groups terms by the exponent of `v`; the coefficients are `v`-free.
    pub fn coefficients_in(&self, v: Variable) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(v: Variable, coeffs: &BTreeMap<i32, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (&e, c) in coeffs {
            let vm = Monomial::var_pow(v, e);
            for (m, q) in c.terms() {
                out.add_term(m.mul(&vm), q.clone());
            }
        }
        out
    }

    /// Greatest monomial dividing every term (exponents may be negative).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, m| acc.meet(m))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, q)| (k.clone(), q * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Poly>>(factors: I) -> Poly {
        factors.into_iter().fold(Poly::one(), |acc, f| &acc * f)
    }

    /// Applies a monomial-to-monomial substitution `v -> c * m` for the
    /// variables in `map`; other variables are left untouched.
    pub fn substitute_monomials(&self, map: &BTreeMap<Variable, (Rational, Monomial)>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Monomial::one();
            for &(v, e) in m.factors() {
                match map.get(&v) {
                    Some((q, img)) => {
                        coeff *= rational::pow(q, e);
                        mono = mono.mul(&img.pow(e));
                    }
                    None => mono = mono.mul(&Monomial::var_pow(v, e)),
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Renames variables; colliding images are merged.
    pub fn rename(&self, f: impl Fn(Variable) -> Variable) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(&f), c.clone());
        }
        out
    }

    /// `v -> 1/v`.
    pub fn invert_var(&self, v: Variable) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out.add_term(rest.mul(&Monomial::var_pow(v, -e)), c.clone());
        }
        out
    }

    /// Substitutes rational values for some variables. Returns `None` when a
    /// variable with a negative exponent is sent to zero.
    pub fn evaluate_partial(&self, values: &BTreeMap<Variable, Rational>) -> Option<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.factors() {
                match values.get(&v) {
                    Some(q) => {
                        if q.is_zero() {
                            if e < 0 {
                                return None;
                            }
                            coeff = Rational::zero();
                        } else {
                            coeff *= rational::pow(q, e);
                        }
                    }
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial::from_pairs(rest), coeff);
        }
        Some(out)
    }

    /// Full evaluation; `None` if a variable is missing or a pole is hit.
    pub fn evaluate(&self, values: &BTreeMap<Variable, Rational>) -> Option<Rational> {
        self.evaluate_partial(values)?.as_constant()
    }

    /// Multiplies by the inverse of the monomial content so that all
    /// exponents are nonnegative and no variable divides every term.
    pub fn strip_monomial_content(&self) -> (Monomial, Poly) {
        let m = self.monomial_content();
        let p = self.mul_monomial(&m.inv());
        (m, p)
    }

    /// Exact division in the Laurent polynomial ring. `None` if `d` does not
    /// divide `self` (or `d` is zero).
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((m, c)) = d.as_term() {
            let inv = c.recip();
            let mi = m.inv();
            return Some(Poly {
                terms: self.terms.iter().map(|(k, q)| (k.mul(&mi), q * &inv)).collect(),
            });
        }
        let (dm, dp) = d.strip_monomial_content();
        let (nm, np) = self.strip_monomial_content();
        let q = np.div_exact_poly(&dp)?;
        Some(q.mul_monomial(&nm.div(&dm)))
    }

    /// Exact division for polynomials with nonnegative exponents.
    pub(crate) fn div_exact_poly(&self, d: &Poly) -> Option<Poly> {
        let (dlm, dlc) = d.leading_term()?;
        let (dlm, dlc_inv) = (dlm.clone(), dlc.recip());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((lm, lc)) = rem.leading_term() {
            if !lm.divisible_by(&dlm) {
                return None;
            }
            let qm = lm.div(&dlm);
            let qc = lc * &dlc_inv;
            for (m, c) in d.terms() {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Multiplies `self` by `other` keeping only the terms whose exponent of
    /// `v` is at most `max_exp`.
    pub fn mul_truncated(&self, other: &Poly, v: Variable, max_exp: i32) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            let e1 = m1.exponent(v);
            for (m2, c2) in &other.terms {
                if e1 + m2.exponent(v) <= max_exp {
                    out.add_term(m1.mul(m2), c1 * c2);
                }
            }
        }
        out
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        if self.terms.len() < rhs.terms.len() {
            let mut r = rhs;
            r += &self;
            return r;
        }
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let prod = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                }
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;
    fn add(mut self, rhs: &Poly) -> Poly {
        self += rhs;
        self
    }
}

impl Sub<&Poly> for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: &Poly) -> Poly {
        self -= rhs;
        self
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<Variable> for Poly {
    fn from(v: Variable) -> Self {
        Poly::var(v)
    }
}

impl LaurentPolynomial {
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, abs) = rational::sign_str(c);
            match (i, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                (_, s) => out.push_str(&format!(" {s} ")),
            }
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else if abs.is_one() {
                out.push_str(&m.to_latex());
            } else {
                out.push_str(&format!("{coeff} {}", m.to_latex()));
            }
        }
        out
    }

    /// `{"text": .., "terms": [{"coefficient": .., "monomial": ..}]}`, terms
    /// in rendering order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| serde_json::json!({"coefficient": c.to_string(), "monomial": m.to_string()}))
            .collect();
        serde_json::json!({"text": self.to_string(), "terms": terms})
    }
}

/// Canonical rendering: terms in decreasing monomial order, explicit `*`,
/// `^` for powers, e.g. `1 - b1*a1^-1`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, abs) = rational::sign_str(c);
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::algebra::variable::{alpha, beta};

    fn a(i: u16) -> Poly {
        Poly::var(alpha(i))
    }
    fn b(i: u16) -> Poly {
        Poly::var(beta(i))
    }

    #[test]
    fn render_canonical() {
        let p = Poly::one() - &(&b(1) * &Poly::var_pow(alpha(1), -1));
        assert_eq!(p.to_string(), "1 - b1*a1^-1");
        let q = &(&a(1) * &int_poly(3)) - &Poly::constant(rat(1, 2));
        assert_eq!(q.to_string(), "3*a1 - 1/2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!((-&a(2)).to_string(), "-a2");
        assert_eq!(p.to_latex(), "1 - \\beta_{1} \\alpha_{1}^{-1}");
        assert_eq!(q.to_latex(), "3 \\alpha_{1} - \\frac{1}{2}");
        assert_eq!(q.to_json()["terms"][1]["coefficient"], "-1/2");
    }

    fn int_poly(n: i64) -> Poly {
        Poly::constant(int(n))
    }

    #[test]
    fn exact_division() {
        let num = &(&a(1) * &a(1)) - &Poly::one();
        let den = &a(1) - &Poly::one();
        assert_eq!(num.div_exact(&den).unwrap(), &a(1) + &Poly::one());
        assert!(num.div_exact(&(&a(1) + &a(2))).is_none());
        // Laurent: (a1^-1 - a2^-1) / (a2 - a1) = a1^-1 a2^-1
        let l = &Poly::var_pow(alpha(1), -1) - &Poly::var_pow(alpha(2), -1);
        let q = l.div_exact(&(&a(2) - &a(1))).unwrap();
        assert_eq!(q, Poly::monomial(Monomial::from_pairs([(alpha(1), -1), (alpha(2), -1)])));
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let p = &(&a(1) * &b(1)) + &(&Poly::var_pow(alpha(1), -2) - &b(2));
        let cs = p.coefficients_in(alpha(1));
        assert_eq!(cs.len(), 3);
        assert_eq!(Poly::from_coefficients_in(alpha(1), &cs), p);
    }

    #[test]
    fn pow_and_evaluate() {
        let p = (&a(1) + &Poly::one()).pow(3);
        let mut vals = BTreeMap::new();
        vals.insert(alpha(1), int(2));
        assert_eq!(p.evaluate(&vals).unwrap(), int(27));
        let inv = Poly::var_pow(alpha(1), -1);
        vals.insert(alpha(1), int(0));
        assert!(inv.evaluate(&vals).is_none());
    }
}
