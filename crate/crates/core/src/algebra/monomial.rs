use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::variable::Variable;

/// A Laurent monomial: a finitely supported map from variables to nonzero
/// integer exponents, stored sorted by variable.
///
/// Monomials are ordered lexicographically on their dense exponent vectors
/// (earlier variables are more significant, absent variables have exponent
/// zero). This is a group order, so it is compatible with multiplication.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(SmallVec<[(Variable, i32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Variable) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Variable, e: i32) -> Self {
        let mut m = SmallVec::new();
        if e != 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Variable, i32)>>(pairs: I) -> Self {
        let mut v: SmallVec<[(Variable, i32); 6]> = pairs.into_iter().collect();
        v.sort_by_key(|&(var, _)| var);
        let mut out: SmallVec<[(Variable, i32); 6]> = SmallVec::new();
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|&mut (_, e)| e != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Variable, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Variable) -> i32 {
        self.0
            .binary_search_by_key(&v, |&(var, _)| var)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn contains(&self, v: Variable) -> bool {
        self.exponent(v) != 0
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(Variable, i32); 6]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, n: i32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * n)).collect())
    }

    /// Whether `other` divides `self` in the polynomial (nonnegative) sense.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other.0.iter().all(|&(v, e)| self.exponent(v) >= e)
    }

    /// Componentwise minimum of exponents (absent variables count as 0).
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut pairs: Vec<(Variable, i32)> = Vec::new();
        for &(v, e) in self.0.iter() {
            let m = e.min(other.exponent(v));
            pairs.push((v, m));
        }
        for &(v, e) in other.0.iter() {
            if !self.contains(v) {
                pairs.push((v, e.min(0)));
            }
        }
        Monomial::from_pairs(pairs)
    }

    /// Removes `v`, returning its exponent and the rest.
    pub fn split_off(&self, v: Variable) -> (i32, Monomial) {
        let mut rest = self.0.clone();
        match rest.binary_search_by_key(&v, |&(var, _)| var) {
            Ok(i) => {
                let e = rest.remove(i).1;
                (e, Monomial(rest))
            }
            Err(_) => (0, Monomial(rest)),
        }
    }

    /// Applies `f` to each variable; the images may collide and are merged.
    pub fn rename(&self, mut f: impl FnMut(Variable) -> Variable) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    /// Juxtaposed factors in the same order as the text rendering.
    pub fn to_latex(&self) -> String {
        let pos = self.0.iter().filter(|p| p.1 > 0);
        let neg = self.0.iter().filter(|p| p.1 < 0);
        let parts: Vec<String> = pos
            .chain(neg)
            .map(|&(v, e)| if e == 1 { v.to_latex() } else { format!("{}^{{{e}}}", v.to_latex()) })
            .collect();
        parts.join(" ")
    }
}

/// Renders positive powers first, then negative powers, e.g. `b1*b2*a1^-1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        let pos = self.0.iter().filter(|p| p.1 > 0);
        let neg = self.0.iter().filter(|p| p.1 < 0);
        for &(v, e) in pos.chain(neg) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::variable::{alpha, beta};

    #[test]
    fn order_is_lex_on_exponents() {
        let one = Monomial::one();
        let a = Monomial::var(alpha(1));
        let b = Monomial::var(beta(1));
        let ainv = Monomial::var_pow(alpha(1), -1);
        assert!(a > b);
        assert!(b > one);
        assert!(one > ainv);
        // multiplicative compatibility
        assert!(a.mul(&a) > a.mul(&b));
    }

    #[test]
    fn mul_cancels() {
        let m = Monomial::from_pairs([(alpha(1), 2), (beta(1), 1)]);
        let n = Monomial::from_pairs([(alpha(1), -2)]);
        assert_eq!(m.mul(&n), Monomial::var(beta(1)));
    }

    #[test]
    fn render() {
        let m = Monomial::from_pairs([(alpha(1), -1), (alpha(2), -1), (beta(1), 1), (beta(2), 1)]);
        assert_eq!(m.to_string(), "b1*b2*a1^-1*a2^-1");
    }
}
