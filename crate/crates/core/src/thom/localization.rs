use std::collections::BTreeMap;

use crate::algebra::rational::int;
use crate::algebra::variable::{omega, sigma, z};
use crate::algebra::{Monomial, Poly, RationalFunction, Variable};
use crate::error::{Error, Result};
use crate::grothendieck::{all_permutations, Partition};
use crate::residue::{iterated_residue, Factored, ResidueForm, ResidueSpec};

/// Both sides of the push-forward identity. The fixed-point sum is kept
/// as its numerator over `common = ∏_{i≠j}(1-ω_i/ω_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizationReport {
    pub fixed_point_sum: Poly,
    pub common: Poly,
    pub residue: RationalFunction,
    holds: bool,
}

impl LocalizationReport {
    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn fixed_point_value(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.fixed_point_sum.clone(), self.common.clone())
    }
}

fn subsets(w: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, w: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=w {
            cur.push(i);
            rec(i + 1, w, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, w, r, &mut Vec::new(), &mut out);
    out
}

fn rename_sigma(g: &Poly, target: impl Fn(u16) -> Variable) -> Poly {
    g.rename(|v| if v.family == sigma(1).family { target(v.index) } else { v })
}

/// The monomial symmetric polynomial `m_λ(σ_1, .., σ_r)`.
pub fn monomial_symmetric(exponents: &[i32], r: usize) -> Result<Poly> {
    if exponents.len() > r {
        return Err(Error::MalformedInput(format!("{exponents:?} has more than {r} entries")));
    }
    let mut padded = exponents.to_vec();
    padded.resize(r, 0);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Poly::zero();
    for perm in all_permutations(r) {
        let e: Vec<i32> = (1..=r).map(|i| padded[perm.get(i) - 1]).collect();
        if seen.insert(e.clone()) {
            let m = Monomial::from_pairs(e.iter().enumerate().map(|(i, &x)| (sigma(i as u16 + 1), x)));
            out += &Poly::monomial(m);
        }
    }
    Ok(out)
}

/// Compares the fixed-point sum `Σ_I g(ω_I)/∏_{i∈I,j∉I}(1-ω_i/ω_j)` with
/// the iterated residue of `∏_{i>j}(1-z_i/z_j) g(z)/∏_{i,j}(1-z_i/ω_j)`.
pub fn localization_vs_residue(r: usize, w: usize, g: &Poly) -> Result<LocalizationReport> {
    if r == 0 || r > w {
        return Err(Error::MalformedInput(format!("need 1 ≤ r ≤ w, got r={r}, w={w}")));
    }
    if let Some(v) = g.variables().into_iter().find(|v| v.family != sigma(1).family || v.index as usize > r) {
        return Err(Error::MalformedInput(format!("g may only use σ_1..σ_{r}, found {v}")));
    }
    let pair = |i: usize, j: usize| Poly::one_minus(Monomial::from_pairs([(omega(i as u16), 1), (omega(j as u16), -1)]));
    let mut common = Poly::one();
    for i in 1..=w {
        for j in (1..=w).filter(|&j| j != i) {
            common = &common * &pair(i, j);
        }
    }
    let mut scaled = Poly::zero();
    for set in subsets(w, r) {
        let num = rename_sigma(g, |i| omega(set[i as usize - 1] as u16));
        let mut den = Poly::one();
        for &i in &set {
            for j in (1..=w).filter(|j| !set.contains(j)) {
                den = &den * &pair(i, j);
            }
        }
        let cofactor = common
            .div_exact(&den)
            .ok_or_else(|| Error::InternalConsistency("fixed-point denominator does not divide".into()))?;
        scaled += &(&num * &cofactor);
    }

    let zs: Vec<Variable> = (1..=r as u16).map(z).collect();
    let mut f = Factored::one();
    f.push_num(rename_sigma(g, z));
    for (i, &zi) in zs.iter().enumerate() {
        for &zj in &zs[..i] {
            f.push_num(Poly::one_minus(Monomial::from_pairs([(zi, 1), (zj, -1)])));
        }
        for j in 1..=w as u16 {
            f.push_den(Poly::one_minus(Monomial::from_pairs([(zi, 1), (omega(j), -1)])), 1);
        }
    }
    let form = ResidueForm::logarithmic(f, &zs)?;
    let order: Vec<Variable> = zs.iter().rev().copied().collect();
    let rhs = iterated_residue(&form, &ResidueSpec::zero_infinity(&order))?;
    let residue_scaled = rhs.mul_poly(&common).as_poly();
    Ok(LocalizationReport { holds: residue_scaled.as_ref() == Some(&scaled), fixed_point_sum: scaled, common, residue: rhs })
}

/// All `m_λ` and `m_λ(σ^{-1})` for partitions `λ` with at most `r` parts
/// and `|λ| ≤ max_degree`.
pub fn monomial_test_functions(r: usize, max_degree: i32) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for lam in Partition::in_box(r, max_degree) {
        if lam.size() > max_degree {
            continue;
        }
        let m = monomial_symmetric(lam.parts(), r)?;
        if !lam.is_empty() {
            let mut inv = BTreeMap::new();
            for i in 1..=r as u16 {
                inv.insert(sigma(i), (int(1), Monomial::var_pow(sigma(i), -1)));
            }
            out.push(m.substitute_monomials(&inv));
        }
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_case() {
        let rep = localization_vs_residue(1, 2, &Poly::one()).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.fixed_point_value().unwrap(), RationalFunction::one());
        assert_eq!(rep.residue, RationalFunction::one());
    }

    #[test]
    fn small_cases() {
        let s1 = Poly::var(sigma(1));
        assert!(localization_vs_residue(1, 3, &s1).unwrap().holds());
        let s12 = &s1 * &Poly::var(sigma(2));
        assert!(localization_vs_residue(2, 3, &s12).unwrap().holds());
    }

    #[test]
    fn monomial_symmetric_polys() {
        let m = monomial_symmetric(&[2, 1], 2).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(monomial_symmetric(&[1, 1], 2).unwrap().len(), 1);
        assert!(monomial_symmetric(&[1, 1, 1], 2).is_err());
        assert_eq!(monomial_test_functions(1, 3).unwrap().len(), 7);
    }

    #[test]
    fn rejects_foreign_variables() {
        assert!(localization_vs_residue(1, 2, &Poly::var(sigma(2))).is_err());
        assert!(localization_vs_residue(3, 2, &Poly::one()).is_err());
    }
}
