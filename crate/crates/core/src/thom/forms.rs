use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::int;
use crate::algebra::variable::{alpha, beta, epsilon, t, z};
use crate::algebra::{Monomial, Poly, Rational, Variable};
use crate::error::{Error, Result};
use crate::grothendieck::g_residue_cached;
use crate::residue::{iterated_residue_poly, Factored, ResidueForm, ResidueSpec};

/// Default bound on `a` and `b` for the triple residue.
pub const A3_BOUND: usize = 4;

/// A map `C^a -> C^b` with `a ≤ b`; `l = b - a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThomInstance {
    a: usize,
    b: usize,
}

impl ThomInstance {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b < a {
            return Err(Error::MalformedInput(format!("need 1 ≤ a ≤ b, got a={a}, b={b}")));
        }
        Ok(ThomInstance { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn l(&self) -> usize {
        self.b - self.a
    }
}

fn ratio(num: &[(Variable, i32)]) -> Monomial {
    Monomial::from_pairs(num.iter().copied())
}

fn one_minus(pairs: &[(Variable, i32)]) -> Poly {
    Poly::one_minus(ratio(pairs))
}

/// `∏_{j≤b}(1 - z/β_j) / ∏_{j≤a}(1 - z/ε_j)` for one `z`.
fn root_factors(f: &mut Factored, zv: Variable, inst: ThomInstance) {
    for j in 1..=inst.b as u16 {
        f.push_num(one_minus(&[(zv, 1), (beta(j), -1)]));
    }
    for j in 1..=inst.a as u16 {
        f.push_den(one_minus(&[(zv, 1), (epsilon(j), -1)]), 1);
    }
}

fn evaluate(f: Factored, zs: &[Variable], order: &[Variable]) -> Result<Poly> {
    let form = ResidueForm::logarithmic(f, zs)?;
    let p = iterated_residue_poly(&form, &ResidueSpec::zero_infinity(order))?;
    if zs.iter().any(|&v| p.contains_var(v)) {
        return Err(Error::InternalConsistency("residue variable survived".into()));
    }
    Ok(p)
}

/// `KTp` of `Σ^r` as iterated residues, innermost `z_r`.
pub fn ktp_sigma_r(r: usize, inst: ThomInstance) -> Result<Poly> {
    if r == 0 || r > inst.a {
        return Err(Error::MalformedInput(format!("need 1 ≤ r ≤ a, got r={r}, a={}", inst.a)));
    }
    let zs: Vec<Variable> = (1..=r as u16).map(z).collect();
    let mut f = Factored::one();
    for (i, &zi) in zs.iter().enumerate() {
        for &zj in &zs[..i] {
            f.push_num(one_minus(&[(zi, 1), (zj, -1)]));
        }
        root_factors(&mut f, zi, inst);
    }
    let order: Vec<Variable> = zs.iter().rev().copied().collect();
    evaluate(f, &zs, &order)
}

fn a2_integrand(inst: ThomInstance) -> Factored {
    let (z1, z2) = (z(1), z(2));
    let mut f = Factored::one();
    f.push_num(one_minus(&[(z2, 1), (z1, -1)]));
    f.push_den(one_minus(&[(z2, 1), (z1, -2)]), 1);
    root_factors(&mut f, z1, inst);
    root_factors(&mut f, z2, inst);
    f
}

/// `KTp` of `A_2`: residues in `z_2` first, then `z_1`.
pub fn ktp_a2(inst: ThomInstance) -> Result<Poly> {
    evaluate(a2_integrand(inst), &[z(1), z(2)], &[z(2), z(1)])
}

/// The `A_2` form with the residue order reversed.
pub fn ktp_a2_swapped(inst: ThomInstance) -> Result<Poly> {
    evaluate(a2_integrand(inst), &[z(1), z(2)], &[z(1), z(2)])
}

/// `KTp` of `A_3`: residues in `z_3`, then `z_2`, then `z_1`.
pub fn ktp_a3(inst: ThomInstance) -> Result<Poly> {
    if inst.b > A3_BOUND {
        return Err(Error::SizeLimit(format!("A_3 needs a, b ≤ {A3_BOUND}, got b={}", inst.b)));
    }
    let (z1, z2, z3) = (z(1), z(2), z(3));
    let mut f = Factored::one();
    f.push_num(one_minus(&[(z2, 1), (z1, -1)]));
    f.push_num(one_minus(&[(z3, 1), (z1, -1)]));
    f.push_num(one_minus(&[(z3, 1), (z2, -1)]));
    f.push_den(one_minus(&[(z2, 1), (z1, -2)]), 1);
    f.push_den(one_minus(&[(z3, 1), (z1, -2)]), 1);
    f.push_den(one_minus(&[(z3, 1), (z1, -1), (z2, -1)]), 1);
    for zi in [z1, z2, z3] {
        root_factors(&mut f, zi, inst);
    }
    evaluate(f, &[z1, z2, z3], &[z3, z2, z1])
}

/// `G_I(ε_1^{-1}, .., ε_a^{-1}; β_1^{-1}, .., β_b^{-1})`.
pub fn g_inverted(seq: &[i32], inst: ThomInstance) -> Result<Poly> {
    let g = g_residue_cached(seq, inst.a, inst.b)?;
    let mut map = BTreeMap::new();
    for i in 1..=inst.a as u16 {
        map.insert(alpha(i), (int(1), Monomial::var_pow(epsilon(i), -1)));
    }
    for j in 1..=inst.b as u16 {
        map.insert(beta(j), (int(1), Monomial::var_pow(beta(j), -1)));
    }
    Ok(g.substitute_monomials(&map))
}

/// Fixes every root other than `ε_a` and `β_b` at `values`, sets
/// `ε_a = β_b = t` and reports whether `t` drops out.
pub fn t_substitution_constant(f: &Poly, inst: ThomInstance, values: &BTreeMap<Variable, Rational>) -> Result<bool> {
    let (ea, bb) = (epsilon(inst.a as u16), beta(inst.b as u16));
    let fixed: BTreeMap<Variable, Rational> =
        values.iter().filter(|(v, _)| **v != ea && **v != bb).map(|(v, q)| (*v, q.clone())).collect();
    let p = f
        .evaluate_partial(&fixed)
        .ok_or_else(|| Error::PoleAtSubstitution("zero value for an inverted root".into()))?;
    let mut map = BTreeMap::new();
    map.insert(ea, (int(1), Monomial::var(t())));
    map.insert(bb, (int(1), Monomial::var(t())));
    Ok(!p.substitute_monomials(&map).contains_var(t()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn inst(a: usize, b: usize) -> ThomInstance {
        ThomInstance::new(a, b).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert!(ThomInstance::new(2, 1).is_err());
        assert!(ThomInstance::new(0, 1).is_err());
        assert_eq!(inst(2, 5).l(), 3);
    }

    #[test]
    fn sigma_is_giambelli_thom_porteous() {
        assert_eq!(ktp_sigma_r(1, inst(1, 1)).unwrap(), g_inverted(&[1], inst(1, 1)).unwrap());
        assert_eq!(ktp_sigma_r(1, inst(1, 2)).unwrap(), g_inverted(&[2], inst(1, 2)).unwrap());
        assert_eq!(ktp_sigma_r(2, inst(2, 2)).unwrap(), g_inverted(&[2, 2], inst(2, 2)).unwrap());
        assert!(ktp_sigma_r(2, inst(1, 1)).is_err());
    }

    #[test]
    fn a2_order_matters() {
        let i = inst(2, 2);
        assert_ne!(ktp_a2(i).unwrap(), ktp_a2_swapped(i).unwrap());
    }

    #[test]
    fn a2_small_is_supersymmetric() {
        let i = inst(2, 3);
        let f = ktp_a2(i).unwrap();
        let vals: BTreeMap<Variable, Rational> =
            [(epsilon(1), rat(3, 2)), (beta(1), int(-2)), (beta(2), int(5))]
                .into_iter()
                .collect();
        assert!(t_substitution_constant(&f, i, &vals).unwrap());
    }
}
