use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::algebra::series::series_expand;
use crate::algebra::variable::{abar, alpha, bbar, beta, t, z};
use crate::algebra::{Monomial, Poly, RationalFunction, Variable};
use crate::error::{Error, Result};
use crate::residue::{iterated_residue_poly, Factored, Location, ResidueForm, ResidueSpec};

use super::divided::all_permutations;
use super::perm::{canonical_sequence, Partition};

fn zvars(r: usize) -> Vec<Variable> {
    (1..=r).map(|j| z(j as u16)).collect()
}

fn one_minus_ratio(a: Variable, b: Variable) -> Poly {
    Poly::one_minus(Monomial::from_pairs([(a, 1), (b, -1)]))
}

fn one_minus_product(a: Variable, b: Variable) -> Poly {
    Poly::one_minus(Monomial::from_pairs([(a, 1), (b, 1)]))
}

/// The integrand of `g_I` with `k` α's and `l` β's, without the `dz/z`.
pub fn g_integrand(seq: &[i32], k: usize, l: usize) -> Factored {
    let r = seq.len();
    let zs = zvars(r);
    let mut f = Factored::one();
    for (j0, &ij) in seq.iter().enumerate() {
        let j = j0 + 1;
        let zj = zs[j0];
        f.push_pow(Poly::one() - Poly::var(zj), ij - j as i32 - (l as i32 - k as i32));
        for &zi in &zs[j..] {
            f.push_num(one_minus_ratio(zi, zj));
        }
        for i in 1..=l {
            f.push_num(one_minus_product(zj, beta(i as u16)));
        }
        for i in 1..=k {
            f.push_den(one_minus_product(zj, alpha(i as u16)), 1);
        }
    }
    f
}

/// `g_I(α_1..α_k; β_1..β_l)`: iterated residues at `{0, ∞}`, innermost `z_r`.
pub fn g_residue(seq: &[i32], k: usize, l: usize) -> Result<Poly> {
    let r = seq.len();
    if r == 0 {
        return Ok(Poly::one());
    }
    let zs = zvars(r);
    let form = ResidueForm::logarithmic(g_integrand(seq, k, l), &zs)?;
    let order: Vec<Variable> = zs.iter().rev().copied().collect();
    iterated_residue_poly(&form, &ResidueSpec::zero_infinity(&order))
}

type GKey = (Vec<i32>, usize, usize);

fn g_memo() -> &'static Mutex<HashMap<GKey, Poly>> {
    static MEMO: OnceLock<Mutex<HashMap<GKey, Poly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `g_residue` with trailing zeros stripped and results memoized.
pub fn g_residue_cached(seq: &[i32], k: usize, l: usize) -> Result<Poly> {
    let key = (canonical_sequence(seq), k, l);
    if let Some(p) = g_memo().lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let p = g_residue(&key.0, k, l)?;
    g_memo().lock().unwrap().insert(key, p.clone());
    Ok(p)
}

/// `Σ_{σ∈S_r} ∏(1-1/α_{σ(i)})^{λ_i+r-i} / ∏_{i>j}(1-α_{σ(i)}/α_{σ(j)})`.
pub fn symmetrization_formula(lambda: &Partition, r: usize) -> Result<RationalFunction> {
    if r < lambda.len() {
        return Err(Error::MalformedInput(format!("{lambda} has more than {r} parts")));
    }
    let parts = lambda.padded(r);
    let mut total = RationalFunction::zero();
    for sigma in all_permutations(r) {
        let a = |i: usize| alpha(sigma.get(i) as u16);
        let mut num = Poly::one();
        for i in 1..=r {
            let base = Poly::one() - Poly::var_pow(a(i), -1);
            num = &num * &base.pow((parts[i - 1] + r as i32 - i as i32) as u32);
        }
        let mut den = Poly::one();
        for i in 1..=r {
            for j in 1..i {
                den = &den * &one_minus_ratio(a(i), a(j));
            }
        }
        total = &total + &RationalFunction::new(num, den)?;
    }
    Ok(total)
}

/// `(-1)^r` times iterated residues at `∞` of the Schur form in `ᾱ, β̄`.
pub fn schur_residue(seq: &[i32], k: usize, l: usize) -> Result<Poly> {
    let r = seq.len();
    if r == 0 {
        return Ok(Poly::one());
    }
    let zs = zvars(r);
    let mut f = Factored::one();
    for (j0, &ij) in seq.iter().enumerate() {
        let zj = zs[j0];
        f.push_num(Poly::var_pow(zj, ij));
        for &zi in &zs[..j0] {
            f.push_num(one_minus_ratio(zi, zj));
        }
        for i in 1..=l {
            f.push_num(Poly::one() + Poly::monomial(Monomial::from_pairs([(bbar(i as u16), 1), (zj, -1)])));
        }
        for i in 1..=k {
            f.push_den(Poly::one() + Poly::monomial(Monomial::from_pairs([(abar(i as u16), 1), (zj, -1)])), 1);
        }
    }
    let form = ResidueForm::logarithmic(f, &zs)?;
    let order: Vec<Variable> = zs.iter().rev().copied().collect();
    let specs: Vec<ResidueSpec> = order.iter().map(|&v| ResidueSpec::new(v, Location::Infinity)).collect();
    let p = iterated_residue_poly(&form, &specs)?;
    Ok(if r % 2 == 1 { -p } else { p })
}

/// `c_0, ..., c_max` with `Σ c_m t^m = ∏(1+β̄_j t)/∏(1+ᾱ_i t)`.
pub fn jacobi_trudi_coefficients(k: usize, l: usize, max: usize) -> Result<Vec<Poly>> {
    let tt = Poly::var(t());
    let num = Poly::product((1..=l).map(|j| Poly::one() + &tt * &Poly::var(bbar(j as u16))).collect::<Vec<_>>().iter());
    let den = Poly::product((1..=k).map(|i| Poly::one() + &tt * &Poly::var(abar(i as u16))).collect::<Vec<_>>().iter());
    let s = series_expand(&RationalFunction::new(num, den)?, t(), max as i32)?;
    (0..=max as i32)
        .map(|m| {
            s.coefficient(m)
                .and_then(|c| c.as_poly())
                .ok_or_else(|| Error::InternalConsistency("Jacobi-Trudi coefficient is not polynomial".into()))
        })
        .collect()
}

/// `det(c_{λ_i + j - i})`.
pub fn jacobi_trudi(lambda: &Partition, k: usize, l: usize) -> Result<Poly> {
    let n = lambda.len();
    if n == 0 {
        return Ok(Poly::one());
    }
    let max = (lambda.part(1) as usize) + n;
    let c = jacobi_trudi_coefficients(k, l, max)?;
    let entry = |i: usize, j: usize| -> Poly {
        let m = lambda.part(i) + j as i32 - i as i32;
        if m < 0 {
            Poly::zero()
        } else {
            c[m as usize].clone()
        }
    };
    let mut det = Poly::zero();
    for sigma in all_permutations(n) {
        let mut term = Poly::one();
        for i in 1..=n {
            term = &term * &entry(i, sigma.get(i));
            if term.is_zero() {
                break;
            }
        }
        if sigma.length() % 2 == 1 {
            det -= &term;
        } else {
            det += &term;
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[i32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn g_small() {
        assert_eq!(g_residue(&[1], 1, 1).unwrap().to_string(), "1 - b1*a1^-1");
        assert!(g_residue(&[0, 0], 2, 1).unwrap().is_one());
        assert!(g_residue(&[], 0, 0).unwrap().is_one());
        assert_eq!(g_residue(&[1], 1, 0).unwrap().to_string(), "1 - a1^-1");
    }

    #[test]
    fn trailing_zeros_do_not_change_g() {
        assert_eq!(g_residue(&[2, 1, 0], 2, 1).unwrap(), g_residue(&[2, 1], 2, 1).unwrap());
        assert_eq!(g_residue_cached(&[2, 1, 0], 2, 1).unwrap(), g_residue(&[2, 1], 2, 1).unwrap());
    }

    #[test]
    fn g_matches_symmetrization() {
        for lam in [part(&[2, 1]), part(&[1, 1]), part(&[3])] {
            let g = g_residue(&lam.padded(2), 2, 0).unwrap();
            let s = symmetrization_formula(&lam, 2).unwrap();
            assert_eq!(RationalFunction::from_poly(g), s, "{lam}");
        }
        assert_eq!(symmetrization_formula(&part(&[]), 1).unwrap(), RationalFunction::one());
        assert_eq!(symmetrization_formula(&part(&[1]), 1).unwrap().to_string(), "1 - a1^-1");
    }

    #[test]
    fn schur_small() {
        assert!(schur_residue(&[], 2, 2).unwrap().is_one());
        assert_eq!(schur_residue(&[1], 1, 1).unwrap(), Poly::var(bbar(1)) - Poly::var(abar(1)));
        // only β̄: c_m = e_m, so s_{1,1} = e_1^2 - e_2 = h_2 and s_2 = e_2
        let b1 = Poly::var(bbar(1));
        let b2 = Poly::var(bbar(2));
        let h2 = &(&(&b1 * &b1) + &(&b1 * &b2)) + &(&b2 * &b2);
        assert_eq!(schur_residue(&[1, 1], 0, 2).unwrap(), h2);
        assert_eq!(schur_residue(&[2], 0, 2).unwrap(), &b1 * &b2);
    }

    #[test]
    fn jacobi_trudi_small() {
        let b1 = Poly::var(bbar(1));
        let b2 = Poly::var(bbar(2));
        let h2 = &(&(&b1 * &b1) + &(&b1 * &b2)) + &(&b2 * &b2);
        assert_eq!(jacobi_trudi(&part(&[1, 1]), 0, 2).unwrap(), h2);
        assert_eq!(jacobi_trudi(&part(&[2]), 0, 2).unwrap(), &b1 * &b2);
        let c = jacobi_trudi_coefficients(1, 1, 2).unwrap();
        assert_eq!(jacobi_trudi(&part(&[1, 1]), 1, 1).unwrap(), &(&c[1] * &c[1]) - &c[2]);
        assert!(jacobi_trudi(&part(&[]), 2, 2).unwrap().is_one());
    }
}
