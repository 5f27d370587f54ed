//! `Ǧ_w` as a signed sum over (not necessarily reduced) pipe dreams.
//!
//! A cross in row `i`, column `j` (with `i + j ≤ n`) carries the letter
//! `s_{i+j-1}` and the weight `1 - β_j/α_i`. Reading rows top to bottom,
//! each row right to left, the Demazure product of the letters must be
//! `w`; the sign is `(-1)^(#crosses - ℓ(w))`. The sum runs as a dynamic
//! program over Demazure-product states, pruned to the Bruhat interval
//! below `w`.

use std::collections::HashMap;

use crate::algebra::variable::{alpha, beta};
use crate::algebra::{Monomial, Poly};

use super::perm::Permutation;

/// Variables kept symbolic; `None` keeps all of them. Beyond the bounds
/// `α_i = 1` and `β_j = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Specialization {
    pub alphas: Option<usize>,
    pub betas: Option<usize>,
}

impl Specialization {
    pub fn truncated(k: usize, l: usize) -> Self {
        Specialization { alphas: Some(k), betas: Some(l) }
    }

    /// `β_j/α_i - 1` after specialization, i.e. minus the cross weight.
    fn cross_factor(&self, i: usize, j: usize) -> Poly {
        let keep_a = self.alphas.is_none_or(|k| i <= k);
        let keep_b = self.betas.is_none_or(|l| j <= l);
        let mut pairs = Vec::new();
        if keep_b {
            pairs.push((beta(j as u16), 1));
        }
        if keep_a {
            pairs.push((alpha(i as u16), -1));
        }
        Poly::monomial(Monomial::from_pairs(pairs)) - Poly::one()
    }
}

fn demazure_step(u: &[u8], a: usize) -> Option<Vec<u8>> {
    if u[a - 1] < u[a] {
        let mut v = u.to_vec();
        v.swap(a - 1, a);
        Some(v)
    } else {
        None
    }
}

/// `Ǧ_w` with the given specialization.
pub fn pipe_dream_groth(w: &Permutation, spec: Specialization) -> Poly {
    let w = w.trimmed();
    let n = w.size();
    if n <= 1 {
        return Poly::one();
    }
    let target = w.images().to_vec();
    let wp = Permutation::new(target.clone()).unwrap();
    let mut below: HashMap<Vec<u8>, bool> = HashMap::new();
    let mut states: HashMap<Vec<u8>, Poly> = HashMap::new();
    states.insert((1..=n as u8).collect(), Poly::one());
    for i in 1..n {
        for j in (1..=n - i).rev() {
            let c = spec.cross_factor(i, j);
            if c.is_zero() {
                continue;
            }
            let letter = i + j - 1;
            let mut next = states.clone();
            for (u, p) in &states {
                let v = demazure_step(u, letter).unwrap_or_else(|| u.clone());
                let ok = *below
                    .entry(v.clone())
                    .or_insert_with(|| Permutation::new(v.clone()).unwrap().bruhat_le(&wp));
                if !ok {
                    continue;
                }
                let add = p * &c;
                let e = next.entry(v).or_insert_with(Poly::zero);
                *e += &add;
            }
            next.retain(|_, p| !p.is_zero());
            states = next;
        }
    }
    let out = states.remove(&target).unwrap_or_else(Poly::zero);
    if w.length() % 2 == 1 {
        -out
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::divided::{all_permutations, groth_recursive};
    use super::*;

    #[test]
    fn matches_divided_differences_in_s4() {
        for w in all_permutations(4) {
            assert_eq!(pipe_dream_groth(&w, Specialization::default()), groth_recursive(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn specialization_commutes_with_evaluation() {
        use crate::algebra::rational::int;
        use std::collections::BTreeMap;
        for w in all_permutations(4).into_iter().step_by(5) {
            let full = groth_recursive(&w).unwrap();
            let mut vals = BTreeMap::new();
            for i in 2..=4u16 {
                vals.insert(alpha(i), int(1));
            }
            for j in 2..=4u16 {
                vals.insert(beta(j), int(1));
            }
            let expect = full.evaluate_partial(&vals).unwrap();
            assert_eq!(pipe_dream_groth(&w, Specialization::truncated(1, 1)), expect, "{w}");
        }
    }
}
