use std::collections::BTreeMap;

use crate::algebra::rational::int;
use crate::algebra::variable::{alpha, beta};
use crate::algebra::Poly;
use crate::error::{Error, Result};

use super::divided::{groth_recursive_bounded, DEFAULT_RECURSION_BOUND};
use super::perm::Permutation;
use super::pipedream::{pipe_dream_groth, Specialization};

/// Controls the computation of `G_w^{k,l}` from `Ǧ_{1^m × w}`.
#[derive(Clone, Copy, Debug)]
pub struct StableConfig {
    /// Padding `m`; `None` means `k + l`.
    pub m: Option<usize>,
    /// Largest `S_n` handled by divided differences; pipe dreams beyond.
    pub recursion_bound: usize,
    /// Recompute at `m + 1` and require equality.
    pub check_stabilization: bool,
}

impl Default for StableConfig {
    fn default() -> Self {
        StableConfig { m: None, recursion_bound: DEFAULT_RECURSION_BOUND, check_stabilization: true }
    }
}

/// `α_i = 1` for `i > k`, `β_j = 1` for `j > l`, for indices up to `n`.
pub fn truncate_variables(p: &Poly, k: usize, l: usize, n: usize) -> Poly {
    let mut vals = BTreeMap::new();
    for i in k + 1..=n {
        vals.insert(alpha(i as u16), int(1));
    }
    for j in l + 1..=n {
        vals.insert(beta(j as u16), int(1));
    }
    p.evaluate_partial(&vals).expect("α, β only occur with unit coefficients")
}

fn at_padding(w: &Permutation, k: usize, l: usize, m: usize, cfg: &StableConfig) -> Result<Poly> {
    let big = w.shift(m).trimmed();
    let n = big.size();
    if n <= cfg.recursion_bound {
        Ok(truncate_variables(&groth_recursive_bounded(&big, cfg.recursion_bound)?, k, l, n))
    } else {
        Ok(pipe_dream_groth(&big, Specialization::truncated(k, l)))
    }
}

/// `G_w^{k,l}`, the stable polynomial with `α_i = 1 (i > k)`, `β_j = 1 (j > l)`.
pub fn truncated_stable(w: &Permutation, k: usize, l: usize) -> Result<Poly> {
    truncated_stable_with(w, k, l, &StableConfig::default())
}

pub fn truncated_stable_with(w: &Permutation, k: usize, l: usize, cfg: &StableConfig) -> Result<Poly> {
    let m = cfg.m.unwrap_or(k + l);
    let p = at_padding(w, k, l, m, cfg)?;
    if cfg.check_stabilization {
        let q = at_padding(w, k, l, m + 1, cfg)?;
        if p != q {
            return Err(Error::StabilizationMismatch(format!("{w} with k={k}, l={l} differs between m={m} and m={}", m + 1)));
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(w: &str, k: usize, l: usize) -> String {
        truncated_stable(&w.parse().unwrap(), k, l).unwrap().to_string()
    }

    #[test]
    fn small_cases() {
        assert_eq!(ts("21", 1, 1), "1 - b1*a1^-1");
        assert_eq!(ts("21", 1, 0), "1 - a1^-1");
        assert_eq!(ts("123", 2, 2), "1");
        assert_eq!(ts("21", 2, 1), "1 - b1*a1^-1*a2^-1");
    }

    #[test]
    fn engines_agree_past_the_switch() {
        let w: Permutation = "2413".parse().unwrap();
        let dd = StableConfig { recursion_bound: 6, m: Some(2), check_stabilization: false };
        let pd = StableConfig { recursion_bound: 0, m: Some(2), check_stabilization: false };
        assert_eq!(truncated_stable_with(&w, 1, 1, &dd).unwrap(), truncated_stable_with(&w, 1, 1, &pd).unwrap());
    }

    #[test]
    fn too_small_padding_is_caught() {
        // m = 0 is not yet stable for k = 2
        let w: Permutation = "21".parse().unwrap();
        let cfg = StableConfig { m: Some(0), ..StableConfig::default() };
        assert!(matches!(truncated_stable_with(&w, 2, 0, &cfg), Err(Error::StabilizationMismatch(_))));
    }
}
