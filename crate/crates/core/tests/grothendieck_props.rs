use std::collections::BTreeMap;

use kgroth_core::algebra::rational::{int, rat};
use kgroth_core::algebra::variable::{alpha, beta, t};
use kgroth_core::algebra::{Poly, Rational, Variable};
use kgroth_core::grothendieck::{
    g_residue, g_residue_cached, grassmannian_perm, jacobi_trudi, schur_residue, straighten, truncated_stable,
    Partition,
};
use proptest::prelude::*;

fn rename(p: &Poly, from: Variable, to: Variable) -> Poly {
    p.rename(|v| if v == from { to } else if v == to { from } else { v })
}

fn subst(p: &Poly, vals: &[(Variable, Rational)]) -> Poly {
    let m: BTreeMap<Variable, Rational> = vals.iter().cloned().collect();
    p.evaluate_partial(&m).unwrap()
}

#[test]
fn g_equals_stable_g_in_2x2_box() {
    for lam in Partition::in_box(2, 2) {
        let w = grassmannian_perm(&lam, 2).unwrap();
        assert_eq!(g_residue(lam.parts(), 2, 2).unwrap(), truncated_stable(&w, 2, 2).unwrap(), "{lam}");
    }
}

#[test]
fn descent_position_does_not_matter() {
    let lam = Partition::new(vec![2, 1]).unwrap();
    let a = truncated_stable(&grassmannian_perm(&lam, 2).unwrap(), 2, 1).unwrap();
    let b = truncated_stable(&grassmannian_perm(&lam, 3).unwrap(), 2, 1).unwrap();
    assert_eq!(a, b);
}

#[test]
fn vanishing_below_length() {
    for lam in Partition::in_box(3, 3) {
        for k in 1..lam.len() {
            assert!(g_residue_cached(lam.parts(), k, 0).unwrap().is_zero(), "{lam} k={k}");
        }
    }
}

#[test]
fn q_minus_one_q_equals_q_q() {
    for q in 1..=4 {
        assert_eq!(g_residue_cached(&[q - 1, q], 2, 2).unwrap(), g_residue_cached(&[q, q], 2, 2).unwrap(), "q={q}");
    }
}

#[test]
fn trailing_zero_and_negative_entries_drop() {
    assert_eq!(g_residue(&[2, 1, 0], 2, 1).unwrap(), g_residue(&[2, 1], 2, 1).unwrap());
    assert_eq!(g_residue(&[2, -1], 2, 1).unwrap(), g_residue(&[2], 2, 1).unwrap());
}

#[test]
fn symmetric_in_each_alphabet() {
    for lam in [vec![2, 1], vec![3], vec![1, 1]] {
        let g = g_residue_cached(&lam, 2, 2).unwrap();
        assert_eq!(rename(&g, alpha(1), alpha(2)), g);
        assert_eq!(rename(&g, beta(1), beta(2)), g);
    }
}

#[test]
fn appending_a_unit_variable() {
    for lam in [vec![2, 1], vec![2, 2], vec![3, 1]] {
        let base = g_residue_cached(&lam, 2, 1).unwrap();
        let more_a = g_residue_cached(&lam, 3, 1).unwrap();
        let more_b = g_residue_cached(&lam, 2, 2).unwrap();
        assert_eq!(subst(&more_a, &[(alpha(3), int(1))]), base);
        assert_eq!(subst(&more_b, &[(beta(2), int(1))]), base);
    }
}

#[test]
fn schur_residue_matches_jacobi_trudi() {
    for lam in Partition::in_box(3, 3) {
        for k in 0..=2 {
            for l in 0..=2 {
                assert_eq!(
                    schur_residue(lam.parts(), k, l).unwrap(),
                    jacobi_trudi(&lam, k, l).unwrap(),
                    "{lam} k={k} l={l}"
                );
            }
        }
    }
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn supersymmetry_drops_paired_variables(
        parts in proptest::collection::vec(0i32..=3, 1..=2),
        k in 1usize..=3,
        l in 1usize..=2,
    ) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let g = g_residue_cached(&parts, k, l).unwrap();
        let mut map = BTreeMap::new();
        map.insert(alpha(k as u16), (int(1), kgroth_core::algebra::Monomial::var(t())));
        map.insert(beta(l as u16), (int(1), kgroth_core::algebra::Monomial::var(t())));
        let sub = g.substitute_monomials(&map);
        prop_assert!(!sub.contains_var(t()), "t survived: {}", sub);
        prop_assert_eq!(sub, g_residue_cached(&parts, k - 1, l - 1).unwrap());
    }

    #[test]
    fn straightening_agrees_with_residues(seq in proptest::collection::vec(-2i32..=4, 1..=3)) {
        let e = straighten(&seq).unwrap();
        prop_assert!(e.is_partition_keyed());
        let lhs = g_residue_cached(&seq, 2, 1).unwrap();
        let rhs = e.evaluate(|lam| g_residue_cached(lam, 2, 1)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn residue_values_are_symmetric_at_random_points(a in nonzero_rational(), b in nonzero_rational()) {
        let g = g_residue_cached(&[2, 1], 2, 0).unwrap();
        let x = subst(&g, &[(alpha(1), a.clone()), (alpha(2), b.clone())]);
        let y = subst(&g, &[(alpha(1), b), (alpha(2), a)]);
        prop_assert_eq!(x, y);
    }
}
