use std::collections::BTreeMap;

use kgroth_core::algebra::rational::{int, rat};
use kgroth_core::algebra::variable::{alpha, beta, epsilon, sigma};
use kgroth_core::algebra::{Monomial, Poly, Rational, Variable};
use kgroth_core::grothendieck::{expand_in_g_basis, straighten_expansion, GExpansion};
use kgroth_core::thom::*;
use proptest::prelude::*;

fn inst(a: usize, b: usize) -> ThomInstance {
    ThomInstance::new(a, b).unwrap()
}

#[test]
fn stable_straightens_to_minimal() {
    for l in 0..=2 {
        let stable = ktp_a2_stable(l, 2 * l + 3).unwrap();
        assert!(!stable.is_partition_keyed());
        assert_eq!(straighten_expansion(&stable).unwrap(), ktp_a2_minimal(l), "l={l}");
    }
}

#[test]
fn long_rows_straighten_to_zero() {
    for l in 0..=2i32 {
        for r in 2 * l + 3..=2 * l + 6 {
            let mut row = GExpansion::new();
            for s in -r - 1..=-(r / 2) {
                row.add(&[r + l + 1, s + l + 2], d_coeff(r, s));
            }
            assert!(straighten_expansion(&row).unwrap().is_empty(), "l={l} r={r}");
        }
    }
}

#[test]
fn minimal_evaluates_to_residue() {
    for l in 0..=2 {
        for a in 1..=3 {
            if a + l > 4 {
                continue;
            }
            let i = inst(a, a + l);
            let e = evaluate_inverted(&ktp_a2_minimal(l), i).unwrap();
            assert_eq!(e, ktp_a2(i).unwrap(), "a={a} l={l}");
        }
    }
}

#[test]
fn minimal_l0_at_one_one_is_the_residue() {
    let i = inst(1, 1);
    let f = ktp_a2(i).unwrap();
    let terms = [(vec![1, 1], 1), (vec![2], 2), (vec![2, 1], -2), (vec![3], -1), (vec![3, 1], 1)];
    let mut sum = Poly::zero();
    for (key, c) in terms {
        sum += &g_inverted(&key, i).unwrap().scale(&int(c));
    }
    assert_eq!(f, sum);
}

#[test]
fn stable_sign_law() {
    for l in 0..=2 {
        assert!(sign_report(&ktp_a2_stable(l, 2 * l + 3).unwrap()).unwrap().passed());
    }
}

#[test]
fn minimal_json_and_latex() {
    let e = ktp_a2_minimal(0);
    let j = e.to_json();
    assert_eq!(j.as_array().unwrap().len(), 5);
    assert!(e.to_latex().starts_with("\\left(G_{1,1} + 2G_{2}\\right)"), "{}", e.to_latex());
}

#[test]
fn remainder_identity_through_six() {
    for n in 0..=REMAINDER_BOUND {
        let rep = remainder_identity_check(n).unwrap();
        assert!(rep.holds(), "N={n}");
    }
}

#[test]
fn d3_row_sums_vanish() {
    let t = d3_table(3, (-4, 1), (-16, 0)).unwrap();
    for r in 1..=3 {
        let total: Rational = t.iter().filter(|(k, _)| k[0] == r).map(|(_, v)| v.clone()).sum();
        assert_eq!(total, int(0), "r={r}");
    }
    let corner: Rational = (-16..=0).map(|tt| t.get(&[0, -1, tt])).sum();
    assert_eq!(corner, int(d_coeff(0, -1)));
}

#[test]
fn a3_expansion_starts_with_the_corner_coefficient() {
    let i = inst(3, 3);
    let f = ktp_a3(i).unwrap();
    let mut map = BTreeMap::new();
    for k in 1..=3u16 {
        map.insert(epsilon(k), (int(1), Monomial::var_pow(alpha(k), -1)));
        map.insert(beta(k), (int(1), Monomial::var_pow(beta(k), -1)));
    }
    let e = expand_in_g_basis(&f.substitute_monomials(&map), 3, 3, (3, 6)).unwrap();
    let corner = d3_table(0, (-1, -1), (-2, -2)).unwrap();
    assert_eq!(int(e.get(&[1, 1, 1])), corner.get(&[0, -1, -2]));
    let lowest = e.iter().map(|(k, _)| k.iter().sum::<i32>()).min().unwrap();
    assert_eq!(lowest, 3);
}

#[test]
fn a3_order_sensitivity_is_not_asserted_but_a2_is() {
    assert_ne!(ktp_a2(inst(2, 2)).unwrap(), ktp_a2_swapped(inst(2, 2)).unwrap());
    assert!(matches!(ktp_a3(inst(3, 5)), Err(kgroth_core::Error::SizeLimit(_))));
}

#[test]
fn ronga_lines() {
    for l in 0..=2 {
        let f = ronga_tp(l, 2, 2 + l).unwrap();
        assert!(!f.is_zero());
    }
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_matches_oracle(r in 0i32..=10, s in -12i32..=2) {
        let oracle = d_oracle(10);
        prop_assert_eq!(int(d_coeff(r, s)), oracle.get(&[r, s]));
    }

    #[test]
    fn closed_form_sign(r in 0i32..=12, s in -14i32..=0) {
        let d = d_coeff(r, s);
        let inside = -r - 1 <= s && s <= -((r + 1) / 2).max(1);
        prop_assert_eq!(d != 0, inside);
        if inside {
            prop_assert_eq!(d.signum(), if (r + s + 1) % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn giambelli_thom_porteous(r in 1usize..=2, a in 1usize..=4, extra in 0usize..=2) {
        prop_assume!(r <= a && a + extra <= 4);
        let i = inst(a, a + extra);
        let seq = vec![(r + i.l()) as i32; r];
        prop_assert_eq!(ktp_sigma_r(r, i).unwrap(), g_inverted(&seq, i).unwrap());
    }

    #[test]
    fn a2_matches_ronga(l in 0usize..=2, vals in proptest::collection::vec(nonzero(), 6)) {
        let i = inst(2, 2 + l);
        let spec = root_values(i, &vals);
        prop_assert!(a2_leading_term_matches(i, &spec, LEADING_TERM_CONVENTION).unwrap());
    }

    #[test]
    fn a2_is_supersymmetric(a in 1usize..=3, l in 0usize..=1, vals in proptest::collection::vec(nonzero(), 7)) {
        let i = inst(a, a + l);
        let f = ktp_a2(i).unwrap();
        prop_assert!(t_substitution_constant(&f, i, &root_values(i, &vals)).unwrap());
    }

    #[test]
    fn a3_leading_order(a in 2usize..=3, vals in proptest::collection::vec(nonzero(), 6)) {
        let i = inst(a, a);
        let f = ktp_a3(i).unwrap();
        let spec = root_values(i, &vals);
        let coeffs = t_expansion(&f, 3, &spec, LEADING_TERM_CONVENTION).unwrap();
        prop_assert!(coeffs[..3].iter().all(|c| *c == int(0)));
        let expected = a3_tp_equidimensional(a).unwrap().evaluate(&cohomological_values(&spec)).unwrap();
        prop_assert_eq!(&coeffs[3], &expected);
        prop_assert!(t_substitution_constant(&f, i, &spec).unwrap());
    }

    #[test]
    fn localization_for_products(r in 1usize..=2, w in 1usize..=4, e in 0i32..=2) {
        prop_assume!(r <= w);
        let g: Poly = Poly::product(
            (1..=r as u16).map(|i| Poly::monomial(Monomial::var_pow(sigma(i), e))).collect::<Vec<_>>().iter(),
        );
        prop_assert!(localization_vs_residue(r, w, &g).unwrap().holds());
    }
}

#[test]
fn leading_term_needs_values() {
    let f = Poly::var(epsilon(1));
    let empty: BTreeMap<Variable, Rational> = BTreeMap::new();
    assert!(leading_term(&f, 0, &empty).is_err());
}

#[test]
fn closed_form_support_on_the_whole_grid() {
    for r in 0..=16i32 {
        for s in -20..=2i32 {
            let inside = -r - 1 <= s && s <= -((r + 1) / 2).max(1);
            assert_eq!(d_coeff(r, s) != 0, inside, "r={r} s={s}");
        }
    }
}
