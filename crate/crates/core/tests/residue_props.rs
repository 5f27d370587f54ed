use kgroth_core::algebra::rational::rat;
use kgroth_core::algebra::variable::{beta, z};
use kgroth_core::algebra::{Poly, Rational, RationalFunction};
use kgroth_core::residue::{
    residue_at_infinity, residue_at_zero, residue_factored, residue_zero_infinity, Factored, Location,
};
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

fn linear(c: &Rational) -> Poly {
    Poly::var(z(1)) - &Poly::constant(c.clone())
}

#[test]
fn two_simple_poles_cancel() {
    let f = RationalFunction::new(Poly::one(), &linear(&rat(1, 1)) * &linear(&rat(2, 1))).unwrap();
    assert!(residue_zero_infinity(&f, z(1)).unwrap().is_zero());
}

#[test]
fn log_form_of_a_unit_has_total_residue_zero() {
    let f = RationalFunction::new(Poly::one(), Poly::var(z(1))).unwrap();
    assert_eq!(residue_at_zero(&f, z(1)).unwrap(), RationalFunction::one());
    assert_eq!(residue_at_infinity(&f, z(1)).unwrap(), -&RationalFunction::one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn vanishing_for_high_pole_order(
        shape in (0usize..=2).prop_flat_map(|r| (Just(r), r + 2..=5usize)).prop_flat_map(|(r, s)| (Just(r), Just(s), 0..=s - r - 2)),
        xs in proptest::collection::vec(nonzero(), 2),
        ys in proptest::collection::vec(nonzero(), 5),
    ) {
        let (r, s, a) = shape;
        let num = xs[..r].iter().fold(Poly::var_pow(z(1), a as i32), |acc, x| &acc * &linear(x));
        let den = Poly::product(ys[..s].iter().map(linear).collect::<Vec<_>>().iter());
        let f = RationalFunction::new(num, den).unwrap();
        prop_assert!(residue_zero_infinity(&f, z(1)).unwrap().is_zero());
    }

    #[test]
    fn factored_route_agrees_with_series(c in nonzero(), e in -2i32..=3) {
        let mut f = Factored::one();
        f.push_num(Poly::var_pow(z(1), e));
        f.push_num(Poly::one() - &(&Poly::var(z(1)) * &Poly::var(beta(1))));
        f.push_den(linear(&c), 2);
        let via_series = residue_zero_infinity(&f.to_ratfun().unwrap(), z(1)).unwrap();
        let via_factors = residue_factored(&f, z(1), Location::ZeroAndInfinity).unwrap().to_ratfun().unwrap();
        prop_assert_eq!(via_series, via_factors);
    }
}
