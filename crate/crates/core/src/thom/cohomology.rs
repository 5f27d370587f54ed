//! Cohomological limits of K-theoretic classes.
//!
//! A K-root `v` with cohomological value `x` is replaced by `exp(s·t·x)`,
//! where `s` is [`LeadingTermConvention::exponent_sign`]. The coefficient of
//! `t^d` is then multiplied by `(-1)^d` when
//! [`LeadingTermConvention::alternate`] is set. At even order neither choice
//! changes the value, so [`calibrate`] accepts all four conventions on
//! `A_2`; the frozen one substitutes `v = exp(t·x)` and reads the
//! coefficient as is.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::rational::{factorial, int, pow, Rational};
use crate::algebra::variable::{abar, bbar, beta, epsilon, Family};
use crate::algebra::{Poly, Variable};
use crate::error::{Error, Result};
use crate::grothendieck::{jacobi_trudi, Partition};

use super::forms::{ktp_a2, ThomInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LeadingTermConvention {
    pub exponent_sign: i8,
    pub alternate: bool,
}

/// The calibrated convention.
pub const LEADING_TERM_CONVENTION: LeadingTermConvention = LeadingTermConvention { exponent_sign: 1, alternate: false };

/// `Σ_{i=0}^{l+1} 2^i s_{(l+1+i, l+1-i)}` in `k` ᾱ's and `m` β̄'s.
pub fn ronga_tp(l: usize, k: usize, m: usize) -> Result<Poly> {
    let l = l as i32;
    let mut out = Poly::zero();
    for i in 0..=l + 1 {
        let parts: Vec<i32> = [l + 1 + i, l + 1 - i].into_iter().filter(|&p| p > 0).collect();
        let s = jacobi_trudi(&Partition::new(parts)?, k, m)?;
        out += &s.scale(&int(1i64 << i));
    }
    Ok(out)
}

/// `c_1^3 + 3c_1c_2 + 2c_3` in `k` ᾱ's and `k` β̄'s, the `A_3` class for `l = 0`.
pub fn a3_tp_equidimensional(k: usize) -> Result<Poly> {
    let c = |i: i32| jacobi_trudi(&Partition::new(vec![i])?, k, k);
    let (c1, c2, c3) = (c(1)?, c(2)?, c(3)?);
    Ok(&(&(&c1 * &c1) * &c1) + &(&(&c1 * &c2).scale(&int(3)) + &c3.scale(&int(2))))
}

/// First nonzero coefficient of `f` after `v ↦ exp(±t·spec[v])`.
pub fn leading_term(f: &Poly, expected_order: u32, spec: &BTreeMap<Variable, Rational>) -> Result<(u32, Rational)> {
    leading_term_with(f, expected_order, spec, LEADING_TERM_CONVENTION)
}

pub fn leading_term_with(
    f: &Poly,
    expected_order: u32,
    spec: &BTreeMap<Variable, Rational>,
    conv: LeadingTermConvention,
) -> Result<(u32, Rational)> {
    let coeffs = t_expansion(f, expected_order, spec, conv)?;
    match coeffs.iter().position(|c| *c != int(0)) {
        Some(d) if (d as u32) < expected_order => Err(Error::LeadingTermViolation(format!(
            "coefficient of t^{d} is {} but order {expected_order} was expected",
            coeffs[d]
        ))),
        Some(d) => Ok((d as u32, coeffs[d].clone())),
        None => Err(Error::LeadingTermViolation(format!("vanishes through order {expected_order}"))),
    }
}

/// Coefficients of `t^0..t^max_order` after the substitution, signs applied.
pub fn t_expansion(
    f: &Poly,
    max_order: u32,
    spec: &BTreeMap<Variable, Rational>,
    conv: LeadingTermConvention,
) -> Result<Vec<Rational>> {
    let sign = int(conv.exponent_sign as i64);
    let mut rates = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        let mut rate = int(0);
        for &(v, e) in m.factors() {
            let x = spec
                .get(&v)
                .ok_or_else(|| Error::MalformedInput(format!("no cohomological value for {v}")))?;
            rate += x * int(e as i64);
        }
        rates.push((c.clone(), rate * &sign));
    }
    Ok((0..=max_order)
        .map(|d| {
            let moment: Rational = rates.iter().map(|(c, r)| c * pow(r, d as i32)).sum();
            let value = moment / Rational::from_integer(factorial(d));
            if conv.alternate && d % 2 == 1 {
                -value
            } else {
                value
            }
        })
        .collect())
}

/// `spec` on `ε, β` carried over to `ᾱ, β̄`.
pub fn cohomological_values(spec: &BTreeMap<Variable, Rational>) -> BTreeMap<Variable, Rational> {
    spec.iter()
        .filter_map(|(v, q)| match v.family {
            Family::Epsilon => Some((abar(v.index), q.clone())),
            Family::Beta => Some((bbar(v.index), q.clone())),
            _ => None,
        })
        .collect()
}

/// Whether `KTp_{A_2}` at `inst` vanishes below order `2(l+1)` and its
/// coefficient there equals Ronga's formula.
pub fn a2_leading_term_matches(inst: ThomInstance, spec: &BTreeMap<Variable, Rational>, conv: LeadingTermConvention) -> Result<bool> {
    let l = inst.l();
    let f = ktp_a2(inst)?;
    let order = 2 * (l as u32 + 1);
    let coeffs = t_expansion(&f, order, spec, conv)?;
    let ronga = ronga_tp(l, inst.a(), inst.b())?
        .evaluate(&cohomological_values(spec))
        .ok_or_else(|| Error::InternalConsistency("Ronga evaluation failed".into()))?;
    let (below, at) = coeffs.split_at(order as usize);
    Ok(below.iter().all(|c| *c == int(0)) && at[0] == ronga)
}

/// The conventions that match Ronga's formula at `l = 0` on the given
/// specializations.
pub fn calibrate(specs: &[BTreeMap<Variable, Rational>]) -> Result<Vec<LeadingTermConvention>> {
    let inst = ThomInstance::new(2, 2)?;
    let mut out = Vec::new();
    for exponent_sign in [1i8, -1] {
        for alternate in [false, true] {
            let conv = LeadingTermConvention { exponent_sign, alternate };
            let mut ok = true;
            for spec in specs {
                ok &= a2_leading_term_matches(inst, spec, conv)?;
            }
            if ok {
                out.push(conv);
            }
        }
    }
    Ok(out)
}

/// A specialization of `ε_1..ε_a, β_1..β_b` from a value list.
pub fn root_values(inst: ThomInstance, values: &[Rational]) -> BTreeMap<Variable, Rational> {
    let vars = (1..=inst.a() as u16).map(epsilon).chain((1..=inst.b() as u16).map(beta));
    vars.zip(values.iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::variable::alpha;

    #[test]
    fn ronga_small() {
        let s11 = jacobi_trudi(&Partition::new(vec![1, 1]).unwrap(), 2, 2).unwrap();
        let s2 = jacobi_trudi(&Partition::new(vec![2]).unwrap(), 2, 2).unwrap();
        assert_eq!(ronga_tp(0, 2, 2).unwrap(), &s11 + &s2.scale(&int(2)));
    }

    #[test]
    fn constant_has_order_zero() {
        assert_eq!(leading_term(&Poly::one(), 0, &BTreeMap::new()).unwrap(), (0, int(1)));
    }

    #[test]
    fn g1_has_order_one() {
        let g = Poly::one() - &Poly::var_pow(alpha(1), -1);
        let spec: BTreeMap<_, _> = [(alpha(1), int(2))].into_iter().collect();
        let (d, v) = leading_term(&g, 1, &spec).unwrap();
        assert_eq!(d, 1);
        assert_eq!(v, int(2));
        assert!(matches!(leading_term(&g, 2, &spec), Err(Error::LeadingTermViolation(_))));
    }

    #[test]
    fn calibration_is_frozen() {
        let inst = ThomInstance::new(2, 2).unwrap();
        let specs = [
            root_values(inst, &[int(2), rat(-1, 3), int(5), rat(7, 2)]),
            root_values(inst, &[int(-3), int(1), rat(2, 5), int(4)]),
        ];
        let found = calibrate(&specs).unwrap();
        assert!(found.contains(&LEADING_TERM_CONVENTION), "{found:?}");
        assert_eq!(found.len(), 4);
    }
}
