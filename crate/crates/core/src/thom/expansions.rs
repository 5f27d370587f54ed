use serde::Serialize;

use crate::algebra::variable::z;
use crate::algebra::rational::int;
use crate::algebra::{Poly, RationalFunction, Variable};
use crate::error::{Error, Result};
use crate::grothendieck::{GExpansion, IntegerSequence};

use super::coeff::{d_coeff, D_coeff};
use super::forms::{g_inverted, ThomInstance};

/// Default bound on `N` in [`remainder_identity_check`].
pub const REMAINDER_BOUND: usize = 6;

/// `Σ_{r≤N} Σ_s d_{r,s} G_{r+l+1, s+l+2}`, keys left unstraightened.
pub fn ktp_a2_stable(l: usize, n: usize) -> Result<GExpansion> {
    if n <= 2 * l + 2 {
        return Err(Error::MalformedInput(format!("stable expansion needs N > 2l+2 = {}", 2 * l + 2)));
    }
    let l = l as i32;
    let mut e = GExpansion::new();
    for r in 0..=n as i32 {
        for s in -r - 1..=-(r / 2) {
            e.add(&[r + l + 1, s + l + 2], d_coeff(r, s));
        }
    }
    Ok(e)
}

/// `Σ_{r≤2l+2} Σ_{s≥-l-2} D_{r,s,l} G_{r+l+1, s+l+2}`.
pub fn ktp_a2_minimal(l: usize) -> GExpansion {
    let l = l as i32;
    let mut e = GExpansion::new();
    for r in 0..=2 * l + 2 {
        for s in -l - 2..=-(r / 2) {
            e.add(&[r + l + 1, s + l + 2], D_coeff(r, s, l).expect("in range"));
        }
    }
    e
}

/// The expansion evaluated on `G` in inverted variables.
pub fn evaluate_inverted(e: &GExpansion, inst: ThomInstance) -> Result<Poly> {
    e.evaluate(|key| g_inverted(key, inst))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignReport {
    pub checked: usize,
    pub violations: Vec<(IntegerSequence, i64)>,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the coefficient of `G_{a,b}` has sign `(-1)^{a+b}`.
pub fn sign_report(e: &GExpansion) -> Result<SignReport> {
    let mut report = SignReport { checked: 0, violations: Vec::new() };
    for (key, c) in e.iter() {
        if key.len() > 2 {
            return Err(Error::MalformedInput(format!("sign law applies to pairs, got {key:?}")));
        }
        let weight: i32 = key.iter().sum();
        let expected = if weight % 2 == 0 { 1 } else { -1 };
        report.checked += 1;
        if c.signum() != expected {
            report.violations.push((key.clone(), c));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RemainderReport {
    pub n: usize,
    pub defect: RationalFunction,
}

impl RemainderReport {
    pub fn holds(&self) -> bool {
        self.defect.is_zero()
    }
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |c, i| c * (n - i) as i64 / (i + 1) as i64)
}

fn poly_in(v: Variable, coeffs: impl IntoIterator<Item = (i32, i64)>) -> Poly {
    coeffs.into_iter().fold(Poly::zero(), |acc, (e, c)| acc + &(Poly::var_pow(v, e) * &Poly::int(c)))
}

/// `p_N(z) = Σ C(N+1, 2i) z^i`.
pub fn remainder_p(n: usize, v: Variable) -> Poly {
    poly_in(v, (0..=n.div_ceil(2)).map(|i| (i as i32, binom(n + 1, 2 * i))))
}

/// `q_N(z) = Σ C(N+1, 2i+1) z^i`.
pub fn remainder_q(n: usize, v: Variable) -> Poly {
    poly_in(v, (0..=n / 2).map(|i| (i as i32, binom(n + 1, 2 * i + 1))))
}

/// Verifies `1/(1-z_2/z_1^2) = Σ_{r≤N} (Σ_s d_{r,s}(1-z_2)^s)(1-z_1)^r + R_N`
/// as an identity of rational functions.
pub fn remainder_identity_check(n: usize) -> Result<RemainderReport> {
    if n > REMAINDER_BOUND {
        return Err(Error::SizeLimit(format!("N={n} exceeds {REMAINDER_BOUND}")));
    }
    let (z1, z2) = (z(1), z(2));
    let one = Poly::one();
    let x1 = RationalFunction::from_poly(&one - &Poly::var(z1));
    let x2 = RationalFunction::from_poly(&one - &Poly::var(z2));
    let lhs = RationalFunction::new(Poly::var_pow(z1, 2), Poly::var_pow(z1, 2) - &Poly::var(z2))?;
    let mut rhs = RationalFunction::zero();
    for r in 0..=n as i32 {
        let mut row = RationalFunction::zero();
        for s in -r - 1..=-(r / 2) {
            let c = d_coeff(r, s);
            if c != 0 {
                row = &row + &x2.pow(s)?.scale(&int(c));
            }
        }
        rhs = &rhs + &(&row * &x1.pow(r)?);
    }
    let e = n as i32 + 1;
    let ratio = (&x1 / &x2).pow(e)?;
    let top = &Poly::var(z1) * &remainder_q(n, z2) + &remainder_p(n, z2);
    let bottom = RationalFunction::new(Poly::var(z2) - &Poly::var_pow(z1, 2), Poly::var(z2))?;
    let rem = -&(&(&ratio * &RationalFunction::from_poly(top)) / &bottom);
    let defect = (&lhs - &(&rhs + &rem)).normalize();
    Ok(RemainderReport { n, defect })
}
