//! Residues of rational differential forms at `0`, at `∞`, and iterated.
//!
//! Everything goes through Laurent series extraction: after shifting out
//! the valuation in `v`, the denominator is inverted as a truncated power
//! series. No roots are ever located.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};

use crate::algebra::{series_expand, Monomial, Poly, RationalFunction, Variable};
use crate::error::{Error, Result};

static DEBUG_VERIFY: AtomicBool = AtomicBool::new(false);

/// Turns on recomputation of order-insensitive iterated residues in a
/// second order.
pub fn set_debug_verification(on: bool) {
    DEBUG_VERIFY.store(on, Ordering::Relaxed);
}

pub fn debug_verification() -> bool {
    DEBUG_VERIFY.load(Ordering::Relaxed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Location {
    Zero,
    Infinity,
    ZeroAndInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueSpec {
    pub variable: Variable,
    pub location: Location,
}

impl ResidueSpec {
    pub fn new(variable: Variable, location: Location) -> Self {
        ResidueSpec { variable, location }
    }

    /// Residues at `{0, ∞}` for each variable, in the given order.
    pub fn zero_infinity(vars: &[Variable]) -> Vec<Self> {
        vars.iter().map(|&v| Self::new(v, Location::ZeroAndInfinity)).collect()
    }
}

/// `dv/v` or `dv`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    Log,
    Plain,
}

/// A product of numerator polynomials over a product of powers of
/// denominator polynomials. Nothing is multiplied out until needed.
#[derive(Clone, Debug, Default)]
pub struct Factored {
    num: Vec<Poly>,
    den: Vec<(Poly, u32)>,
}

impl Factored {
    pub fn one() -> Self {
        Factored::default()
    }

    pub fn from_poly(p: Poly) -> Self {
        Factored { num: vec![p], den: Vec::new() }
    }

    pub fn from_ratfun(f: &RationalFunction) -> Self {
        let mut out = Factored::from_poly(f.numerator().clone());
        for (p, e) in f.factor_list() {
            out.push_den(p, e);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().any(|p| p.is_zero())
    }

    pub fn numerator_factors(&self) -> &[Poly] {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn push_num(&mut self, p: Poly) {
        if !p.is_one() {
            self.num.push(p);
        }
    }

    /// Multiplies by `p^-e`. Single-term factors are inverted in place.
    pub fn push_den(&mut self, p: Poly, e: u32) {
        assert!(!p.is_zero(), "zero denominator factor");
        if e == 0 || p.is_one() {
            return;
        }
        if let Some((m, c)) = p.as_term() {
            let inv = Poly::term(m.inv(), c.recip());
            self.num.push(inv.pow(e));
        } else {
            self.den.push((p, e));
        }
    }

    /// Multiplies by `p^e` for any integer `e`.
    pub fn push_pow(&mut self, p: Poly, e: i32) {
        if e >= 0 {
            if e > 0 {
                self.push_num(p.pow(e as u32));
            }
        } else {
            self.push_den(p, (-e) as u32);
        }
    }

    pub fn times(mut self, other: Factored) -> Factored {
        self.num.extend(other.num);
        self.den.extend(other.den);
        self
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut s = BTreeSet::new();
        for p in self.num.iter().chain(self.den.iter().map(|(p, _)| p)) {
            s.extend(p.variables());
        }
        s
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.num.iter().chain(self.den.iter().map(|(p, _)| p)).any(|p| p.contains_var(v))
    }

    /// Product of the numerator factors.
    pub fn numerator(&self) -> Poly {
        Poly::product(self.num.iter())
    }

    pub fn to_ratfun(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Ok(RationalFunction::zero());
        }
        Ok(RationalFunction::with_factors(self.numerator(), self.den.clone())?.normalize())
    }

    /// The value as a Laurent polynomial, if the denominator cancels.
    pub fn to_poly(&self) -> Result<Poly> {
        if self.den.is_empty() {
            return Ok(self.numerator());
        }
        self.to_ratfun()?.as_poly().ok_or_else(|| {
            Error::InternalConsistency("expected a Laurent polynomial, denominator did not cancel".into())
        })
    }

    fn split(&self, v: Variable) -> (Factored, Vec<Poly>, Vec<(Poly, u32)>) {
        let mut rest = Factored::one();
        let mut num = Vec::new();
        let mut den = Vec::new();
        for p in &self.num {
            if p.contains_var(v) {
                num.push(p.clone());
            } else {
                rest.num.push(p.clone());
            }
        }
        for (p, e) in &self.den {
            if p.contains_var(v) {
                den.push((p.clone(), *e));
            } else {
                rest.den.push((p.clone(), *e));
            }
        }
        (rest, num, den)
    }
}

impl From<Poly> for Factored {
    fn from(p: Poly) -> Self {
        Factored::from_poly(p)
    }
}

impl From<&RationalFunction> for Factored {
    fn from(f: &RationalFunction) -> Self {
        Factored::from_ratfun(f)
    }
}

/// A numerator polynomial over a list of denominator factors.
type Fraction = (Poly, Vec<(Poly, u32)>);

/// Coefficient of `v^-1` at `v = 0` of `∏num / ∏den^e`.
fn res0_core(num: &[Poly], den: &[(Poly, u32)], v: Variable) -> Result<Fraction> {
    let n_poly = Poly::product(num.iter());
    if n_poly.is_zero() {
        return Ok((Poly::zero(), Vec::new()));
    }
    let vn = n_poly.degree_range(v).map(|r| r.0).unwrap_or(0);
    let n_shift = n_poly.mul_monomial(&Monomial::var_pow(v, -vn));
    let mut vd = 0;
    let mut shifted = Vec::with_capacity(den.len());
    for (p, e) in den {
        let lo = p.degree_range(v).map(|r| r.0).unwrap_or(0);
        vd += lo * *e as i32;
        shifted.push((p.mul_monomial(&Monomial::var_pow(v, -lo)), *e));
    }
    let n = -1 - (vn - vd);
    if n < 0 {
        return Ok((Poly::zero(), Vec::new()));
    }
    let mut d = Poly::one();
    for (p, e) in &shifted {
        for _ in 0..*e {
            d = d.mul_truncated(p, v, n);
        }
    }
    let dc = d.coefficients_in(v);
    let nc = n_shift.coefficients_in(v);
    let coeff = |map: &std::collections::BTreeMap<i32, Poly>, i: i32| map.get(&i).cloned().unwrap_or_else(Poly::zero);
    let c0 = coeff(&dc, 0);
    if c0.is_zero() {
        return Err(Error::InternalConsistency("shifted denominator vanishes at the origin".into()));
    }
    let nu = n as usize;
    let mut c0_pow = vec![Poly::one()];
    for i in 1..=nu {
        let next = &c0_pow[i - 1] * &c0;
        c0_pow.push(next);
    }
    // B_0 = 1, B_k = -sum_{i=1}^k D_i c0^(i-1) B_(k-i); 1/D = sum B_k v^k / c0^(k+1)
    let mut b: Vec<Poly> = vec![Poly::one()];
    for k in 1..=nu {
        let mut acc = Poly::zero();
        for i in 1..=k {
            let di = coeff(&dc, i as i32);
            if di.is_zero() || b[k - i].is_zero() {
                continue;
            }
            acc += &(&(&di * &c0_pow[i - 1]) * &b[k - i]);
        }
        b.push(-acc);
    }
    let mut r = Poly::zero();
    for j in 0..=nu {
        let nj = coeff(&nc, j as i32);
        if nj.is_zero() || b[nu - j].is_zero() {
            continue;
        }
        r += &(&(&nj * &b[nu - j]) * &c0_pow[j]);
    }
    if let Some((m, c)) = c0.as_term() {
        let inv = Poly::term(m.inv(), c.recip()).pow(n as u32 + 1);
        Ok((&r * &inv, Vec::new()))
    } else {
        Ok((r, vec![(c0, n as u32 + 1)]))
    }
}

fn res_inf_core(num: &[Poly], den: &[(Poly, u32)], v: Variable) -> Result<Fraction> {
    let mut inum: Vec<Poly> = num.iter().map(|p| p.invert_var(v)).collect();
    inum.push(Poly::var_pow(v, -2));
    let iden: Vec<(Poly, u32)> = den.iter().map(|(p, e)| (p.invert_var(v), *e)).collect();
    let (r, d) = res0_core(&inum, &iden, v)?;
    Ok((-r, d))
}

fn add_fractions(a: Fraction, b: Fraction) -> Fraction {
    if a.0.is_zero() {
        return b;
    }
    if b.0.is_zero() {
        return a;
    }
    if a.1 == b.1 {
        return (a.0 + &b.0, a.1);
    }
    let da = Poly::product(a.1.iter().map(|(p, e)| p.pow(*e)).collect::<Vec<_>>().iter());
    let db = Poly::product(b.1.iter().map(|(p, e)| p.pow(*e)).collect::<Vec<_>>().iter());
    let num = &(&a.0 * &db) + &(&b.0 * &da);
    let mut den = a.1;
    den.extend(b.1);
    (num, den)
}

/// One residue step on a factored function; factors free of `v` pass through.
pub fn residue_factored(f: &Factored, v: Variable, location: Location) -> Result<Factored> {
    if f.is_zero() {
        return Ok(Factored::from_poly(Poly::zero()));
    }
    let (mut rest, num, den) = f.split(v);
    let (p, d) = match location {
        Location::Zero => res0_core(&num, &den, v)?,
        Location::Infinity => res_inf_core(&num, &den, v)?,
        Location::ZeroAndInfinity => add_fractions(res0_core(&num, &den, v)?, res_inf_core(&num, &den, v)?),
    };
    if p.is_zero() {
        return Ok(Factored::from_poly(Poly::zero()));
    }
    rest.push_num(p);
    for (q, e) in d {
        rest.push_den(q, e);
    }
    Ok(rest)
}

/// Coefficient of `v^-1` in the Laurent expansion of `f` at `v = 0`.
pub fn residue_at_zero(f: &RationalFunction, v: Variable) -> Result<RationalFunction> {
    let s = series_expand(f, v, -1)?;
    Ok(s.coefficient(-1).expect("order -1 is known").normalize())
}

/// `-Res_{w=0} f(1/w)/w^2`.
pub fn residue_at_infinity(f: &RationalFunction, v: Variable) -> Result<RationalFunction> {
    let g = f.invert_var(v).mul_poly(&Poly::var_pow(v, -2));
    Ok(-&residue_at_zero(&g, v)?)
}

pub fn residue_zero_infinity(f: &RationalFunction, v: Variable) -> Result<RationalFunction> {
    Ok(&residue_at_zero(f, v)? + &residue_at_infinity(f, v)?)
}

/// An integrand together with its measure variables.
#[derive(Clone, Debug)]
pub struct ResidueForm {
    integrand: Factored,
    measure: Vec<(Variable, Measure)>,
}

impl ResidueForm {
    pub fn new(integrand: impl Into<Factored>, measure: Vec<(Variable, Measure)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (v, _) in &measure {
            if !seen.insert(*v) {
                return Err(Error::MalformedInput(format!("measure variable {v} repeated")));
            }
        }
        Ok(ResidueForm { integrand: integrand.into(), measure })
    }

    /// `f ∏ dv/v`.
    pub fn logarithmic(integrand: impl Into<Factored>, vars: &[Variable]) -> Result<Self> {
        Self::new(integrand, vars.iter().map(|&v| (v, Measure::Log)).collect())
    }

    pub fn integrand(&self) -> &Factored {
        &self.integrand
    }

    pub fn measure(&self) -> &[(Variable, Measure)] {
        &self.measure
    }

    /// Integrand with the `1/v` of logarithmic measures folded in.
    fn full_integrand(&self) -> Factored {
        let mut f = self.integrand.clone();
        for (v, m) in &self.measure {
            if *m == Measure::Log {
                f.push_num(Poly::var_pow(*v, -1));
            }
        }
        f
    }

    /// Whether every denominator factor involves at most one of `vars`.
    pub fn is_separable(&self, vars: &[Variable]) -> bool {
        self.integrand
            .den
            .iter()
            .all(|(p, _)| vars.iter().filter(|v| p.contains_var(**v)).count() <= 1)
    }
}

/// Applies `specs` left to right (innermost first) and returns the factored result.
pub fn iterated_residue_factored(form: &ResidueForm, specs: &[ResidueSpec]) -> Result<Factored> {
    let mut seen = BTreeSet::new();
    for s in specs {
        if !seen.insert(s.variable) {
            return Err(Error::MalformedInput(format!("residue variable {} repeated", s.variable)));
        }
        if !form.measure.iter().any(|(v, _)| *v == s.variable) {
            return Err(Error::MalformedInput(format!("{} is not a measure variable", s.variable)));
        }
    }
    let mut f = form.full_integrand();
    for s in specs {
        f = residue_factored(&f, s.variable, s.location)?;
        if f.is_zero() {
            return Ok(f);
        }
    }
    if let Some(s) = specs.iter().find(|s| f.contains_var(s.variable)) {
        return Err(Error::InternalConsistency(format!("residue variable {} survived", s.variable)));
    }
    Ok(f)
}

/// Iterated residue as a normalized rational function. In debug
/// verification mode separable forms are recomputed in reverse order.
pub fn iterated_residue(form: &ResidueForm, specs: &[ResidueSpec]) -> Result<RationalFunction> {
    let r = iterated_residue_factored(form, specs)?.to_ratfun()?;
    if debug_verification() {
        let vars: Vec<Variable> = specs.iter().map(|s| s.variable).collect();
        if form.is_separable(&vars) {
            let rev: Vec<ResidueSpec> = specs.iter().rev().copied().collect();
            let r2 = iterated_residue_factored(form, &rev)?.to_ratfun()?;
            if r != r2 {
                return Err(Error::InternalConsistency("iterated residue depends on the order".into()));
            }
        }
    }
    Ok(r)
}

/// Iterated residue that must be a Laurent polynomial.
pub fn iterated_residue_poly(form: &ResidueForm, specs: &[ResidueSpec]) -> Result<Poly> {
    iterated_residue_factored(form, specs)?.to_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::algebra::variable::{alpha, beta, x, z};

    fn v() -> Variable {
        z(1)
    }

    fn p(var: Variable) -> Poly {
        Poly::var(var)
    }

    fn rf(num: Poly, den: Poly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    fn factored_res(f: &RationalFunction, loc: Location) -> RationalFunction {
        residue_factored(&Factored::from_ratfun(f), v(), loc).unwrap().to_ratfun().unwrap()
    }

    #[test]
    fn one_over_v() {
        let f = rf(Poly::one(), p(v()));
        assert_eq!(residue_at_zero(&f, v()).unwrap(), RationalFunction::one());
        assert_eq!(residue_at_infinity(&f, v()).unwrap(), -&RationalFunction::one());
        assert!(residue_zero_infinity(&f, v()).unwrap().is_zero());
    }

    #[test]
    fn geometric_pole() {
        let den = &p(v()) * &(Poly::one() - &p(v()) * &p(alpha(1)));
        let f = rf(Poly::one(), den);
        assert_eq!(residue_at_zero(&f, v()).unwrap(), RationalFunction::one());
    }

    #[test]
    fn regular_at_zero() {
        let den = &(p(v()) - p(x(1))) * &(p(v()) - p(x(2)));
        let f = rf(Poly::one(), den);
        assert!(residue_at_zero(&f, v()).unwrap().is_zero());
        assert!(residue_zero_infinity(&f, v()).unwrap().is_zero());
    }

    #[test]
    fn g1_integrand() {
        // (1 - v)/((1 - v a1) v)
        let num = Poly::one() - p(v());
        let den = &(Poly::one() - &p(v()) * &p(alpha(1))) * &p(v());
        let f = rf(num, den);
        let inf = residue_at_infinity(&f, v()).unwrap();
        assert_eq!(inf.to_string(), "-a1^-1");
        assert_eq!(residue_zero_infinity(&f, v()).unwrap().to_string(), "1 - a1^-1");
        assert_eq!(factored_res(&f, Location::ZeroAndInfinity).to_string(), "1 - a1^-1");
    }

    #[test]
    fn polynomial_has_no_residue_at_infinity() {
        let f = RationalFunction::var(v());
        assert!(residue_at_infinity(&f, v()).unwrap().is_zero());
    }

    #[test]
    fn factored_matches_series_route() {
        let a1 = p(alpha(1));
        let b1 = p(beta(1));
        let vv = p(v());
        let num = &(&vv * &vv) * &b1 - &a1 + vv.clone();
        let den = &(&vv * &(Poly::one() - &vv * &a1)).pow(2) * &(&(&vv * &vv) - &(&vv * &b1.scale(&int(3))) + &a1);
        let f = rf(num, den);
        for loc in [Location::Zero, Location::Infinity, Location::ZeroAndInfinity] {
            let series = match loc {
                Location::Zero => residue_at_zero(&f, v()).unwrap(),
                Location::Infinity => residue_at_infinity(&f, v()).unwrap(),
                Location::ZeroAndInfinity => residue_zero_infinity(&f, v()).unwrap(),
            };
            assert_eq!(factored_res(&f, loc), series, "{loc:?}");
        }
    }

    #[test]
    fn separable_fubini() {
        let z1 = p(z(1));
        let z2 = p(z(2));
        let f1 = Factored::from_ratfun(&rf(Poly::one() - &z1, Poly::one() - &z1 * &p(alpha(1))));
        let f2 = Factored::from_ratfun(&rf(Poly::one() - &z2.scale(&rat(1, 2)), Poly::one() - &z2 * &p(alpha(2))));
        let form = ResidueForm::logarithmic(f1.clone().times(f2.clone()), &[z(1), z(2)]).unwrap();
        let both = iterated_residue(&form, &ResidueSpec::zero_infinity(&[z(2), z(1)])).unwrap();
        let r1 = iterated_residue(&ResidueForm::logarithmic(f1, &[z(1)]).unwrap(), &ResidueSpec::zero_infinity(&[z(1)])).unwrap();
        let r2 = iterated_residue(&ResidueForm::logarithmic(f2, &[z(2)]).unwrap(), &ResidueSpec::zero_infinity(&[z(2)])).unwrap();
        assert_eq!(both, &r1 * &r2);
        set_debug_verification(true);
        let again = iterated_residue(&form, &ResidueSpec::zero_infinity(&[z(1), z(2)]));
        set_debug_verification(false);
        assert_eq!(again.unwrap(), both);
    }

    #[test]
    fn bad_specs() {
        let form = ResidueForm::logarithmic(Poly::one(), &[z(1)]).unwrap();
        assert!(iterated_residue(&form, &ResidueSpec::zero_infinity(&[z(2)])).is_err());
        assert!(iterated_residue(&form, &ResidueSpec::zero_infinity(&[z(1), z(1)])).is_err());
        assert!(ResidueForm::logarithmic(Poly::one(), &[z(1), z(1)]).is_err());
    }

    #[test]
    fn nonunit_constant_term_stays_rational() {
        // 1/(v (v - x1 - x2)) at 0: -1/(x1 + x2)
        let den = &p(v()) * &(p(v()) - p(x(1)) - p(x(2)));
        let f = rf(Poly::one(), den);
        let r = factored_res(&f, Location::Zero);
        let expect = rf(-Poly::one(), p(x(1)) + p(x(2)));
        assert_eq!(r, expect);
        assert_eq!(residue_at_zero(&f, v()).unwrap(), expect);
    }
}
