//! Truncated Laurent series in one variable with rational-function
//! coefficients.

use std::fmt;


use super::poly::Poly;
use super::rational::{self, Rational};
use super::ratfun::RationalFunction;
use super::variable::Variable;
use crate::error::{Error, Result};

/// `sum_{i} coefficients[i] * v^(valuation + i)`, known exactly through
/// exponent `order`. Coefficients above `order` are unknown, not zero.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    variable: Variable,
    valuation: i32,
    order: i32,
    coefficients: Vec<RationalFunction>,
}

impl TruncatedSeries {
    pub fn new(variable: Variable, valuation: i32, order: i32, mut coefficients: Vec<RationalFunction>) -> Self {
        let len = (order - valuation + 1).max(0) as usize;
        coefficients.resize(len, RationalFunction::zero());
        TruncatedSeries { variable, valuation, order, coefficients }
    }

    /// The series `c + 0*v + ...` known through `order`.
    pub fn constant(variable: Variable, c: RationalFunction, order: i32) -> Self {
        Self::new(variable, 0, order, vec![c])
    }

    pub fn variable(&self) -> Variable {
        self.variable
    }

    pub fn valuation(&self) -> i32 {
        self.valuation
    }

    /// Highest exponent whose coefficient is known.
    pub fn order(&self) -> i32 {
        self.order
    }

    /// Coefficient of `v^exp`; `None` past the truncation order.
    pub fn coefficient(&self, exp: i32) -> Option<RationalFunction> {
        if exp > self.order {
            return None;
        }
        if exp < self.valuation {
            return Some(RationalFunction::zero());
        }
        Some(self.coefficients[(exp - self.valuation) as usize].clone())
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (i32, &RationalFunction)> {
        self.coefficients.iter().enumerate().map(move |(i, c)| (self.valuation + i as i32, c))
    }

    /// The series of a Laurent polynomial, known through `order`.
    pub fn from_poly(p: &Poly, v: Variable, order: i32) -> Self {
        let cs = p.coefficients_in(v);
        let val = cs.keys().next().copied().unwrap_or(0).min(order + 1);
        let mut coeffs = vec![RationalFunction::zero(); (order - val + 1).max(0) as usize];
        for (e, c) in cs {
            if e <= order {
                coeffs[(e - val) as usize] = RationalFunction::from_poly(c);
            }
        }
        Self::new(v, val, order, coeffs)
    }

    /// Product, truncated to the exponents known for both factors.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.variable, other.variable);
        let val = self.valuation + other.valuation;
        let order = (self.order + other.valuation).min(other.order + self.valuation);
        let len = (order - val + 1).max(0) as usize;
        let mut out = vec![RationalFunction::zero(); len];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(self.variable, val, order, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.variable, other.variable);
        let val = self.valuation.min(other.valuation);
        let order = self.order.min(other.order);
        let coeffs = (val..=order)
            .map(|e| &self.coefficient(e).unwrap() + &other.coefficient(e).unwrap())
            .collect();
        Self::new(self.variable, val, order, coeffs)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let coeffs = self.coefficients.iter().map(|x| x * c).collect();
        Self::new(self.variable, self.valuation, self.order, coeffs)
    }

    /// Drops leading zero coefficients so that `valuation` is the true one.
    pub fn trimmed(&self) -> Self {
        let skip = self.coefficients.iter().take_while(|c| c.is_zero()).count();
        let coeffs = self.coefficients[skip..].to_vec();
        Self::new(self.variable, self.valuation + skip as i32, self.order, coeffs)
    }

    /// Multiplicative inverse. The lowest known coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let s = self.trimmed();
        let Some(c0) = s.coefficients.first() else {
            return Err(Error::MalformedInput("inverse of a series with no known nonzero term".into()));
        };
        let inv0 = c0.inv()?;
        let n = s.coefficients.len();
        let mut b: Vec<RationalFunction> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut acc = RationalFunction::zero();
            for i in 1..=k {
                if !s.coefficients[i].is_zero() {
                    acc = &acc + &(&s.coefficients[i] * &b[k - i]);
                }
            }
            b.push(-&(&acc * &inv0));
        }
        let val = -s.valuation;
        Ok(Self::new(s.variable, val, val + n as i32 - 1, b))
    }

    /// `exp(self)`; requires a zero constant term and nonnegative valuation.
    pub fn exp(&self) -> Result<Self> {
        if self.valuation < 0 && self.coefficients.iter().take((-self.valuation) as usize).any(|c| !c.is_zero()) {
            return Err(Error::MalformedInput("exp of a series with negative powers".into()));
        }
        if !self.coefficient(0).map(|c| c.is_zero()).unwrap_or(true) {
            return Err(Error::MalformedInput("exp of a series with nonzero constant term".into()));
        }
        let order = self.order;
        if order < 0 {
            return Ok(Self::new(self.variable, 0, order, vec![]));
        }
        let a: Vec<RationalFunction> = (0..=order).map(|e| self.coefficient(e).unwrap()).collect();
        // e_n = (1/n) sum_{k=1}^n k a_k e_{n-k}
        let mut e: Vec<RationalFunction> = vec![RationalFunction::one()];
        for n in 1..=order as usize {
            let mut acc = RationalFunction::zero();
            for k in 1..=n {
                if !a[k].is_zero() {
                    acc = &acc + &(&a[k] * &e[n - k]).scale(&rational::int(k as i64));
                }
            }
            e.push(acc.scale(&rational::rat(1, n as i64)));
        }
        Ok(Self::new(self.variable, 0, order, e))
    }
}

/// Laurent expansion of `f` at `v = 0` through exponent `order`.
///
/// The denominator (its factor list when available) is split as
/// `v^m * D(v)` with `D(0) != 0`; `1/D` is expanded by series inversion.
pub fn series_expand(f: &RationalFunction, v: Variable, order: i32) -> Result<TruncatedSeries> {
    let num = f.numerator();
    let factors = f.factor_list();
    let mut val = num.degree_range(v).map(|r| r.0).unwrap_or(0);
    let mut shifted_factors = Vec::new();
    for (fac, mult) in &factors {
        let (lo, _) = fac.degree_range(v).ok_or_else(|| Error::MalformedInput("zero factor".into()))?;
        val -= lo * *mult as i32;
        shifted_factors.push((fac.mul_monomial(&super::monomial::Monomial::var_pow(v, -lo)), *mult));
    }
    if num.is_zero() {
        return Ok(TruncatedSeries::new(v, 0, order, vec![]));
    }
    let rel = order - val;
    let num_shift = num.mul_monomial(&super::monomial::Monomial::var_pow(v, -num.degree_range(v).unwrap().0));
    let mut s = TruncatedSeries::from_poly(&num_shift, v, rel.max(-1));
    if rel < 0 {
        return Ok(TruncatedSeries::new(v, val, order, vec![]));
    }
    for (fac, mult) in &shifted_factors {
        let inv = TruncatedSeries::from_poly(fac, v, rel).inverse()?;
        for _ in 0..*mult {
            s = s.mul(&inv);
        }
    }
    let coeffs: Vec<RationalFunction> = (0..=rel).map(|e| s.coefficient(e).unwrap_or_else(RationalFunction::zero)).collect();
    Ok(TruncatedSeries::new(v, val, order, coeffs))
}

/// `exp` of a truncated series (zero constant term required).
pub fn series_exp(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.exp()
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coefficients() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{}^{e}", self.variable)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.variable, self.order + 1)
    }
}

/// Convenience: rational coefficient of a series whose coefficients are constants.
pub fn rational_coefficient(s: &TruncatedSeries, exp: i32) -> Option<Rational> {
    s.coefficient(exp)?.as_poly()?.as_constant()
}
