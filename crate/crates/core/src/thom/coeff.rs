//! The integer grids `d_{r,s}`, `D_{r,s,l}` and `d_{r,s,t}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::rational::{int, Rational};
use crate::algebra::series::series_expand;
use crate::algebra::variable::x;
use crate::algebra::{Poly, RationalFunction};
use crate::error::{Error, Result};

/// Integer coefficients keyed by `(r, s)`, `(r, s, l)` or `(r, s, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    axes: Vec<&'static str>,
    entries: BTreeMap<Vec<i32>, Rational>,
}

impl CoeffTable {
    pub fn new(axes: &[&'static str]) -> Self {
        CoeffTable { axes: axes.to_vec(), entries: BTreeMap::new() }
    }

    pub fn axes(&self) -> &[&'static str] {
        &self.axes
    }

    /// Stores `value` at `key`; zero values are dropped.
    pub fn insert(&mut self, key: Vec<i32>, value: Rational) {
        assert_eq!(key.len(), self.axes.len(), "key arity");
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    pub fn get(&self, key: &[i32]) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn all_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    /// Rows `{"r": .., "s": .., "value": ..}` in lexicographic key order.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|(k, v)| {
                let mut row = serde_json::Map::new();
                for (name, c) in self.axes.iter().zip(k) {
                    row.insert((*name).to_string(), json!(c));
                }
                let value = match v.to_integer().to_i64() {
                    Some(n) if v.is_integer() => json!(n),
                    _ => json!(v.to_string()),
                };
                row.insert("value".into(), value);
                Value::Object(row)
            })
            .collect();
        Value::Array(rows)
    }

    /// One `symbol_{key} = value` line per nonzero entry.
    pub fn to_latex(&self, symbol: &str) -> String {
        self.entries
            .iter()
            .map(|(k, v)| {
                let key: Vec<String> = k.iter().map(|c| c.to_string()).collect();
                format!("{symbol}_{{{}}} = {v}\\\\\n", key.join(","))
            })
            .collect()
    }

    /// Two-axis tables as a grid with one row per `x2^s`, one column per `x1^r`.
    pub fn to_grid(&self) -> String {
        if self.axes.len() != 2 {
            return self
                .entries
                .iter()
                .map(|(k, v)| format!("{k:?} {v}\n"))
                .collect();
        }
        let r_max = self.entries.keys().map(|k| k[0]).max().unwrap_or(0);
        let s_min = self.entries.keys().map(|k| k[1]).min().unwrap_or(-1);
        let s_max = self.entries.keys().map(|k| k[1]).max().unwrap_or(-1);
        let width = self.entries.values().map(|v| v.to_string().len()).max().unwrap_or(1).max(4) + 1;
        let mut out = format!("{:>8}", "");
        for r in 0..=r_max {
            let head = match r {
                0 => "1".to_string(),
                1 => "x1".to_string(),
                _ => format!("x1^{r}"),
            };
            let _ = write!(out, "{head:>width$}");
        }
        out.push('\n');
        for s in (s_min..=s_max).rev() {
            let _ = write!(out, "{:>8}", format!("x2^{s}"));
            for r in 0..=r_max {
                let cell = self.entries.get(&vec![r, s]).map(|v| v.to_string()).unwrap_or_default();
                let _ = write!(out, "{cell:>width$}");
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        out
    }
}

fn binom(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: i128 = 1;
    for i in 0..k {
        c = c * (n - i) as i128 / (i + 1) as i128;
    }
    c
}

/// `d_{r,s}` from the three-binomial closed form; zero outside
/// `-r-1 ≤ s ≤ -⌈r/2⌉`.
pub fn d_coeff(r: i32, s: i32) -> i64 {
    if r < 0 {
        return 0;
    }
    let (r, s) = (r as i64, s as i64);
    let n = -s - 1;
    let term = |e: i64, k: i64| -> i128 {
        let c = binom(n, k);
        if c == 0 || e < 0 {
            0
        } else {
            c << e
        }
    };
    let total = term(-2 * s - 2 - r, -2 * s - r - 2) + term(-2 * s - r, -2 * s - r - 1) + term(-2 * s - r, -2 * s - r);
    let signed = if (r + s + 1).rem_euclid(2) == 0 { total } else { -total };
    signed as i64
}

/// All `d_{r,s}` with `r ≤ r_max`, from `(1-2x_1+x_1^2) Σ_k x_2^{-k} (2x_1-x_1^2)^{k-1}`.
pub fn d_oracle(r_max: usize) -> CoeffTable {
    let mut acc: BTreeMap<(i32, i32), BigInt> = BTreeMap::new();
    let mut power: Vec<BigInt> = vec![BigInt::from(1)];
    for k in 1..=r_max + 1 {
        for (r, c) in power.iter().enumerate() {
            for (shift, m) in [(0, 1), (1, -2), (2, 1)] {
                let rr = r + shift;
                if rr <= r_max && !c.is_zero() {
                    *acc.entry((rr as i32, -(k as i32))).or_default() += c * m;
                }
            }
        }
        let mut next = vec![BigInt::zero(); power.len() + 2];
        for (r, c) in power.iter().enumerate() {
            next[r + 1] += c * 2;
            next[r + 2] -= c;
        }
        power = next;
    }
    let mut table = CoeffTable::new(&["r", "s"]);
    for ((r, s), c) in acc {
        table.insert(vec![r, s], Rational::from_integer(c));
    }
    table
}

/// `d_coeff` tabulated for `r ≤ r_max`.
pub fn d_table(r_max: usize) -> CoeffTable {
    let mut table = CoeffTable::new(&["r", "s"]);
    for r in 0..=r_max as i32 {
        for s in -r - 1..=0 {
            table.insert(vec![r, s], int(d_coeff(r, s)));
        }
    }
    table
}

/// The minimal-expansion coefficient: `d_{r,s}` above row `-l-2`, the
/// column sum from `-r-1` to `-l-2` on it.
#[allow(non_snake_case)]
pub fn D_coeff(r: i32, s: i32, l: i32) -> Result<i64> {
    if l < 0 || r < 0 || r > 2 * l + 2 || s < -l - 2 || s > -(r / 2) {
        return Err(Error::MalformedInput(format!("D_{{{r},{s},{l}}} is outside the minimal range")));
    }
    Ok(if s > -l - 2 { d_coeff(r, s) } else { (-r - 1..=-l - 2).map(|t| d_coeff(r, t)).sum() })
}

/// All `D_{r,s,l}` of the minimal expansion at relative dimension `l`.
#[allow(non_snake_case)]
pub fn D_table(l: i32) -> Result<CoeffTable> {
    let mut table = CoeffTable::new(&["r", "s", "l"]);
    for r in 0..=2 * l + 2 {
        for s in -l - 2..=-(r / 2) {
            table.insert(vec![r, s, l], int(D_coeff(r, s, l)?));
        }
    }
    Ok(table)
}

/// `d_{r,s,t}` for `r ≤ r_max` and `s, t` in the given ranges: the
/// coefficients of `1/((1-z_2/z_1^2)(1-z_3/z_1^2)(1-z_3/(z_1 z_2)))` in
/// `x_i = 1 - z_i`, expanded in `x_1`, then `x_2`, then `x_3`.
pub fn d3_table(r_max: usize, s_range: (i32, i32), t_range: (i32, i32)) -> Result<CoeffTable> {
    let (x1, x2, x3) = (Poly::var(x(1)), Poly::var(x(2)), Poly::var(x(3)));
    let one = Poly::one();
    let z1 = &one - &x1;
    let z2 = &one - &x2;
    let z3 = &one - &x3;
    let z1sq = &z1 * &z1;
    let num = &(&z1sq * &z1sq) * &(&z1 * &z2);
    let factors = vec![(&z1sq - &z2, 1), (&z1sq - &z3, 1), (&(&z1 * &z2) - &z3, 1)];
    let f = RationalFunction::with_factors(num, factors)?;
    let mut table = CoeffTable::new(&["r", "s", "t"]);
    let in_x1 = series_expand(&f, x(1), r_max as i32)?;
    for r in 0..=r_max as i32 {
        let c1 = in_x1.coefficient(r).unwrap_or_else(RationalFunction::zero);
        let in_x2 = series_expand(&c1, x(2), s_range.1)?;
        for s in s_range.0..=s_range.1 {
            let c2 = in_x2.coefficient(s).unwrap_or_else(RationalFunction::zero);
            let p = c2
                .as_poly()
                .ok_or_else(|| Error::InternalConsistency(format!("x3 coefficient at ({r},{s}) is not Laurent")))?;
            for (t, c) in p.coefficients_in(x(3)) {
                if (t_range.0..=t_range.1).contains(&t) {
                    let v = c.as_constant().ok_or_else(|| {
                        Error::InternalConsistency(format!("coefficient at ({r},{s},{t}) is not a number"))
                    })?;
                    table.insert(vec![r, s, t], v);
                }
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_grid_corners() {
        assert_eq!(d_coeff(0, -1), 1);
        assert_eq!(d_coeff(1, -1), -2);
        assert_eq!(d_coeff(1, -2), 2);
        assert_eq!(d_coeff(4, -3), 13);
        assert_eq!(d_coeff(3, -4), 8);
        assert_eq!(d_coeff(5, -4), 38);
        assert_eq!(d_coeff(1, 0), 0);
        assert_eq!(d_coeff(0, -2), 0);
    }

    #[test]
    fn oracle_agrees() {
        assert_eq!(d_oracle(10), d_table(10));
    }

    #[test]
    fn minimal_coefficients() {
        assert_eq!(D_coeff(2, -2, 0).unwrap(), -1);
        assert_eq!(D_coeff(3, -3, 1).unwrap(), -4);
        assert_eq!(D_coeff(2, -2, 1).unwrap(), -5);
        assert!(D_coeff(5, -2, 1).is_err());
        assert!(D_coeff(0, -4, 1).is_err());
    }

    #[test]
    fn grid_rendering() {
        let g = d_table(2).to_grid();
        assert!(g.contains("x2^-1"));
        let rows: Vec<&str> = g.lines().collect();
        assert_eq!(rows[1].split_whitespace().collect::<Vec<_>>(), ["x2^-1", "1", "-2", "1"]);
        assert_eq!(rows[3].split_whitespace().collect::<Vec<_>>(), ["x2^-3", "4"]);
    }

    #[test]
    fn json_rows() {
        let j = d_table(0).to_json();
        assert_eq!(j, json!([{"r": 0, "s": -1, "value": 1}]));
    }

    #[test]
    fn d3_corner_and_marginals() {
        let t = d3_table(2, (-3, 1), (-12, 0)).unwrap();
        assert!(t.all_integral());
        assert_eq!(t.get(&[0, -1, -2]), int(1));
        for r in 0..=2 {
            for s in -3..=0 {
                let marginal: Rational = (-12..=0).map(|tt| t.get(&[r, s, tt])).sum();
                assert_eq!(marginal, int(d_coeff(r, s)), "r={r} s={s}");
            }
        }
    }
}
