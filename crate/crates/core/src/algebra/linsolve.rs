//! Exact linear systems over the rationals by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    /// The right-hand side is not in the column span.
    Inconsistent { rank: usize },
    /// Consistent, but the columns are dependent.
    Underdetermined { rank: usize, columns: usize },
}

/// Solves `a x = b` exactly. `a` is row-major with `b.len()` rows.
pub fn solve_linear_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<LinearSolution> {
    if a.len() != b.len() {
        return Err(Error::MalformedInput(format!("{} rows but {} right-hand sides", a.len(), b.len())));
    }
    let ncols = a.first().map(|r| r.len()).unwrap_or(0);
    if a.iter().any(|r| r.len() != ncols) {
        return Err(Error::MalformedInput("ragged matrix".into()));
    }
    let mut m: Vec<Vec<BigInt>> = a.iter().zip(b).map(|(row, rhs)| integer_row(row, rhs)).collect();
    let rows = m.len();
    let width = ncols + 1;
    let mut prev = BigInt::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero());
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    if pivots.last() == Some(&ncols) {
        return Ok(LinearSolution::Inconsistent { rank: pivots.len() - 1 });
    }
    let rank = pivots.len();
    if rank < ncols {
        return Ok(LinearSolution::Underdetermined { rank, columns: ncols });
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &c) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_integer(m[row][ncols].clone());
        for j in c + 1..ncols {
            acc -= Rational::from_integer(m[row][j].clone()) * &x[j];
        }
        x[c] = acc / Rational::from_integer(m[row][c].clone());
    }
    Ok(LinearSolution::Unique(x))
}

fn integer_row(row: &[Rational], rhs: &Rational) -> Vec<BigInt> {
    let l = row.iter().chain(std::iter::once(rhs)).fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .chain(std::iter::once(rhs))
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn unique() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let b = vec![int(3), int(5)];
        assert_eq!(solve_linear_exact(&a, &b).unwrap(), LinearSolution::Unique(vec![rat(4, 5), rat(7, 5)]));
    }

    #[test]
    fn overdetermined_consistent() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1], &[0, 0]]);
        let b = vec![int(1), int(-2), int(-1), int(0)];
        assert_eq!(solve_linear_exact(&a, &b).unwrap(), LinearSolution::Unique(vec![int(1), int(-2)]));
    }

    #[test]
    fn inconsistent() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let b = vec![int(1), int(3)];
        assert_eq!(solve_linear_exact(&a, &b).unwrap(), LinearSolution::Inconsistent { rank: 1 });
    }

    #[test]
    fn underdetermined() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let b = vec![int(1), int(2)];
        assert_eq!(solve_linear_exact(&a, &b).unwrap(), LinearSolution::Underdetermined { rank: 1, columns: 2 });
    }

    #[test]
    fn zero_column_skipped() {
        let a = m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let b = vec![int(5), int(6), int(7)];
        assert_eq!(solve_linear_exact(&a, &b).unwrap(), LinearSolution::Unique(vec![int(7), int(5), int(6)]));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(solve_linear_exact(&m(&[&[1]]), &[]).is_err());
    }
}
