use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::algebra::variable::{alpha, beta};
use crate::algebra::{Monomial, Poly, RationalFunction};
use crate::error::{Error, Result};

use super::perm::Permutation;

/// Default bound on `n` for the divided-difference recursion in `S_n`.
pub const DEFAULT_RECURSION_BOUND: usize = 6;

fn swap_alpha(f: &Poly, i: usize) -> Poly {
    let (a, b) = (alpha(i as u16), alpha(i as u16 + 1));
    f.rename(|v| if v == a { b } else if v == b { a } else { v })
}

/// `π_i f = (α_i f - α_{i+1} s_i f) / (α_i - α_{i+1})` on Laurent polynomials.
pub fn isobaric_divided_difference_poly(f: &Poly, i: usize) -> Result<Poly> {
    let ai = Poly::var(alpha(i as u16));
    let aj = Poly::var(alpha(i as u16 + 1));
    let num = &(&ai * f) - &(&aj * &swap_alpha(f, i));
    num.div_exact(&(&ai - &aj))
        .ok_or_else(|| Error::InternalConsistency(format!("π_{i} numerator not divisible")))
}

pub fn isobaric_divided_difference(f: &RationalFunction, i: usize) -> Result<RationalFunction> {
    if let Some(p) = f.as_poly() {
        return Ok(RationalFunction::from_poly(isobaric_divided_difference_poly(&p, i)?));
    }
    let (a, b) = (alpha(i as u16), alpha(i as u16 + 1));
    let mut swap = std::collections::BTreeMap::new();
    swap.insert(a, RationalFunction::var(b));
    swap.insert(b, RationalFunction::var(a));
    let ai = RationalFunction::var(a);
    let aj = RationalFunction::var(b);
    let num = &(&ai * f) - &(&aj * &f.substitute(&swap)?);
    Ok(&num / &(&ai - &aj))
}

/// `∏_{i+j≤n} (1 - β_i/α_j)`.
pub fn longest_element_polynomial(n: usize) -> Poly {
    let mut out = Poly::one();
    for i in 1..n {
        for j in 1..=n - i {
            let m = Monomial::from_pairs([(beta(i as u16), 1), (alpha(j as u16), -1)]);
            out = &out * &Poly::one_minus(m);
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Path {
    FirstAscent,
    LastAscent,
}

fn descend(w: &Permutation, n: usize, path: Path, memo: &mut HashMap<Permutation, Poly>) -> Result<Poly> {
    if let Some(p) = memo.get(w) {
        return Ok(p.clone());
    }
    let w = w.embed(n);
    let ascents = (1..n).filter(|&i| w.is_ascent(i));
    let i = match path {
        Path::FirstAscent => ascents.min(),
        Path::LastAscent => ascents.max(),
    };
    let result = match i {
        None => longest_element_polynomial(n),
        Some(i) => isobaric_divided_difference_poly(&descend(&w.swap_positions(i), n, path, memo)?, i)?,
    };
    memo.insert(w, result.clone());
    Ok(result)
}

fn global_memo() -> &'static Mutex<HashMap<Permutation, Poly>> {
    static MEMO: OnceLock<Mutex<HashMap<Permutation, Poly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Ǧ_w` by descending from the longest element; `w` in `S_n` with
/// `n ≤ DEFAULT_RECURSION_BOUND`.
pub fn groth_recursive(w: &Permutation) -> Result<Poly> {
    groth_recursive_bounded(w, DEFAULT_RECURSION_BOUND)
}

pub fn groth_recursive_bounded(w: &Permutation, bound: usize) -> Result<Poly> {
    let w = w.trimmed();
    let n = w.size().max(1);
    if n > bound {
        return Err(Error::SizeLimit(format!("{w} lies in S_{n}, recursion bound is {bound}")));
    }
    if let Some(p) = global_memo().lock().unwrap().get(&w) {
        return Ok(p.clone());
    }
    let mut memo = HashMap::new();
    let p = descend(&w, n, Path::FirstAscent, &mut memo)?;
    global_memo().lock().unwrap().extend(memo);
    Ok(p)
}

/// Recomputes `Ǧ_w` along the first-ascent and last-ascent paths with
/// fresh memo tables and reports whether they agree.
pub fn groth_path_independent(w: &Permutation) -> Result<bool> {
    let w = w.trimmed();
    let n = w.size().max(1);
    if n > DEFAULT_RECURSION_BOUND {
        return Err(Error::SizeLimit(format!("{w} lies in S_{n}")));
    }
    let a = descend(&w, n, Path::FirstAscent, &mut HashMap::new())?;
    let b = descend(&w, n, Path::LastAscent, &mut HashMap::new())?;
    Ok(a == b)
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation::new(cur.clone()).unwrap());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8 + 1);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> String {
        groth_recursive(&s.parse().unwrap()).unwrap().to_string()
    }

    #[test]
    fn s3_identity_and_transpositions() {
        assert_eq!(g("123"), "1");
        assert_eq!(g("132"), "1 - b1*b2*a1^-1*a2^-1");
        assert_eq!(g("213"), "1 - b1*a1^-1");
    }

    #[test]
    fn projection_properties() {
        let one = isobaric_divided_difference_poly(&Poly::one(), 1).unwrap();
        assert!(one.is_one());
        let sym = &Poly::var(alpha(1)) * &Poly::var(alpha(2));
        assert_eq!(isobaric_divided_difference_poly(&sym, 1).unwrap(), sym);
        let g321 = groth_recursive(&"321".parse().unwrap()).unwrap();
        let g231 = groth_recursive(&"231".parse().unwrap()).unwrap();
        assert_eq!(isobaric_divided_difference_poly(&g321, 1).unwrap(), g231);
    }

    #[test]
    fn rational_function_route_agrees() {
        let g321 = groth_recursive(&"321".parse().unwrap()).unwrap();
        let r = isobaric_divided_difference(&RationalFunction::from_poly(g321.clone()), 2).unwrap();
        assert_eq!(r.as_poly().unwrap(), isobaric_divided_difference_poly(&g321, 2).unwrap());
    }

    #[test]
    fn paths_agree_in_s4() {
        for w in all_permutations(4) {
            assert!(groth_path_independent(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn size_bound() {
        let w: Permutation = "1234576".parse().unwrap();
        assert!(matches!(groth_recursive(&w), Err(Error::SizeLimit(_))));
    }
}
