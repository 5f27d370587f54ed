use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation in one-line notation `[w(1), ..., w(n)]`, 1-based values.
#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::MalformedInput(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    /// `[n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        Permutation((1..=n as u8).rev().collect())
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// `w s_i`: swaps positions `i` and `i + 1` (1-based).
    pub fn swap_positions(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Permutation(v)
    }

    pub fn is_ascent(&self, i: usize) -> bool {
        self.0[i - 1] < self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `1^m × w`.
    pub fn shift(&self, m: usize) -> Self {
        let mut v: Vec<u8> = (1..=m as u8).collect();
        v.extend(self.0.iter().map(|&x| x + m as u8));
        Permutation(v)
    }

    /// Pads with fixed points to size `n`.
    pub fn embed(&self, n: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u8 + 1..=n as u8);
        Permutation(v)
    }

    /// Drops trailing fixed points.
    pub fn trimmed(&self) -> Self {
        let mut v = self.0.clone();
        while v.last().is_some_and(|&x| x as usize == v.len()) {
            v.pop();
        }
        Permutation(v)
    }

    /// Bruhat order via the rank-matrix criterion (same size required).
    pub fn bruhat_le(&self, other: &Self) -> bool {
        let n = self.size();
        debug_assert_eq!(n, other.size());
        for j in 1..=n as u8 {
            let (mut a, mut b) = (0, 0);
            for i in 0..n {
                if self.0[i] >= j {
                    a += 1;
                }
                if other.0[i] >= j {
                    b += 1;
                }
                if a > b {
                    return false;
                }
            }
        }
        true
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed().0 == other.trimmed().0
    }
}

impl std::hash::Hash for Permutation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.trimmed().0.hash(state);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&v| v < 10) {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digit string `"132"` or comma list `"1,3,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let images: Option<Vec<u8>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
        };
        images
            .ok_or_else(|| Error::MalformedInput(format!("cannot parse permutation {s:?}")))
            .and_then(Permutation::new)
    }
}

/// A finite integer sequence indexing `G_I`.
pub type IntegerSequence = Vec<i32>;

/// Strips trailing zeros.
pub fn canonical_sequence(seq: &[i32]) -> IntegerSequence {
    let mut v = seq.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Parses `"3,-1,2"`; the empty string is the empty sequence.
pub fn parse_sequence(s: &str) -> Result<IntegerSequence> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<i32>().map_err(|_| Error::MalformedInput(format!("bad integer {p:?} in {s:?}"))))
        .collect()
}

/// Weakly decreasing nonnegative parts, trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<i32>);

impl Partition {
    pub fn new(parts: Vec<i32>) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::MalformedInput(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(canonical_sequence(&parts)))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> i32 {
        self.0.iter().sum()
    }

    /// Part `i` (1-based), zero past the length.
    pub fn part(&self, i: usize) -> i32 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn padded(&self, r: usize) -> Vec<i32> {
        (1..=r).map(|i| self.part(i)).collect()
    }

    /// All partitions with at most `rows` parts, each at most `cols`.
    pub fn in_box(rows: usize, cols: i32) -> Vec<Partition> {
        fn rec(rows: usize, max: i32, cur: &mut Vec<i32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
        out
    }

    pub fn is_partition(seq: &[i32]) -> bool {
        seq.iter().all(|&p| p >= 0) && seq.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `w(i) = i + λ_{p+1-i}` for `i ≤ p`, increasing afterwards.
pub fn grassmannian_perm(lambda: &Partition, p: usize) -> Result<Permutation> {
    if p < lambda.len() {
        return Err(Error::MalformedInput(format!("descent position {p} shorter than {lambda}")));
    }
    let n = p + lambda.part(1) as usize;
    let head: Vec<u8> = (1..=p).map(|i| (i as i32 + lambda.part(p + 1 - i)) as u8).collect();
    let mut tail: Vec<u8> = (1..=n as u8).filter(|v| !head.contains(v)).collect();
    tail.sort_unstable();
    let mut images = head;
    images.extend(tail);
    Permutation::new(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[i32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn grassmannian() {
        assert_eq!(grassmannian_perm(&part(&[1]), 1).unwrap().images(), &[2, 1]);
        assert_eq!(grassmannian_perm(&part(&[2, 1]), 2).unwrap().images(), &[2, 4, 1, 3]);
        assert!(grassmannian_perm(&part(&[]), 1).unwrap().is_identity());
        assert!(grassmannian_perm(&part(&[1, 1]), 1).is_err());
        let w = grassmannian_perm(&part(&[3, 1]), 3).unwrap();
        let descents: Vec<usize> = (1..w.size()).filter(|&i| !w.is_ascent(i)).collect();
        assert_eq!(descents, vec![3]);
    }

    #[test]
    fn lengths_and_parsing() {
        let w: Permutation = "321".parse().unwrap();
        assert_eq!(w.length(), 3);
        assert_eq!("1,3,2".parse::<Permutation>().unwrap().length(), 1);
        assert!("122".parse::<Permutation>().is_err());
        assert_eq!(Permutation::identity(3), Permutation::identity(5));
        assert_eq!(w.shift(2).images(), &[1, 2, 5, 4, 3]);
    }

    #[test]
    fn bruhat() {
        let id = Permutation::identity(3);
        let w0 = Permutation::longest(3);
        let a: Permutation = "213".parse().unwrap();
        let b: Permutation = "132".parse().unwrap();
        assert!(id.bruhat_le(&a) && a.bruhat_le(&w0));
        assert!(!a.bruhat_le(&b) && !b.bruhat_le(&a));
        assert!(!w0.bruhat_le(&a));
    }

    #[test]
    fn box_count() {
        // binomial(6, 3)
        assert_eq!(Partition::in_box(3, 3).len(), 20);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(part(&[2, 0, 0]).parts(), &[2]);
        assert_eq!(parse_sequence("3,-1, 2").unwrap(), vec![3, -1, 2]);
        assert!(parse_sequence("3,x").is_err());
    }
}
