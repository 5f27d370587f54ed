use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{int, is_integer, to_i64};
use crate::algebra::{solve_linear_exact, LinearSolution, Monomial, Poly, Rational};
use crate::error::{Error, Result};
use crate::par;

use super::gres::g_residue_cached;
use super::perm::{canonical_sequence, IntegerSequence, Partition};

/// Integer combination `Σ c_I G_I`; keys have trailing zeros stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GExpansion {
    coeffs: BTreeMap<IntegerSequence, i64>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    index: Vec<i32>,
    coeff: i64,
}

impl GExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: &[i32]) -> Self {
        let mut e = Self::new();
        e.add(key, 1);
        e
    }

    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a [i32], i64)>>(pairs: I) -> Self {
        let mut e = Self::new();
        for (k, c) in pairs {
            e.add(k, c);
        }
        e
    }

    pub fn add(&mut self, key: &[i32], c: i64) {
        if c == 0 {
            return;
        }
        let key = canonical_sequence(key);
        let slot = self.coeffs.entry(key.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &GExpansion, c: i64) {
        for (k, v) in &other.coeffs {
            self.add(k, v * c);
        }
    }

    pub fn get(&self, key: &[i32]) -> i64 {
        self.coeffs.get(&canonical_sequence(key)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntegerSequence, i64)> {
        self.coeffs.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether every key is a partition.
    pub fn is_partition_keyed(&self) -> bool {
        self.coeffs.keys().all(|k| Partition::is_partition(k))
    }

    /// `Σ c_I value(I)`.
    pub fn evaluate<F: Fn(&[i32]) -> Result<Poly> + Sync + Send>(&self, value: F) -> Result<Poly> {
        let entries: Vec<(&IntegerSequence, i64)> = self.iter().collect();
        let terms = par::try_map(&entries, |(k, c)| value(k).map(|p| p.scale(&int(*c))))?;
        Ok(terms.iter().fold(Poly::zero(), |acc, p| acc + p))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    /// Grouped by `|I|`, sign factored out of uniform-sign groups, each
    /// group ordered by first index.
    pub fn to_latex(&self) -> String {
        if self.is_empty() {
            return "0".into();
        }
        let mut groups: BTreeMap<i32, Vec<(&IntegerSequence, i64)>> = BTreeMap::new();
        for (k, c) in self.iter() {
            groups.entry(k.iter().sum()).or_default().push((k, c));
        }
        let mut out = String::new();
        for (gi, terms) in groups.values_mut().enumerate() {
            terms.sort_by(|a, b| a.0.first().cmp(&b.0.first()).then_with(|| a.0.cmp(b.0)));
            let uniform = terms.iter().all(|t| t.1 > 0) || terms.iter().all(|t| t.1 < 0);
            if uniform {
                let neg = terms[0].1 < 0;
                let body: Vec<String> = terms.iter().map(|(k, c)| latex_term(k, c.abs())).collect();
                let body = if body.len() > 1 { format!("\\left({}\\right)", body.join(" + ")) } else { body[0].clone() };
                match (gi, neg) {
                    (0, false) => out.push_str(&body),
                    (0, true) => out.push_str(&format!("-{body}")),
                    (_, false) => out.push_str(&format!(" + {body}")),
                    (_, true) => out.push_str(&format!(" - {body}")),
                }
            } else {
                let mut body = String::new();
                for (i, (k, c)) in terms.iter().enumerate() {
                    let t = latex_term(k, c.abs());
                    match (i, *c < 0) {
                        (0, false) => body.push_str(&t),
                        (0, true) => body.push_str(&format!("-{t}")),
                        (_, false) => body.push_str(&format!(" + {t}")),
                        (_, true) => body.push_str(&format!(" - {t}")),
                    }
                }
                if gi > 0 {
                    out.push_str(" + ");
                }
                out.push_str(&format!("\\left({body}\\right)"));
            }
        }
        out
    }
}

fn latex_term(key: &[i32], c: i64) -> String {
    let g = if key.is_empty() {
        "G_{\\varnothing}".to_string()
    } else {
        let parts: Vec<String> = key.iter().map(|v| v.to_string()).collect();
        format!("G_{{{}}}", parts.join(","))
    };
    if c == 1 {
        g
    } else {
        format!("{c}{g}")
    }
}

fn text_key(key: &[i32]) -> String {
    let parts: Vec<String> = key.iter().map(|v| v.to_string()).collect();
    format!("G({})", parts.join(","))
}

/// `G(1,1) + 2*G(2) - ...` in key order.
impl fmt::Display for GExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.iter().enumerate() {
            let a = c.abs();
            let term = if a == 1 { text_key(k) } else { format!("{a}*{}", text_key(k)) };
            match (i, c < 0) {
                (0, false) => write!(f, "{term}")?,
                (0, true) => write!(f, "-{term}")?,
                (_, false) => write!(f, " + {term}")?,
                (_, true) => write!(f, " - {term}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for GExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = self.iter().map(|(k, c)| Entry { index: k.clone(), coeff: c }).collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GExpansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        let mut e = GExpansion::new();
        for en in entries {
            e.add(&en.index, en.coeff);
        }
        Ok(e)
    }
}

/// Default rewrite-step budget for `straighten`.
pub const DEFAULT_FUEL: u64 = 1_000_000;

struct Straightener {
    memo: HashMap<IntegerSequence, GExpansion>,
    active: HashSet<IntegerSequence>,
    fuel: u64,
}

fn strip_trailing_nonpositive(seq: &[i32]) -> IntegerSequence {
    let mut v = seq.to_vec();
    while v.last().is_some_and(|&x| x <= 0) {
        v.pop();
    }
    v
}

fn nontermination(seq: &[i32], reason: &str) -> Error {
    Error::NonTermination { sequence: seq.iter().map(|&x| x as i64).collect(), reason: reason.into() }
}

impl Straightener {
    fn run(&mut self, seq: &[i32]) -> Result<GExpansion> {
        let s = strip_trailing_nonpositive(seq);
        if Partition::is_partition(&s) {
            return Ok(GExpansion::single(&s));
        }
        if let Some(e) = self.memo.get(&s) {
            return Ok(e.clone());
        }
        if !self.active.insert(s.clone()) {
            return Err(nontermination(&s, "rewrite cycle"));
        }
        if self.fuel == 0 {
            return Err(nontermination(&s, "fuel exhausted"));
        }
        self.fuel -= 1;
        let a = (0..s.len() - 1).find(|&i| s[i] < s[i + 1]).expect("non-partition without trailing nonpositive entries has an ascent");
        let (p, q) = (s[a], s[a + 1]);
        let mut out = GExpansion::new();
        let mut with = |head: i32, k: i32, sign: i64, this: &mut Self| -> Result<()> {
            let mut t = s.clone();
            t[a] = head;
            t[a + 1] = k;
            let e = this.run(&t)?;
            out.add_scaled(&e, sign);
            Ok(())
        };
        for k in p + 1..=q {
            with(q, k, 1, self)?;
        }
        for k in p + 1..q {
            with(q - 1, k, -1, self)?;
        }
        self.active.remove(&s);
        self.memo.insert(s, out.clone());
        Ok(out)
    }
}

/// Rewrites `G_I` into partition-indexed `G_λ` by the straightening laws,
/// resolving the leftmost ascent first.
pub fn straighten(seq: &[i32]) -> Result<GExpansion> {
    straighten_with_fuel(seq, DEFAULT_FUEL)
}

pub fn straighten_with_fuel(seq: &[i32], fuel: u64) -> Result<GExpansion> {
    Straightener { memo: HashMap::new(), active: HashSet::new(), fuel }.run(seq)
}

/// Straightens every key of `e` and collects the result.
pub fn straighten_expansion(e: &GExpansion) -> Result<GExpansion> {
    let mut out = GExpansion::new();
    for (key, c) in e.iter() {
        out.add_scaled(&straighten(key)?, c);
    }
    Ok(out)
}

/// Partition box `(max length, max part)`.
pub type BasisBox = (usize, i32);

/// Exact coefficients of `f` in `{G_λ^{k,l} : λ ⊆ box}`.
pub fn expand_in_g_basis(f: &Poly, k: usize, l: usize, bx: BasisBox) -> Result<GExpansion> {
    let basis = Partition::in_box(bx.0, bx.1);
    let values = par::try_map(&basis, |lam| g_residue_cached(lam.parts(), k, l))?;
    let mut monos: BTreeSet<Monomial> = f.terms().map(|(m, _)| m.clone()).collect();
    for v in &values {
        monos.extend(v.terms().map(|(m, _)| m.clone()));
    }
    let rows: Vec<Vec<Rational>> = monos.iter().map(|m| values.iter().map(|v| v.coeff(m)).collect()).collect();
    let rhs: Vec<Rational> = monos.iter().map(|m| f.coeff(m)).collect();
    let sol = match solve_linear_exact(&rows, &rhs)? {
        LinearSolution::Unique(x) => x,
        LinearSolution::Inconsistent { rank } => {
            return Err(Error::BoxTooSmall(format!("{}x{} box, k={k}, l={l}, rank {rank}", bx.0, bx.1)));
        }
        LinearSolution::Underdetermined { rank, columns } => {
            return Err(Error::IndependenceFailure(format!("rank {rank} < {columns} basis elements at k={k}, l={l}")));
        }
    };
    let mut out = GExpansion::new();
    let mut residual = f.clone();
    for ((lam, v), c) in basis.iter().zip(&values).zip(&sol) {
        if !is_integer(c) {
            return Err(Error::IntegralityFailure(format!("coefficient {c} of G{lam}")));
        }
        let ci = to_i64(c).ok_or_else(|| Error::SizeLimit(format!("coefficient {c} exceeds i64")))?;
        out.add(lam.parts(), ci);
        residual -= &v.scale(c);
    }
    if !residual.is_zero() {
        return Err(Error::InternalConsistency("basis expansion leaves a residual".into()));
    }
    Ok(out)
}

/// Default box for `g_I g_J`: `len I + len J` rows, `max I + max J` columns.
pub fn default_product_box(i: &[i32], j: &[i32]) -> BasisBox {
    let m = |s: &[i32]| s.iter().copied().max().unwrap_or(0).max(0);
    (i.len() + j.len(), m(i) + m(j))
}

/// `g_I g_J` expanded in the `G_λ^{k,l}` basis.
pub fn multiply_g(i: &[i32], j: &[i32], k: usize, l: usize, bx: Option<BasisBox>) -> Result<GExpansion> {
    let bx = bx.unwrap_or_else(|| default_product_box(i, j));
    let f = &g_residue_cached(i, k, l)? * &g_residue_cached(j, k, l)?;
    expand_in_g_basis(&f, k, l, bx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(pairs: &[(&[i32], i64)]) -> GExpansion {
        GExpansion::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn straighten_examples() {
        assert_eq!(straighten(&[2, 1]).unwrap(), e(&[(&[2, 1], 1)]));
        assert_eq!(straighten(&[3, -2]).unwrap(), e(&[(&[3], 1)]));
        assert_eq!(straighten(&[1, 2]).unwrap(), e(&[(&[2, 2], 1)]));
        assert_eq!(straighten(&[0, 1]).unwrap(), e(&[(&[1, 1], 1)]));
        let r = straighten(&[-1, 2]).unwrap();
        assert_eq!(r, e(&[(&[2], 1), (&[2, 1], 1), (&[2, 2], 1), (&[1], -1), (&[1, 1], -1)]));
    }

    #[test]
    fn straighten_fuel() {
        assert!(matches!(straighten_with_fuel(&[1, 3, 4], 1), Err(Error::NonTermination { .. })));
    }

    #[test]
    fn renderings() {
        let x = e(&[(&[1, 1], 1), (&[2], 2), (&[2, 1], -2), (&[3], -1), (&[3, 1], 1)]);
        assert_eq!(x.to_string(), "G(1,1) + 2*G(2) - 2*G(2,1) - G(3) + G(3,1)");
        assert_eq!(
            x.to_latex(),
            "\\left(G_{1,1} + 2G_{2}\\right) - \\left(2G_{2,1} + G_{3}\\right) + G_{3,1}"
        );
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"[{"index":[1,1],"coeff":1},{"index":[2],"coeff":2},{"index":[2,1],"coeff":-2},{"index":[3],"coeff":-1},{"index":[3,1],"coeff":1}]"#);
        let back: GExpansion = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert_eq!(GExpansion::new().to_string(), "0");
    }

    #[test]
    fn basis_element_and_product() {
        let f = g_residue_cached(&[2, 1], 3, 0).unwrap();
        assert_eq!(expand_in_g_basis(&f, 3, 0, (2, 2)).unwrap(), e(&[(&[2, 1], 1)]));
        let p = multiply_g(&[2], &[2], 3, 0, None).unwrap();
        assert_eq!(p, e(&[(&[2, 2], 1), (&[3, 1], 1), (&[4], 1), (&[3, 2], -1), (&[4, 1], -1)]));
    }

    #[test]
    fn expansion_errors() {
        let f = g_residue_cached(&[3], 2, 0).unwrap();
        assert!(matches!(expand_in_g_basis(&f, 2, 0, (1, 2)), Err(Error::BoxTooSmall(_))));
        let f = g_residue_cached(&[1], 1, 0).unwrap();
        assert!(matches!(expand_in_g_basis(&f, 1, 0, (2, 1)), Err(Error::IndependenceFailure(_))));
        let half = Poly::one().scale(&crate::algebra::rational::rat(1, 2));
        assert!(matches!(expand_in_g_basis(&half, 1, 0, (1, 1)), Err(Error::IntegralityFailure(_))));
    }
}
