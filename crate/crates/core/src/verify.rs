//! The fifteen reproducibility checks, shared by the CLI and the test suite.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::rational::{int, rat, Rational};
use crate::algebra::variable::{alpha, beta, z};
use crate::algebra::{Monomial, Poly, RationalFunction, Variable};
use crate::error::{Error, Result};
use crate::grothendieck::{
    g_residue, g_residue_cached, grassmannian_perm, groth_recursive, multiply_g, straighten, symmetrization_formula,
    truncated_stable, GExpansion, Partition,
};
use crate::par;
use crate::residue::residue_zero_infinity;
use crate::thom::{
    a2_leading_term_matches, a3_tp_equidimensional, calibrate, cohomological_values, d_coeff, d_oracle, d_table, evaluate_inverted, g_inverted, ktp_a2,
    ktp_a2_minimal, ktp_a2_stable, ktp_a3, ktp_sigma_r, localization_vs_residue,
    monomial_test_functions, remainder_identity_check, root_values, sign_report, t_expansion, t_substitution_constant,
    ThomInstance, LEADING_TERM_CONVENTION,
};

const SEED: u64 = 0x6b67_726f_7468;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    Fast,
    Full,
}

impl Suite {
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::Fast => vec![1, 2, 3, 4, 5, 6, 9, 10, 11],
            Suite::Full => (1..=15).collect(),
        }
    }
}

/// Knobs for exercising the failure path.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Perturbs one `d_{r,s}` before check 5 compares it.
    pub corrupt_d_table: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!("[{tag}] {:>2} {} ({:.2}s)", self.id, self.name, self.elapsed.as_secs_f64());
        if !self.detail.is_empty() {
            line.push_str(": ");
            line.push_str(&self.detail);
        }
        line
    }
}

pub fn criterion_name(id: u8) -> &'static str {
    match id {
        1 => "S3 double Grothendieck table",
        2 => "g = G on the 3x3 box at k=l=3",
        3 => "symmetrization formula on the 3x3 box",
        4 => "product G2*G2 at k=3, l=0",
        5 => "d_{r,s} grid, oracle and row sums",
        6 => "minimal A2 expansions for l=0,1,2",
        7 => "stable A2 expansion equals the residue",
        8 => "K-theoretic Giambelli-Thom-Porteous",
        9 => "alternating signs",
        10 => "vanishing of residues at 0 and infinity",
        11 => "localization push-forward",
        12 => "cohomological leading term against Ronga",
        13 => "A3 residue sanity",
        14 => "remainder identity",
        15 => "straightening against residues",
        _ => "unknown",
    }
}

/// `Ok(None)` on success, `Ok(Some(reason))` on a failed comparison.
type Check = Result<Option<String>>;

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Check {
    Ok(if cond { None } else { Some(reason()) })
}

fn first_failure(checks: Vec<Check>) -> Check {
    for c in checks {
        if let Some(reason) = c? {
            return Ok(Some(reason));
        }
    }
    Ok(None)
}

pub fn run_criterion(id: u8, opts: VerifyOptions) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => s3_table(),
        2 => g_equals_stable(),
        3 => symmetrization(),
        4 => product(),
        5 => coefficient_grid(opts),
        6 => minimal_lines(),
        7 => stable_equals_residue(),
        8 => giambelli_thom_porteous(),
        9 => signs(),
        10 => residue_vanishing(),
        11 => localization(),
        12 => cohomology(),
        13 => a3_sanity(),
        14 => remainder(),
        15 => straightening(),
        _ => Err(Error::MalformedInput(format!("no check numbered {id}"))),
    };
    let (passed, detail) = match outcome {
        Ok(None) => (true, String::new()),
        Ok(Some(reason)) => (false, reason),
        Err(e) => (false, format!("{}: {e}", e.kind())),
    };
    CriterionResult { id, name: criterion_name(id), passed, detail, elapsed: start.elapsed() }
}

pub fn run_suite(suite: Suite, opts: VerifyOptions) -> Vec<CriterionResult> {
    par::map(&suite.criteria(), |&id| run_criterion(id, opts))
}

fn factor(b: &[(u16, i32)], a: &[(u16, i32)]) -> Poly {
    let pairs = b.iter().map(|&(i, e)| (beta(i), e)).chain(a.iter().map(|&(i, e)| (alpha(i), e)));
    Poly::one_minus(Monomial::from_pairs(pairs))
}

fn s3_table() -> Check {
    let f11 = factor(&[(1, 1)], &[(1, -1)]);
    let f21 = factor(&[(2, 1)], &[(1, -1)]);
    let f12 = factor(&[(1, 1)], &[(2, -1)]);
    let expected = [
        ("321", Poly::product([&f11, &f21, &f12])),
        ("231", &f11 * &f12),
        ("312", &f11 * &f21),
        ("213", f11.clone()),
        ("132", factor(&[(1, 1), (2, 1)], &[(1, -1), (2, -1)])),
        ("123", Poly::one()),
    ];
    let mut checks = Vec::new();
    for (w, want) in expected {
        let got = groth_recursive(&w.parse()?)?;
        checks.push(ensure(got.to_string() == want.to_string(), || format!("G_{w} = {got}, expected {want}")));
    }
    first_failure(checks)
}

fn g_equals_stable() -> Check {
    let parts = Partition::in_box(3, 3);
    let checks = par::map(&parts, |lam| -> Check {
        let w = grassmannian_perm(lam, 3)?;
        let g = g_residue_cached(lam.parts(), 3, 3)?;
        ensure(g == truncated_stable(&w, 3, 3)?, || format!("mismatch at {lam}"))
    });
    first_failure(checks)
}

fn symmetrization() -> Check {
    let parts = Partition::in_box(3, 3);
    let checks = par::map(&parts, |lam| -> Check {
        let g = g_residue(&lam.padded(3), 3, 0)?;
        ensure(RationalFunction::from_poly(g) == symmetrization_formula(lam, 3)?, || format!("mismatch at {lam}"))
    });
    first_failure(checks)
}

fn product() -> Check {
    let got = multiply_g(&[2], &[2], 3, 0, None)?;
    let want = GExpansion::from_pairs([
        (&[2, 2][..], 1),
        (&[3, 1][..], 1),
        (&[4][..], 1),
        (&[3, 2][..], -1),
        (&[4, 1][..], -1),
    ]);
    ensure(got == want, || format!("got {got}"))
}

/// The displayed part of the `d_{r,s}` grid: `(s, first r, row)`.
pub const D_GRID: [(i32, i32, &[i64]); 6] = [
    (-1, 0, &[1, -2, 1]),
    (-2, 1, &[2, -5, 4, -1]),
    (-3, 2, &[4, -12, 13, -6, 1]),
    (-4, 3, &[8, -28, 38, -25, 8, -1]),
    (-5, 4, &[16, -64, 104]),
    (-6, 5, &[32]),
];

fn coefficient_grid(opts: VerifyOptions) -> Check {
    let mut table = d_table(10);
    if opts.corrupt_d_table {
        let v = table.get(&[4, -3]);
        table.insert(vec![4, -3], v + int(1));
    }
    for (s, r0, row) in D_GRID {
        for (i, &want) in row.iter().enumerate() {
            let r = r0 + i as i32;
            if table.get(&[r, s]) != int(want) {
                return Ok(Some(format!("d_{{{r},{s}}} = {}, expected {want}", table.get(&[r, s]))));
            }
        }
    }
    let oracle = d_oracle(10);
    if table != oracle {
        return Ok(Some("closed form disagrees with the series oracle".into()));
    }
    for r in 1..=10 {
        let sum: i64 = (-r - 1..=0).map(|s| d_coeff(r, s)).sum();
        if sum != 0 {
            return Ok(Some(format!("row r={r} sums to {sum}")));
        }
    }
    ensure(d_coeff(0, -1) == 1, || "d_{0,-1} != 1".into())
}

/// The minimal `A_2` expansions for `l = 0, 1, 2`.
pub fn minimal_reference(l: usize) -> GExpansion {
    let rows: &[(&[i32], i64)] = match l {
        0 => &[(&[1, 1], 1), (&[2], 2), (&[2, 1], -2), (&[3], -1), (&[3, 1], 1)],
        1 => &[
            (&[2, 2], 1),
            (&[3, 1], 2),
            (&[4], 4),
            (&[3, 2], -2),
            (&[4, 1], -5),
            (&[5], -4),
            (&[4, 2], 1),
            (&[5, 1], 4),
            (&[6], 1),
            (&[6, 1], -1),
        ],
        2 => &[
            (&[3, 3], 1),
            (&[4, 2], 2),
            (&[5, 1], 4),
            (&[6], 8),
            (&[4, 3], -2),
            (&[5, 2], -5),
            (&[6, 1], -12),
            (&[7], -12),
            (&[5, 3], 1),
            (&[6, 2], 4),
            (&[7, 1], 13),
            (&[8], 6),
            (&[7, 2], -1),
            (&[8, 1], -6),
            (&[9], -1),
            (&[9, 1], 1),
        ],
        _ => &[],
    };
    GExpansion::from_pairs(rows.iter().copied())
}

fn minimal_lines() -> Check {
    first_failure(
        (0..=2)
            .map(|l| {
                let got = ktp_a2_minimal(l);
                ensure(got == minimal_reference(l), || format!("l={l}: got {got}"))
            })
            .collect(),
    )
}

fn instances(pairs: &[(usize, usize)]) -> Result<Vec<ThomInstance>> {
    pairs.iter().map(|&(a, b)| ThomInstance::new(a, b)).collect()
}

fn stable_equals_residue() -> Check {
    let insts = instances(&[(1, 1), (1, 2), (2, 2), (2, 3), (2, 4), (3, 3)])?;
    let checks = par::map(&insts, |&inst| -> Check {
        let l = inst.l();
        let stable = evaluate_inverted(&ktp_a2_stable(l, 2 * l + 3)?, inst)?;
        ensure(stable == ktp_a2(inst)?, || format!("mismatch at (a,b)=({},{})", inst.a(), inst.b()))
    });
    first_failure(checks)
}

fn giambelli_thom_porteous() -> Check {
    let mut cases = Vec::new();
    for r in 1..=2usize {
        for a in r..=4 {
            for b in a..=4 {
                cases.push((r, ThomInstance::new(a, b)?));
            }
        }
    }
    let checks = par::map(&cases, |&(r, inst)| -> Check {
        let seq = vec![(r + inst.l()) as i32; r];
        ensure(ktp_sigma_r(r, inst)? == g_inverted(&seq, inst)?, || {
            format!("r={r} (a,b)=({},{})", inst.a(), inst.b())
        })
    });
    first_failure(checks)
}

fn signs() -> Check {
    let mut checks = Vec::new();
    for l in 0..=3 {
        let rep = sign_report(&ktp_a2_minimal(l))?;
        checks.push(ensure(rep.passed(), || format!("minimal l={l}: {:?}", rep.violations)));
    }
    for l in 0..=2 {
        let rep = sign_report(&ktp_a2_stable(l, 2 * l + 3)?)?;
        checks.push(ensure(rep.passed(), || format!("stable l={l}: {:?}", rep.violations)));
    }
    first_failure(checks)
}

/// A nonzero rational in `[-5, 5]`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let d = rng.gen_range(1..=4i64);
        let n = rng.gen_range(-5 * d..=5 * d);
        if n != 0 {
            return rat(n, d);
        }
    }
}

fn linear(v: Variable, c: &Rational) -> Poly {
    Poly::var(v) - &Poly::constant(c.clone())
}

fn residue_vanishing() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let v = z(1);
    let mut cases = Vec::new();
    while cases.len() < 100 {
        let r = rng.gen_range(0..=2usize);
        let s = rng.gen_range(r + 2..=5);
        let a = rng.gen_range(0..=(s - r - 2));
        let xs: Vec<Rational> = (0..r).map(|_| random_rational(&mut rng)).collect();
        let ys: Vec<Rational> = (0..s).map(|_| random_rational(&mut rng)).collect();
        cases.push((a, xs, ys));
    }
    let checks = par::map(&cases, |(a, xs, ys)| -> Check {
        let num = xs.iter().fold(Poly::var_pow(v, *a as i32), |acc, x| &acc * &linear(v, x));
        let den = Poly::product(ys.iter().map(|y| linear(v, y)).collect::<Vec<_>>().iter());
        let res = residue_zero_infinity(&RationalFunction::new(num, den)?, v)?;
        ensure(res.is_zero(), || format!("a={a} x={xs:?} y={ys:?} gives {res}"))
    });
    first_failure(checks)
}

fn localization() -> Check {
    let mut cases = Vec::new();
    for r in 1..=2 {
        for w in r..=4 {
            for g in monomial_test_functions(r, 3)? {
                cases.push((r, w, g));
            }
        }
    }
    let checks = par::map(&cases, |(r, w, g)| -> Check {
        let rep = localization_vs_residue(*r, *w, g)?;
        ensure(rep.holds(), || format!("r={r} w={w} g={g}: residue {}", rep.residue))
    });
    first_failure(checks)
}

fn random_specs(inst: ThomInstance, count: usize, rng: &mut impl Rng) -> Vec<BTreeMap<Variable, Rational>> {
    (0..count)
        .map(|_| {
            let vals: Vec<Rational> = (0..inst.a() + inst.b()).map(|_| random_rational(rng)).collect();
            root_values(inst, &vals)
        })
        .collect()
}

fn cohomology() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 12);
    let base = ThomInstance::new(2, 2)?;
    let found = calibrate(&random_specs(base, 5, &mut rng))?;
    if !found.contains(&LEADING_TERM_CONVENTION) {
        return Ok(Some(format!("calibration found {found:?}")));
    }
    let mut checks = Vec::new();
    for l in 0..=2 {
        let inst = ThomInstance::new(2, 2 + l)?;
        for spec in random_specs(inst, 5, &mut rng) {
            checks.push(ensure(a2_leading_term_matches(inst, &spec, LEADING_TERM_CONVENTION)?, || {
                format!("l={l} spec={spec:?}")
            }));
        }
    }
    first_failure(checks)
}

fn a3_sanity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 13);
    let mut checks = Vec::new();
    for inst in instances(&[(2, 2), (3, 3)])? {
        let f = ktp_a3(inst)?;
        let order = 3 * (inst.l() as u32 + 1);
        for spec in random_specs(inst, 3, &mut rng) {
            let coeffs = t_expansion(&f, order, &spec, LEADING_TERM_CONVENTION)?;
            let expected = a3_tp_equidimensional(inst.a())?
                .evaluate(&cohomological_values(&spec))
                .ok_or_else(|| Error::InternalConsistency("cohomological evaluation failed".into()))?;
            checks.push(ensure(coeffs[..order as usize].iter().all(|c| *c == int(0)), || {
                format!("nonzero below order {order} at ({},{})", inst.a(), inst.b())
            }));
            checks.push(ensure(coeffs[order as usize] == expected, || {
                format!("order {order} coefficient {} != {expected} at ({},{})", coeffs[order as usize], inst.a(), inst.b())
            }));
            checks.push(ensure(t_substitution_constant(&f, inst, &spec)?, || {
                format!("t survives at ({},{})", inst.a(), inst.b())
            }));
        }
    }
    first_failure(checks)
}

fn remainder() -> Check {
    let ns: Vec<usize> = (0..=6).collect();
    let checks = par::map(&ns, |&n| -> Check {
        let rep = remainder_identity_check(n)?;
        ensure(rep.holds(), || format!("N={n}: defect {}", rep.defect))
    });
    first_failure(checks)
}

fn straightening() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 15);
    let seqs: Vec<Vec<i32>> = (0..50)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            (0..len).map(|_| rng.gen_range(-2..=4)).collect()
        })
        .collect();
    let checks = par::map(&seqs, |seq| -> Check {
        let e = straighten(seq)?;
        let lhs = g_residue_cached(seq, 3, 3)?;
        let rhs = e.evaluate(|lam| g_residue_cached(lam, 3, 3))?;
        ensure(e.is_partition_keyed() && lhs == rhs, || format!("{seq:?} -> {e}"))
    });
    first_failure(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_checks_pass() {
        for id in [1, 4, 5, 6, 9, 14] {
            let r = run_criterion(id, VerifyOptions::default());
            assert!(r.passed, "{}", r.line());
        }
    }

    #[test]
    fn corruption_is_detected() {
        let r = run_criterion(5, VerifyOptions { corrupt_d_table: true });
        assert!(!r.passed);
        assert!(r.line().starts_with("[FAIL]  5"), "{}", r.line());
    }

    #[test]
    fn unknown_id() {
        assert!(!run_criterion(99, VerifyOptions::default()).passed);
    }
}
