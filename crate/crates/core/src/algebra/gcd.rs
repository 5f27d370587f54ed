//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive pseudo-remainder sequences: pick a variable shared by
//! both inputs, split off contents (gcds of coefficients in the remaining
//! variables, computed recursively), then run the primitive PRS on the
//! primitive parts. Inputs must have nonnegative exponents.

use num_traits::One;

use super::monomial::Monomial;
use super::poly::Poly;
use super::variable::Variable;

/// Scales `p` so that its leading coefficient is 1.
pub fn monic(p: &Poly) -> Poly {
    match p.leading_term() {
        Some((_, c)) if !c.is_one() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

/// Monic gcd of two polynomials (nonnegative exponents). `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.meet(&mb);
    let a1 = a.mul_monomial(&ma.inv());
    let b1 = b.mul_monomial(&mb.inv());
    gcd_no_monomial(&a1, &b1).mul_monomial(&mg)
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return monic(a);
    }
    let va = a.variables();
    let vb = b.variables();
    if let Some(&x) = va.difference(&vb).next() {
        return gcd(&content_in(a, x), b);
    }
    if let Some(&x) = vb.difference(&va).next() {
        return gcd(a, &content_in(b, x));
    }
    let x = *va.iter().next().expect("nonconstant polynomial has a variable");
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let pa = a.div_exact_poly(&ca).expect("content divides");
    let pb = b.div_exact_poly(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, x);
    monic(&(&c * &g))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content_in(p: &Poly, x: Variable) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coefficients_in(x).values() {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &Poly, x: Variable) -> Poly {
    let c = content_in(p, x);
    monic(&p.div_exact_poly(&c).expect("content divides"))
}

fn degree_in(p: &Poly, x: Variable) -> i32 {
    p.degree_range(x).map(|(_, hi)| hi).unwrap_or(-1)
}

fn primitive_prs(a: Poly, b: Poly, x: Variable) -> Poly {
    let (mut f, mut g) = if degree_in(&a, x) >= degree_in(&b, x) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&f, &g, x);
        if r.is_zero() {
            return primitive_part(&g, x);
        }
        if degree_in(&r, x) == 0 {
            return Poly::one();
        }
        f = g;
        g = primitive_part(&r, x);
    }
}

/// Sparse pseudo-remainder of `f` by `g` in `x`: repeatedly cancels the top
/// coefficient of `f` after multiplying by the leading coefficient of `g`.
fn pseudo_remainder(f: &Poly, g: &Poly, x: Variable) -> Poly {
    let gc = g.coefficients_in(x);
    let (&dg, lc) = gc.iter().next_back().expect("nonzero divisor");
    let mut r = f.clone();
    loop {
        let rc = r.coefficients_in(x);
        let Some((&dr, top)) = rc.iter().next_back() else {
            return r;
        };
        if dr < dg {
            return r;
        }
        let shift = Poly::monomial(Monomial::var_pow(x, dr - dg));
        r = &(&r * lc) - &(&(top * &shift) * g);
    }
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    monic(&(a * &b.div_exact(&g).expect("gcd divides")))
}
