//! Univariate polynomials over a [`Field`], stored low degree first, and
//! root finding over finite fields (distinct-degree test plus equal-degree
//! splitting).

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Field, Scalar};
use crate::error::{Error, Result};

pub type UniPoly = Vec<Scalar>;

pub fn trim(field: &Field, a: &mut UniPoly) {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
}

pub fn degree(field: &Field, a: &[Scalar]) -> Option<usize> {
    a.iter().rposition(|c| !field.is_zero(c))
}

pub fn add(field: &Field, a: &[Scalar], b: &[Scalar]) -> UniPoly {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let mut out: UniPoly = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, &mut out);
    out
}

pub fn sub(field: &Field, a: &[Scalar], b: &[Scalar]) -> UniPoly {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let mut out: UniPoly = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, &mut out);
    out
}

pub fn mul(field: &Field, a: &[Scalar], b: &[Scalar]) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, &mut out);
    out
}

pub fn divrem(field: &Field, a: &[Scalar], b: &[Scalar]) -> (UniPoly, UniPoly) {
    let db = degree(field, b).expect("division by zero polynomial");
    let lead_inv = field.inv(&b[db]).unwrap();
    let mut rem: UniPoly = a.to_vec();
    trim(field, &mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![field.zero(); rem.len() - db];
    while let Some(dr) = degree(field, &rem) {
        if dr < db {
            break;
        }
        let c = field.mul(&rem[dr], &lead_inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            rem[shift + j] = field.sub(&rem[shift + j], &field.mul(&c, bj));
        }
        quo[shift] = c;
        trim(field, &mut rem);
    }
    trim(field, &mut quo);
    (quo, rem)
}

pub fn rem(field: &Field, a: &[Scalar], b: &[Scalar]) -> UniPoly {
    divrem(field, a, b).1
}

pub fn monic(field: &Field, a: &[Scalar]) -> UniPoly {
    match degree(field, a) {
        None => Vec::new(),
        Some(d) => {
            let inv = field.inv(&a[d]).unwrap();
            a[..=d].iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd(field: &Field, a: &[Scalar], b: &[Scalar]) -> UniPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(field, &mut x);
    trim(field, &mut y);
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    monic(field, &x)
}

pub fn derivative(field: &Field, a: &[Scalar]) -> UniPoly {
    let mut out: UniPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
        .collect();
    trim(field, &mut out);
    out
}

pub fn eval(field: &Field, a: &[Scalar], x: &Scalar) -> Scalar {
    a.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// Multiplicity of `c` as a root of `a` (`a` nonzero).
pub fn root_multiplicity(field: &Field, a: &[Scalar], c: &Scalar) -> usize {
    let lin = vec![field.neg(c), field.one()];
    let mut cur = a.to_vec();
    trim(field, &mut cur);
    let mut k = 0;
    while !cur.is_empty() {
        let (q, r) = divrem(field, &cur, &lin);
        if !r.is_empty() {
            break;
        }
        cur = q;
        k += 1;
    }
    k
}

/// Removes every factor `(y - c)` from `a`.
pub fn strip_root(field: &Field, a: &[Scalar], c: &Scalar) -> UniPoly {
    let lin = vec![field.neg(c), field.one()];
    let mut cur = a.to_vec();
    trim(field, &mut cur);
    loop {
        if cur.is_empty() {
            return cur;
        }
        let (q, r) = divrem(field, &cur, &lin);
        if !r.is_empty() {
            return cur;
        }
        cur = q;
    }
}

fn powmod(field: &Field, base: &[Scalar], exp: &BigUint, m: &[Scalar]) -> UniPoly {
    let mut acc: UniPoly = vec![field.one()];
    acc = rem(field, &acc, m);
    let b = rem(field, base, m);
    for i in (0..exp.bits()).rev() {
        acc = rem(field, &mul(field, &acc, &acc), m);
        if exp.bit(i) {
            acc = rem(field, &mul(field, &acc, &b), m);
        }
    }
    acc
}

/// `y^(q^k) mod m` over `F_q`.
fn frobenius_power(field: &Field, k: usize, m: &[Scalar]) -> UniPoly {
    let q = field.order().expect("finite field");
    let mut h: UniPoly = rem(field, &[field.zero(), field.one()], m);
    for _ in 0..k {
        h = powmod(field, &h, &q, m);
    }
    h
}

/// Whether every root of `a` (over the algebraic closure) lies in
/// `F_(q^k)`.
fn splits_over(field: &Field, a: &[Scalar], k: usize) -> bool {
    let mut v = monic(field, a);
    let y = vec![field.zero(), field.one()];
    while degree(field, &v).is_some_and(|d| d > 0) {
        let h = sub(field, &frobenius_power(field, k, &v), &y);
        let g = gcd(field, &v, &h);
        if degree(field, &g) == Some(0) {
            return false;
        }
        v = divrem(field, &v, &g).0;
    }
    true
}

/// Smallest `k` such that `a` splits into linear factors over `F_(q^k)`,
/// searched up to `max_k`.
pub fn splitting_degree(field: &Field, a: &[Scalar], max_k: usize) -> Option<usize> {
    assert!(field.is_finite());
    if degree(field, a).is_none_or(|d| d == 0) {
        return Some(1);
    }
    (1..=max_k).find(|&k| splits_over(field, a, k))
}

/// Distinct roots of `a` lying in the finite field, in canonical order.
pub fn roots(field: &Field, a: &[Scalar]) -> Result<Vec<Scalar>> {
    if !field.is_finite() {
        return Err(Error::FieldMismatch("root finding needs a finite field".into()));
    }
    let a = monic(field, a);
    let d = match degree(field, &a) {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    let _ = d;
    let y = vec![field.zero(), field.one()];
    let h = sub(field, &frobenius_power(field, 1, &a), &y);
    let g = gcd(field, &a, &h);
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b10b);
    split_linear(field, &g, &mut rng, &mut out);
    out.sort();
    Ok(out)
}

fn split_linear(field: &Field, g: &[Scalar], rng: &mut ChaCha8Rng, out: &mut Vec<Scalar>) {
    let d = match degree(field, g) {
        None | Some(0) => return,
        Some(d) => d,
    };
    if d == 1 {
        let m = monic(field, g);
        out.push(field.neg(&m[0]));
        return;
    }
    let p = field.characteristic();
    let q = field.order().unwrap();
    loop {
        let a = field.random(rng);
        let candidate = if p == 2 {
            let ax = vec![field.zero(), a];
            let mut term = rem(field, &ax, g);
            let mut trace = term.clone();
            for _ in 1..field.degree() {
                term = rem(field, &mul(field, &term, &term), g);
                trace = add(field, &trace, &term);
            }
            trace
        } else {
            let lin = vec![a, field.one()];
            let e = (&q - BigUint::one()) / BigUint::from(2u32);
            let w = powmod(field, &lin, &e, g);
            sub(field, &w, &[field.one()])
        };
        let f = gcd(field, g, &candidate);
        let df = degree(field, &f).unwrap_or(0);
        if f.is_empty() || df == 0 || df == d {
            continue;
        }
        let other = divrem(field, g, &f).0;
        split_linear(field, &f, rng, out);
        split_linear(field, &other, rng, out);
        return;
    }
}

/// Square-free test in characteristic zero: `gcd(a, a') = 1`.
pub fn is_squarefree_char0(field: &Field, a: &[Scalar]) -> bool {
    assert_eq!(field.characteristic(), 0);
    let da = derivative(field, a);
    if degree(field, a).is_none_or(|d| d == 0) {
        return true;
    }
    degree(field, &gcd(field, a, &da)) == Some(0)
}
