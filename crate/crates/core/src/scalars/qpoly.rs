//! Dense univariate polynomials over the rationals, coefficients low to high.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn trim(a: &mut Vec<BigRational>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[BigRational]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &b[db];
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            let t = &c * bj;
            rem[shift + j] -= t;
        }
        quo[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

pub(crate) fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    divrem(a, b).1
}

pub(crate) fn inv_poly_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].recip();
    let out: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
    Some(rem(&out, m))
}
