//! Dense univariate polynomials over a prime field, coefficients low to high.
//!
//! Only what the field layer needs: reduction modulo a monic polynomial,
//! inverses and the irreducibility test.

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p).expect("leading coefficient invertible");
    let mut rem: Vec<u64> = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![0u64; rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = mul_mod(rem[dr], lead_inv, p);
        let shift = dr - db;
        quo[shift] = c;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            let t = mul_mod(c, bj, p);
            rem[shift + j] = (rem[shift + j] + p - t) % p;
        }
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

/// Monic gcd.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&x, p)
}

pub(crate) fn make_monic(a: &[u64], p: u64) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p).unwrap();
            a[..=d].iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn inv_poly_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // extended Euclid tracking the coefficient of `a`
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    let mut out: Vec<u64> = s0.iter().map(|&x| mul_mod(x, c, p)).collect();
    out = rem(&out, m, p);
    Some(out)
}

pub(crate) fn pow_poly_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

/// Irreducibility over F_p: no factor of degree `<= deg/2` divides `m`,
/// detected by `gcd(m, t^(p^i) - t) = 1` for every such `i`.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let d = match degree(m) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    let t = vec![0u64, 1];
    let mut power = t.clone();
    for _ in 1..=d / 2 {
        power = pow_poly_mod(&power, p, m, p);
        let diff = sub(&power, &t, p);
        let g = gcd(m, &diff, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The least monic irreducible polynomial of the given degree, enumerating
/// lower coefficients as base-`p` digits of 0, 1, 2, ...
pub(crate) fn least_irreducible(p: u64, degree: usize) -> Vec<u64> {
    let mut n: u128 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut k = n;
        for _ in 0..degree {
            coeffs.push((k % p as u128) as u64);
            k /= p as u128;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_over_f2() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn inverse_in_f4() {
        let m = [1, 1, 1];
        // t * (t + 1) = 1 in F_4
        assert_eq!(inv_poly_mod(&[0, 1], &m, 2), Some(vec![1, 1]));
    }
}
