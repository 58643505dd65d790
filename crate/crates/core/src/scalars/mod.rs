//! Exact coefficient fields: prime fields, their extensions, the rationals
//! and number fields, together with reduction modulo `p`.
//!
//! A [`Field`] is a cheap, immutable handle. Elements are plain [`Scalar`]
//! values interpreted through the field that created them; every element is
//! stored as a fully reduced coefficient vector of length `degree()`, so
//! structural equality is field equality.

mod fpoly;
mod qpoly;
pub mod univariate;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default cap on the total degree of a finite field over its prime field.
pub const DEFAULT_EXTENSION_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    Extension,
    Rational,
    NumberField,
}

/// A field element: residue-polynomial coefficients, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod(SmallVec<[u64; 2]>),
    Rat(Vec<BigRational>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct FieldData {
    kind: FieldKind,
    p: Option<u64>,
    fp_modulus: Vec<u64>,
    q_modulus: Vec<BigRational>,
}

/// Handle to an exact coefficient field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.name())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !fpoly::is_prime(p) || p >= (1u64 << 62) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldData {
            kind: FieldKind::Prime,
            p: Some(p),
            fp_modulus: vec![0, 1],
            q_modulus: Vec::new(),
        })))
    }

    /// `F_p[t]/(modulus)`; the modulus is given low degree first.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field> {
        if !fpoly::is_prime(p) || p >= (1u64 << 62) {
            return Err(Error::NotPrime(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        fpoly::trim(&mut m);
        let d = fpoly::degree(&m)
            .ok_or_else(|| Error::DegenerateModulus("zero modulus".into()))?;
        if d < 2 {
            return Err(Error::DegenerateModulus(format!(
                "modulus of degree {d} does not define a proper extension"
            )));
        }
        if m[d] != 1 {
            return Err(Error::DegenerateModulus("modulus is not monic".into()));
        }
        if !fpoly::is_irreducible(&m, p) {
            return Err(Error::ReducibleModulus);
        }
        Ok(Field(Arc::new(FieldData {
            kind: FieldKind::Extension,
            p: Some(p),
            fp_modulus: m,
            q_modulus: Vec::new(),
        })))
    }

    pub fn rational() -> Field {
        Field(Arc::new(FieldData {
            kind: FieldKind::Rational,
            p: None,
            fp_modulus: Vec::new(),
            q_modulus: vec![BigRational::zero(), BigRational::one()],
        }))
    }

    /// `Q[t]/(modulus)` paired with the prime `p`; the modulus must be monic
    /// with integer coefficients and irreducible modulo `p`.
    pub fn number_field(p: u64, modulus: &[BigInt]) -> Result<Field> {
        if !fpoly::is_prime(p) || p >= (1u64 << 62) {
            return Err(Error::NotPrime(p));
        }
        let mut m: Vec<BigRational> = modulus.iter().cloned().map(BigRational::from_integer).collect();
        qpoly::trim(&mut m);
        let d = qpoly::degree(&m)
            .ok_or_else(|| Error::DegenerateModulus("zero modulus".into()))?;
        if d < 2 {
            return Err(Error::DegenerateModulus(format!(
                "modulus of degree {d} does not define a proper extension"
            )));
        }
        if !m[d].is_one() {
            return Err(Error::DegenerateModulus("modulus is not monic".into()));
        }
        let reduced: Vec<u64> = modulus.iter().map(|c| reduce_int(c, p)).collect();
        if !fpoly::is_irreducible(&reduced, p) {
            return Err(Error::ReducibleModulus);
        }
        Ok(Field(Arc::new(FieldData {
            kind: FieldKind::NumberField,
            p: Some(p),
            fp_modulus: Vec::new(),
            q_modulus: m,
        })))
    }

    /// Generic constructor mirroring the problem-file vocabulary.
    /// `modulus` is low degree first and ignored for prime and rational kinds.
    pub fn make(kind: FieldKind, p: Option<u64>, modulus: &[i64]) -> Result<Field> {
        let need_p = || p.ok_or_else(|| Error::InvalidInput("missing prime".into()));
        match kind {
            FieldKind::Prime => Field::prime(need_p()?),
            FieldKind::Extension => {
                let p = need_p()?;
                let m: Vec<u64> = modulus
                    .iter()
                    .map(|&c| c.rem_euclid(p as i64) as u64)
                    .collect();
                Field::extension(p, &m)
            }
            FieldKind::Rational => Ok(Field::rational()),
            FieldKind::NumberField => {
                let m: Vec<BigInt> = modulus.iter().map(|&c| BigInt::from(c)).collect();
                Field::number_field(need_p()?, &m)
            }
        }
    }

    /// Parses `GF(p)`, `GF(p)[t]/(m)` and `Q`.
    pub fn parse(text: &str) -> Result<Field> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "Q" || s == "QQ" {
            return Ok(Field::rational());
        }
        let rest = s.strip_prefix("GF(").ok_or_else(|| Error::Syntax {
            position: 0,
            message: format!("expected `GF(` or `Q`, found `{text}`"),
        })?;
        let close = rest.find(')').ok_or_else(|| Error::Syntax {
            position: s.len(),
            message: "unterminated `GF(`".into(),
        })?;
        let p: u64 = rest[..close].parse().map_err(|_| Error::Syntax {
            position: 3,
            message: format!("invalid characteristic `{}`", &rest[..close]),
        })?;
        let tail = &rest[close + 1..];
        if tail.is_empty() {
            return Field::prime(p);
        }
        let offset = 3 + close + 1;
        let inner = tail
            .strip_prefix("[t]/(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Syntax {
                position: offset,
                message: "expected `[t]/(...)`".into(),
            })?;
        let base = Field::prime(p)?;
        let m = crate::polyring::parse_univariate(inner, &base, "t").map_err(|e| match e {
            Error::Syntax { position, message } => Error::Syntax {
                position: position + offset + 5,
                message,
            },
            other => other,
        })?;
        let coeffs: Vec<u64> = m.iter().map(|c| base.to_u64(c)).collect();
        Field::extension(p, &coeffs)
    }

    pub fn name(&self) -> String {
        match self.0.kind {
            FieldKind::Prime => format!("GF({})", self.0.p.unwrap()),
            FieldKind::Extension => format!(
                "GF({})[t]/({})",
                self.0.p.unwrap(),
                format_modulus(&self.0.fp_modulus.iter().map(|&c| BigRational::from_integer(c.into())).collect::<Vec<_>>())
            ),
            FieldKind::Rational => "Q".to_string(),
            FieldKind::NumberField => format!("Q[t]/({})", format_modulus(&self.0.q_modulus)),
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    /// Characteristic: `p` for finite fields, 0 otherwise.
    pub fn characteristic(&self) -> u64 {
        match self.0.kind {
            FieldKind::Prime | FieldKind::Extension => self.0.p.unwrap(),
            _ => 0,
        }
    }

    /// The prime attached to the field (its characteristic, or the reduction
    /// prime of a number field).
    pub fn prime_number(&self) -> Option<u64> {
        self.0.p
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0.kind, FieldKind::Prime | FieldKind::Extension)
    }

    /// Degree over the prime field (or over `Q`).
    pub fn degree(&self) -> usize {
        match self.0.kind {
            FieldKind::Prime | FieldKind::Rational => 1,
            FieldKind::Extension => self.0.fp_modulus.len() - 1,
            FieldKind::NumberField => self.0.q_modulus.len() - 1,
        }
    }

    /// Number of elements of a finite field.
    pub fn order(&self) -> Option<BigUint> {
        if self.is_finite() {
            Some(BigUint::from(self.characteristic()).pow(self.degree() as u32))
        } else {
            None
        }
    }

    /// Modulus over F_p, low degree first (`[0, 1]` for a prime field).
    pub fn fp_modulus(&self) -> &[u64] {
        &self.0.fp_modulus
    }

    /// Modulus over Q, low degree first (`[0, 1]` for the rationals).
    pub fn q_modulus(&self) -> &[BigRational] {
        &self.0.q_modulus
    }

    pub fn zero(&self) -> Scalar {
        let d = self.degree();
        if self.is_finite() {
            Scalar::Mod(SmallVec::from_elem(0, d))
        } else {
            Scalar::Rat(vec![BigRational::zero(); d])
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        let d = self.degree();
        if self.is_finite() {
            let mut v: SmallVec<[u64; 2]> = SmallVec::from_elem(0, d);
            v[0] = reduce_int(n, self.characteristic());
            Scalar::Mod(v)
        } else {
            let mut v = vec![BigRational::zero(); d];
            v[0] = BigRational::from_integer(n.clone());
            Scalar::Rat(v)
        }
    }

    /// Rational constant; in a finite field the denominator must be a unit.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        if self.is_finite() {
            let num = self.from_bigint(r.numer());
            let den = self.from_bigint(r.denom());
            let inv = self.inv(&den).ok_or(Error::NotPIntegral)?;
            Ok(self.mul(&num, &inv))
        } else {
            let mut v = vec![BigRational::zero(); self.degree()];
            v[0] = r.clone();
            Ok(Scalar::Rat(v))
        }
    }

    /// The residue class of `t`, for proper extensions.
    pub fn generator(&self) -> Option<Scalar> {
        let d = self.degree();
        if d < 2 {
            return None;
        }
        Some(match self.0.kind {
            FieldKind::Extension => {
                let mut v: SmallVec<[u64; 2]> = SmallVec::from_elem(0, d);
                v[1] = 1;
                Scalar::Mod(v)
            }
            _ => {
                let mut v = vec![BigRational::zero(); d];
                v[1] = BigRational::one();
                Scalar::Rat(v)
            }
        })
    }

    /// Element with the given residue-polynomial coefficients (low first).
    pub fn from_fp_coeffs(&self, coeffs: &[u64]) -> Scalar {
        let p = self.characteristic();
        let reduced = fpoly::rem(
            &coeffs.iter().map(|c| c % p).collect::<Vec<_>>(),
            &self.0.fp_modulus,
            p,
        );
        self.pad_mod(reduced)
    }

    pub fn from_q_coeffs(&self, coeffs: &[BigRational]) -> Scalar {
        let reduced = qpoly::rem(coeffs, &self.0.q_modulus);
        self.pad_rat(reduced)
    }

    fn pad_mod(&self, mut v: Vec<u64>) -> Scalar {
        v.resize(self.degree(), 0);
        Scalar::Mod(SmallVec::from_vec(v))
    }

    fn pad_rat(&self, mut v: Vec<BigRational>) -> Scalar {
        v.resize(self.degree(), BigRational::zero());
        Scalar::Rat(v)
    }

    /// Whether the value has the shape of an element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => {
                self.is_finite()
                    && v.len() == self.degree()
                    && v.iter().all(|&c| c < self.characteristic())
            }
            Scalar::Rat(v) => !self.is_finite() && v.len() == self.degree(),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => v.iter().all(|&c| c == 0),
            Scalar::Rat(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                let p = self.characteristic();
                Scalar::Mod(x.iter().zip(y.iter()).map(|(&u, &v)| (u + v) % p).collect())
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => {
                Scalar::Rat(x.iter().zip(y.iter()).map(|(u, v)| u + v).collect())
            }
            _ => panic!("scalars from different field kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(x) => {
                let p = self.characteristic();
                Scalar::Mod(x.iter().map(|&u| (p - u) % p).collect())
            }
            Scalar::Rat(x) => Scalar::Rat(x.iter().map(|u| -u).collect()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                let p = self.characteristic();
                if x.len() == 1 {
                    return Scalar::Mod(SmallVec::from_elem(fpoly::mul_mod(x[0], y[0], p), 1));
                }
                let prod = fpoly::mul(x, y, p);
                self.pad_mod(fpoly::rem(&prod, &self.0.fp_modulus, p))
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => {
                if x.len() == 1 {
                    return Scalar::Rat(vec![&x[0] * &y[0]]);
                }
                let prod = qpoly::mul(x, y);
                self.pad_rat(qpoly::rem(&prod, &self.0.q_modulus))
            }
            _ => panic!("scalars from different field kinds"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Scalar::Mod(x) => {
                let p = self.characteristic();
                if x.len() == 1 {
                    return fpoly::inv_mod(x[0], p).map(|v| Scalar::Mod(SmallVec::from_elem(v, 1)));
                }
                fpoly::inv_poly_mod(x, &self.0.fp_modulus, p).map(|v| self.pad_mod(v))
            }
            Scalar::Rat(x) => {
                if x.len() == 1 {
                    return Some(Scalar::Rat(vec![x[0].recip()]));
                }
                qpoly::inv_poly_mod(x, &self.0.q_modulus).map(|v| self.pad_rat(v))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn pow(&self, a: &Scalar, mut exp: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &Scalar, exp: &BigUint) -> Scalar {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Uniformly random element of a finite field.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Scalar {
        assert!(self.is_finite(), "random elements only for finite fields");
        let p = self.characteristic();
        Scalar::Mod((0..self.degree()).map(|_| rng.gen_range(0..p)).collect())
    }

    /// The coefficient of `t^0` of a prime-field element as an integer.
    pub(crate) fn to_u64(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Mod(v) => v[0],
            Scalar::Rat(_) => panic!("not a finite field element"),
        }
    }

    /// Whether the element is an integer multiple of one (lies in the prime
    /// field or in `Q`).
    pub fn is_base(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => v.iter().skip(1).all(|&c| c == 0),
            Scalar::Rat(v) => v.iter().skip(1).all(|c| c.is_zero()),
        }
    }

    /// Canonical text form: an integer, a fraction, or a polynomial in `t`
    /// with descending powers.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Mod(v) => {
                let coeffs: Vec<BigRational> =
                    v.iter().map(|&c| BigRational::from_integer(c.into())).collect();
                format_t_poly(&coeffs)
            }
            Scalar::Rat(v) => format_t_poly(v),
        }
    }

    /// Number of nonzero `t`-terms; used to decide on parentheses.
    pub(crate) fn term_count(&self, a: &Scalar) -> usize {
        match a {
            Scalar::Mod(v) => v.iter().filter(|&&c| c != 0).count(),
            Scalar::Rat(v) => v.iter().filter(|c| !c.is_zero()).count(),
        }
    }

    /// For a single-term element of characteristic zero, whether its sign is
    /// negative.
    pub(crate) fn is_negative_term(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(v) => {
                self.term_count(a) == 1 && v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative())
            }
            Scalar::Mod(_) => false,
        }
    }

    /// Parses a scalar written as a constant expression (`3`, `t+1`, `-2/3`).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let poly = crate::polyring::Poly::parse_vars(text, self, &[])?;
        Ok(poly.constant_term())
    }
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn format_t_poly(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn format_modulus(coeffs: &[BigRational]) -> String {
    format_t_poly(coeffs)
}

/// An explicit field embedding `source -> target`, determined by the image
/// of the generator `t`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    generator_image: Option<Scalar>,
}

impl Embedding {
    pub fn identity(field: &Field) -> Embedding {
        Embedding {
            source: field.clone(),
            target: field.clone(),
            generator_image: field.generator(),
        }
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn generator_image(&self) -> Option<&Scalar> {
        self.generator_image.as_ref()
    }

    pub fn map(&self, a: &Scalar) -> Scalar {
        if self.source == self.target {
            return a.clone();
        }
        let t = &self.target;
        match a {
            Scalar::Mod(v) => {
                let mut acc = t.zero();
                let mut power = t.one();
                for (i, &c) in v.iter().enumerate() {
                    if i > 0 {
                        power = t.mul(&power, self.generator_image.as_ref().unwrap());
                    }
                    if c != 0 {
                        acc = t.add(&acc, &t.mul(&t.from_i64(c as i64), &power));
                    }
                }
                acc
            }
            Scalar::Rat(_) => panic!("embeddings are defined between finite fields"),
        }
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        Embedding {
            source: self.source.clone(),
            target: other.target.clone(),
            generator_image: self.generator_image.as_ref().map(|g| other.map(g)),
        }
    }
}

/// Degree-`e` extension of a finite field with the lexicographically least
/// monic irreducible modulus over the prime field, and an embedding of the
/// original field.
pub fn extend_field(field: &Field, e: usize, cap: usize) -> Result<(Field, Embedding)> {
    if !field.is_finite() {
        return Err(Error::CharacteristicZeroInput);
    }
    if e == 0 {
        return Err(Error::InvalidInput("extension degree must be positive".into()));
    }
    let total = field.degree() * e;
    if total > cap {
        return Err(Error::ExtensionDegreeCapExceeded { requested: total, cap });
    }
    if e == 1 {
        return Ok((field.clone(), Embedding::identity(field)));
    }
    let p = field.characteristic();
    let modulus = fpoly::least_irreducible(p, total);
    let target = Field::extension(p, &modulus)?;
    let generator_image = if field.degree() == 1 {
        None
    } else {
        let m: Vec<Scalar> = field
            .fp_modulus()
            .iter()
            .map(|&c| target.from_i64(c as i64))
            .collect();
        let roots = univariate::roots(&target, &m)?;
        Some(roots.into_iter().next().expect("subfield modulus splits in the extension"))
    };
    Ok((
        target.clone(),
        Embedding {
            source: field.clone(),
            target,
            generator_image,
        },
    ))
}

/// The reduction `K -> F_q` on p-integral elements, and its canonical
/// section `naive_lift`.
#[derive(Clone, Debug)]
pub struct ReductionMap {
    source: Field,
    target: Field,
    p: u64,
}

impl ReductionMap {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn reduce_rational(&self, r: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let den = r.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(Error::NotPIntegral);
        }
        let num = reduce_int(r.numer(), self.p);
        let den_inv = fpoly::inv_mod(den.to_u64().unwrap(), self.p).unwrap();
        Ok(fpoly::mul_mod(num, den_inv, self.p))
    }

    pub fn is_p_integral(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(v) => v.iter().all(|c| !c.denom().is_multiple_of(&BigInt::from(self.p))),
            Scalar::Mod(_) => false,
        }
    }

    /// `p`-adic valuation; `None` for zero. Since the modulus stays
    /// irreducible mod `p`, this is the minimum over the coefficients.
    pub fn valuation(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Rat(v) => v
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| int_valuation(c.numer(), self.p) - int_valuation(c.denom(), self.p))
                .min(),
            Scalar::Mod(_) => panic!("valuation is defined on the lifted field"),
        }
    }

    pub fn reduce(&self, a: &Scalar) -> Result<Scalar> {
        match a {
            Scalar::Rat(v) => {
                let coeffs = v
                    .iter()
                    .map(|c| self.reduce_rational(c))
                    .collect::<Result<Vec<u64>>>()?;
                Ok(self.target.from_fp_coeffs(&coeffs))
            }
            Scalar::Mod(_) => Err(Error::FieldMismatch("reduction expects a lifted scalar".into())),
        }
    }

    /// Coefficient-wise lift into `{0, ..., p-1}`; zero lifts to zero.
    pub fn naive_lift(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(v) => Scalar::Rat(
                v.iter()
                    .map(|&c| BigRational::from_integer(BigInt::from(c)))
                    .collect(),
            ),
            Scalar::Rat(_) => panic!("naive lift expects a finite field element"),
        }
    }
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    if n.is_zero() {
        return i64::MAX;
    }
    while n.is_multiple_of(&p) {
        n /= &p;
        k += 1;
    }
    k
}

/// The canonical characteristic-zero field over a finite field: `Q` for a
/// prime field, `Q[t]/(naive lift of the modulus)` otherwise.
pub fn lift_field(fq: &Field) -> Result<(Field, ReductionMap)> {
    let p = match fq.kind() {
        FieldKind::Prime | FieldKind::Extension => fq.characteristic(),
        _ => return Err(Error::CharacteristicZeroInput),
    };
    let k = match fq.kind() {
        FieldKind::Prime => Field::rational(),
        _ => {
            let m: Vec<BigInt> = fq.fp_modulus().iter().map(|&c| BigInt::from(c)).collect();
            Field::number_field(p, &m)?
        }
    };
    Ok((
        k.clone(),
        ReductionMap {
            source: k,
            target: fq.clone(),
            p,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> Field {
        Field::extension(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn prime_field_arithmetic() {
        let f7 = Field::prime(7).unwrap();
        assert!(f7.is_one(&f7.mul(&f7.from_i64(3), &f7.from_i64(5))));
        assert_eq!(f7.from_i64(-1), f7.from_i64(6));
    }

    #[test]
    fn f4_generator_times_successor_is_one() {
        let f = f4();
        let t = f.generator().unwrap();
        let t1 = f.add(&t, &f.one());
        assert!(f.is_one(&f.mul(&t, &t1)));
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(Field::extension(2, &[1, 0, 1]), Err(Error::ReducibleModulus));
        assert_eq!(Field::prime(8), Err(Error::NotPrime(8)));
        assert!(matches!(Field::extension(2, &[1, 1]), Err(Error::DegenerateModulus(_))));
        assert!(matches!(Field::extension(3, &[1, 0, 2]), Err(Error::DegenerateModulus(_))));
        assert_eq!(Field::make(FieldKind::Extension, Some(2), &[1, 0, 1]), Err(Error::ReducibleModulus));
    }

    #[test]
    fn parse_field_strings() {
        assert_eq!(Field::parse("GF(7)").unwrap(), Field::prime(7).unwrap());
        assert_eq!(Field::parse("GF(2)[t]/(t^2+t+1)").unwrap(), f4());
        assert_eq!(Field::parse(" GF(2) [t]/( t^2 + t + 1 )").unwrap().name(), "GF(2)[t]/(t^2 + t + 1)");
        assert!(matches!(Field::parse("GF(7"), Err(Error::Syntax { .. })));
        assert!(matches!(Field::parse("F7"), Err(Error::Syntax { .. })));
        assert_eq!(Field::parse("GF(2)[t]/(t^2+1)"), Err(Error::ReducibleModulus));
    }

    #[test]
    fn extend_examples() {
        let f2 = Field::prime(2).unwrap();
        let (f4b, _) = extend_field(&f2, 2, 16).unwrap();
        assert_eq!(f4b.fp_modulus(), &[1, 1, 1]);
        let f3 = Field::prime(3).unwrap();
        let (same, emb) = extend_field(&f3, 1, 16).unwrap();
        assert_eq!(same, f3);
        assert_eq!(emb.map(&f3.from_i64(2)), f3.from_i64(2));
        assert_eq!(
            extend_field(&f2, 5, 4).unwrap_err(),
            Error::ExtensionDegreeCapExceeded { requested: 5, cap: 4 }
        );
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f = f4();
        let (f16, emb) = extend_field(&f, 2, 16).unwrap();
        assert_eq!(f16.degree(), 4);
        let t = f.generator().unwrap();
        let img = emb.map(&t);
        // the image satisfies t^2 + t + 1 = 0
        let val = f16.add(&f16.add(&f16.mul(&img, &img), &img), &f16.one());
        assert!(f16.is_zero(&val));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            assert_eq!(emb.map(&f.mul(&a, &b)), f16.mul(&emb.map(&a), &emb.map(&b)));
            assert_eq!(emb.map(&f.add(&a, &b)), f16.add(&emb.map(&a), &emb.map(&b)));
        }
    }

    #[test]
    fn lift_field_examples() {
        let f7 = Field::prime(7).unwrap();
        let (k, phi) = lift_field(&f7).unwrap();
        assert_eq!(k.kind(), FieldKind::Rational);
        let four = phi.naive_lift(&f7.from_i64(4));
        assert_eq!(four, k.from_i64(4));
        assert_eq!(phi.reduce(&four).unwrap(), f7.from_i64(4));

        let (kk, phi2) = lift_field(&f4()).unwrap();
        assert_eq!(kk.name(), "Q[t]/(t^2 + t + 1)");
        // (t + 2) / 3 reduces to t modulo 2
        let t = kk.generator().unwrap();
        let x = kk.div(&kk.add(&t, &kk.from_i64(2)), &kk.from_i64(3)).unwrap();
        assert_eq!(phi2.reduce(&x).unwrap(), f4().generator().unwrap());
        assert_eq!(phi2.reduce(&kk.from_rational(&BigRational::new(1.into(), 2.into())).unwrap()), Err(Error::NotPIntegral));
        assert_eq!(lift_field(&Field::rational()).unwrap_err(), Error::CharacteristicZeroInput);
    }

    #[test]
    fn naive_lift_examples() {
        let f = f4();
        let (k, phi) = lift_field(&f).unwrap();
        assert_eq!(phi.naive_lift(&f.zero()), k.zero());
        let t1 = f.add(&f.generator().unwrap(), &f.one());
        assert_eq!(k.format(&phi.naive_lift(&t1)), "t + 1");
    }

    #[test]
    fn valuations() {
        let f7 = Field::prime(7).unwrap();
        let (k, phi) = lift_field(&f7).unwrap();
        let x = k.from_rational(&BigRational::new(98.into(), 5.into())).unwrap();
        assert_eq!(phi.valuation(&x), Some(2));
        assert_eq!(phi.valuation(&k.zero()), None);
    }

    fn arb_field() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::prime(2).unwrap()),
            Just(Field::prime(5).unwrap()),
            Just(Field::extension(2, &[1, 1, 1]).unwrap()),
            Just(Field::extension(3, &[1, 0, 1]).unwrap()),
            Just(Field::extension(2, &[1, 1, 0, 1]).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(field in arb_field(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = field.random(&mut rng);
            let b = field.random(&mut rng);
            let c = field.random(&mut rng);
            prop_assert_eq!(field.mul(&field.mul(&a, &b), &c), field.mul(&a, &field.mul(&b, &c)));
            prop_assert_eq!(field.mul(&a, &field.add(&b, &c)), field.add(&field.mul(&a, &b), &field.mul(&a, &c)));
            prop_assert_eq!(field.add(&a, &b), field.add(&b, &a));
            if !field.is_zero(&a) {
                let ia = field.inv(&a).unwrap();
                prop_assert!(field.is_one(&field.mul(&a, &ia)));
            }
        }

        #[test]
        fn reduction_is_a_ring_homomorphism(field in arb_field(), seed in any::<u64>(), d1 in 1i64..20, d2 in 1i64..20) {
            let (k, phi) = lift_field(&field).unwrap();
            let p = field.characteristic() as i64;
            // p-integral elements: naive lifts scaled by unit denominators
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let den1 = if d1 % p == 0 { d1 + 1 } else { d1 };
            let den2 = if d2 % p == 0 { d2 + 1 } else { d2 };
            let a = k.div(&phi.naive_lift(&field.random(&mut rng)), &k.from_i64(den1)).unwrap();
            let b = k.div(&phi.naive_lift(&field.random(&mut rng)), &k.from_i64(den2)).unwrap();
            prop_assert!(phi.is_p_integral(&a) && phi.is_p_integral(&b));
            let ra = phi.reduce(&a).unwrap();
            let rb = phi.reduce(&b).unwrap();
            prop_assert_eq!(phi.reduce(&k.add(&a, &b)).unwrap(), field.add(&ra, &rb));
            prop_assert_eq!(phi.reduce(&k.mul(&a, &b)).unwrap(), field.mul(&ra, &rb));
            prop_assert_eq!(phi.reduce(&k.one()).unwrap(), field.one());
            let x = field.random(&mut rng);
            prop_assert_eq!(phi.reduce(&phi.naive_lift(&x)).unwrap(), x);
        }

        #[test]
        fn lifted_modulus_reduces_to_source(field in arb_field()) {
            let (k, _) = lift_field(&field).unwrap();
            if field.degree() > 1 {
                let reduced: Vec<u64> = k.q_modulus().iter().map(|c| c.to_integer().to_u64().unwrap() % field.characteristic()).collect();
                prop_assert_eq!(reduced, field.fp_modulus().to_vec());
            }
        }
    }
}
