//! Sparse polynomials in a small number of variables over a [`Field`].
//!
//! Terms are kept in graded-lex order (total degree ascending, then larger
//! powers of the earlier variables first), which is also the serialization
//! order and the column order used when solving for lifts.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalars::univariate::UniPoly;
use crate::scalars::{Field, Scalar};

pub use parse::parse_univariate;

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u32; 3]>);

impl Monomial {
    pub fn new(exps: &[u32]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The two standard affine charts of a point blow-up in the plane.
///
/// `X` sends `(x, y) -> (x, x*y)` (exceptional divisor `x = 0`), `Y` sends
/// `(x, y) -> (x*y, y)` (exceptional divisor `y = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Chart {
    X,
    Y,
}

impl Chart {
    /// Index of the variable cutting out the exceptional divisor.
    pub fn var(self) -> usize {
        match self {
            Chart::X => 0,
            Chart::Y => 1,
        }
    }
}

/// A sparse polynomial with canonical term order and no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field.name(), self)
    }
}

impl Poly {
    pub fn zero(field: &Field, nvars: usize) -> Poly {
        Poly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: Scalar) -> Poly {
        let mut p = Poly::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Poly {
        let mut e = Monomial::one(nvars);
        e.0[i] = 1;
        let mut p = Poly::zero(field, nvars);
        p.add_term(e, field.one());
        p
    }

    pub fn monomial(field: &Field, exps: &[u32], c: Scalar) -> Poly {
        let mut p = Poly::zero(field, exps.len());
        p.add_term(Monomial::new(exps), c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(field: &Field, nvars: usize, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Poly::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Monomial::new(&e), c);
        }
        p
    }

    /// Parses a bivariate polynomial in `x`, `y`.
    pub fn parse(text: &str, field: &Field) -> Result<Poly> {
        parse::parse(text, field, &["x", "y"])
    }

    /// Parses a polynomial in `x1, ..., xn`.
    pub fn parse_n(text: &str, field: &Field, nvars: usize) -> Result<Poly> {
        let names: Vec<String> = (1..=nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        parse::parse(text, field, &refs)
    }

    /// Parses with an explicit list of variable names.
    pub fn parse_vars(text: &str, field: &Field, names: &[&str]) -> Result<Poly> {
        parse::parse(text, field, names)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial::new(exps))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars])
    }

    fn add_term(&mut self, e: Monomial, c: Scalar) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_compatible(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert!(self.field == other.field, "field mismatch: {} vs {}", self.field, other.field);
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(&self.field, self.nvars);
        if self.field.is_zero(c) {
            return out;
        }
        for (e, x) in &self.terms {
            out.terms.insert(e.clone(), self.field.mul(x, c));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_trunc(other, None)
    }

    /// Product keeping only terms of total degree `<= max_degree`.
    pub fn mul_trunc(&self, other: &Poly, max_degree: Option<u32>) -> Poly {
        self.check_compatible(other);
        let mut out = Poly::zero(&self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                if let Some(m) = max_degree {
                    if e1.degree() + e2.degree() > m {
                        continue;
                    }
                }
                out.add_term(e1.mul(e2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Highest total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Order at the origin (least total degree); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Homogeneous component of the given degree.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops terms of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.0.iter()) {
                if k > 0 {
                    t = f.mul(&t, &f.pow(x, k as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `x_i -> subs[i]`, optionally discarding every term of
    /// total degree above `max_degree` along the way.
    pub fn compose(&self, subs: &[Poly], max_degree: Option<u32>) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        let target_vars = subs.first().map_or(self.nvars, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = subs
            .iter()
            .map(|s| vec![Poly::constant(&self.field, target_vars, self.field.one()), s.clone()])
            .collect();
        let mut out = Poly::zero(&self.field, target_vars);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(&self.field, target_vars, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul_trunc(&subs[i], max_degree);
                    powers[i].push(next);
                }
                t = t.mul_trunc(&powers[i][k as usize], max_degree);
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// `f(x + P)`: recenters so that `P` becomes the origin.
    pub fn translate(&self, point: &[Scalar]) -> Poly {
        assert_eq!(point.len(), self.nvars);
        if point.iter().all(|c| self.field.is_zero(c)) {
            return self.clone();
        }
        let subs: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                Poly::var(&self.field, self.nvars, i)
                    .add(&Poly::constant(&self.field, self.nvars, point[i].clone()))
            })
            .collect();
        self.compose(&subs, None)
    }

    /// Multiplicity at `P`: least total degree of the translate; 0 iff
    /// `f(P) != 0`.
    pub fn order_at_point(&self, point: &[Scalar]) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.translate(point).order().unwrap())
    }

    /// Substitution for the blow-up chart in which `x_j` cuts out the
    /// exceptional divisor: `x_j -> x_j`, `x_k -> x_j * x_k` otherwise.
    pub fn chart_substitute_var(&self, j: usize) -> Poly {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.0[j] = e.degree();
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Total transform in a standard chart of the plane.
    pub fn chart_substitute(&self, chart: Chart) -> Poly {
        assert_eq!(self.nvars, 2);
        self.chart_substitute_var(chart.var())
    }

    /// Exponent of the largest power of `x_j` dividing the polynomial.
    pub fn var_content(&self, j: usize) -> u32 {
        self.terms.keys().map(|e| e.0[j]).min().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Vec<u32> {
        (0..self.nvars).map(|j| self.var_content(j)).collect()
    }

    /// Exact division by `x_j^m`.
    pub fn divide_var_power(&self, j: usize, m: u32) -> Result<Poly> {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            if e.0[j] < m {
                return Err(Error::DivisionMismatch);
            }
            let mut ne = e.clone();
            ne.0[j] -= m;
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Exact division by a monomial.
    pub fn divide_monomial(&self, exps: &[u32]) -> Result<Poly> {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            for (k, &m) in exps.iter().enumerate() {
                if ne.0[k] < m {
                    return Err(Error::DivisionMismatch);
                }
                ne.0[k] -= m;
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Strict transform in a standard chart: the total transform divided by
    /// exactly `m` powers of the exceptional coordinate, `m` being the order
    /// of the polynomial at the origin.
    pub fn strict_transform(&self, chart: Chart, m: u32) -> Result<Poly> {
        let total = self.chart_substitute(chart);
        if total.var_content(chart.var()) != m {
            return Err(Error::DivisionMismatch);
        }
        total.divide_var_power(chart.var(), m)
    }

    /// Restriction to the line `x_j = 0` of a bivariate polynomial, as a
    /// univariate polynomial in the other variable.
    pub fn restrict_to_axis(&self, j: usize) -> UniPoly {
        assert_eq!(self.nvars, 2);
        let other = 1 - j;
        let mut out: UniPoly = Vec::new();
        for (e, c) in &self.terms {
            if e.0[j] != 0 {
                continue;
            }
            let k = e.0[other] as usize;
            if out.len() <= k {
                out.resize(k + 1, self.field.zero());
            }
            out[k] = c.clone();
        }
        out
    }

    /// Coefficients of the linear part, one per variable.
    pub fn linear_part(&self) -> Vec<Scalar> {
        (0..self.nvars)
            .map(|i| {
                let mut e = vec![0u32; self.nvars];
                e[i] = 1;
                self.coeff(&e)
            })
            .collect()
    }

    /// Applies a coefficient map into another field.
    pub fn map_coeffs<F>(&self, target: &Field, f: F) -> Poly
    where
        F: Fn(&Scalar) -> Scalar,
    {
        let mut out = Poly::zero(target, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Fallible coefficient map.
    pub fn try_map_coeffs<F>(&self, target: &Field, f: F) -> Result<Poly>
    where
        F: Fn(&Scalar) -> Result<Scalar>,
    {
        let mut out = Poly::zero(target, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Whether `other = c * self` for some nonzero scalar `c`.
    pub fn is_scalar_multiple_of(&self, other: &Poly) -> bool {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (e0, c0) = self.terms.iter().next().unwrap();
        let d0 = match other.terms.get(e0) {
            Some(d) => d,
            None => return false,
        };
        let ratio = self.field.div(d0, c0).unwrap();
        self.terms
            .iter()
            .all(|(e, c)| other.terms.get(e).is_some_and(|d| *d == self.field.mul(c, &ratio)))
    }

    fn var_name(&self, i: usize) -> String {
        if self.nvars == 2 {
            ["x", "y"][i].to_string()
        } else if self.nvars == 1 {
            "t".to_string()
        } else {
            format!("x{}", i + 1)
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = &self.field;
        let mut first = true;
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.var_name(i)
                    } else {
                        format!("{}^{}", self.var_name(i), k)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let negative = field.is_negative_term(c);
            let mag = if negative { field.neg(c) } else { c.clone() };
            let coeff = if field.term_count(&mag) > 1 {
                format!("({})", field.format(&mag))
            } else {
                field.format(&mag)
            };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            if mono.is_empty() {
                f.write_str(&coeff)?;
            } else if field.is_one(&mag) {
                f.write_str(&mono)?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn p(text: &str, field: &Field) -> Poly {
        Poly::parse(text, field).unwrap()
    }

    #[test]
    fn parse_examples() {
        let f7 = gf(7);
        let f = p("y^2 - x^3", &f7);
        assert_eq!(f.len(), 2);
        assert_eq!(f.coeff(&[0, 2]), f7.one());
        assert_eq!(f.coeff(&[3, 0]), f7.from_i64(6));
        let f2 = gf(2);
        let g = p("x*y + 2", &f2);
        assert_eq!(g, Poly::monomial(&f2, &[1, 1], f2.one()));
        assert!(matches!(Poly::parse("x^^2", &f7), Err(Error::Syntax { position: 2, .. })));
        assert_eq!(Poly::parse("x + z", &f7), Err(Error::UnknownVariable("z".into())));
        assert_eq!(Poly::parse("t*x", &f7), Err(Error::CoefficientNotInField("t".into())));
    }

    #[test]
    fn order_examples() {
        let f5 = gf(5);
        let cusp = p("y^2 - x^3", &f5);
        assert_eq!(cusp.order_at_point(&[f5.zero(), f5.zero()]).unwrap(), 2);
        assert_eq!(cusp.order_at_point(&[f5.one(), f5.one()]).unwrap(), 1);
        assert_eq!(p("x^2 + 2*x*y + y^2", &f5).order_at_point(&[f5.zero(), f5.zero()]).unwrap(), 2);
        assert_eq!(Poly::zero(&f5, 2).order_at_point(&[f5.zero(), f5.zero()]), Err(Error::ZeroPolynomial));
        assert_eq!(cusp.order_at_point(&[f5.from_i64(2), f5.one()]).unwrap(), 0);
    }

    #[test]
    fn translate_examples() {
        let q = Field::rational();
        let f = p("x + y", &q);
        assert_eq!(f.translate(&[q.from_i64(1), q.from_i64(2)]), p("x + y + 3", &q));
        let c = q.from_i64(5);
        assert_eq!(p("x^2", &q).translate(&[c, q.zero()]), p("x^2 + 10*x + 25", &q));
        let f2 = gf(2);
        assert_eq!(p("y^2 - x^3", &f2).translate(&[f2.zero(), f2.one()]), p("y^2 + 1 + x^3", &f2));
    }

    #[test]
    fn chart_examples() {
        let f5 = gf(5);
        assert_eq!(p("y^2 - x^3", &f5).chart_substitute(Chart::X), p("x^2*y^2 - x^3", &f5));
        assert_eq!(p("x", &f5).chart_substitute(Chart::X), p("x", &f5));
        assert_eq!(p("x + y", &f5).chart_substitute(Chart::Y), p("x*y + y", &f5));
    }

    #[test]
    fn strict_transform_examples() {
        let f5 = gf(5);
        assert_eq!(p("y^2 - x^3", &f5).strict_transform(Chart::X, 2).unwrap(), p("y^2 - x", &f5));
        assert_eq!(p("x*y", &f5).strict_transform(Chart::X, 2).unwrap(), p("y", &f5));
        assert_eq!(p("x^2 + y^2", &f5).strict_transform(Chart::Y, 2).unwrap(), p("x^2 + 1", &f5));
        assert_eq!(p("x^2 + y^2", &f5).strict_transform(Chart::Y, 1), Err(Error::DivisionMismatch));
    }

    #[test]
    fn display_order_is_graded_lex() {
        let q = Field::rational();
        let f = p("x^3 + y^2 - 2*x*y + x^2", &q);
        assert_eq!(f.to_string(), "x^2 - 2*x*y + y^2 + x^3");
        let f7 = gf(7);
        assert_eq!(p("y^2 - x^3", &f7).to_string(), "y^2 + 6*x^3");
        let f4 = Field::extension(2, &[1, 1, 1]).unwrap();
        assert_eq!(p("(t+1)*x + t*y + 1", &f4).to_string(), "1 + (t + 1)*x + t*y");
        assert_eq!(p("-x/3 + 1/2", &q).to_string(), "1/2 - 1/3*x");
    }

    #[test]
    fn n_variable_parsing() {
        let f5 = gf(5);
        let f = Poly::parse_n("x1*x2 + x3^3", &f5, 3).unwrap();
        assert_eq!(f.order(), Some(2));
        assert_eq!(f.to_string(), "x1*x2 + x3^3");
    }

    fn arb_poly(field: Field) -> impl Strategy<Value = Poly> {
        let p = field.characteristic() as i64;
        prop::collection::vec(((0u32..4, 0u32..4), 0i64..p.max(7)), 0..6).prop_map(move |terms| {
            Poly::from_terms(
                &field,
                2,
                terms.into_iter().map(|((a, b), c)| (vec![a, b], field.from_i64(c - 3))),
            )
        })
    }

    proptest! {
        #[test]
        fn translation_round_trip(f in arb_poly(gf(5)), a in 0i64..5, b in 0i64..5) {
            let field = gf(5);
            let pt = [field.from_i64(a), field.from_i64(b)];
            let back = [field.neg(&pt[0]), field.neg(&pt[1])];
            prop_assert_eq!(f.translate(&pt).translate(&back), f);
        }

        #[test]
        fn order_is_additive(f in arb_poly(gf(3)), g in arb_poly(gf(3)), a in 0i64..3, b in 0i64..3) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let field = gf(3);
            let pt = [field.from_i64(a), field.from_i64(b)];
            let of = f.order_at_point(&pt).unwrap();
            let og = g.order_at_point(&pt).unwrap();
            prop_assert_eq!(f.mul(&g).order_at_point(&pt).unwrap(), of + og);
        }

        #[test]
        fn strict_transform_is_multiplicative(f in arb_poly(gf(5)), g in arb_poly(gf(5))) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let mf = f.order().unwrap();
            let mg = g.order().unwrap();
            for chart in [Chart::X, Chart::Y] {
                let lhs = f.mul(&g).strict_transform(chart, mf + mg).unwrap();
                let rhs = f.strict_transform(chart, mf).unwrap().mul(&g.strict_transform(chart, mg).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn parse_round_trip(f in arb_poly(Field::rational())) {
            let q = Field::rational();
            prop_assert_eq!(Poly::parse(&f.to_string(), &q).unwrap(), f);
        }

        #[test]
        fn parse_round_trip_extension(f in arb_poly(Field::extension(3, &[1, 0, 1]).unwrap()), s in 0i64..9) {
            let field = Field::extension(3, &[1, 0, 1]).unwrap();
            let t = field.generator().unwrap();
            let c = field.add(&field.mul(&t, &field.from_i64(s / 3)), &field.from_i64(s % 3));
            let g = f.add(&Poly::monomial(&field, &[1, 1], c));
            prop_assert_eq!(Poly::parse(&g.to_string(), &field).unwrap(), g);
        }
    }
}
