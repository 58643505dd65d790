//! Log resolutions of multi-ideals by point blow-ups.
//!
//! The search is depth first. At each blown-up point the weak transforms of
//! all ideals are formed in both charts; candidate points of the new
//! exceptional curve are the roots of the restrictions to it. Points that
//! are not rational over the current field are either shown to be normal
//! crossings without locating them, or the whole search restarts over an
//! extension in which they become rational.

pub mod local;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::blowup::BlowupTree;
use crate::error::{Error, Result};
use crate::ideal::MultiIdeal;
use crate::polyring::{Chart, Poly};
use crate::scalars::univariate::{self, UniPoly};
use crate::scalars::{extend_field, Embedding, Field, FieldKind, Scalar, DEFAULT_EXTENSION_CAP};

pub use local::{divides_locally, snc_components, Frame, LocalCurve};

pub const DEFAULT_BLOWUP_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub blowup_cap: usize,
    pub ext_cap: usize,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            blowup_cap: DEFAULT_BLOWUP_CAP,
            ext_cap: DEFAULT_EXTENSION_CAP,
        }
    }
}

/// A non-exceptional component of the final configuration over the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveComponent {
    /// Multiplicity in each ideal.
    pub mults: Vec<u32>,
    /// Exceptional divisors it meets.
    pub meets: Vec<usize>,
    /// Number of conjugate points it stands for (branches through points
    /// that were never made rational are counted, not located).
    pub count: usize,
}

/// A log resolution, or the record of a multi-ideal followed through a
/// prescribed tree.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub field: Field,
    /// From the input field into `field`.
    pub embedding: Embedding,
    /// The input over `field`.
    pub ideal: MultiIdeal,
    pub tree: BlowupTree,
    /// `orders[i][j]`: order at `P_i` of the weak transform of ideal `j`.
    pub orders: Vec<Vec<u32>>,
    pub curves: Vec<CurveComponent>,
}

impl Resolution {
    /// Multiplicity vector `b` of ideal `j`.
    pub fn b_vector(&self, j: usize) -> Vec<i64> {
        self.orders.iter().map(|o| o[j] as i64).collect()
    }

    /// `v_{E_i}(a_j)` for all `i`.
    pub fn v_vector(&self, j: usize) -> Vec<i64> {
        self.tree.v_vector(&self.b_vector(j)).unwrap()
    }
}

enum Stop {
    Fail(Error),
    Extend(usize),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Fail(e)
    }
}

type Gens = Vec<Vec<Poly>>;

fn is_unit_ideal(field: &Field, g: &[Poly]) -> bool {
    g.iter().any(|p| !field.is_zero(&p.constant_term()))
}

fn ideal_order(g: &[Poly]) -> u32 {
    g.iter().map(|p| p.order().unwrap()).min().unwrap()
}

/// Weak transform of one ideal in a chart.
fn weak_transform(g: &[Poly], chart: Chart) -> Vec<Poly> {
    let m = ideal_order(g);
    g.iter()
        .map(|p| p.chart_substitute(chart).divide_var_power(chart.var(), m).unwrap())
        .collect()
}

/// gcd of the restrictions of the chart-X generators to `x = 0`.
fn restriction_gcd(field: &Field, g: &[Poly]) -> UniPoly {
    let mut acc: UniPoly = Vec::new();
    for p in g {
        acc = univariate::gcd(field, &acc, &p.restrict_to_axis(0));
    }
    acc
}

/// Whether all generators of some ideal vanish at the origin.
fn some_ideal_vanishes(field: &Field, gens: &Gens) -> bool {
    gens.iter().any(|g| !is_unit_ideal(field, g))
}

fn all_scalar_multiples(g: &[Poly]) -> bool {
    g.iter().all(|p| g[0].is_scalar_multiple_of(p))
}

/// Roots of `u` that can be found in the field.
fn findable_roots(field: &Field, u: &[Scalar]) -> Result<Vec<Scalar>> {
    if univariate::degree(field, u).is_none_or(|d| d == 0) {
        return Ok(Vec::new());
    }
    match field.kind() {
        FieldKind::Prime | FieldKind::Extension => univariate::roots(field, u),
        FieldKind::Rational => Ok(rational_roots(field, u)),
        FieldKind::NumberField => Ok(if field.is_zero(&u[0]) { vec![field.zero()] } else { Vec::new() }),
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 10_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational root theorem (coefficients of moderate
/// size only).
fn rational_roots(field: &Field, u: &[Scalar]) -> Vec<Scalar> {
    let coeffs: Vec<BigRational> = u
        .iter()
        .map(|s| match s {
            Scalar::Rat(v) => v[0].clone(),
            Scalar::Mod(_) => unreachable!(),
        })
        .collect();
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut out = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        out.push(field.zero());
    }
    let high = ints.iter().rposition(|c| !c.is_zero()).unwrap();
    if high == low {
        return out;
    }
    let (Some(ps), Some(qs)) = (small_divisors(&ints[low]), small_divisors(&ints[high])) else {
        return out;
    };
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let r = BigRational::new(p * sign, q.clone());
                let s = field.from_rational(&r).unwrap();
                if field.is_zero(&univariate::eval(field, u, &s)) && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out
}

/// Points of the exceptional curve that were not located: for each ideal,
/// the factor `R_j` of its restriction left after removing the located
/// roots. These points are normal crossings if every `R_j` is squarefree,
/// belongs to a principal ideal, and the `R_j` of different ideals are
/// coprime unless the ideals have the same generator.
///
/// On success returns the curve branches through those points.
fn unlocated_points(
    field: &Field,
    node: usize,
    weak_x: &Gens,
    restrictions: &[UniPoly],
    located: &[Scalar],
) -> std::result::Result<Vec<CurveComponent>, Vec<UniPoly>> {
    let r = weak_x.len();
    let rest: Vec<UniPoly> = restrictions
        .iter()
        .map(|u| {
            let mut v = u.clone();
            for c in located {
                v = univariate::strip_root(field, &v, c);
            }
            v
        })
        .collect();
    let active: Vec<usize> = (0..r)
        .filter(|&j| univariate::degree(field, &rest[j]).is_some_and(|d| d > 0))
        .collect();
    let failing: Vec<UniPoly> = active.iter().map(|&j| rest[j].clone()).collect();
    for &j in &active {
        if !all_scalar_multiples(&weak_x[j]) {
            return Err(failing);
        }
        let d = univariate::derivative(field, &rest[j]);
        if univariate::degree(field, &univariate::gcd(field, &rest[j], &d)) != Some(0) {
            return Err(failing);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &j in &active {
        match groups
            .iter_mut()
            .find(|g| weak_x[g[0]][0].is_scalar_multiple_of(&weak_x[j][0]))
        {
            Some(g) => g.push(j),
            None => groups.push(vec![j]),
        }
    }
    for a in 0..groups.len() {
        for b in a + 1..groups.len() {
            let g = univariate::gcd(field, &rest[groups[a][0]], &rest[groups[b][0]]);
            if univariate::degree(field, &g) != Some(0) {
                return Err(failing);
            }
        }
    }
    Ok(groups
        .into_iter()
        .map(|g| {
            let mut mults = vec![0u32; r];
            for &j in &g {
                mults[j] = 1;
            }
            CurveComponent {
                mults,
                meets: vec![node],
                count: univariate::degree(field, &rest[g[0]]).unwrap(),
            }
        })
        .collect())
}

fn record(curves: &mut Vec<CurveComponent>, found: Vec<LocalCurve>, frame: Frame) {
    for c in found {
        curves.push(CurveComponent {
            mults: c.mults,
            meets: frame.exceptional(),
            count: 1,
        });
    }
}

fn translate_all(gens: &Gens, point: &[Scalar; 2]) -> Gens {
    gens.iter()
        .map(|g| g.iter().map(|p| p.translate(point)).collect())
        .collect()
}

struct Search {
    field: Field,
    tree: BlowupTree,
    orders: Vec<Vec<u32>>,
    curves: Vec<CurveComponent>,
    opts: ResolveOptions,
}

impl Search {
    fn frame(&self, i: usize) -> Frame {
        let n = self.tree.node(i);
        Frame {
            x_axis: n.x_axis,
            y_axis: n.y_axis,
        }
    }

    fn blow_up(&mut self, parent: Option<usize>, chart: Chart, center: [Scalar; 2], local: Gens) -> std::result::Result<(), Stop> {
        if self.tree.len() >= self.opts.blowup_cap {
            return Err(Stop::Fail(Error::IterationCapExceeded(self.opts.blowup_cap)));
        }
        self.tree = self.tree.blow_up(parent, chart, center)?;
        let i = self.tree.len() - 1;
        self.explore(i, local)
    }

    fn visit(&mut self, parent: usize, chart: Chart, center: [Scalar; 2], local: Gens, frame: Frame) -> std::result::Result<(), Stop> {
        match snc_components(&local, frame) {
            Some(found) => {
                record(&mut self.curves, found, frame);
                Ok(())
            }
            None => self.blow_up(Some(parent), chart, center, local),
        }
    }

    fn explore(&mut self, i: usize, local: Gens) -> std::result::Result<(), Stop> {
        let field = self.field.clone();
        self.orders.push(
            local
                .iter()
                .map(|g| if is_unit_ideal(&field, g) { 0 } else { ideal_order(g) })
                .collect(),
        );
        let weak_x: Gens = local.iter().map(|g| weak_transform(g, Chart::X)).collect();
        let weak_y: Gens = local.iter().map(|g| weak_transform(g, Chart::Y)).collect();
        let restrictions: Vec<UniPoly> = weak_x.iter().map(|g| restriction_gcd(&field, g)).collect();
        let mut located: Vec<Scalar> = Vec::new();
        for u in &restrictions {
            for c in findable_roots(&field, u)? {
                if !located.contains(&c) {
                    located.push(c);
                }
            }
        }
        located.sort();
        match unlocated_points(&field, i, &weak_x, &restrictions, &located) {
            Ok(found) => self.curves.extend(found),
            Err(failing) => {
                if !field.is_finite() {
                    return Err(Stop::Fail(Error::Uncertified(
                        "centers outside the coefficient field of a characteristic-zero input".into(),
                    )));
                }
                let prod = failing
                    .iter()
                    .fold(vec![field.one()], |acc, r| univariate::mul(&field, &acc, r));
                let d = univariate::splitting_degree(&field, &prod, 64).unwrap_or(65);
                return Err(Stop::Extend(d));
            }
        }
        let node_frame = self.frame(i);
        for c in located {
            let center = [field.zero(), c.clone()];
            let frame = Frame {
                x_axis: Some(i),
                y_axis: if field.is_zero(&c) { node_frame.y_axis } else { None },
            };
            let at = translate_all(&weak_x, &center);
            self.visit(i, Chart::X, center, at, frame)?;
        }
        if some_ideal_vanishes(&field, &weak_y) {
            let frame = Frame {
                x_axis: node_frame.x_axis,
                y_axis: Some(i),
            };
            self.visit(i, Chart::Y, [field.zero(), field.zero()], weak_y, frame)?;
        }
        Ok(())
    }
}

fn search(m: &MultiIdeal, force_root: bool, opts: ResolveOptions) -> std::result::Result<Search, Stop> {
    let field = m.field().clone();
    let gens = m.generators();
    let mut s = Search {
        tree: BlowupTree::new(&field),
        field: field.clone(),
        orders: Vec::new(),
        curves: Vec::new(),
        opts,
    };
    if !force_root {
        if let Some(found) = snc_components(&gens, Frame::default()) {
            record(&mut s.curves, found, Frame::default());
            return Ok(s);
        }
    }
    let origin = [field.zero(), field.zero()];
    s.blow_up(None, Chart::X, origin, gens)?;
    Ok(s)
}

fn resolve(m: &MultiIdeal, force_root: bool, opts: ResolveOptions) -> Result<Resolution> {
    let mut field = m.field().clone();
    let mut embedding = Embedding::identity(&field);
    loop {
        let current = if field == *m.field() {
            m.clone()
        } else {
            m.map_coeffs(&field, |c| embedding.map(c))
        };
        match search(&current, force_root, opts) {
            Ok(s) => {
                return Ok(Resolution {
                    field,
                    embedding,
                    ideal: current,
                    tree: s.tree,
                    orders: s.orders,
                    curves: s.curves,
                })
            }
            Err(Stop::Fail(e)) => return Err(e),
            Err(Stop::Extend(d)) => {
                let (bigger, step) = extend_field(&field, d, opts.ext_cap)?;
                embedding = embedding.then(&step);
                field = bigger;
            }
        }
    }
}

/// Log resolution of a multi-ideal over the origin. The origin itself is
/// always blown up, so at least one divisor over it exists.
pub fn log_resolve(m: &MultiIdeal, opts: ResolveOptions) -> Result<Resolution> {
    resolve(m, true, opts)
}

/// Embedded resolution of the curve `f = 0` at the origin.
pub fn embedded_resolve(f: &Poly, opts: ResolveOptions) -> Result<Resolution> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.field().is_zero(&f.constant_term()) {
        return Err(Error::InvalidInput(format!("{f} does not vanish at the origin")));
    }
    let m = MultiIdeal::principal(f, BigRational::one())?;
    resolve(&m, false, opts)
}

/// Follows a multi-ideal through a prescribed tree and certifies that the
/// last model is a log resolution of it over the algebraic closure.
pub fn follow(tree: &BlowupTree, m: &MultiIdeal) -> Result<Resolution> {
    let field = m.field().clone();
    if tree.field() != &field {
        return Err(Error::FieldMismatch("tree and ideal live over different fields".into()));
    }
    let uncertified = |what: String| Error::Uncertified(what);
    let gens = m.generators();
    let mut curves = Vec::new();
    let mut orders = Vec::new();
    if tree.is_empty() {
        match snc_components(&gens, Frame::default()) {
            Some(found) => record(&mut curves, found, Frame::default()),
            None => return Err(uncertified("the origin is not a normal crossings point".into())),
        }
    }
    let mut locals: Vec<Gens> = Vec::with_capacity(tree.len());
    let mut weaks: Vec<(Gens, Gens)> = Vec::with_capacity(tree.len());
    for (i, node) in tree.nodes().iter().enumerate() {
        let local = match node.parent {
            None => gens.clone(),
            Some(j) => {
                let w = match node.chart.unwrap() {
                    Chart::X => &weaks[j].0,
                    Chart::Y => &weaks[j].1,
                };
                translate_all(w, &node.center)
            }
        };
        orders.push(
            local
                .iter()
                .map(|g| if is_unit_ideal(&field, g) { 0 } else { ideal_order(g) })
                .collect::<Vec<u32>>(),
        );
        let weak_x: Gens = local.iter().map(|g| weak_transform(g, Chart::X)).collect();
        let weak_y: Gens = local.iter().map(|g| weak_transform(g, Chart::Y)).collect();
        let restrictions: Vec<UniPoly> = weak_x.iter().map(|g| restriction_gcd(&field, g)).collect();
        let child_x: Vec<Scalar> = tree
            .children(i)
            .filter(|(_, c)| c.chart == Some(Chart::X))
            .map(|(_, c)| c.center[1].clone())
            .collect();
        let child_y = tree.children(i).any(|(_, c)| c.chart == Some(Chart::Y));
        let mut located: Vec<Scalar> = vec![field.zero()];
        for u in &restrictions {
            for c in findable_roots(&field, u)? {
                if !located.contains(&c) {
                    located.push(c);
                }
            }
        }
        let node_frame = Frame {
            x_axis: node.x_axis,
            y_axis: node.y_axis,
        };
        for c in &located {
            if child_x.contains(c) {
                continue;
            }
            let center = [field.zero(), c.clone()];
            let at = translate_all(&weak_x, &center);
            if !some_ideal_vanishes(&field, &at) {
                continue;
            }
            let frame = Frame {
                x_axis: Some(i),
                y_axis: if field.is_zero(c) { node_frame.y_axis } else { None },
            };
            match snc_components(&at, frame) {
                Some(found) => record(&mut curves, found, frame),
                None => {
                    return Err(uncertified(format!(
                        "point (0, {}) in chart X over E{} is not normal crossings",
                        field.format(c),
                        i + 1
                    )))
                }
            }
        }
        let mut all_located = located.clone();
        all_located.extend(child_x.iter().cloned());
        match unlocated_points(&field, i, &weak_x, &restrictions, &all_located) {
            Ok(found) => curves.extend(found),
            Err(_) => {
                return Err(uncertified(format!(
                    "points of E{} outside the field could not be shown to be normal crossings",
                    i + 1
                )))
            }
        }
        if !child_y && some_ideal_vanishes(&field, &weak_y) {
            let frame = Frame {
                x_axis: node_frame.x_axis,
                y_axis: Some(i),
            };
            match snc_components(&weak_y, frame) {
                Some(found) => record(&mut curves, found, frame),
                None => {
                    return Err(uncertified(format!(
                        "origin of chart Y over E{} is not normal crossings",
                        i + 1
                    )))
                }
            }
        }
        locals.push(local);
        weaks.push((weak_x, weak_y));
    }
    Ok(Resolution {
        field: field.clone(),
        embedding: Embedding::identity(&field),
        ideal: m.clone(),
        tree: tree.clone(),
        orders,
        curves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> BigRational {
        BigRational::one()
    }

    #[test]
    fn cusp_over_small_primes() {
        for p in [2, 3, 5, 7] {
            let f = Field::prime(p).unwrap();
            let cusp = Poly::parse("y^2 - x^3", &f).unwrap();
            let r = embedded_resolve(&cusp, ResolveOptions::default()).unwrap();
            assert_eq!(r.tree.len(), 3, "p = {p}");
            assert_eq!(r.b_vector(0), vec![2, 1, 1]);
            assert_eq!(r.tree.k_vector(), vec![1, 2, 4]);
            assert_eq!(r.v_vector(0), vec![2, 3, 6]);
            assert_eq!(r.curves.len(), 1);
            assert_eq!(r.curves[0].meets, vec![2]);
        }
    }

    #[test]
    fn characteristic_two_cusp() {
        let f2 = Field::prime(2).unwrap();
        let f = Poly::parse("y^2 + x^2 + x^3", &f2).unwrap();
        let r = embedded_resolve(&f, ResolveOptions::default()).unwrap();
        assert_eq!(r.b_vector(0), vec![2, 1, 1]);
        assert_eq!(r.tree.node(1).center[1], f2.one());
        assert_eq!(r.v_vector(0), vec![2, 3, 6]);
    }

    #[test]
    fn smooth_curve_needs_nothing() {
        let f5 = Field::prime(5).unwrap();
        let r = embedded_resolve(&Poly::parse("y - x^2", &f5).unwrap(), ResolveOptions::default()).unwrap();
        assert!(r.tree.is_empty());
        assert_eq!(r.curves.len(), 1);
    }

    #[test]
    fn monomial_ideals() {
        let f5 = Field::prime(5).unwrap();
        let m = MultiIdeal::parse(&f5, &[(vec!["x", "y"], one())]).unwrap();
        let r = log_resolve(&m, ResolveOptions::default()).unwrap();
        assert_eq!(r.tree.len(), 1);
        assert_eq!(r.v_vector(0), vec![1]);
        let m = MultiIdeal::parse(&f5, &[(vec!["x^2", "y^3"], one())]).unwrap();
        let r = log_resolve(&m, ResolveOptions::default()).unwrap();
        assert_eq!(r.v_vector(0), vec![2, 3, 6]);
        assert!(r.curves.is_empty());
        let m = MultiIdeal::parse(&f5, &[(vec!["x*y"], one())]).unwrap();
        let r = log_resolve(&m, ResolveOptions::default()).unwrap();
        assert_eq!(r.tree.len(), 1);
        assert_eq!(r.curves.len(), 2);
        let m = MultiIdeal::parse(&f5, &[(vec!["1"], one())]).unwrap();
        let r = log_resolve(&m, ResolveOptions::default()).unwrap();
        assert_eq!(r.tree.len(), 1);
        assert_eq!(r.v_vector(0), vec![0]);
    }

    #[test]
    fn extension_is_found_when_tangents_are_conjugate() {
        // x^2 + x*y + y^2 has its two tangents defined over GF(4); the node
        // is resolved after one blow-up without locating them
        let f2 = Field::prime(2).unwrap();
        let f = Poly::parse("x^2 + x*y + y^2 + x^3", &f2).unwrap();
        let r = embedded_resolve(&f, ResolveOptions::default()).unwrap();
        assert_eq!(r.field, f2);
        assert_eq!(r.tree.len(), 1);
        assert_eq!(r.curves[0].count, 2);
        // a tacnode with conjugate tangent directions needs the extension
        let g = Poly::parse("(x^2 + x*y + y^2)^2 + x^5", &f2).unwrap();
        let r = embedded_resolve(&g, ResolveOptions::default()).unwrap();
        assert_eq!(r.field.degree(), 2);
        let tight = ResolveOptions { ext_cap: 1, ..ResolveOptions::default() };
        assert!(matches!(embedded_resolve(&g, tight), Err(Error::ExtensionDegreeCapExceeded { .. })));
    }

    #[test]
    fn cap_is_reported() {
        let f3 = Field::prime(3).unwrap();
        let f = Poly::parse("y^2 - x^11", &f3).unwrap();
        let tight = ResolveOptions { blowup_cap: 3, ..ResolveOptions::default() };
        assert_eq!(embedded_resolve(&f, tight).unwrap_err(), Error::IterationCapExceeded(3));
    }

    #[test]
    fn following_a_tree_over_the_rationals() {
        let f5 = Field::prime(5).unwrap();
        let cusp = Poly::parse("y^2 - x^3", &f5).unwrap();
        let r = embedded_resolve(&cusp, ResolveOptions::default()).unwrap();
        let q = Field::rational();
        let lifted = r.tree.map_centers(&q, |_| q.zero()).unwrap();
        let m = MultiIdeal::principal(&Poly::parse("y^2 - x^3", &q).unwrap(), one()).unwrap();
        let fr = follow(&lifted, &m).unwrap();
        assert_eq!(fr.b_vector(0), vec![2, 1, 1]);
        // the same tree does not resolve a higher cusp
        let m = MultiIdeal::principal(&Poly::parse("y^2 - x^5", &q).unwrap(), one()).unwrap();
        assert!(matches!(follow(&lifted, &m), Err(Error::Uncertified(_))));
    }

    #[test]
    fn resolution_over_the_rationals() {
        let q = Field::rational();
        let f = Poly::parse("(x - y)^2 + x^3", &q).unwrap();
        let r = embedded_resolve(&f, ResolveOptions::default()).unwrap();
        assert_eq!(r.b_vector(0), vec![2, 1, 1]);
        let node = Poly::parse("y^2 + x^2 + x^3", &q).unwrap();
        let r = embedded_resolve(&node, ResolveOptions::default()).unwrap();
        assert_eq!(r.b_vector(0), vec![2]);
    }
}
