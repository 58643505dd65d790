//! Lifting resolutions, polynomials and multi-ideals from a finite field to
//! characteristic zero so that every divisorial valuation is preserved.
//!
//! Centers lift coordinate-wise, so zero coordinates stay zero and the
//! incidence of the tree is unchanged. A polynomial is lifted as
//! `naive(f) + p g`, where `g` solves the linear conditions
//! `v_{E_i}(naive(f) + p g) >= v_{E_i}(f)`.

use crate::blowup::BlowupTree;
use crate::error::{Error, Result};
use crate::ideal::MultiIdeal;
use crate::invariants::{DivisorTable, EquisingularityType, InvariantReport};
use crate::linalg;
use crate::polyring::{Monomial, Poly};
use crate::resolution::{self, Resolution, ResolveOptions};
use crate::scalars::{lift_field, Field, ReductionMap, Scalar};

/// Source field, its characteristic-zero lift and the reduction between
/// them.
#[derive(Clone, Debug)]
pub struct LiftContext {
    pub source: Field,
    pub lifted: Field,
    pub phi: ReductionMap,
    /// How far above `deg f` the search for a lift may go; `None` means
    /// twice the number of blow-ups.
    pub degree_slack: Option<usize>,
}

impl LiftContext {
    pub fn new(source: &Field) -> Result<LiftContext> {
        let (lifted, phi) = lift_field(source)?;
        Ok(LiftContext {
            source: source.clone(),
            lifted,
            phi,
            degree_slack: None,
        })
    }

    pub fn with_degree_slack(mut self, slack: Option<usize>) -> LiftContext {
        self.degree_slack = slack;
        self
    }

    /// Coefficient-wise lift; zero coefficients stay zero.
    pub fn naive(&self, f: &Poly) -> Poly {
        f.map_coeffs(&self.lifted, |c| self.phi.naive_lift(c))
    }

    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        f.try_map_coeffs(&self.source, |c| self.phi.reduce(c))
    }

    fn check_source(&self, field: &Field) -> Result<()> {
        if field != &self.source {
            return Err(Error::FieldMismatch(format!(
                "expected data over {}, got {}",
                self.source.name(),
                field.name()
            )));
        }
        Ok(())
    }
}

/// The tree with every center lifted. Incidence and charts are rechecked
/// node by node.
pub fn lift_tree(tree: &BlowupTree, ctx: &LiftContext) -> Result<BlowupTree> {
    ctx.check_source(tree.field())?;
    let lifted = tree.map_centers(&ctx.lifted, |c| ctx.phi.naive_lift(c))?;
    if lifted.k_vector() != tree.k_vector() {
        return Err(Error::Verification("k-vector changed under lifting".into()));
    }
    Ok(lifted)
}

/// Linear conditions on the coefficients of a polynomial of degree at most
/// `degree`: row `r` is a functional that must vanish.
#[derive(Clone, Debug)]
pub struct Constraints {
    /// Coefficient positions, in the canonical graded order.
    pub columns: Vec<Monomial>,
    pub rows: Vec<Vec<Scalar>>,
    /// Node each row comes from.
    pub nodes: Vec<usize>,
}

impl Constraints {
    pub fn apply(&self, f: &Poly) -> Vec<Scalar> {
        let field = f.field();
        let coeffs: Vec<Scalar> = self.columns.iter().map(|m| f.coeff(m.exps())).collect();
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&coeffs)
                    .fold(field.zero(), |acc, (a, c)| field.add(&acc, &field.mul(a, c)))
            })
            .collect()
    }
}

fn monomials_up_to(degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=degree {
        for b in 0..=d {
            out.push(Monomial::new(&[d - b, b]));
        }
    }
    out
}

/// Conditions `v_{E_i} >= targets[i]` for polynomials of degree at most
/// `degree`: every coefficient of degree below `targets[i]` of the pullback
/// to `P_i` must vanish.
pub fn valuation_constraints(tree: &BlowupTree, targets: &[u32], degree: u32) -> Result<Constraints> {
    if targets.len() != tree.len() {
        return Err(Error::LengthMismatch {
            expected: tree.len(),
            got: targets.len(),
        });
    }
    let field = tree.field();
    let columns = monomials_up_to(degree);
    let mut rows = Vec::new();
    let mut nodes = Vec::new();
    for (i, &t) in targets.iter().enumerate() {
        if t == 0 {
            continue;
        }
        let bound = t - 1;
        let map = tree.center_map(i);
        let powers = |p: &Poly| {
            let mut v = vec![Poly::constant(field, 2, field.one())];
            for k in 0..degree as usize {
                v.push(v[k].mul_trunc(p, Some(bound)));
            }
            v
        };
        let (px, py) = (powers(&map[0]), powers(&map[1]));
        let pulled: Vec<Poly> = columns
            .iter()
            .map(|m| {
                let e = m.exps();
                px[e[0] as usize].mul_trunc(&py[e[1] as usize], Some(bound))
            })
            .collect();
        for row_mono in monomials_up_to(bound) {
            let row: Vec<Scalar> = pulled.iter().map(|p| p.coeff(row_mono.exps())).collect();
            if row.iter().any(|c| !field.is_zero(c)) {
                rows.push(row);
                nodes.push(i);
            }
        }
    }
    Ok(Constraints { columns, rows, nodes })
}

/// A lifted polynomial and the data used to find it.
#[derive(Clone, Debug)]
pub struct LiftedPolynomial {
    pub poly: Poly,
    /// Degree bound at which a p-integral solution was found.
    pub degree: u32,
    /// `v_{E_i}` of the source, equal to that of the lift.
    pub valuations: Vec<u32>,
}

/// Lifts `f` so that `v_{E_i}` is preserved for every divisor of `tree`.
pub fn lift_polynomial(f: &Poly, tree: &BlowupTree, ctx: &LiftContext) -> Result<LiftedPolynomial> {
    ctx.check_source(f.field())?;
    let lifted_tree = lift_tree(tree, ctx)?;
    lift_polynomial_on(f, tree, &lifted_tree, ctx)
}

fn lift_polynomial_on(
    f: &Poly,
    tree: &BlowupTree,
    lifted_tree: &BlowupTree,
    ctx: &LiftContext,
) -> Result<LiftedPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let targets: Vec<u32> = (0..tree.len())
        .map(|i| tree.divisorial_valuation(i, f))
        .collect::<Result<_>>()?;
    let k = &ctx.lifted;
    let naive = ctx.naive(f);
    let p = k.from_i64(ctx.phi.prime() as i64);
    let p_inv = k.inv(&p).unwrap();
    let start = f.total_degree().unwrap();
    let slack = ctx.degree_slack.unwrap_or(2 * tree.len()) as u32;
    let valuation = |s: &Scalar| ctx.phi.valuation(s).unwrap_or(i64::MAX);
    for degree in start..=start + slack {
        let system = valuation_constraints(lifted_tree, &targets, degree)?;
        let rhs: Vec<Scalar> = system
            .apply(&naive)
            .iter()
            .map(|c| k.neg(&k.mul(c, &p_inv)))
            .collect();
        let Some(g) = linalg::solve_min_valuation(k, &system.rows, &rhs, valuation) else {
            continue;
        };
        if !g.iter().all(|c| ctx.phi.is_p_integral(c)) {
            continue;
        }
        let correction = Poly::from_terms(
            k,
            2,
            system
                .columns
                .iter()
                .zip(&g)
                .map(|(m, c)| (m.exps().to_vec(), k.mul(&p, c))),
        );
        let poly = naive.add(&correction);
        if &ctx.reduce(&poly)? != f {
            return Err(Error::Verification("lift does not reduce to the input".into()));
        }
        for (i, &t) in targets.iter().enumerate() {
            let got = lifted_tree.divisorial_valuation(i, &poly)?;
            if got != t {
                return Err(Error::Verification(format!(
                    "v(E{}) of the lift is {got}, expected {t}",
                    i + 1
                )));
            }
        }
        return Ok(LiftedPolynomial {
            poly,
            degree,
            valuations: targets,
        });
    }
    Err(Error::DegreeCapExceeded {
        cap: (start + slack) as usize,
    })
}

/// Outcome of each equality the lift is supposed to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checks {
    /// `reduce(f~) = f` for every generator.
    pub reduction: bool,
    pub p_integral: bool,
    /// `reduce(P~_i) = P_i` for every center.
    pub centers: bool,
    pub incidence: bool,
    pub k_equal: Vec<bool>,
    pub v_equal: Vec<bool>,
    pub a_equal: Vec<bool>,
    /// `lct` and `mld` agree on both sides.
    pub invariants_equal: bool,
    pub campillo: Option<bool>,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.reduction
            && self.p_integral
            && self.centers
            && self.incidence
            && self.k_equal.iter().all(|&b| b)
            && self.v_equal.iter().all(|&b| b)
            && self.a_equal.iter().all(|&b| b)
            && self.invariants_equal
            && self.campillo.unwrap_or(true)
    }
}

/// Equisingularity types compared for a Campillo model.
#[derive(Clone, Debug)]
pub struct CampilloComparison {
    pub source: EquisingularityType,
    /// Type of the lift along the lifted tree.
    pub lifted: EquisingularityType,
    /// Type of the lift from an independent resolution, when one could be
    /// computed over the lifted field.
    pub lifted_independent: Option<EquisingularityType>,
    pub naive: Poly,
    /// Type of the coefficient-wise lift, when computable.
    pub naive_type: Option<EquisingularityType>,
}

impl CampilloComparison {
    pub fn types_equal(&self) -> bool {
        self.source == self.lifted && self.lifted_independent.as_ref().is_none_or(|t| *t == self.source)
    }

    /// Whether the naive lift is known to have a different type.
    pub fn naive_differs(&self) -> bool {
        self.naive_type.as_ref().is_some_and(|t| *t != self.source)
    }
}

/// A lifted resolution with both sides of every comparison.
#[derive(Clone, Debug)]
pub struct LiftArtifact {
    pub context: LiftContext,
    pub source: Resolution,
    pub source_table: DivisorTable,
    pub source_report: InvariantReport,
    pub lifted_tree: BlowupTree,
    pub lifted: MultiIdeal,
    /// Degree bound used per ideal and generator.
    pub degrees: Vec<Vec<u32>>,
    pub lifted_table: DivisorTable,
    pub lifted_report: InvariantReport,
    pub checks: Checks,
    pub campillo: Option<CampilloComparison>,
}

/// Lifts every generator of `m` along `tree` and compares the log
/// discrepancy tables of both sides.
pub fn lift_multiideal(m: &MultiIdeal, tree: &BlowupTree, ctx: &LiftContext) -> Result<LiftArtifact> {
    ctx.check_source(m.field())?;
    let source = resolution::follow(tree, m)?;
    lift_resolution(source, ctx)
}

fn lift_resolution(source: Resolution, ctx: &LiftContext) -> Result<LiftArtifact> {
    let tree = &source.tree;
    let lifted_tree = lift_tree(tree, ctx)?;
    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    for ideal in source.ideal.ideals() {
        let mut gens = Vec::new();
        let mut ds = Vec::new();
        for g in &ideal.generators {
            let l = lift_polynomial_on(g, tree, &lifted_tree, ctx)?;
            gens.push(l.poly);
            ds.push(l.degree);
        }
        generators.push(gens);
        degrees.push(ds);
    }
    let lifted = source.ideal.with_generators(&ctx.lifted, generators)?;
    let lifted_res = resolution::follow(&lifted_tree, &lifted)?;

    let source_table = DivisorTable::from_resolution(&source);
    let lifted_table = DivisorTable::from_resolution(&lifted_res);
    let source_report = InvariantReport::from_table(&source_table);
    let lifted_report = InvariantReport::from_table(&lifted_table);

    let reduction = source
        .ideal
        .generators()
        .iter()
        .flatten()
        .zip(lifted.generators().iter().flatten())
        .all(|(f, l)| ctx.reduce(l).as_ref() == Ok(f));
    let p_integral = lifted
        .generators()
        .iter()
        .flatten()
        .all(|g| g.terms().all(|(_, c)| ctx.phi.is_p_integral(c)));
    let centers = tree.nodes().iter().zip(lifted_tree.nodes()).all(|(s, l)| {
        l.center
            .iter()
            .zip(&s.center)
            .all(|(lc, sc)| ctx.phi.reduce(lc).as_ref() == Ok(sc))
    });
    let incidence = tree
        .nodes()
        .iter()
        .zip(lifted_tree.nodes())
        .all(|(s, l)| s.incidence() == l.incidence());
    let pairs = || source_table.rows.iter().zip(&lifted_table.rows);
    let checks = Checks {
        reduction,
        p_integral,
        centers,
        incidence,
        k_equal: pairs().map(|(s, l)| s.k == l.k).collect(),
        v_equal: pairs().map(|(s, l)| s.v == l.v).collect(),
        a_equal: pairs().map(|(s, l)| s.a == l.a).collect(),
        invariants_equal: source_report.lct == lifted_report.lct && source_report.mld == lifted_report.mld,
        campillo: None,
    };
    Ok(LiftArtifact {
        context: ctx.clone(),
        source,
        source_table,
        source_report,
        lifted_tree,
        lifted,
        degrees,
        lifted_table,
        lifted_report,
        checks,
        campillo: None,
    })
}

/// Resolves `m` over its field (extending it if the resolution needs to)
/// and lifts the result.
pub fn lift(m: &MultiIdeal, opts: ResolveOptions, degree_slack: Option<usize>) -> Result<LiftArtifact> {
    if !m.field().is_finite() {
        return Err(Error::CharacteristicZeroInput);
    }
    let source = resolution::log_resolve(m, opts)?;
    let ctx = LiftContext::new(&source.field)?.with_degree_slack(degree_slack);
    lift_resolution(source, &ctx)
}

/// A characteristic-zero curve with the equisingularity type of `f`.
pub fn campillo(f: &Poly, opts: ResolveOptions, degree_slack: Option<usize>) -> Result<LiftArtifact> {
    if !f.field().is_finite() {
        return Err(Error::CharacteristicZeroInput);
    }
    let source = resolution::embedded_resolve(f, opts)?;
    let ctx = LiftContext::new(&source.field)?.with_degree_slack(degree_slack);
    let source_type = EquisingularityType::of_resolution(&source, 0);
    let mut artifact = lift_resolution(source, &ctx)?;
    let lifted_f = artifact.lifted.generators()[0][0].clone();
    let lifted_res = resolution::follow(&artifact.lifted_tree, &artifact.lifted)?;
    let lifted_type = EquisingularityType::of_resolution(&lifted_res, 0);
    let lifted_independent = resolution::embedded_resolve(&lifted_f, opts)
        .ok()
        .map(|r| EquisingularityType::of_resolution(&r, 0));
    let naive = ctx.naive(&artifact.source.ideal.generators()[0][0]);
    let naive_type = resolution::embedded_resolve(&naive, opts)
        .ok()
        .map(|r| EquisingularityType::of_resolution(&r, 0));
    let comparison = CampilloComparison {
        source: source_type,
        lifted: lifted_type,
        lifted_independent,
        naive,
        naive_type,
    };
    artifact.checks.campillo = Some(comparison.types_equal());
    artifact.campillo = Some(comparison);
    Ok(artifact)
}

/// Invariants of the coefficient-wise lift of `m`, computed by resolving it
/// afresh over the lifted field.
pub fn naive_lift_invariants(m: &MultiIdeal, opts: ResolveOptions) -> Result<(MultiIdeal, InvariantReport)> {
    let ctx = LiftContext::new(m.field())?;
    let naive = m.map_coeffs(&ctx.lifted, |c| ctx.phi.naive_lift(c));
    let (_, _, report) = crate::invariants::invariants(&naive, opts)?;
    Ok((naive, report))
}

/// Second center for [`naive_order_lift_nd`]: a point of `E_1` in the chart
/// where `x_chart` cuts out `E_1`, given by its coordinates there (the
/// `chart` coordinate is 0).
#[derive(Clone, Debug)]
pub struct SecondCenter {
    pub chart: usize,
    pub point: Vec<Scalar>,
}

/// Result of [`naive_order_lift_nd`].
#[derive(Clone, Debug)]
pub struct NdLift {
    pub poly: Poly,
    /// `v_{E_1}` and, for two levels, `v_{E_2}` of the input.
    pub source: Vec<u32>,
    /// The same for the lift.
    pub lifted: Vec<u32>,
}

/// `f(x + c x_chart)` in the other coordinates: moves the second center to
/// the origin of its chart.
fn shear(f: &Poly, chart: usize, c: &[Scalar]) -> Poly {
    let field = f.field();
    let n = f.nvars();
    let subs: Vec<Poly> = (0..n)
        .map(|j| {
            let xj = Poly::var(field, n, j);
            if j == chart {
                xj
            } else {
                xj.add(&Poly::var(field, n, chart).scale(&c[j]))
            }
        })
        .collect();
    f.compose(&subs, None)
}

/// `v_{E_1}` and `v_{E_2}` of `f` when the second center is the origin of
/// the chart of `x_chart` (after shearing).
fn two_level_valuations(f: &Poly, chart: usize) -> Result<Vec<u32>> {
    let m1 = f.order().ok_or(Error::ZeroPolynomial)?;
    let g = f.chart_substitute_var(chart).divide_var_power(chart, m1)?;
    Ok(vec![m1, m1 + g.order().unwrap()])
}

/// Lifts `f` in any number of variables so that `v_{E_1}` (one level) or
/// `v_{E_1}` and `v_{E_2}` (two levels, with a rational second center) are
/// preserved.
pub fn naive_order_lift_nd(f: &Poly, ctx: &LiftContext, second: Option<&SecondCenter>) -> Result<NdLift> {
    ctx.check_source(f.field())?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let Some(center) = second else {
        let poly = ctx.naive(f);
        return Ok(NdLift {
            source: vec![f.order().unwrap()],
            lifted: vec![poly.order().unwrap()],
            poly,
        });
    };
    let n = f.nvars();
    if center.chart >= n || center.point.len() != n {
        return Err(Error::InvalidInput(format!("second center needs {n} coordinates and a chart below {n}")));
    }
    if center.point.iter().any(|c| !ctx.source.contains(c)) {
        return Err(Error::NonRationalSecondCenter);
    }
    if !ctx.source.is_zero(&center.point[center.chart]) {
        return Err(Error::CenterNotOverOrigin("second center must lie on E_1".into()));
    }
    let h = shear(f, center.chart, &center.point);
    let h_lift = ctx.naive(&h);
    let c_lift: Vec<Scalar> = center
        .point
        .iter()
        .map(|c| ctx.lifted.neg(&ctx.phi.naive_lift(c)))
        .collect();
    let poly = shear(&h_lift, center.chart, &c_lift);
    Ok(NdLift {
        source: two_level_valuations(&h, center.chart)?,
        lifted: two_level_valuations(&h_lift, center.chart)?,
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Chart;
    use num_rational::BigRational;

    fn one() -> BigRational {
        BigRational::from_integer(1.into())
    }

    fn cusp_tree(f: &Field, c: Scalar) -> BlowupTree {
        let z = f.zero();
        BlowupTree::new(f)
            .blow_up(None, Chart::X, [z.clone(), z.clone()])
            .unwrap()
            .blow_up(Some(0), Chart::X, [z.clone(), c])
            .unwrap()
            .blow_up(Some(1), Chart::Y, [z.clone(), z])
            .unwrap()
    }

    #[test]
    fn lifted_trees_keep_their_shape() {
        let f5 = Field::prime(5).unwrap();
        let ctx = LiftContext::new(&f5).unwrap();
        let tree = cusp_tree(&f5, f5.zero());
        let lifted = lift_tree(&tree, &ctx).unwrap();
        assert_eq!(lifted.proximity(), tree.proximity());
        assert_eq!(lifted.k_vector(), vec![1, 2, 4]);

        let f2 = Field::prime(2).unwrap();
        let ctx = LiftContext::new(&f2).unwrap();
        let lifted = lift_tree(&cusp_tree(&f2, f2.one()), &ctx).unwrap();
        assert_eq!(lifted.node(1).center, [ctx.lifted.zero(), ctx.lifted.one()]);

        let f4 = Field::extension(2, &[1, 1, 1]).unwrap();
        let ctx = LiftContext::new(&f4).unwrap();
        let t = f4.generator().unwrap();
        let lifted = lift_tree(&cusp_tree(&f4, t), &ctx).unwrap();
        assert_eq!(lifted.node(1).center[1], ctx.lifted.generator().unwrap());
    }

    #[test]
    fn constraint_systems() {
        let q = Field::rational();
        let single = BlowupTree::new(&q)
            .blow_up(None, Chart::X, [q.zero(), q.zero()])
            .unwrap();
        let c = valuation_constraints(&single, &[2], 2).unwrap();
        assert_eq!(c.rows.len(), 3);
        assert!(valuation_constraints(&single, &[0], 2).unwrap().rows.is_empty());

        // at the node over (0, 1) the quadratic part must vanish at (1, 1)
        let tree = cusp_tree(&q, q.one());
        let c = valuation_constraints(&tree, &[0, 3, 0], 2).unwrap();
        let quadratic: Vec<&Vec<Scalar>> = c.rows.iter().filter(|r| r[..3].iter().all(|x| q.is_zero(x))).collect();
        assert!(quadratic.iter().any(|r| r[3..] == [q.one(), q.one(), q.one()]));
    }

    #[test]
    fn wild_cusp_in_characteristic_two() {
        let f2 = Field::prime(2).unwrap();
        let ctx = LiftContext::new(&f2).unwrap();
        let f = Poly::parse("y^2 + x^2 + x^3", &f2).unwrap();
        let res = resolution::embedded_resolve(&f, ResolveOptions::default()).unwrap();
        assert_eq!(res.b_vector(0), vec![2, 1, 1]);
        let l = lift_polynomial(&f, &res.tree, &ctx).unwrap();
        assert_eq!(l.poly.to_string(), "x^2 - 2*x*y + y^2 + x^3");
        assert_eq!(l.valuations, vec![2, 3, 6]);

        let a = campillo(&f, ResolveOptions::default(), None).unwrap();
        assert!(a.checks.all(), "{:?}", a.checks);
        let cmp = a.campillo.unwrap();
        assert_eq!(cmp.lifted.multiplicities(), vec![2, 1, 1]);
        assert!(cmp.naive_differs());
        assert_eq!(cmp.naive_type.unwrap().multiplicities(), vec![2]);
    }

    #[test]
    fn naive_lifts_that_already_work() {
        let f5 = Field::prime(5).unwrap();
        let ctx = LiftContext::new(&f5).unwrap();
        let f = Poly::parse("y^2 - x^3", &f5).unwrap();
        let tree = cusp_tree(&f5, f5.zero());
        assert_eq!(lift_polynomial(&f, &tree, &ctx).unwrap().poly.to_string(), "y^2 + 4*x^3");
        let g = Poly::parse("y - x", &f5).unwrap();
        let l = lift_polynomial(&g, &BlowupTree::new(&f5), &ctx).unwrap();
        assert_eq!(l.poly, ctx.naive(&g));
    }

    #[test]
    fn multi_ideal_lifts() {
        let f2 = Field::prime(2).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let m = MultiIdeal::parse(&f2, &[(vec!["y^2 + x^2 + x^3"], half)]).unwrap();
        let a = lift(&m, ResolveOptions::default(), None).unwrap();
        assert!(a.checks.all());
        assert_eq!(a.source_table.rows, a.lifted_table.rows);

        let f5 = Field::prime(5).unwrap();
        let m = MultiIdeal::parse(&f5, &[(vec!["x", "y"], one())]).unwrap();
        let a = lift(&m, ResolveOptions::default(), None).unwrap();
        assert_eq!(a.lifted.generators()[0][0].to_string(), "x");
        assert_eq!(a.lifted_table.rows[0].a, one());
    }

    #[test]
    fn reducible_campillo_model() {
        let f5 = Field::prime(5).unwrap();
        let f = Poly::parse("(y^2 - x^3)*(y - x)", &f5).unwrap();
        let a = campillo(&f, ResolveOptions::default(), None).unwrap();
        assert!(a.checks.all(), "{:?}", a.checks);
    }

    #[test]
    fn characteristic_zero_input_is_rejected() {
        let q = Field::rational();
        let m = MultiIdeal::parse(&q, &[(vec!["x"], one())]).unwrap();
        assert_eq!(lift(&m, ResolveOptions::default(), None).unwrap_err(), Error::CharacteristicZeroInput);
    }

    #[test]
    fn order_lifts_in_three_variables() {
        let f5 = Field::prime(5).unwrap();
        let ctx = LiftContext::new(&f5).unwrap();
        let f = Poly::parse_n("x1*x2 + x3^3", &f5, 3).unwrap();
        let l = naive_order_lift_nd(&f, &ctx, None).unwrap();
        assert_eq!((l.source, l.lifted), (vec![2], vec![2]));

        let f2 = Field::prime(2).unwrap();
        let ctx2 = LiftContext::new(&f2).unwrap();
        let f = Poly::parse_n("x1^2", &f2, 3).unwrap();
        let at_origin = SecondCenter {
            chart: 0,
            point: vec![f2.zero(), f2.zero(), f2.zero()],
        };
        let l = naive_order_lift_nd(&f, &ctx2, Some(&at_origin)).unwrap();
        assert_eq!((l.source, l.lifted), (vec![2, 2], vec![2, 2]));

        // a center away from the origin of the chart
        let f = Poly::parse_n("(x2 - x1)^2 + x1^3 + x3^3", &f5, 3).unwrap();
        let c = SecondCenter {
            chart: 0,
            point: vec![f5.zero(), f5.one(), f5.zero()],
        };
        let l = naive_order_lift_nd(&f, &ctx, Some(&c)).unwrap();
        assert_eq!(l.source, vec![2, 3]);
        assert_eq!(l.lifted, l.source);
        assert_eq!(ctx.reduce(&l.poly).unwrap(), f);

        let f25 = Field::extension(5, &[2, 0, 1]).unwrap();
        let bad = SecondCenter {
            chart: 0,
            point: vec![f25.zero(), f25.generator().unwrap(), f25.zero()],
        };
        assert_eq!(
            naive_order_lift_nd(&f, &ctx, Some(&bad)).unwrap_err(),
            Error::NonRationalSecondCenter
        );
    }
}
