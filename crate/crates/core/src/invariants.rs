//! Log discrepancies, log canonical thresholds and minimal log
//! discrepancies read off a log resolution, and equisingularity types of
//! plane curves.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::blowup::{BlowupTree, DualGraph};
use crate::error::Result;
use crate::ideal::MultiIdeal;
use crate::polyring::Poly;
use crate::resolution::{self, Resolution, ResolveOptions};

/// A rational number or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn from_int(n: i64) -> ExtRational {
        ExtRational::Finite(BigRational::from_integer(BigInt::from(n)))
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => f.write_str("-inf"),
            ExtRational::PosInf => f.write_str("+inf"),
            ExtRational::Finite(r) => write!(f, "{}", rational_string(r)),
        }
    }
}

/// `num/den` with an explicit denominator.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Serialize for ExtRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorRow {
    pub index: usize,
    pub k: i64,
    /// `v_E(a_j)` per ideal.
    pub v: Vec<i64>,
    pub a: BigRational,
    pub z: ExtRational,
}

/// One non-exceptional curve component over the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRow {
    pub mults: Vec<u32>,
    pub meets: Vec<usize>,
    pub count: usize,
    pub a: BigRational,
    pub z: ExtRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorTable {
    pub exponents: Vec<BigRational>,
    pub rows: Vec<DivisorRow>,
    pub curves: Vec<CurveRow>,
    /// Pairs of exceptional divisors meeting on the last model.
    pub edges: Vec<(usize, usize)>,
}

fn weighted(exponents: &[BigRational], values: impl Iterator<Item = i64>) -> BigRational {
    exponents
        .iter()
        .zip(values)
        .map(|(e, v)| e * BigRational::from_integer(BigInt::from(v)))
        .fold(BigRational::zero(), |a, b| a + b)
}

fn z_value(numer: BigRational, denom: BigRational) -> ExtRational {
    if denom.is_zero() {
        ExtRational::PosInf
    } else {
        ExtRational::Finite(numer / denom)
    }
}

impl DivisorTable {
    pub fn from_resolution(res: &Resolution) -> DivisorTable {
        let exponents = res.ideal.exponents();
        let k = res.tree.k_vector();
        let vs: Vec<Vec<i64>> = (0..res.ideal.len()).map(|j| res.v_vector(j)).collect();
        let rows = (0..res.tree.len())
            .map(|i| {
                let v: Vec<i64> = vs.iter().map(|vj| vj[i]).collect();
                let s = weighted(&exponents, v.iter().copied());
                let kp1 = BigRational::from_integer(BigInt::from(k[i] + 1));
                DivisorRow {
                    index: i,
                    k: k[i],
                    v,
                    a: &kp1 - &s,
                    z: z_value(kp1, s),
                }
            })
            .collect();
        let curves = res
            .curves
            .iter()
            .map(|c| {
                let s = weighted(&exponents, c.mults.iter().map(|&m| m as i64));
                CurveRow {
                    mults: c.mults.clone(),
                    meets: c.meets.clone(),
                    count: c.count,
                    a: BigRational::one() - &s,
                    z: z_value(BigRational::one(), s),
                }
            })
            .collect();
        DivisorTable {
            exponents,
            rows,
            curves,
            edges: res.tree.dual_graph().edges,
        }
    }

    /// All components over the origin with their log discrepancies, labeled
    /// `E1, E2, ...` and `C1, C2, ...`.
    pub fn labeled_values(&self) -> Vec<(String, BigRational)> {
        self.rows
            .iter()
            .map(|r| (format!("E{}", r.index + 1), r.a.clone()))
            .chain(
                self.curves
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (format!("C{}", i + 1), c.a.clone())),
            )
            .collect()
    }

    /// Double points of the configuration over the origin, as pairs of
    /// log discrepancies.
    pub fn double_points(&self) -> Vec<(BigRational, BigRational)> {
        let mut out: Vec<(BigRational, BigRational)> = self
            .edges
            .iter()
            .map(|&(i, j)| (self.rows[i].a.clone(), self.rows[j].a.clone()))
            .collect();
        for c in &self.curves {
            for &e in &c.meets {
                out.push((self.rows[e].a.clone(), c.a.clone()));
            }
        }
        out
    }
}

/// `lct`, `mld` and the components computing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub lct: ExtRational,
    pub lct_computing: Vec<String>,
    pub mld: ExtRational,
    pub mld_computing: Vec<String>,
    pub log_canonical: bool,
}

pub fn lct_of_table(t: &DivisorTable) -> (ExtRational, Vec<String>) {
    let candidates: Vec<(String, ExtRational)> = t
        .rows
        .iter()
        .map(|r| (format!("E{}", r.index + 1), r.z.clone()))
        .chain(t.curves.iter().enumerate().map(|(i, c)| (format!("C{}", i + 1), c.z.clone())))
        .collect();
    let best = candidates
        .iter()
        .map(|(_, z)| z.clone())
        .min()
        .unwrap_or(ExtRational::PosInf);
    let who = if best == ExtRational::PosInf {
        Vec::new()
    } else {
        candidates
            .into_iter()
            .filter(|(_, z)| *z == best)
            .map(|(l, _)| l)
            .collect()
    };
    (best, who)
}

/// `-inf` if some component over the origin has negative log discrepancy,
/// otherwise the least log discrepancy of an exceptional divisor.
pub fn mld_of_table(t: &DivisorTable) -> (ExtRational, Vec<String>) {
    let values = t.labeled_values();
    let negative: Vec<String> = values
        .iter()
        .filter(|(_, a)| a.is_negative())
        .map(|(l, _)| l.clone())
        .collect();
    if !negative.is_empty() {
        return (ExtRational::NegInf, negative);
    }
    let best = t.rows.iter().map(|r| r.a.clone()).min();
    match best {
        None => (ExtRational::PosInf, Vec::new()),
        Some(b) => {
            let who = t
                .rows
                .iter()
                .filter(|r| r.a == b)
                .map(|r| format!("E{}", r.index + 1))
                .collect();
            (ExtRational::Finite(b), who)
        }
    }
}

impl InvariantReport {
    pub fn from_table(t: &DivisorTable) -> InvariantReport {
        let (lct, lct_computing) = lct_of_table(t);
        let (mld, mld_computing) = mld_of_table(t);
        InvariantReport {
            log_canonical: mld != ExtRational::NegInf,
            lct,
            lct_computing,
            mld,
            mld_computing,
        }
    }
}

/// Log discrepancies of `m` along a tree that resolves it.
pub fn log_discrepancies(tree: &BlowupTree, m: &MultiIdeal) -> Result<DivisorTable> {
    let res = resolution::follow(tree, m)?;
    Ok(DivisorTable::from_resolution(&res))
}

/// Resolves and reports in one step.
pub fn invariants(m: &MultiIdeal, opts: ResolveOptions) -> Result<(Resolution, DivisorTable, InvariantReport)> {
    let res = resolution::log_resolve(m, opts)?;
    let table = DivisorTable::from_resolution(&res);
    let report = InvariantReport::from_table(&table);
    Ok((res, table, report))
}

pub fn lct(m: &MultiIdeal, opts: ResolveOptions) -> Result<ExtRational> {
    Ok(invariants(m, opts)?.2.lct)
}

pub fn mld(m: &MultiIdeal, opts: ResolveOptions) -> Result<ExtRational> {
    Ok(invariants(m, opts)?.2.mld)
}

/// Multiplicity of the strict transform at a center and the exceptional
/// curves through it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Stage {
    pub multiplicity: u32,
    pub through: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquisingularityType {
    pub proximity: Vec<(usize, usize)>,
    pub stages: Vec<Stage>,
    pub dual_graph: DualGraph,
}

impl EquisingularityType {
    /// Type of ideal `j` of a resolution (normally a principal curve).
    pub fn of_resolution(res: &Resolution, j: usize) -> EquisingularityType {
        EquisingularityType {
            proximity: res.tree.proximity_pairs(),
            stages: res
                .tree
                .nodes()
                .iter()
                .zip(&res.orders)
                .map(|(n, o)| Stage {
                    multiplicity: o[j],
                    through: n.incidence(),
                })
                .collect(),
            dual_graph: res.tree.dual_graph(),
        }
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.stages.iter().map(|s| s.multiplicity).collect()
    }
}

pub fn equisingularity_type(f: &Poly, opts: ResolveOptions) -> Result<EquisingularityType> {
    let res = resolution::embedded_resolve(f, opts)?;
    Ok(EquisingularityType::of_resolution(&res, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn fin(n: i64, d: i64) -> ExtRational {
        ExtRational::Finite(r(n, d))
    }

    fn report(field: &Field, gens: &[&str], e: BigRational) -> (DivisorTable, InvariantReport) {
        let m = MultiIdeal::parse(field, &[(gens.to_vec(), e)]).unwrap();
        let (_, t, rep) = invariants(&m, ResolveOptions::default()).unwrap();
        (t, rep)
    }

    #[test]
    fn cusp_table() {
        let f5 = Field::prime(5).unwrap();
        let (t, rep) = report(&f5, &["y^2 - x^3"], r(5, 6));
        let a: Vec<BigRational> = t.rows.iter().map(|row| row.a.clone()).collect();
        assert_eq!(a, vec![r(1, 3), r(1, 2), r(0, 1)]);
        assert_eq!(t.curves[0].a, r(1, 6));
        assert_eq!(rep.mld, fin(0, 1));
        assert_eq!(rep.mld_computing, vec!["E3"]);
        let (_, rep) = report(&f5, &["y^2 - x^3"], r(1, 1));
        assert_eq!(rep.lct, fin(5, 6));
        assert_eq!(rep.lct_computing, vec!["E3"]);
    }

    #[test]
    fn maximal_ideal() {
        let f3 = Field::prime(3).unwrap();
        let (t, rep) = report(&f3, &["x", "y"], r(1, 1));
        assert_eq!(t.rows[0].a, r(1, 1));
        assert_eq!(rep.lct, fin(2, 1));
        assert_eq!(rep.mld, fin(1, 1));
        let (t, rep) = report(&f3, &["x", "y"], r(3, 1));
        assert_eq!(t.rows[0].a, r(-1, 1));
        assert_eq!(rep.mld, ExtRational::NegInf);
        assert!(!rep.log_canonical);
    }

    #[test]
    fn trivial_ideal() {
        let f3 = Field::prime(3).unwrap();
        let (t, rep) = report(&f3, &["1"], r(1, 1));
        assert_eq!(t.rows[0].a, r(2, 1));
        assert_eq!(rep.mld, fin(2, 1));
        assert_eq!(rep.lct, ExtRational::PosInf);
    }

    #[test]
    fn monomial_cusp_ideal() {
        let f7 = Field::prime(7).unwrap();
        let (_, rep) = report(&f7, &["x^2", "y^3"], r(1, 1));
        assert_eq!(rep.lct, fin(5, 6));
    }

    #[test]
    fn types() {
        let f5 = Field::prime(5).unwrap();
        let t = equisingularity_type(&Poly::parse("y^2 - x^3", &f5).unwrap(), ResolveOptions::default()).unwrap();
        assert_eq!(t.proximity, vec![(1, 0), (2, 0), (2, 1)]);
        assert_eq!(t.multiplicities(), vec![2, 1, 1]);
        let f2 = Field::prime(2).unwrap();
        let t2 = equisingularity_type(&Poly::parse("y^2 + x^2 + x^3", &f2).unwrap(), ResolveOptions::default()).unwrap();
        let q = Field::rational();
        let t0 = equisingularity_type(&Poly::parse("(x - y)^2 + x^3", &q).unwrap(), ResolveOptions::default()).unwrap();
        assert_eq!(t2, t0);
        assert_eq!(t2, t);
        let smooth = equisingularity_type(&Poly::parse("y - x", &f5).unwrap(), ResolveOptions::default()).unwrap();
        assert!(smooth.proximity.is_empty() && smooth.stages.is_empty());
    }

    #[test]
    fn lct_rescaling_makes_the_computing_divisor_log_canonical() {
        let f5 = Field::prime(5).unwrap();
        for text in ["y^2 - x^3", "y^3 - x^4", "x*y*(x - y)"] {
            let m = MultiIdeal::parse(&f5, &[(vec![text], r(1, 1))]).unwrap();
            let (_, _, rep) = invariants(&m, ResolveOptions::default()).unwrap();
            let c = rep.lct.finite().unwrap().clone();
            let (_, t, scaled) = invariants(&m.scaled(&c), ResolveOptions::default()).unwrap();
            let min_a = t.labeled_values().into_iter().map(|(_, a)| a).min().unwrap();
            assert_eq!(min_a, r(0, 1), "{text}");
            assert!(scaled.log_canonical);
        }
    }
}
