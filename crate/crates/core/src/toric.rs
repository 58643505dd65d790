//! Combinatorial `lct` and `mld` of monomial multi-ideals from Newton
//! polygons, and a toroidal enumeration of `mld` on a resolved model.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::MultiIdeal;
use crate::invariants::{DivisorTable, ExtRational};

/// Exponent vectors of monomial generators, one set per ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonData {
    pub ideals: Vec<(Vec<[u32; 2]>, BigRational)>,
}

impl NewtonData {
    pub fn new(ideals: Vec<(Vec<[u32; 2]>, BigRational)>) -> Result<NewtonData> {
        if ideals.iter().any(|(g, _)| g.is_empty()) || ideals.is_empty() {
            return Err(Error::InvalidInput("every ideal needs a generator".into()));
        }
        Ok(NewtonData { ideals })
    }

    pub fn from_multi_ideal(m: &MultiIdeal) -> Result<NewtonData> {
        if !m.is_monomial() {
            return Err(Error::InvalidInput("the toric oracle accepts monomial generators only".into()));
        }
        NewtonData::new(
            m.ideals()
                .iter()
                .map(|i| {
                    let exps = i
                        .generators
                        .iter()
                        .map(|g| {
                            let (e, _) = g.terms().next().unwrap();
                            [e.exps()[0], e.exps()[1]]
                        })
                        .collect();
                    (exps, i.exponent.clone())
                })
                .collect(),
        )
    }

    fn check_vanishing(&self) -> Result<()> {
        if self.ideals.iter().all(|(g, _)| g.contains(&[0, 0])) {
            return Err(Error::AllUnits);
        }
        Ok(())
    }

    /// `sum_i e_i min_m <w, m>`.
    pub fn order(&self, w: [u64; 2]) -> BigRational {
        self.ideals
            .iter()
            .map(|(g, e)| {
                let m = g
                    .iter()
                    .map(|p| w[0] * p[0] as u64 + w[1] * p[1] as u64)
                    .min()
                    .unwrap();
                e * BigRational::from_integer(BigInt::from(m))
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `w_1 + w_2 - order(w)`: the log discrepancy of the toric divisor.
    pub fn log_discrepancy(&self, w: [u64; 2]) -> BigRational {
        BigRational::from_integer(BigInt::from(w[0] + w[1])) - self.order(w)
    }

    /// Primitive inner normals of the compact edges of every Newton
    /// polygon, plus `(1, 0)`, `(0, 1)` and `(1, 1)`.
    pub fn candidate_rays(&self) -> Vec<[u64; 2]> {
        let mut rays = vec![[1, 0], [0, 1], [1, 1]];
        for (g, _) in &self.ideals {
            let hull = newton_vertices(g);
            for pair in hull.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                let w0 = (a[1] - b[1]) as u64;
                let w1 = (b[0] - a[0]) as u64;
                let d = w0.gcd(&w1);
                let r = [w0 / d, w1 / d];
                if !rays.contains(&r) {
                    rays.push(r);
                }
            }
        }
        rays
    }
}

/// Vertices of the Newton polygon, by increasing first coordinate.
fn newton_vertices(points: &[[u32; 2]]) -> Vec<[i64; 2]> {
    let mut pts: Vec<[i64; 2]> = points.iter().map(|p| [p[0] as i64, p[1] as i64]).collect();
    pts.sort();
    pts.dedup();
    let mut stair: Vec<[i64; 2]> = Vec::new();
    for p in pts {
        if stair.last().is_none_or(|q| p[1] < q[1]) {
            stair.push(p);
        }
    }
    let mut hull: Vec<[i64; 2]> = Vec::new();
    for p in stair {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Log canonical threshold of a monomial multi-ideal and a ray computing it.
pub fn toric_lct(n: &NewtonData) -> Result<(BigRational, [u64; 2])> {
    n.check_vanishing()?;
    let mut best: Option<(BigRational, [u64; 2])> = None;
    for w in n.candidate_rays() {
        let d = n.order(w);
        if d.is_zero() {
            continue;
        }
        let z = BigRational::from_integer(BigInt::from(w[0] + w[1])) / d;
        if best.as_ref().is_none_or(|(b, _)| z < *b) {
            best = Some((z, w));
        }
    }
    best.ok_or(Error::AllUnits)
}

/// Default box size for [`toric_mld`]: twice the largest ray coordinate.
pub fn default_weight_bound(n: &NewtonData) -> u64 {
    2 * n.candidate_rays().iter().flat_map(|r| r.iter().copied()).max().unwrap_or(1)
}

/// Minimal log discrepancy of a monomial multi-ideal at the origin, with a
/// weight attaining it.
pub fn toric_mld(n: &NewtonData, bound: Option<u64>) -> Result<(ExtRational, Option<[u64; 2]>)> {
    n.check_vanishing()?;
    for w in n.candidate_rays() {
        if n.log_discrepancy(w).is_negative() {
            return Ok((ExtRational::NegInf, Some(w)));
        }
    }
    let bound = bound.unwrap_or_else(|| default_weight_bound(n));
    let mut best: Option<(BigRational, [u64; 2])> = None;
    for w0 in 1..=bound {
        for w1 in 1..=bound {
            let a = n.log_discrepancy([w0, w1]);
            if best.as_ref().is_none_or(|(b, _)| a < *b) {
                best = Some((a, [w0, w1]));
            }
        }
    }
    let (a, w) = best.unwrap();
    Ok((ExtRational::Finite(a), Some(w)))
}

/// `mld` on a resolved model: the least of the single log discrepancies of
/// exceptional divisors and of `w_1 a(D_1) + w_2 a(D_2)` over double points,
/// or `-inf` if some component has negative log discrepancy.
pub fn toroidal_mld_on_model(table: &DivisorTable, bound: u64) -> ExtRational {
    if table.labeled_values().iter().any(|(_, a)| a.is_negative()) {
        return ExtRational::NegInf;
    }
    let mut best: Option<BigRational> = table.rows.iter().map(|r| r.a.clone()).min();
    for (a1, a2) in table.double_points() {
        for w0 in 1..=bound {
            for w1 in 1..=bound {
                let v = &a1 * BigRational::from_integer(BigInt::from(w0))
                    + &a2 * BigRational::from_integer(BigInt::from(w1));
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
    }
    best.map_or(ExtRational::PosInf, ExtRational::Finite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariants;
    use crate::resolution::ResolveOptions;
    use crate::scalars::Field;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn data(g: &[[u32; 2]], e: BigRational) -> NewtonData {
        NewtonData::new(vec![(g.to_vec(), e)]).unwrap()
    }

    #[test]
    fn lct_examples() {
        assert_eq!(toric_lct(&data(&[[2, 0], [0, 3]], r(1, 1))).unwrap(), (r(5, 6), [3, 2]));
        assert_eq!(toric_lct(&data(&[[1, 0], [0, 1]], r(1, 1))).unwrap(), (r(2, 1), [1, 1]));
        assert_eq!(toric_lct(&data(&[[1, 0], [0, 1]], r(3, 1))).unwrap().0, r(2, 3));
        assert_eq!(toric_lct(&data(&[[0, 0]], r(1, 1))), Err(Error::AllUnits));
    }

    #[test]
    fn mld_examples() {
        assert_eq!(
            toric_mld(&data(&[[2, 0], [0, 3]], r(5, 6)), None).unwrap(),
            (ExtRational::Finite(r(0, 1)), Some([3, 2]))
        );
        assert_eq!(
            toric_mld(&data(&[[1, 0], [0, 1]], r(1, 1)), None).unwrap(),
            (ExtRational::Finite(r(1, 1)), Some([1, 1]))
        );
        assert_eq!(toric_mld(&data(&[[1, 0], [0, 1]], r(3, 1)), None).unwrap().0, ExtRational::NegInf);
    }

    #[test]
    fn newton_polygon_vertices() {
        assert_eq!(newton_vertices(&[[2, 0], [1, 1], [0, 2]]), vec![[0, 2], [2, 0]]);
        assert_eq!(newton_vertices(&[[3, 0], [1, 1], [0, 3], [2, 2]]), vec![[0, 3], [1, 1], [3, 0]]);
    }

    #[test]
    fn toroidal_enumeration_on_models() {
        let f5 = Field::prime(5).unwrap();
        let cases: [(&[&str], BigRational, ExtRational); 3] = [
            (&["y^2 - x^3"], r(5, 6), ExtRational::Finite(r(0, 1))),
            (&["1"], r(1, 1), ExtRational::Finite(r(2, 1))),
            (&["x", "y"], r(3, 1), ExtRational::NegInf),
        ];
        for (gens, e, expected) in cases {
            let m = MultiIdeal::parse(&f5, &[(gens.to_vec(), e)]).unwrap();
            let (_, table, report) = invariants(&m, ResolveOptions::default()).unwrap();
            assert_eq!(toroidal_mld_on_model(&table, 6), expected);
            assert_eq!(report.mld, expected);
        }
    }

    fn arb_data() -> impl Strategy<Value = NewtonData> {
        let e = prop_oneof![Just(r(1, 1)), Just(r(1, 2)), Just(r(5, 6)), Just(r(3, 1))];
        prop::collection::vec((prop::collection::vec((0u32..6, 0u32..6), 1..4), e), 1..3).prop_map(|ideals| {
            NewtonData::new(
                ideals
                    .into_iter()
                    .map(|(g, e)| (g.into_iter().map(|(a, b)| [a + 1, b]).collect(), e))
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn lct_is_symmetric_and_homogeneous(n in arb_data(), s in 1i64..5) {
            let swapped = NewtonData::new(
                n.ideals.iter().map(|(g, e)| (g.iter().map(|p| [p[1], p[0]]).collect(), e.clone())).collect(),
            ).unwrap();
            let l = toric_lct(&n).unwrap().0;
            prop_assert_eq!(toric_lct(&swapped).unwrap().0, l.clone());
            let scale = r(s, 3);
            let scaled = NewtonData::new(
                n.ideals.iter().map(|(g, e)| (g.clone(), e * &scale)).collect(),
            ).unwrap();
            prop_assert_eq!(toric_lct(&scaled).unwrap().0, l / scale);
        }

        #[test]
        fn candidate_rays_attain_the_infimum(n in arb_data()) {
            // no integer weight in a box does better than the candidate rays
            let l = toric_lct(&n).unwrap().0;
            for w0 in 1..12u64 {
                for w1 in 1..12u64 {
                    let d = n.order([w0, w1]);
                    if !d.is_zero() {
                        prop_assert!(BigRational::from_integer(BigInt::from(w0 + w1)) / d >= l);
                    }
                }
            }
        }
    }
}
