//! Towers of point blow-ups of the plane over the origin.
//!
//! Node `i` records the center `P_i`, given in the affine chart of the
//! blow-up of its parent that contains it, already recentered so that the
//! chart coordinates of `P_i` are known. Node indices are 0-based here; the
//! divisor created by node `i` is written `E_{i+1}` in reports.
//!
//! Each node also carries its *frame*: which exceptional divisors are the
//! coordinate axes `x = 0` and `y = 0` at `P_i` after recentering. Incidence
//! is read off the frame, so it never has to be supplied by the caller.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polyring::{Chart, Poly};
use crate::scalars::univariate;
use crate::scalars::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// Node whose exceptional divisor carries this center; `None` for the
    /// origin of the plane.
    pub parent: Option<usize>,
    pub chart: Option<Chart>,
    /// Coordinates in the parent's chart.
    pub center: [Scalar; 2],
    /// Exceptional divisor forming the axis `x = 0` at the center.
    pub x_axis: Option<usize>,
    /// Exceptional divisor forming the axis `y = 0` at the center.
    pub y_axis: Option<usize>,
}

impl Node {
    /// Earlier divisors through the center, ascending.
    pub fn incidence(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.x_axis.iter().chain(self.y_axis.iter()).copied().collect();
        set.into_iter().collect()
    }
}

/// A sequence of point blow-ups dominating the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupTree {
    field: Field,
    nodes: Vec<Node>,
}

/// A vertex of the dual graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualVertex {
    pub index: usize,
    pub self_intersection: i64,
    pub k: i64,
}

/// Weighted dual graph of the exceptional locus of the last model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub vertices: Vec<DualVertex>,
    pub edges: Vec<(usize, usize)>,
}

/// Per-node record produced by [`BlowupTree::track_curve`].
#[derive(Clone, Debug)]
pub struct TrackedNode {
    /// Local equation of the strict transform at the center.
    pub strict: Poly,
    pub multiplicity: u32,
    /// Whether strict transform plus exceptional curves is SNC at the
    /// center itself.
    pub snc_at_center: bool,
    /// Whether the configuration is SNC along the new exceptional curve right
    /// after blowing up the center.
    pub snc_after: bool,
}

impl BlowupTree {
    pub fn new(field: &Field) -> BlowupTree {
        BlowupTree {
            field: field.clone(),
            nodes: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    /// Children of `parent` in index order.
    pub fn children(&self, parent: usize) -> impl Iterator<Item = (usize, &Node)> {
        self.nodes
            .iter()
            .enumerate()
            .filter(move |(_, n)| n.parent == Some(parent))
    }

    /// Chart choices from the root down to the chart containing `P_i`.
    pub fn chart_path(&self, i: usize) -> Vec<Chart> {
        let mut path = Vec::new();
        let mut cur = i;
        while let (Some(p), Some(c)) = (self.nodes[cur].parent, self.nodes[cur].chart) {
            path.push(c);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Appends the blow-up of a point.
    ///
    /// The root center must be the origin of the plane. Other centers are
    /// points of the exceptional curve of `parent`: `(0, c)` in chart `X`, or
    /// `(c, 0)` in chart `Y`. A chart-`Y` point with `c != 0` is also visible
    /// in chart `X` as `(0, 1/c)` and is stored there.
    pub fn blow_up(&self, parent: Option<usize>, chart: Chart, center: [Scalar; 2]) -> Result<BlowupTree> {
        let f = &self.field;
        for c in &center {
            if !f.contains(c) {
                return Err(Error::FieldMismatch(format!("center coordinate is not an element of {}", f.name())));
            }
        }
        let node = match parent {
            None => {
                if !center.iter().all(|c| f.is_zero(c)) {
                    return Err(Error::CenterNotOverOrigin("the first center must be the origin".into()));
                }
                if !self.nodes.is_empty() {
                    return Err(Error::CenterAlreadyBlownUp);
                }
                Node {
                    parent: None,
                    chart: None,
                    center,
                    x_axis: None,
                    y_axis: None,
                }
            }
            Some(j) => {
                let pn = self.nodes.get(j).ok_or(Error::UnknownNode(j))?;
                let (chart, center) = match chart {
                    Chart::X => (Chart::X, center),
                    Chart::Y if f.is_zero(&center[0]) => (Chart::Y, center),
                    Chart::Y => {
                        let c = f.inv(&center[0]).unwrap();
                        (Chart::X, [center[1].clone(), c])
                    }
                };
                let (on_axis, moving) = match chart {
                    Chart::X => (&center[0], &center[1]),
                    Chart::Y => (&center[1], &center[0]),
                };
                if !f.is_zero(on_axis) {
                    return Err(Error::CenterNotOverOrigin(format!(
                        "point does not lie on the exceptional curve of node {j}"
                    )));
                }
                let at_zero = f.is_zero(moving);
                let (x_axis, y_axis) = match chart {
                    Chart::X => (Some(j), if at_zero { pn.y_axis } else { None }),
                    Chart::Y => (pn.x_axis, Some(j)),
                };
                Node {
                    parent: Some(j),
                    chart: Some(chart),
                    center,
                    x_axis,
                    y_axis,
                }
            }
        };
        if self
            .nodes
            .iter()
            .any(|n| n.parent == node.parent && n.chart == node.chart && n.center == node.center)
        {
            return Err(Error::CenterAlreadyBlownUp);
        }
        let mut nodes = self.nodes.clone();
        nodes.push(node);
        Ok(BlowupTree {
            field: self.field.clone(),
            nodes,
        })
    }

    /// The tree without its last node.
    pub fn without_last(&self) -> BlowupTree {
        let mut nodes = self.nodes.clone();
        nodes.pop();
        BlowupTree {
            field: self.field.clone(),
            nodes,
        }
    }

    /// Proximity matrix: `prox[i][j]` iff `P_i` lies on the strict transform
    /// of `E_j`.
    pub fn proximity(&self) -> Vec<Vec<bool>> {
        let n = self.nodes.len();
        let mut prox = vec![vec![false; n]; n];
        for (i, node) in self.nodes.iter().enumerate() {
            for j in node.incidence() {
                prox[i][j] = true;
            }
        }
        prox
    }

    /// Pairs `(i, j)` with `P_i` proximate to `E_j`.
    pub fn proximity_pairs(&self) -> Vec<(usize, usize)> {
        self.nodes
            .iter()
            .enumerate()
            .flat_map(|(i, n)| n.incidence().into_iter().map(move |j| (i, j)))
            .collect()
    }

    pub fn k_vector(&self) -> Vec<i64> {
        let mut k: Vec<i64> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let s: i64 = node.incidence().iter().map(|&j| k[j]).sum();
            k.push(1 + s);
        }
        k
    }

    /// `v_i = b_i + sum of v_j over the divisors through P_i`.
    pub fn v_vector(&self, b: &[i64]) -> Result<Vec<i64>> {
        if b.len() != self.nodes.len() {
            return Err(Error::LengthMismatch {
                expected: self.nodes.len(),
                got: b.len(),
            });
        }
        let mut v: Vec<i64> = Vec::with_capacity(b.len());
        for (node, &bi) in self.nodes.iter().zip(b) {
            let s: i64 = node.incidence().iter().map(|&j| v[j]).sum();
            v.push(bi + s);
        }
        Ok(v)
    }

    /// Same as [`v_vector`](Self::v_vector) but by solving `(I - P) v = b`.
    pub fn v_vector_by_matrix(&self, b: &[i64]) -> Result<Vec<i64>> {
        let n = self.nodes.len();
        if b.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: b.len() });
        }
        let prox = self.proximity();
        let a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::from(1)
                        } else if prox[i][j] {
                            BigInt::from(-1)
                        } else {
                            BigInt::from(0)
                        }
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let sol = linalg::bareiss_solve(&a, &rhs).expect("unipotent system");
        Ok(sol
            .iter()
            .map(|r: &BigRational| {
                assert!(r.is_integer());
                i64::try_from(r.to_integer()).unwrap()
            })
            .collect())
    }

    pub fn dual_graph(&self) -> DualGraph {
        let n = self.nodes.len();
        let prox = self.proximity();
        let k = self.k_vector();
        let vertices = (0..n)
            .map(|i| DualVertex {
                index: i,
                self_intersection: -1 - (i + 1..n).filter(|&j| prox[j][i]).count() as i64,
                k: k[i],
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if prox[j][i] && !(j + 1..n).any(|l| prox[l][i] && prox[l][j]) {
                    edges.push((i, j));
                }
            }
        }
        DualGraph { vertices, edges }
    }

    /// The composite `phi_i`: local coordinates at `P_i` to the plane.
    pub fn center_map(&self, i: usize) -> [Poly; 2] {
        let f = &self.field;
        let node = &self.nodes[i];
        let parent = match node.parent {
            None => return [Poly::var(f, 2, 0), Poly::var(f, 2, 1)],
            Some(j) => self.center_map(j),
        };
        let x = Poly::var(f, 2, 0);
        let y = Poly::var(f, 2, 1);
        let local = match node.chart.unwrap() {
            Chart::X => {
                let c = Poly::constant(f, 2, node.center[1].clone());
                [x.clone(), x.mul(&y.add(&c))]
            }
            Chart::Y => {
                let c = Poly::constant(f, 2, node.center[0].clone());
                [x.add(&c).mul(&y), y]
            }
        };
        [parent[0].compose(&local, None), parent[1].compose(&local, None)]
    }

    /// `v_{E_i}(g)` computed directly as the order at the origin of the
    /// pullback of `g` to the center `P_i`.
    pub fn divisorial_valuation(&self, i: usize, g: &Poly) -> Result<u32> {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let map = self.center_map(i);
        let mut bound = g.total_degree().unwrap().max(4);
        loop {
            let pulled = g.compose(&map, Some(bound));
            if let Some(o) = pulled.order() {
                return Ok(o);
            }
            bound *= 2;
        }
    }

    /// Local equation of the strict transform of `f` at every center.
    pub fn strict_transforms(&self, f: &Poly) -> Result<Vec<Poly>> {
        let mut out: Vec<Poly> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let local = match node.parent {
                None => f.clone(),
                Some(j) => {
                    let parent = &out[j];
                    let m = parent.order().ok_or(Error::ZeroPolynomial)?;
                    let chart = node.chart.unwrap();
                    parent.strict_transform(chart, m)?.translate(&node.center)
                }
            };
            out.push(local);
        }
        Ok(out)
    }

    /// Strict transforms, multiplicities and SNC flags of a curve.
    pub fn track_curve(&self, f: &Poly) -> Result<Vec<TrackedNode>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let strict = self.strict_transforms(f)?;
        Ok(strict
            .into_iter()
            .zip(&self.nodes)
            .map(|(s, node)| {
                let b = s.order().unwrap();
                TrackedNode {
                    snc_at_center: snc_at_center(&s, b, node),
                    snc_after: snc_after(&s, b, node),
                    multiplicity: b,
                    strict: s,
                }
            })
            .collect())
    }

    /// Multiplicities `b_i` of the strict transforms of `f`.
    pub fn multiplicities(&self, f: &Poly) -> Result<Vec<i64>> {
        Ok(self
            .strict_transforms(f)?
            .iter()
            .map(|s| s.order().unwrap() as i64)
            .collect())
    }

    /// Replays the tree over another field, mapping every center.
    pub fn map_centers<F>(&self, target: &Field, f: F) -> Result<BlowupTree>
    where
        F: Fn(&Scalar) -> Scalar,
    {
        let mut out = BlowupTree::new(target);
        for (i, node) in self.nodes.iter().enumerate() {
            let center = [f(&node.center[0]), f(&node.center[1])];
            out = out.blow_up(node.parent, node.chart.unwrap_or(Chart::X), center)?;
            let new = &out.nodes[i];
            if new.incidence() != node.incidence() || new.chart != node.chart {
                return Err(Error::IncidenceBroken(i));
            }
        }
        Ok(out)
    }
}

fn snc_at_center(s: &Poly, b: u32, node: &Node) -> bool {
    match b {
        0 => true,
        1 => {
            let inc = node.incidence();
            let lin = s.linear_part();
            let f = s.field();
            match inc.len() {
                0 => true,
                1 => {
                    if node.x_axis.is_some() {
                        !f.is_zero(&lin[1])
                    } else {
                        !f.is_zero(&lin[0])
                    }
                }
                _ => false,
            }
        }
        _ => false,
    }
}

fn snc_after(s: &Poly, b: u32, node: &Node) -> bool {
    if b == 0 {
        return true;
    }
    let f = s.field();
    let cone = s.homogeneous_part(b);
    // restriction of the chart-X strict transform to the exceptional curve
    let mut u = vec![f.zero(); b as usize + 1];
    for (e, c) in cone.terms() {
        u[e.exps()[1] as usize] = c.clone();
    }
    univariate::trim(f, &mut u);
    let deg = univariate::degree(f, &u).unwrap_or(0);
    let at_infinity = b as usize - deg;
    let du = univariate::derivative(f, &u);
    let squarefree = deg == 0 || univariate::degree(f, &univariate::gcd(f, &u, &du)) == Some(0);
    if !squarefree {
        return false;
    }
    if node.y_axis.is_some() && f.is_zero(&u[0]) {
        return false;
    }
    if node.x_axis.is_some() {
        at_infinity == 0
    } else {
        at_infinity <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn origin(f: &Field) -> [Scalar; 2] {
        [f.zero(), f.zero()]
    }

    fn cusp_tree(f: &Field) -> BlowupTree {
        BlowupTree::new(f)
            .blow_up(None, Chart::X, origin(f))
            .unwrap()
            .blow_up(Some(0), Chart::X, origin(f))
            .unwrap()
            .blow_up(Some(1), Chart::Y, origin(f))
            .unwrap()
    }

    #[test]
    fn incidence_of_free_and_satellite_points() {
        let f = Field::prime(5).unwrap();
        let t = BlowupTree::new(&f).blow_up(None, Chart::X, origin(&f)).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.proximity_pairs().is_empty());
        let t = t.blow_up(Some(0), Chart::X, origin(&f)).unwrap();
        assert_eq!(t.node(1).incidence(), vec![0]);
        let t = t.blow_up(Some(1), Chart::Y, origin(&f)).unwrap();
        assert_eq!(t.node(2).incidence(), vec![0, 1]);
        assert_eq!(t.chart_path(2), vec![Chart::X, Chart::Y]);
    }

    #[test]
    fn blow_up_errors() {
        let f = Field::prime(5).unwrap();
        let one = f.one();
        assert!(matches!(
            BlowupTree::new(&f).blow_up(None, Chart::X, [one.clone(), f.zero()]),
            Err(Error::CenterNotOverOrigin(_))
        ));
        let t = BlowupTree::new(&f).blow_up(None, Chart::X, origin(&f)).unwrap();
        assert!(matches!(
            t.blow_up(Some(0), Chart::X, [one.clone(), f.zero()]),
            Err(Error::CenterNotOverOrigin(_))
        ));
        assert_eq!(t.blow_up(Some(3), Chart::X, origin(&f)), Err(Error::UnknownNode(3)));
        let t2 = t.blow_up(Some(0), Chart::X, [f.zero(), one.clone()]).unwrap();
        // (1, 0) in chart Y is (0, 1) in chart X
        assert_eq!(t2.blow_up(Some(0), Chart::Y, [one, f.zero()]), Err(Error::CenterAlreadyBlownUp));
        let f4 = Field::extension(2, &[1, 1, 1]).unwrap();
        assert!(matches!(
            t.blow_up(Some(0), Chart::X, [f4.zero(), f4.generator().unwrap()]),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn k_and_v_vectors() {
        let f = Field::prime(5).unwrap();
        let one = BlowupTree::new(&f).blow_up(None, Chart::X, origin(&f)).unwrap();
        assert_eq!(one.k_vector(), vec![1]);
        assert_eq!(one.v_vector(&[2]).unwrap(), vec![2]);
        let chain = one
            .blow_up(Some(0), Chart::X, [f.zero(), f.one()])
            .unwrap()
            .blow_up(Some(1), Chart::X, [f.zero(), f.one()])
            .unwrap();
        assert_eq!(chain.k_vector(), vec![1, 2, 3]);
        assert_eq!(chain.v_vector(&[1, 0, 0]).unwrap(), vec![1, 1, 1]);
        let cusp = cusp_tree(&f);
        assert_eq!(cusp.k_vector(), vec![1, 2, 4]);
        assert_eq!(cusp.v_vector(&[2, 1, 1]).unwrap(), vec![2, 3, 6]);
        assert_eq!(cusp.v_vector_by_matrix(&[2, 1, 1]).unwrap(), vec![2, 3, 6]);
        assert_eq!(cusp.v_vector(&[2, 1]), Err(Error::LengthMismatch { expected: 3, got: 2 }));
    }

    #[test]
    fn cusp_tracking() {
        let f = Field::prime(5).unwrap();
        let cusp = Poly::parse("y^2 - x^3", &f).unwrap();
        let tree = cusp_tree(&f);
        let tr = tree.track_curve(&cusp).unwrap();
        assert_eq!(tr.iter().map(|t| t.multiplicity).collect::<Vec<_>>(), vec![2, 1, 1]);
        assert_eq!(tr[1].strict, Poly::parse("y^2 - x", &f).unwrap());
        assert!(!tr[1].snc_at_center);
        assert!(!tr[0].snc_after && !tr[1].snc_after && tr[2].snc_after);
        for i in 0..3 {
            assert_eq!(tree.divisorial_valuation(i, &cusp).unwrap() as i64, [2, 3, 6][i]);
        }
    }

    #[test]
    fn dual_graphs() {
        let f = Field::prime(5).unwrap();
        let g = cusp_tree(&f).dual_graph();
        let w: Vec<i64> = g.vertices.iter().map(|v| v.self_intersection).collect();
        assert_eq!(w, vec![-3, -2, -1]);
        assert_eq!(g.edges, vec![(0, 2), (1, 2)]);
        let chain = BlowupTree::new(&f)
            .blow_up(None, Chart::X, origin(&f))
            .unwrap()
            .blow_up(Some(0), Chart::X, [f.zero(), f.one()])
            .unwrap();
        let g = chain.dual_graph();
        assert_eq!(g.vertices.iter().map(|v| v.self_intersection).collect::<Vec<_>>(), vec![-2, -1]);
        assert_eq!(g.edges, vec![(0, 1)]);
    }

    #[test]
    fn removing_and_readding_last_node() {
        let f = Field::prime(3).unwrap();
        let t = cusp_tree(&f);
        let again = t.without_last().blow_up(Some(1), Chart::Y, origin(&f)).unwrap();
        assert_eq!(again, t);
    }

    fn arb_tree() -> impl Strategy<Value = BlowupTree> {
        prop::collection::vec((0usize..8, any::<bool>(), 0i64..3), 0..7).prop_map(|steps| {
            let f = Field::prime(3).unwrap();
            let mut t = BlowupTree::new(&f).blow_up(None, Chart::X, origin(&f)).unwrap();
            for (p, chart_y, c) in steps {
                let parent = p % t.len();
                let res = if chart_y {
                    t.blow_up(Some(parent), Chart::Y, origin(&f))
                } else {
                    t.blow_up(Some(parent), Chart::X, [f.zero(), f.from_i64(c)])
                };
                if let Ok(next) = res {
                    t = next;
                }
            }
            t
        })
    }

    fn arb_curve() -> impl Strategy<Value = Poly> {
        let f = Field::prime(3).unwrap();
        prop::collection::vec(((0u32..4, 0u32..4), 1i64..3), 1..5).prop_map(move |terms| {
            Poly::from_terms(&f, 2, terms.into_iter().map(|((a, b), c)| (vec![a + 1, b], f.from_i64(c))))
        })
    }

    proptest! {
        #[test]
        fn v_recursion_matches_matrix_and_pullback(t in arb_tree(), g in arb_curve()) {
            prop_assume!(!g.is_zero());
            let b = t.multiplicities(&g).unwrap();
            let v = t.v_vector(&b).unwrap();
            prop_assert_eq!(&t.v_vector_by_matrix(&b).unwrap(), &v);
            for (i, &vi) in v.iter().enumerate() {
                prop_assert_eq!(t.divisorial_valuation(i, &g).unwrap() as i64, vi);
            }
        }

        #[test]
        fn valuations_are_additive(t in arb_tree(), g in arb_curve(), h in arb_curve()) {
            prop_assume!(!g.is_zero() && !h.is_zero());
            let vg = t.v_vector(&t.multiplicities(&g).unwrap()).unwrap();
            let vh = t.v_vector(&t.multiplicities(&h).unwrap()).unwrap();
            let vgh = t.v_vector(&t.multiplicities(&g.mul(&h)).unwrap()).unwrap();
            for i in 0..vg.len() {
                prop_assert_eq!(vgh[i], vg[i] + vh[i]);
            }
        }

        #[test]
        fn dual_graph_is_a_tree(t in arb_tree()) {
            let g = t.dual_graph();
            prop_assert_eq!(g.edges.len() + 1, g.vertices.len());
            for (i, node) in t.nodes().iter().enumerate().skip(1) {
                prop_assert!(!node.incidence().is_empty());
                prop_assert!(node.incidence().iter().all(|&j| j < i));
            }
        }
    }
}
