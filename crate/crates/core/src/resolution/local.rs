//! Local normal-crossings test at the origin of a chart.

use crate::polyring::Poly;
use crate::scalars::{Field, Scalar};

/// Exceptional divisors forming the coordinate axes at a point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Frame {
    pub x_axis: Option<usize>,
    pub y_axis: Option<usize>,
}

impl Frame {
    pub fn exceptional(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.x_axis.iter().chain(self.y_axis.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// A non-exceptional curve through the point, with its multiplicity in
/// each ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCurve {
    pub mults: Vec<u32>,
}

fn series_mul(field: &Field, a: &[Scalar], b: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    out
}

/// `g` with the variable `param` replaced by the series `phi` in the other
/// variable, truncated to `n` terms.
fn substitute(g: &Poly, param: usize, phi: &[Scalar], n: usize) -> Vec<Scalar> {
    let field = g.field();
    let free = 1 - param;
    let max_b = g.terms().map(|(e, _)| e.exps()[param]).max().unwrap_or(0) as usize;
    let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(max_b + 1);
    let mut one = vec![field.zero(); n];
    one[0] = field.one();
    powers.push(one);
    for b in 1..=max_b {
        let next = series_mul(field, &powers[b - 1], phi, n);
        powers.push(next);
    }
    let mut out = vec![field.zero(); n];
    for (e, c) in g.terms() {
        let a = e.exps()[free] as usize;
        let b = e.exps()[param] as usize;
        if a >= n {
            continue;
        }
        for k in 0..n - a {
            let t = &powers[b][k];
            if !field.is_zero(t) {
                out[k + a] = field.add(&out[k + a], &field.mul(c, t));
            }
        }
    }
    out
}

/// Solves `h = 0` for the variable `param` as a power series in the other
/// variable, to `n` terms. `h` must have a nonzero linear coefficient in
/// `param`.
fn parametrize(h: &Poly, param: usize, n: usize) -> Vec<Scalar> {
    let field = h.field();
    let d = h.linear_part()[param].clone();
    let d_inv = field.inv(&d).expect("smooth in the parametrized direction");
    let mut phi = vec![field.zero(); n];
    for _ in 0..=n {
        let r = substitute(h, param, &phi, n);
        if r.iter().all(|c| field.is_zero(c)) {
            break;
        }
        for (p, rk) in phi.iter_mut().zip(&r) {
            *p = field.sub(p, &field.mul(rk, &d_inv));
        }
    }
    phi
}

/// Whether `h` (of order 1 at the origin) divides `g` in the local ring.
///
/// If it does not, `g` restricted to the smooth branch `h = 0` vanishes to
/// order at most `deg h * deg g`, so checking one more term decides.
pub fn divides_locally(h: &Poly, g: &Poly) -> bool {
    let field = h.field();
    let lin = h.linear_part();
    let param = if field.is_zero(&lin[1]) { 0 } else { 1 };
    let n = (h.total_degree().unwrap() * g.total_degree().unwrap_or(0)) as usize + 1;
    let phi = parametrize(h, param, n);
    substitute(g, param, &phi, n).iter().all(|c| field.is_zero(c))
}

/// Decides whether the ideals, given by local generators at the origin,
/// are principalized with normal crossings there, together with the
/// exceptional axes in `frame`. On success returns the non-exceptional
/// curves through the point.
pub fn snc_components(gens: &[Vec<Poly>], frame: Frame) -> Option<Vec<LocalCurve>> {
    let field = gens[0][0].field().clone();
    let r = gens.len();
    let mut axis_mult = [vec![0u32; r], vec![0u32; r]];
    let mut branches: Vec<(Poly, Vec<u32>)> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        if g.iter().any(|p| !field.is_zero(&p.constant_term())) {
            continue;
        }
        let content: Vec<u32> = (0..2)
            .map(|v| g.iter().map(|p| p.var_content(v)).min().unwrap())
            .collect();
        axis_mult[0][j] = content[0];
        axis_mult[1][j] = content[1];
        let rest: Vec<Poly> = g.iter().map(|p| p.divide_monomial(&content).unwrap()).collect();
        if rest.iter().any(|p| !field.is_zero(&p.constant_term())) {
            continue;
        }
        let ord = rest.iter().map(|p| p.order().unwrap()).min().unwrap();
        if ord >= 2 {
            return None;
        }
        let hi = rest.iter().position(|p| p.order() == Some(1)).unwrap();
        let h = &rest[hi];
        if !rest
            .iter()
            .enumerate()
            .all(|(k, p)| k == hi || divides_locally(h, p))
        {
            return None;
        }
        match branches.iter_mut().find(|(b, _)| divides_locally(b, h)) {
            Some((_, m)) => m[j] += 1,
            None => {
                let mut m = vec![0u32; r];
                m[j] = 1;
                branches.push((h.clone(), m));
            }
        }
    }

    let mut lines: Vec<[Scalar; 2]> = Vec::new();
    let mut curves = Vec::new();
    let axis_line = |v: usize| {
        if v == 0 {
            [field.one(), field.zero()]
        } else {
            [field.zero(), field.one()]
        }
    };
    if frame.x_axis.is_some() {
        lines.push(axis_line(0));
    }
    if frame.y_axis.is_some() {
        lines.push(axis_line(1));
    }
    for (v, mults) in axis_mult.iter().enumerate() {
        if mults.iter().all(|&m| m == 0) {
            continue;
        }
        let exceptional = if v == 0 { frame.x_axis } else { frame.y_axis };
        if exceptional.is_some() {
            return None;
        }
        lines.push(axis_line(v));
        curves.push(LocalCurve { mults: mults.clone() });
    }
    for (h, mults) in branches {
        let lin = h.linear_part();
        lines.push([lin[0].clone(), lin[1].clone()]);
        curves.push(LocalCurve { mults });
    }
    match lines.len() {
        0 | 1 => Some(curves),
        2 => {
            let det = field.sub(
                &field.mul(&lines[0][0], &lines[1][1]),
                &field.mul(&lines[0][1], &lines[1][0]),
            );
            if field.is_zero(&det) {
                None
            } else {
                Some(curves)
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(field: &Field, ideals: &[&[&str]]) -> Vec<Vec<Poly>> {
        ideals
            .iter()
            .map(|g| g.iter().map(|s| Poly::parse(s, field).unwrap()).collect())
            .collect()
    }

    #[test]
    fn local_divisibility() {
        let q = Field::rational();
        let h = Poly::parse("y - x^2", &q).unwrap();
        assert!(divides_locally(&h, &Poly::parse("(y - x^2)*(1 + x + y^3)", &q).unwrap()));
        assert!(!divides_locally(&h, &Poly::parse("y - x^2 + x^7", &q).unwrap()));
        let h = Poly::parse("x + y^3", &q).unwrap();
        assert!(divides_locally(&h, &Poly::parse("x^2 - y^6", &q).unwrap()));
    }

    #[test]
    fn snc_decisions() {
        let f5 = Field::prime(5).unwrap();
        let none = Frame::default();
        // two transverse lines
        let c = snc_components(&gens(&f5, &[&["x*y"]]), none).unwrap();
        assert_eq!(c.len(), 2);
        // node with curved branches is not normal crossings until separated
        assert!(snc_components(&gens(&f5, &[&["y^2 - x^2 - x^3"]]), none).is_none());
        // a smooth curve tangent to the exceptional axis
        let e = Frame { x_axis: Some(0), y_axis: None };
        assert!(snc_components(&gens(&f5, &[&["y^2 - x"]]), e).is_none());
        assert_eq!(snc_components(&gens(&f5, &[&["y - x"]]), e).unwrap().len(), 1);
        // triple point
        let both = Frame { x_axis: Some(0), y_axis: Some(1) };
        assert!(snc_components(&gens(&f5, &[&["y - x"]]), both).is_none());
        // a non-principal ideal with a base point
        assert!(snc_components(&gens(&f5, &[&["x^2", "y"]]), none).is_none());
        // locally principal ideal
        let c = snc_components(&gens(&f5, &[&["y", "y*x + y^2"]]), none).unwrap();
        assert_eq!(c, vec![LocalCurve { mults: vec![1] }]);
        // the same branch in two ideals counts once
        let c = snc_components(&gens(&f5, &[&["y - x^2"], &["2*y - 2*x^2"]]), none).unwrap();
        assert_eq!(c, vec![LocalCurve { mults: vec![1, 1] }]);
        // units are invisible
        assert_eq!(snc_components(&gens(&f5, &[&["1 + x"]]), both).unwrap(), vec![]);
    }
}
