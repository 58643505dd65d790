//! JSON and DOT renderings of computed objects.
//!
//! Every rational is written as `"num/den"` and every scalar through
//! [`Field::format`], so artifacts can be compared textually.

use serde_json::{json, Value};

use crate::blowup::BlowupTree;
use crate::ideal::MultiIdeal;
use crate::invariants::{rational_string, DivisorTable, EquisingularityType, InvariantReport};
use crate::lifting::{CampilloComparison, Checks, LiftArtifact};
use crate::polyring::Chart;
use crate::resolution::Resolution;
use crate::scalars::Field;

fn chart_name(c: Chart) -> &'static str {
    match c {
        Chart::X => "X",
        Chart::Y => "Y",
    }
}

fn labels(ix: &[usize]) -> Vec<String> {
    ix.iter().map(|i| format!("E{}", i + 1)).collect()
}

pub fn tree_json(tree: &BlowupTree) -> Value {
    let f = tree.field();
    let nodes: Vec<Value> = tree
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            json!({
                "divisor": format!("E{}", i + 1),
                "parent": n.parent.map(|p| format!("E{}", p + 1)),
                "chart_path": tree.chart_path(i).into_iter().map(chart_name).collect::<Vec<_>>(),
                "center": [f.format(&n.center[0]), f.format(&n.center[1])],
                "incidence": labels(&n.incidence()),
            })
        })
        .collect();
    let graph = tree.dual_graph();
    json!({
        "field": f.name(),
        "nodes": nodes,
        "k": tree.k_vector(),
        "proximity": tree
            .proximity_pairs()
            .iter()
            .map(|&(i, j)| [format!("E{}", i + 1), format!("E{}", j + 1)])
            .collect::<Vec<_>>(),
        "dual_graph": {
            "vertices": graph
                .vertices
                .iter()
                .map(|v| json!({"divisor": format!("E{}", v.index + 1), "self_intersection": v.self_intersection, "k": v.k}))
                .collect::<Vec<_>>(),
            "edges": graph
                .edges
                .iter()
                .map(|&(i, j)| [format!("E{}", i + 1), format!("E{}", j + 1)])
                .collect::<Vec<_>>(),
        },
    })
}

pub fn ideal_json(m: &MultiIdeal) -> Value {
    Value::Array(
        m.ideals()
            .iter()
            .map(|i| {
                json!({
                    "generators": i.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "exponent": rational_string(&i.exponent),
                })
            })
            .collect(),
    )
}

pub fn resolution_json(res: &Resolution) -> Value {
    let b: Vec<Vec<i64>> = (0..res.ideal.len()).map(|j| res.b_vector(j)).collect();
    let v: Vec<Vec<i64>> = (0..res.ideal.len()).map(|j| res.v_vector(j)).collect();
    json!({
        "field": res.field.name(),
        "ideals": ideal_json(&res.ideal),
        "tree": tree_json(&res.tree),
        "b": b,
        "v": v,
        "curves": res
            .curves
            .iter()
            .map(|c| json!({"mults": c.mults, "meets": labels(&c.meets), "count": c.count}))
            .collect::<Vec<_>>(),
    })
}

pub fn table_json(t: &DivisorTable) -> Value {
    json!({
        "exponents": t.exponents.iter().map(rational_string).collect::<Vec<_>>(),
        "table": t
            .rows
            .iter()
            .map(|r| json!({"i": r.index + 1, "k": r.k, "v": r.v, "a": rational_string(&r.a), "z": r.z}))
            .collect::<Vec<_>>(),
        "curves": t
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| json!({
                "label": format!("C{}", i + 1),
                "mults": c.mults,
                "meets": labels(&c.meets),
                "count": c.count,
                "a": rational_string(&c.a),
                "z": c.z,
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn invariant_report_json(r: &InvariantReport, t: &DivisorTable) -> Value {
    let mut v = table_json(t);
    let obj = v.as_object_mut().unwrap();
    obj.insert("lct".into(), json!(r.lct));
    obj.insert("lct_computing".into(), json!(r.lct_computing));
    obj.insert("mld".into(), json!(r.mld));
    obj.insert("mld_computing".into(), json!(r.mld_computing));
    obj.insert("log_canonical".into(), json!(r.log_canonical));
    v
}

pub fn type_json(t: &EquisingularityType) -> Value {
    json!({
        "multiplicities": t.multiplicities(),
        "stages": t.stages.iter().map(|s| json!({"multiplicity": s.multiplicity, "through": labels(&s.through)})).collect::<Vec<_>>(),
        "proximity": t.proximity.iter().map(|&(i, j)| [format!("E{}", i + 1), format!("E{}", j + 1)]).collect::<Vec<_>>(),
        "self_intersections": t.dual_graph.vertices.iter().map(|v| v.self_intersection).collect::<Vec<_>>(),
    })
}

fn checks_json(c: &Checks) -> Value {
    json!({
        "all": c.all(),
        "reduction": c.reduction,
        "p_integral": c.p_integral,
        "centers": c.centers,
        "incidence": c.incidence,
        "k_equal": c.k_equal,
        "v_equal": c.v_equal,
        "a_equal": c.a_equal,
        "invariants_equal": c.invariants_equal,
        "campillo": c.campillo,
    })
}

fn campillo_json(c: &CampilloComparison) -> Value {
    json!({
        "types_equal": c.types_equal(),
        "source_type": type_json(&c.source),
        "lifted_type": type_json(&c.lifted),
        "lifted_type_independent": c.lifted_independent.as_ref().map(type_json),
        "naive_lift": c.naive.to_string(),
        "naive_type": c.naive_type.as_ref().map(type_json),
        "naive_differs": c.naive_differs(),
    })
}

pub fn lift_json(a: &LiftArtifact) -> Value {
    let lifted_field: &Field = &a.context.lifted;
    json!({
        "source_field": a.context.source.name(),
        "lifted_field": lifted_field.name(),
        "prime": a.context.phi.prime(),
        "centers": a
            .lifted_tree
            .nodes()
            .iter()
            .map(|n| [lifted_field.format(&n.center[0]), lifted_field.format(&n.center[1])])
            .collect::<Vec<_>>(),
        "source_ideals": ideal_json(&a.source.ideal),
        "lifted_ideals": ideal_json(&a.lifted),
        "degrees": a.degrees,
        "tree": tree_json(&a.source.tree),
        "source_report": invariant_report_json(&a.source_report, &a.source_table),
        "lifted_report": invariant_report_json(&a.lifted_report, &a.lifted_table),
        "verification": checks_json(&a.checks),
        "campillo": a.campillo.as_ref().map(campillo_json),
    })
}

/// Dual graph of the last model, one vertex `E_i [self-intersection, k=k_i]`
/// per exceptional divisor.
pub fn dot(tree: &BlowupTree) -> String {
    let g = tree.dual_graph();
    let mut out = String::from("graph dual {\n");
    for v in &g.vertices {
        out.push_str(&format!(
            "  E{0} [label=\"E{0} [{1}, k={2}]\"];\n",
            v.index + 1,
            v.self_intersection,
            v.k
        ));
    }
    for (i, j) in &g.edges {
        out.push_str(&format!("  E{} -- E{};\n", i + 1, j + 1));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Poly;
    use crate::resolution::{embedded_resolve, ResolveOptions};

    #[test]
    fn dot_labels() {
        let f5 = Field::prime(5).unwrap();
        let one = BlowupTree::new(&f5).blow_up(None, Chart::X, [f5.zero(), f5.zero()]).unwrap();
        assert!(dot(&one).contains("\"E1 [-1, k=1]\""));
        let cusp = embedded_resolve(&Poly::parse("y^2 - x^3", &f5).unwrap(), ResolveOptions::default()).unwrap();
        let d = dot(&cusp.tree);
        for label in ["E1 [-3, k=1]", "E2 [-2, k=2]", "E3 [-1, k=4]"] {
            assert!(d.contains(label), "{d}");
        }
        let chain = one.blow_up(Some(0), Chart::X, [f5.zero(), f5.zero()]).unwrap();
        assert!(dot(&chain).contains("E1 [-2, k=1]"));
        assert!(dot(&chain).contains("E2 [-1, k=2]"));
    }

    #[test]
    fn tree_dump_uses_labels_and_exact_scalars() {
        let f2 = Field::prime(2).unwrap();
        let res = embedded_resolve(&Poly::parse("y^2 + x^2 + x^3", &f2).unwrap(), ResolveOptions::default()).unwrap();
        let v = resolution_json(&res);
        assert_eq!(v["b"], json!([[2, 1, 1]]));
        assert_eq!(v["tree"]["nodes"][1]["center"], json!(["0", "1"]));
        assert_eq!(v["tree"]["nodes"][2]["incidence"], json!(["E1", "E2"]));
    }
}
