//! Problem files and the batch pipeline behind the command line.
//!
//! ```json
//! {
//!   "field": "GF(5)",
//!   "curve": "y^2 - x^3",
//!   "ideals": [{"generators": ["x^2", "y^3"], "exponent": "5/6"}],
//!   "tasks": ["invariants", "lift"],
//!   "options": {"blowup_cap": 64, "ext_cap": 16, "degree_slack": 6, "weight_bound": 12}
//! }
//! ```
//!
//! `curve` and `ideals` are each optional but one of them is required; a
//! curve alone is read as the ideal `(curve)` with exponent 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ideal::MultiIdeal;
use crate::invariants::{invariants, rational_string, ExtRational};
use crate::lifting;
use crate::polyring::Poly;
use crate::report;
use crate::resolution::{embedded_resolve, log_resolve, ResolveOptions, DEFAULT_BLOWUP_CAP};
use crate::scalars::{Field, DEFAULT_EXTENSION_CAP};
use crate::toric::{toric_lct, toric_mld, NewtonData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Resolve,
    Invariants,
    Lift,
    Campillo,
    Oracle,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Resolve => "resolve",
            Task::Invariants => "invariants",
            Task::Lift => "lift",
            Task::Campillo => "campillo",
            Task::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub generators: Vec<String>,
    #[serde(default = "default_exponent")]
    pub exponent: String,
}

fn default_exponent() -> String {
    "1".into()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub blowup_cap: Option<usize>,
    pub ext_cap: Option<usize>,
    pub degree_slack: Option<usize>,
    pub weight_bound: Option<u64>,
    /// Where to write the JSON artifact.
    pub out: Option<String>,
    /// Where to write the dual graph of the first resolution.
    pub dot: Option<String>,
}

impl Options {
    pub fn resolve_options(&self) -> ResolveOptions {
        ResolveOptions {
            blowup_cap: self.blowup_cap.unwrap_or(DEFAULT_BLOWUP_CAP),
            ext_cap: self.ext_cap.unwrap_or(DEFAULT_EXTENSION_CAP),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: String,
    #[serde(default)]
    pub curve: Option<String>,
    #[serde(default)]
    pub ideals: Option<Vec<IdealSpec>>,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub options: Options,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("problem file: {e}")))
    }

    pub fn field(&self) -> Result<Field> {
        Field::parse(&self.field)
    }

    pub fn curve(&self, field: &Field) -> Result<Option<Poly>> {
        self.curve.as_deref().map(|c| Poly::parse(c, field)).transpose()
    }

    pub fn multi_ideal(&self, field: &Field) -> Result<MultiIdeal> {
        if let Some(ideals) = &self.ideals {
            let parsed = ideals
                .iter()
                .map(|i| Ok((i.generators.iter().map(String::as_str).collect(), parse_exponent(&i.exponent)?)))
                .collect::<Result<Vec<_>>>()?;
            return MultiIdeal::parse(field, &parsed);
        }
        match self.curve(field)? {
            Some(f) => MultiIdeal::principal(&f, BigRational::one()),
            None => Err(Error::InvalidInput("the problem needs `curve` or `ideals`".into())),
        }
    }
}

/// `p/q` or an integer, positive.
pub fn parse_exponent(text: &str) -> Result<BigRational> {
    let bad = || Error::Syntax {
        position: 0,
        message: format!("invalid exponent `{text}`"),
    };
    let t = text.trim();
    let r = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
    };
    if !r.is_positive() {
        return Err(Error::InvalidInput(format!("exponent {text} is not positive")));
    }
    Ok(r)
}

/// Artifacts of one problem.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub dot: Option<String>,
    /// First failed verification, if any.
    pub failure: Option<Error>,
}

fn oracle(m: &MultiIdeal, opts: &Options) -> Result<(Value, bool)> {
    let n = NewtonData::from_multi_ideal(m)?;
    let (lct, ray) = toric_lct(&n)?;
    let (mld, weight) = toric_mld(&n, opts.weight_bound)?;
    let (_, _, report) = invariants(m, opts.resolve_options())?;
    let agree = report.lct == ExtRational::Finite(lct.clone()) && report.mld == mld;
    Ok((
        json!({
            "lct": rational_string(&lct),
            "lct_ray": ray,
            "mld": mld,
            "mld_weight": weight,
            "resolution_lct": report.lct,
            "resolution_mld": report.mld,
            "agrees": agree,
        }),
        agree,
    ))
}

/// Runs the requested tasks (or `tasks` when given) on a problem.
pub fn run(problem: &ProblemFile, tasks: &[Task]) -> Result<Outcome> {
    let field = problem.field()?;
    let opts = problem.options.resolve_options();
    let slack = problem.options.degree_slack;
    let tasks = if tasks.is_empty() { &problem.tasks[..] } else { tasks };
    if tasks.is_empty() {
        return Err(Error::InvalidInput("no task requested".into()));
    }
    let mut out = Map::new();
    out.insert("field".into(), json!(field.name()));
    let mut dot = None;
    let mut failure = None;
    let mut fail = |what: String| {
        if failure.is_none() {
            failure = Some(Error::Verification(what));
        }
    };
    for &task in tasks {
        let value = match task {
            Task::Resolve => {
                let res = match problem.curve(&field)? {
                    Some(f) if problem.ideals.is_none() => embedded_resolve(&f, opts)?,
                    _ => log_resolve(&problem.multi_ideal(&field)?, opts)?,
                };
                dot.get_or_insert_with(|| report::dot(&res.tree));
                report::resolution_json(&res)
            }
            Task::Invariants => {
                let (res, table, rep) = invariants(&problem.multi_ideal(&field)?, opts)?;
                dot.get_or_insert_with(|| report::dot(&res.tree));
                let mut v = report::invariant_report_json(&rep, &table);
                v.as_object_mut()
                    .unwrap()
                    .insert("resolution".into(), report::resolution_json(&res));
                v
            }
            Task::Lift => {
                let a = lifting::lift(&problem.multi_ideal(&field)?, opts, slack)?;
                if !a.checks.all() {
                    fail(format!("lift checks failed: {:?}", a.checks));
                }
                report::lift_json(&a)
            }
            Task::Campillo => {
                let f = problem
                    .curve(&field)?
                    .ok_or_else(|| Error::InvalidInput("campillo needs `curve`".into()))?;
                let a = lifting::campillo(&f, opts, slack)?;
                if !a.checks.all() {
                    fail(format!("campillo checks failed: {:?}", a.checks));
                }
                report::lift_json(&a)
            }
            Task::Oracle => {
                let (v, agree) = oracle(&problem.multi_ideal(&field)?, &problem.options)?;
                if !agree {
                    fail("toric oracle disagrees with the resolution".into());
                }
                v
            }
        };
        out.insert(task.name().into(), value);
    }
    Ok(Outcome {
        json: Value::Object(out),
        dot,
        failure,
    })
}

/// The selftest battery: `(name, problem file)`.
pub fn selftest_problems() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "cusp-gf5",
            r#"{"field": "GF(5)", "curve": "y^2 - x^3", "tasks": ["resolve", "invariants", "campillo"]}"#,
        ),
        (
            "cusp-gf2",
            r#"{"field": "GF(2)", "curve": "y^2 + x^3", "tasks": ["invariants"]}"#,
        ),
        (
            "wild-cusp-gf2",
            r#"{"field": "GF(2)", "curve": "y^2 + x^2 + x^3", "tasks": ["campillo", "lift"]}"#,
        ),
        (
            "tacnode-gf2",
            r#"{"field": "GF(2)", "curve": "(x^2 + x*y + y^2)^2 + x^5", "tasks": ["resolve", "invariants"]}"#,
        ),
        (
            "monomial-oracle",
            r#"{"field": "GF(3)", "ideals": [{"generators": ["x^2", "y^3"], "exponent": "5/6"}], "tasks": ["oracle", "lift"]}"#,
        ),
        (
            "pair-gf3",
            r#"{"field": "GF(3)", "ideals": [{"generators": ["y^2 - x^3"], "exponent": "1/2"}, {"generators": ["x", "y^2"], "exponent": "1"}], "tasks": ["invariants", "lift"]}"#,
        ),
        (
            "reducible-gf5",
            r#"{"field": "GF(5)", "curve": "(y^2 - x^3)*(y - x)", "tasks": ["campillo"]}"#,
        ),
    ]
}

/// Runs the battery and collects everything in one artifact. The second
/// component is the list of problems that failed.
pub fn selftest() -> (Value, Vec<String>) {
    let mut out = Map::new();
    let mut failed = Vec::new();
    for (name, text) in selftest_problems() {
        let v = match ProblemFile::from_json(text).and_then(|p| run(&p, &[])) {
            Ok(o) => {
                if let Some(e) = o.failure {
                    failed.push(format!("{name}: {e}"));
                }
                o.json
            }
            Err(e) => {
                failed.push(format!("{name}: {e}"));
                error_json(&e)
            }
        };
        out.insert(name.into(), v);
    }
    (Value::Object(out), failed)
}

/// Machine-readable diagnostic for an error.
pub fn error_json(e: &Error) -> Value {
    let mut v = json!({"error": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()});
    if let Error::Syntax { position, .. } = e {
        v.as_object_mut().unwrap().insert("position".into(), json!(position));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_invariants_task() {
        let p = ProblemFile::from_json(r#"{"field": "GF(5)", "curve": "y^2 - x^3", "tasks": ["invariants"]}"#).unwrap();
        let o = run(&p, &[]).unwrap();
        assert_eq!(o.json["invariants"]["lct"], "5/6");
        assert!(o.dot.unwrap().contains("E3 [-1, k=4]"));
    }

    #[test]
    fn wild_lift_task() {
        let p = ProblemFile::from_json(r#"{"field": "GF(2)", "curve": "y^2 + x^2 + x^3"}"#).unwrap();
        let o = run(&p, &[Task::Lift]).unwrap();
        assert!(o.failure.is_none());
        assert_eq!(o.json["lift"]["lifted_ideals"][0]["generators"][0], "x^2 - 2*x*y + y^2 + x^3");
        assert_eq!(o.json["lift"]["verification"]["all"], true);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(
            ProblemFile::from_json(r#"{"field": "GF(5)", "curve": "x", "colour": 1}"#),
            Err(Error::InvalidInput(_))
        ));
        let p = ProblemFile::from_json(r#"{"field": "GF(5", "curve": "x", "tasks": ["resolve"]}"#).unwrap();
        let e = run(&p, &[]).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert_eq!(error_json(&e)["error"], "SyntaxError");
        assert_eq!(parse_exponent("5/6").unwrap(), BigRational::new(5.into(), 6.into()));
        assert!(parse_exponent("-1").is_err());
    }

    #[test]
    fn oracle_task_agrees() {
        let p = ProblemFile::from_json(
            r#"{"field": "GF(3)", "ideals": [{"generators": ["x", "y"], "exponent": "3"}], "tasks": ["oracle"]}"#,
        )
        .unwrap();
        let o = run(&p, &[]).unwrap();
        assert_eq!(o.json["oracle"]["mld"], "-inf");
        assert_eq!(o.json["oracle"]["lct"], "2/3");
        assert_eq!(o.json["oracle"]["agrees"], true);
    }
}
