//! JSON documents for every value the command line reads or writes.
//!
//! Rationals are always rendered as `"p/q"` strings (or `"p"` for
//! integers); counts and coefficients are plain JSON integers.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::audit::{AuditCase, AuditReport};
use crate::bundle::{HnReport, OrbBundle};
use crate::divisor::{FloorView, OrbDivisor, OrbLineClass, OrbifoldCurve};
use crate::equivariant::{CyclicCoverSpec, EqLineBundle};
use crate::monodromy::{MonodromyDatum, Permutation};
use crate::orbicore::{CurveTag, Point, RamificationProfile, TameBranchData};
use crate::{format_rational, parse_rational, Error, Rational};

/// Failure while reading a document.
#[derive(Debug, Error)]
pub enum DocError {
    /// Malformed JSON or a field of the wrong shape.
    #[error("schema error: {0}")]
    Schema(String),
    /// Well-formed document describing an invalid object.
    #[error(transparent)]
    Invalid(#[from] Error),
}

pub type DocResult<T> = std::result::Result<T, DocError>;

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> DocResult<T> {
    serde_json::from_str(text).map_err(|e| DocError::Schema(e.to_string()))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> DocResult<T> {
    serde_json::from_value(v).map_err(|e| DocError::Schema(e.to_string()))
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn rational_list(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rational_json).collect())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileDoc {
    source_genus: u32,
    target_genus: u32,
    #[serde(default)]
    characteristic: Option<u64>,
    degree: u64,
    galois: bool,
    fibers: BTreeMap<String, Vec<u64>>,
}

/// Reads a cover profile; the target is named `X`, the source `Y`.
/// `source_genus` must agree with Riemann–Hurwitz.
pub fn profile_from_json(text: &str, default_characteristic: u64) -> DocResult<RamificationProfile> {
    let doc: ProfileDoc = parse(text)?;
    let target = CurveTag::new(
        "X",
        doc.target_genus,
        doc.characteristic.unwrap_or(default_characteristic),
    )?;
    let f = RamificationProfile::new("Y", target, doc.degree, doc.fibers, doc.galois)?;
    if f.source().genus() != doc.source_genus {
        return Err(Error::RiemannHurwitz(format!(
            "declared source genus {} but Riemann-Hurwitz gives {}",
            doc.source_genus,
            f.source().genus()
        ))
        .into());
    }
    Ok(f)
}

pub fn profile_to_json(f: &RamificationProfile) -> Value {
    let fibers: Map<String, Value> = f
        .fibers()
        .iter()
        .map(|(p, part)| (p.to_string(), json!(part)))
        .collect();
    json!({
        "source_genus": f.source().genus(),
        "target_genus": f.target().genus(),
        "characteristic": f.target().characteristic(),
        "degree": f.degree(),
        "galois": f.is_galois(),
        "fibers": fibers,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchDoc {
    curve: String,
    orders: BTreeMap<String, u64>,
}

/// Reads branch data; the document's curve name must be `curve`'s.
pub fn branch_data_from_value(v: Value, curve: &CurveTag) -> DocResult<TameBranchData> {
    let doc: BranchDoc = from_value(v)?;
    if doc.curve != curve.name() {
        return Err(Error::CurveMismatch {
            expected: curve.name().to_owned(),
            found: doc.curve,
        }
        .into());
    }
    Ok(TameBranchData::new(curve.clone(), doc.orders)?)
}

pub fn branch_data_from_json(text: &str, curve: &CurveTag) -> DocResult<TameBranchData> {
    branch_data_from_value(parse(text)?, curve)
}

pub fn branch_data_to_json(p: &TameBranchData) -> Value {
    let orders: Map<String, Value> = p
        .orders()
        .iter()
        .map(|(x, &n)| (x.to_string(), json!(n)))
        .collect();
    json!({ "curve": p.curve().name(), "orders": orders })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CycleDoc {
    One(String),
    Many(Vec<String>),
}

impl CycleDoc {
    fn to_permutation(&self, d: usize) -> DocResult<Permutation> {
        let text = match self {
            CycleDoc::One(s) => s.clone(),
            CycleDoc::Many(v) => v.concat(),
        };
        Ok(Permutation::parse_cycles(&text, d)?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonodromyDoc {
    base_genus: u32,
    degree: usize,
    #[serde(default)]
    characteristic: Option<u64>,
    #[serde(default)]
    handles: Vec<(CycleDoc, CycleDoc)>,
    #[serde(default)]
    branch_cycles: Map<String, Value>,
}

/// Reads a monodromy datum. Branch cycles enter the product relation in
/// document order.
pub fn monodromy_from_json(text: &str, default_characteristic: u64) -> DocResult<MonodromyDatum> {
    let doc: MonodromyDoc = parse(text)?;
    let d = doc.degree;
    let handles = doc
        .handles
        .iter()
        .map(|(a, b)| Ok((a.to_permutation(d)?, b.to_permutation(d)?)))
        .collect::<DocResult<Vec<_>>>()?;
    let cycles = doc
        .branch_cycles
        .into_iter()
        .map(|(x, v)| {
            let c: CycleDoc = from_value(v)?;
            Ok((Point::new(x), c.to_permutation(d)?))
        })
        .collect::<DocResult<Vec<_>>>()?;
    Ok(MonodromyDatum::new(
        doc.base_genus,
        d,
        doc.characteristic.unwrap_or(default_characteristic),
        handles,
        cycles,
    )?)
}

pub fn monodromy_to_json(m: &MonodromyDatum) -> Value {
    let handles: Vec<Value> = m
        .handles()
        .iter()
        .map(|(a, b)| json!([a.to_string(), b.to_string()]))
        .collect();
    let cycles: Map<String, Value> = m
        .branch_cycles()
        .iter()
        .map(|(x, s)| (x.to_string(), json!(s.to_string())))
        .collect();
    json!({
        "base_genus": m.base_genus(),
        "degree": m.degree(),
        "characteristic": m.characteristic(),
        "handles": handles,
        "branch_cycles": cycles,
    })
}

/// True when the document looks like a monodromy datum rather than a
/// profile.
pub fn is_monodromy_document(text: &str) -> DocResult<bool> {
    let v: Value = parse(text)?;
    Ok(v.get("branch_cycles").is_some() || v.get("handles").is_some())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorDoc {
    coefficients: BTreeMap<String, i64>,
}

pub fn divisor_from_value(v: Value, ambient: &OrbifoldCurve) -> DocResult<OrbDivisor> {
    let doc: DivisorDoc = from_value(v)?;
    Ok(OrbDivisor::new(ambient.clone(), doc.coefficients))
}

pub fn divisor_from_json(text: &str, ambient: &OrbifoldCurve) -> DocResult<OrbDivisor> {
    divisor_from_value(parse(text)?, ambient)
}

pub fn divisor_to_json(d: &OrbDivisor) -> Value {
    let c: Map<String, Value> = d
        .coefficients()
        .iter()
        .map(|(p, &m)| (p.to_string(), json!(m)))
        .collect();
    json!({ "coefficients": c })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassDoc {
    #[serde(default)]
    residues: BTreeMap<String, (u64, u64)>,
    degree: String,
}

/// Reads a class document. Each residue carries its order `[r, n]`, which
/// must match the ambient.
pub fn class_from_value(v: Value, ambient: &OrbifoldCurve) -> DocResult<OrbLineClass> {
    let doc: ClassDoc = from_value(v)?;
    let degree = parse_rational(&doc.degree)
        .ok_or_else(|| DocError::Schema(format!("bad rational `{}`", doc.degree)))?;
    let mut residues = Vec::new();
    for (p, (r, n)) in doc.residues {
        let p = Point::new(p);
        if ambient.order(&p) != n {
            return Err(Error::InvalidClass(format!(
                "residue at `{p}` declares order {n}, ambient has {}",
                ambient.order(&p)
            ))
            .into());
        }
        residues.push((p, r));
    }
    Ok(OrbLineClass::new(ambient.clone(), residues, degree)?)
}

pub fn class_to_json(c: &OrbLineClass) -> Value {
    let residues: Map<String, Value> = c
        .residues()
        .iter()
        .map(|(p, &r)| (p.to_string(), json!([r, c.ambient().order(p)])))
        .collect();
    json!({ "residues": residues, "degree": rational_json(&c.degree()) })
}

/// Branch data implied by the residues of class documents: the declared
/// order of every residue point.
pub fn infer_branch_data(v: &Value, curve: &CurveTag) -> DocResult<TameBranchData> {
    let summands = v
        .get("summands")
        .and_then(Value::as_array)
        .ok_or_else(|| DocError::Schema("missing `summands` array".into()))?;
    let mut orders: BTreeMap<String, u64> = BTreeMap::new();
    for s in summands {
        let doc: ClassDoc = from_value(s.clone())?;
        for (p, (_, n)) in doc.residues {
            let e = orders.entry(p).or_insert(n);
            if *e != n {
                return Err(DocError::Schema("conflicting orders across summands".into()));
            }
        }
    }
    Ok(TameBranchData::new(curve.clone(), orders)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleDoc {
    summands: Vec<Value>,
}

pub fn bundle_from_value(v: Value, ambient: &OrbifoldCurve) -> DocResult<OrbBundle> {
    let doc: BundleDoc = from_value(v)?;
    let summands = doc
        .summands
        .into_iter()
        .map(|s| class_from_value(s, ambient))
        .collect::<DocResult<Vec<_>>>()?;
    Ok(OrbBundle::new(summands)?)
}

pub fn bundle_to_json(e: &OrbBundle) -> Value {
    json!({ "summands": e.summands().iter().map(class_to_json).collect::<Vec<_>>() })
}

pub fn hn_to_json(h: &HnReport) -> Value {
    Value::Array(
        h.strata
            .iter()
            .map(|s| json!({ "slope": rational_json(&s.slope), "summands": s.summands }))
            .collect(),
    )
}

pub fn floor_view_to_json(v: &FloorView) -> Value {
    let weights: Map<String, Value> = v
        .weights
        .iter()
        .map(|(p, w)| (p.to_string(), rational_json(w)))
        .collect();
    json!({ "coarse_degree": v.coarse_degree, "weights": weights })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EqDoc {
    m: u64,
    a: i64,
    b: i64,
    #[serde(default)]
    orbits: BTreeMap<String, i64>,
    character: i64,
}

pub fn eq_line_bundle_from_value(v: Value, characteristic: u64) -> DocResult<EqLineBundle> {
    let doc: EqDoc = from_value(v)?;
    let spec = CyclicCoverSpec::new(doc.m, characteristic)?;
    Ok(EqLineBundle::new(spec, doc.a, doc.b, doc.orbits, doc.character))
}

pub fn eq_line_bundle_from_json(text: &str, characteristic: u64) -> DocResult<EqLineBundle> {
    eq_line_bundle_from_value(parse(text)?, characteristic)
}

pub fn eq_line_bundle_to_json(l: &EqLineBundle) -> Value {
    let orbits: Map<String, Value> = l
        .orbits()
        .iter()
        .map(|(p, &k)| (p.to_string(), json!(k)))
        .collect();
    json!({
        "m": l.spec().m(),
        "a": l.a(),
        "b": l.b(),
        "orbits": orbits,
        "character": l.character(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AuditCaseDoc {
    id: String,
    m: u64,
    #[serde(default)]
    orders: BTreeMap<String, u64>,
    left: Value,
    right: Value,
}

/// Audit case: `{"id", "m", "orders": {...}, "left": <divisor>, "right": <divisor>}`
/// on the Kummer target, whose points `0` and `inf` are the branch points.
pub fn audit_case_from_json(text: &str) -> DocResult<AuditCase> {
    let doc: AuditCaseDoc = parse(text)?;
    let spec = CyclicCoverSpec::new(doc.m, 0)?;
    let p = TameBranchData::new(spec.target_curve(), doc.orders)?;
    let ambient = OrbifoldCurve::new(p.clone());
    Ok(AuditCase {
        id: doc.id,
        m: doc.m,
        branch_data: p,
        left: divisor_from_value(doc.left, &ambient)?,
        right: divisor_from_value(doc.right, &ambient)?,
    })
}

pub fn audit_report_to_json(r: &AuditReport) -> Value {
    let statuses: Vec<Value> = r
        .statuses
        .iter()
        .map(|s| {
            json!({
                "lemma": s.lemma,
                "reading": s.reading,
                "status": s.status.as_str(),
                "note": s.note,
            })
        })
        .collect();
    json!({
        "case": r.case_id,
        "hypotheses": {
            "cover_degree": r.cover_degree,
            "connected": r.connected,
            "galois": r.galois,
            "genuinely_ramified": r.genuinely_ramified,
            "branch_data": branch_data_to_json(&r.branch_data),
            "cover_branch_data": branch_data_to_json(&r.cover_branch_data),
            "pulled_back_branch_data": branch_data_to_json(&r.pulled_back_branch_data),
            "left": class_to_json(&r.left),
            "right": class_to_json(&r.right),
        },
        "quantities": {
            "slope_left": rational_json(&r.slope_left),
            "slope_right": rational_json(&r.slope_right),
            "hom_orbifold": r.hom_orbifold,
            "hom_equivariant": r.hom_equivariant,
            "hom_plain_pullback": r.hom_plain_pullback,
            "pushforward_structure_degrees": rational_list(&r.pushforward_structure_degrees),
            "coarse_pushforward_degrees": r.coarse_pushforward_degrees,
            "quotient_degrees_coarse": rational_list(&r.quotient_degrees_coarse),
            "quotient_degrees_stack": r.quotient_degrees_stack.as_deref().map(rational_list),
            "mu_max_twisted_coarse": rational_json(&r.mu_max_twisted_coarse),
            "mu_max_twisted_stack": r.mu_max_twisted_stack.as_ref().map(rational_json),
        },
        "statuses": statuses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn profile_document() {
        let text = r#"{"source_genus": 0, "target_genus": 0, "characteristic": 0,
                       "degree": 2, "galois": true, "fibers": {"0": [2], "inf": [2]}}"#;
        let f = profile_from_json(text, 0).unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(profile_from_json(&profile_to_json(&f).to_string(), 0).unwrap(), f);
        let bad_genus = text.replace("\"source_genus\": 0", "\"source_genus\": 1");
        assert!(matches!(profile_from_json(&bad_genus, 0), Err(DocError::Invalid(_))));
        assert!(matches!(profile_from_json("{", 0), Err(DocError::Schema(_))));
        assert!(matches!(
            profile_from_json(r#"{"degree": 2}"#, 0),
            Err(DocError::Schema(_))
        ));
    }

    #[test]
    fn monodromy_document_keeps_order() {
        let text = r#"{"base_genus": 0, "degree": 3,
                       "branch_cycles": {"b": "(1 2)", "a": ["(2 3)"], "c": "(1 3 2)"}}"#;
        let m = monodromy_from_json(text, 0).unwrap();
        let labels: Vec<&str> = m.branch_cycles().iter().map(|(p, _)| p.as_str()).collect();
        assert_eq!(labels, vec!["b", "a", "c"]);
        assert_eq!(monodromy_from_json(&monodromy_to_json(&m).to_string(), 0).unwrap(), m);
        let handles = r#"{"base_genus": 1, "degree": 2, "handles": [["(1 2)", "()"]]}"#;
        assert!(monodromy_from_json(handles, 0).is_ok());
        assert!(is_monodromy_document(handles).unwrap());
        let broken = r#"{"base_genus": 0, "degree": 3, "branch_cycles": {"a": "(1 2)"}}"#;
        assert!(matches!(monodromy_from_json(broken, 0), Err(DocError::Invalid(_))));
    }

    #[test]
    fn class_document_checks_orders() {
        let line = CurveTag::projective_line("X");
        let p = TameBranchData::new(line, [("0", 2), ("inf", 2)]).unwrap();
        let a = OrbifoldCurve::new(p);
        let good = json!({"residues": {"0": [1, 2], "inf": [1, 2]}, "degree": "0"});
        let c = class_from_value(good, &a).unwrap();
        assert_eq!(c.floor_view().coarse_degree, -1);
        assert_eq!(class_from_value(class_to_json(&c), &a).unwrap(), c);
        let wrong_order = json!({"residues": {"0": [1, 3]}, "degree": "1/3"});
        assert!(matches!(class_from_value(wrong_order, &a), Err(DocError::Invalid(_))));
        let bad_rational = json!({"degree": "one"});
        assert!(matches!(class_from_value(bad_rational, &a), Err(DocError::Schema(_))));
    }

    #[test]
    fn branch_document_curve_must_match() {
        let line = CurveTag::projective_line("X");
        let v = json!({"curve": "Y", "orders": {"0": 2}});
        assert!(matches!(branch_data_from_value(v, &line), Err(DocError::Invalid(_))));
    }

    #[test]
    fn audit_case_document() {
        let text = r#"{"id": "c", "m": 2, "orders": {"0": 2, "inf": 2},
                       "left": {"coefficients": {"0": 1}},
                       "right": {"coefficients": {"inf": 1}}}"#;
        let case = audit_case_from_json(text).unwrap();
        assert_eq!(case, crate::audit::builtin_case("kummer2-halfweights").map(|mut c| {
            c.id = "c".into();
            c
        }).unwrap());
    }

    proptest! {
        #[test]
        fn eq_document_round_trip(m in 2u64..13, a in -50i64..50, b in -50i64..50, c in 0i64..12, k in -3i64..3) {
            let spec = CyclicCoverSpec::new(m, 0).unwrap();
            let l = EqLineBundle::new(spec, a, b, [("q", k)], c);
            let back = eq_line_bundle_from_value(eq_line_bundle_to_json(&l), 0).unwrap();
            prop_assert_eq!(back, l);
        }
    }
}
