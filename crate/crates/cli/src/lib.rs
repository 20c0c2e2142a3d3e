//! Subcommand implementations for the `orbicurve` binary.
//!
//! Each `cmd_*` function returns the text to print and an exit code, or a
//! [`CliError`] carrying its own exit code.

use std::fmt;
use std::fs;
use std::path::Path;

use orbicurve::audit::{builtin_case, run_audit, AuditReport};
use orbicurve::bundle::OrbBundle;
use orbicurve::divisor::{hom_dim, OrbifoldCurve};
use orbicurve::equivariant::{
    h0_invariants, h0_plain, hom_dim_equivariant, hom_dim_plain, s_pushforward, t_pullback,
    CyclicCoverSpec, EqLineBundle,
};
use orbicurve::io::{self, DocError};
use orbicurve::orbicore::{
    branch_data_of_cover, pullback_branch_data, CurveTag, RamificationProfile, TameBranchData,
};
use orbicurve::selftest;
use orbicurve::{format_rational, Error, Rational};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;

/// Flags shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Global {
    pub seed: u64,
    pub scale: usize,
    pub json: bool,
    pub characteristic: u64,
}

impl Default for Global {
    fn default() -> Self {
        Global { seed: 0, scale: 1, json: false, characteristic: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Schema(String),
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Semantic(_) => EXIT_SEMANTIC,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(m) => write!(f, "schema error: {m}"),
            CliError::Semantic(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Schema(m) => CliError::Schema(m),
            DocError::Invalid(e) => CliError::Semantic(e.to_string()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Semantic(e.to_string())
    }
}

/// Printed text plus exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: EXIT_OK }
    }
}

pub type CliResult = Result<Outcome, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

fn parse_value(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

/// `key: value` lines; strings unquoted, everything else compact JSON.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    }
    out
}

fn render(global: &Global, v: &Value) -> String {
    if global.json {
        pretty(v)
    } else {
        render_text(v)
    }
}

/// Reads a cover given either as a monodromy datum or as a profile.
fn load_cover(global: &Global, path: &Path) -> Result<RamificationProfile, CliError> {
    let text = read(path)?;
    if io::is_monodromy_document(&text)? {
        let m = io::monodromy_from_json(&text, global.characteristic)?;
        Ok(m.ramification_profile_of()?)
    } else {
        Ok(io::profile_from_json(&text, global.characteristic)?)
    }
}

fn load_branch(path: &Path, curve: &CurveTag) -> Result<TameBranchData, CliError> {
    Ok(io::branch_data_from_json(&read(path)?, curve)?)
}

fn profile_line(f: &RamificationProfile) -> String {
    let parts: Vec<String> = f
        .fibers()
        .iter()
        .map(|(x, part)| {
            let idx: Vec<String> = part.iter().map(u64::to_string).collect();
            format!("{x}: [{}]", idx.join(", "))
        })
        .collect();
    if parts.is_empty() {
        "none".to_owned()
    } else {
        parts.join("; ")
    }
}

pub fn cmd_cover_report(global: &Global, path: &Path) -> CliResult {
    let m = io::monodromy_from_json(&read(path)?, global.characteristic)?;
    if !m.is_connected() {
        return Err(Error::Disconnected.into());
    }
    let f = m.ramification_profile_of()?;
    let group_order = m.group_order()?;
    let genuine = m.is_genuinely_ramified()?;
    let sub = m.max_etale_subcover()?;
    let blocks: Vec<Vec<u32>> = sub
        .blocks
        .iter()
        .map(|b| b.iter().map(|&x| x + 1).collect())
        .collect();
    if global.json {
        let v = json!({
            "connected": true,
            "degree": m.degree(),
            "group_order": group_order,
            "galois": f.is_galois(),
            "profile": io::profile_to_json(&f),
            "riemann_hurwitz_genus": f.riemann_hurwitz_genus(),
            "genuinely_ramified": genuine,
            "max_etale_degree": sub.degree,
            "blocks": blocks,
        });
        return Ok(Outcome::ok(pretty(&v)));
    }
    let mut out = String::new();
    out.push_str("connected: true\n");
    out.push_str(&format!("degree: {}\n", m.degree()));
    out.push_str(&format!("group_order: {group_order}\n"));
    out.push_str(&format!("galois: {}\n", f.is_galois()));
    out.push_str(&format!("ramification_profile: {}\n", profile_line(&f)));
    out.push_str(&format!("riemann_hurwitz_genus: {}\n", f.riemann_hurwitz_genus()));
    out.push_str(&format!(
        "genuinely_ramified: {genuine}, max_etale_degree: {}\n",
        sub.degree
    ));
    out.push_str(&format!("blocks: {}\n", json!(blocks)));
    Ok(Outcome::ok(out))
}

pub fn cmd_branch_pullback(global: &Global, cover: &Path, branch: &Path) -> CliResult {
    let f = load_cover(global, cover)?;
    let p = load_branch(branch, f.target())?;
    let v = json!({
        "pullback": io::branch_data_to_json(&pullback_branch_data(&f, &p)?),
        "cover_branch_data": io::branch_data_to_json(&branch_data_of_cover(&f)?),
    });
    Ok(Outcome::ok(pretty(&v)))
}

/// Splits an optional inline `"branch"` entry off a document.
fn take_branch(
    v: &mut Value,
    curve: &CurveTag,
) -> Result<Option<TameBranchData>, CliError> {
    let Some(obj) = v.as_object_mut() else {
        return Err(CliError::Schema("expected a JSON object".into()));
    };
    match obj.remove("branch") {
        Some(b) => Ok(Some(io::branch_data_from_value(b, curve)?)),
        None => Ok(None),
    }
}

fn base_curve(global: &Global) -> Result<CurveTag, CliError> {
    Ok(CurveTag::new("X", 0, global.characteristic)?)
}

pub fn cmd_divisor_report(
    global: &Global,
    path: &Path,
    refine: Option<&Path>,
    cover: Option<&Path>,
) -> CliResult {
    let curve = base_curve(global)?;
    let mut v = parse_value(&read(path)?)?;
    let p = take_branch(&mut v, &curve)?.unwrap_or_else(|| TameBranchData::trivial(curve.clone()));
    let ambient = OrbifoldCurve::new(p);
    let d = io::divisor_from_value(v, &ambient)?;
    let class = d.class_of()?;
    let mut report = Map::new();
    report.insert("branch_data".into(), io::branch_data_to_json(ambient.branch_data()));
    report.insert("divisor".into(), io::divisor_to_json(&d));
    report.insert("deg_p".into(), io::rational_json(&d.deg_p()));
    report.insert("class".into(), io::class_to_json(&class));
    report.insert("floor_view".into(), io::floor_view_to_json(&class.floor_view()));
    report.insert("h0".into(), json!(class.h0()));
    if let Some(r) = refine {
        let finer = load_branch(r, &curve)?;
        let lifted = d.iota_pullback(&finer)?;
        report.insert(
            "iota_pullback".into(),
            json!({ "divisor": io::divisor_to_json(&lifted), "deg_p": io::rational_json(&lifted.deg_p()) }),
        );
    }
    if let Some(c) = cover {
        let f = load_cover(global, c)?;
        let up = d.cover_pullback(&f)?;
        report.insert(
            "cover_pullback".into(),
            json!({
                "branch_data": io::branch_data_to_json(up.ambient().branch_data()),
                "divisor": io::divisor_to_json(&up),
                "deg_p": io::rational_json(&up.deg_p()),
            }),
        );
    }
    Ok(Outcome::ok(render(global, &Value::Object(report))))
}

fn bundle_json(e: &OrbBundle) -> Value {
    json!({
        "rank": e.rank(),
        "deg_p": io::rational_json(&e.deg_p()),
        "slope": io::rational_json(&e.slope_p()),
        "hn": io::hn_to_json(&e.hn()),
        "semistable": e.is_semistable(),
        "polystable": e.is_polystable(),
        "stable": e.is_stable(),
    })
}

/// Bundle report; with `cover`, also the pullback to `(Y, Q)` where `Q`
/// defaults to `f*P`. A failed slope relation exits with code 1.
pub fn cmd_bundle_report(
    global: &Global,
    path: &Path,
    cover: Option<&Path>,
    target_branch: Option<&Path>,
) -> CliResult {
    let curve = base_curve(global)?;
    let mut v = parse_value(&read(path)?)?;
    let p = match take_branch(&mut v, &curve)? {
        Some(p) => p,
        None => io::infer_branch_data(&v, &curve)?,
    };
    let e = io::bundle_from_value(v, &OrbifoldCurve::new(p.clone()))?;
    let mut report = Map::new();
    report.insert("branch_data".into(), io::branch_data_to_json(&p));
    if let Value::Object(m) = bundle_json(&e) {
        report.extend(m);
    }
    let mut code = EXIT_OK;
    if let Some(c) = cover {
        let f = load_cover(global, c)?;
        let q = match target_branch {
            Some(t) => load_branch(t, f.source())?,
            None => pullback_branch_data(&f, &p)?,
        };
        let up = e.pullback(&f, &q)?;
        let expected = e.slope_p() * Rational::from_integer(f.degree() as i128);
        let relation = up.slope_p() == expected;
        if !relation {
            code = EXIT_PROPERTY;
        }
        let mut pb = Map::new();
        pb.insert("branch_data".into(), io::branch_data_to_json(&q));
        if let Value::Object(m) = bundle_json(&up) {
            pb.extend(m);
        }
        pb.insert("summands".into(), io::bundle_to_json(&up)["summands"].clone());
        pb.insert("slope_relation".into(), json!(relation));
        report.insert("pullback".into(), Value::Object(pb));
    }
    Ok(Outcome { output: render(global, &Value::Object(report)), code })
}

fn eq_json(w: &EqLineBundle) -> Value {
    json!({
        "bundle": io::eq_line_bundle_to_json(w),
        "eq_degree": w.eq_degree(),
        "normal_form": io::eq_line_bundle_to_json(&w.normalize()),
        "pushforward": io::class_to_json(&s_pushforward(w)),
        "h0_invariants": h0_invariants(w),
        "h0_plain": h0_plain(w),
    })
}

/// Loads either an equivariant bundle or `{"m", "class"}`, the latter
/// pulled back with `T`.
fn load_eq(global: &Global, path: &Path) -> Result<(EqLineBundle, Option<Value>), CliError> {
    let v = parse_value(&read(path)?)?;
    if let Some(class) = v.get("class") {
        let m = v
            .get("m")
            .and_then(Value::as_u64)
            .ok_or_else(|| CliError::Schema("missing integer `m`".into()))?;
        let spec = CyclicCoverSpec::new(m, global.characteristic)?;
        let l = io::class_from_value(class.clone(), &spec.target_orbifold())?;
        Ok((t_pullback(&l, spec)?, Some(io::class_to_json(&l))))
    } else {
        Ok((io::eq_line_bundle_from_value(v, global.characteristic)?, None))
    }
}

pub fn cmd_equiv_report(global: &Global, path: &Path, hom_with: Option<&Path>) -> CliResult {
    let (w, source) = load_eq(global, path)?;
    let mut report = Map::new();
    if let Some(s) = source {
        report.insert("class".into(), s);
    }
    if let Value::Object(m) = eq_json(&w) {
        report.extend(m);
    }
    if let Some(other) = hom_with {
        let (w2, _) = load_eq(global, other)?;
        let down = hom_dim(&s_pushforward(&w), &s_pushforward(&w2))?;
        report.insert(
            "hom".into(),
            json!({
                "equivariant": hom_dim_equivariant(&w, &w2)?,
                "plain": hom_dim_plain(&w, &w2)?,
                "orbifold": down,
            }),
        );
    }
    Ok(Outcome::ok(render(global, &Value::Object(report))))
}

fn audit_text(r: &AuditReport) -> String {
    let q = |x: &Rational| format_rational(x);
    let list = |xs: &[Rational]| xs.iter().map(q).collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    out.push_str(&format!("case: {}\n", r.case_id));
    out.push_str(&format!(
        "cover: degree {}, connected {}, galois {}, genuinely_ramified {}\n",
        r.cover_degree, r.connected, r.galois, r.genuinely_ramified
    ));
    out.push_str(&format!("branch_data: {}\n", io::branch_data_to_json(&r.branch_data)["orders"]));
    out.push_str(&format!("cover_branch_data: {}\n", io::branch_data_to_json(&r.cover_branch_data)["orders"]));
    out.push_str(&format!("slopes: {}, {}\n", q(&r.slope_left), q(&r.slope_right)));
    let eq = r.hom_equivariant.map_or("n/a".to_owned(), |h| h.to_string());
    out.push_str(&format!(
        "hom: orbifold {}, equivariant {eq}, plain_pullback {}\n",
        r.hom_orbifold, r.hom_plain_pullback
    ));
    out.push_str(&format!("pushforward_structure_degrees: [{}]\n", list(&r.pushforward_structure_degrees)));
    out.push_str(&format!("quotient_degrees_coarse: [{}]\n", list(&r.quotient_degrees_coarse)));
    match &r.quotient_degrees_stack {
        Some(ds) => out.push_str(&format!("quotient_degrees_stack: [{}]\n", list(ds))),
        None => out.push_str("quotient_degrees_stack: n/a\n"),
    }
    for s in &r.statuses {
        out.push_str(&format!("{} [{}]: {}\n", s.lemma, s.reading, s.status.as_str()));
    }
    out
}

/// `case` is a builtin id or a path to a case document.
pub fn cmd_audit_lemmas(global: &Global, case: &str) -> CliResult {
    let case = match builtin_case(case) {
        Some(c) => c,
        None => io::audit_case_from_json(&read(Path::new(case))?)?,
    };
    let report = run_audit(&case)?;
    let out = if global.json {
        pretty(&io::audit_report_to_json(&report))
    } else {
        audit_text(&report)
    };
    Ok(Outcome::ok(out))
}

pub fn cmd_selftest(global: &Global, inject_fault: Option<&str>) -> CliResult {
    if let Some(name) = inject_fault {
        if !selftest::SUITES.contains(&name) {
            return Err(CliError::Schema(format!("unknown suite `{name}`")));
        }
    }
    let results = selftest::run(&selftest::Options {
        seed: global.seed,
        scale: global.scale,
        inject_fault: inject_fault.map(str::to_owned),
    });
    let passed = results.iter().all(|r| r.passed());
    let out = if global.json {
        let suites: Vec<Value> = results
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "cases": r.cases,
                    "failures": r.failures,
                    "passed": r.passed(),
                    "first_failure": r.first_failure,
                })
            })
            .collect();
        pretty(&json!({
            "seed": global.seed,
            "scale": global.scale,
            "passed": passed,
            "suites": suites,
        }))
    } else {
        let mut out = String::new();
        for r in &results {
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!("{verdict} {} ({} cases)", r.name, r.cases));
            if let Some(f) = &r.first_failure {
                out.push_str(&format!(": {f}"));
            }
            out.push('\n');
        }
        let total: usize = results.iter().map(|r| r.cases).sum();
        out.push_str(&format!(
            "{}: {} suites, {total} cases\n",
            if passed { "ok" } else { "failed" },
            results.len()
        ));
        out
    };
    Ok(Outcome { output: out, code: if passed { EXIT_OK } else { EXIT_PROPERTY } })
}
