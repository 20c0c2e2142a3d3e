//! Seeded property suites behind the `selftest` subcommand.
//!
//! Every suite draws `base * scale` random cases from its own stream, so a
//! suite's verdict depends only on the seed and the scale. Scale 0 runs
//! nothing and passes.

use rand::Rng;

use crate::audit::{builtin_case, run_audit, BUILTIN_IDS};
use crate::bundle::OrbBundle;
use crate::divisor::{hom_dim, search_linear_equivalence, OrbDivisor, OrbifoldCurve};
use crate::equivariant::{
    hom_dim_equivariant, hom_dim_plain, pushforward_structure, s_pushforward, t_pullback,
    CyclicCoverSpec,
};
use crate::gen::{self, Rng64, SeedableRng};
use crate::orbicore::{
    branch_data_leq, branch_data_of_cover, is_etale_morphism, is_geometric_witness,
    pullback_branch_data, CurveTag, RamificationProfile,
};
use crate::{Rational, Result};

/// Names of all suites, in run order.
pub const SUITES: [&str; 13] = [
    "degree_multiplicativity",
    "iota_invariance",
    "branch_pullback",
    "genuine_ramification",
    "max_etale_blocks",
    "kummer_family",
    "equivariant_round_trip",
    "hom_equivalence",
    "adjunction",
    "parabolic_identity",
    "hn_coherence",
    "class_equivalence",
    "audit_builtin",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub seed: u64,
    pub scale: usize,
    /// Suite whose check is deliberately inverted, to exercise the failure
    /// path of the harness.
    pub inject_fault: Option<String>,
}

/// A single case: `Ok(None)` passes, `Ok(Some(msg))` is a counterexample.
type Check = fn(&mut Rng64) -> Result<Option<String>>;

fn base_and_check(name: &str) -> (usize, Check) {
    match name {
        "degree_multiplicativity" => (100, degree_multiplicativity),
        "iota_invariance" => (100, iota_invariance),
        "branch_pullback" => (100, branch_pullback),
        "genuine_ramification" => (40, genuine_ramification),
        "max_etale_blocks" => (40, max_etale_blocks),
        "kummer_family" => (11, kummer_family),
        "equivariant_round_trip" => (100, equivariant_round_trip),
        "hom_equivalence" => (100, hom_equivalence),
        "adjunction" => (50, adjunction),
        "parabolic_identity" => (100, parabolic_identity),
        "hn_coherence" => (100, hn_coherence),
        "class_equivalence" => (30, class_equivalence),
        "audit_builtin" => (4, audit_builtin),
        _ => unreachable!("unknown suite {name}"),
    }
}

pub fn run(opts: &Options) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let inject = opts.inject_fault.as_deref() == Some(name);
            run_suite(name, opts.seed.wrapping_add(i as u64 * 0x9e37_79b9), opts.scale, inject)
        })
        .collect()
}

pub fn run_suite(name: &'static str, seed: u64, scale: usize, inject_fault: bool) -> SuiteResult {
    let (base, check) = base_and_check(name);
    let cases = base * scale;
    let mut rng = Rng64::seed_from_u64(seed);
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        let mut outcome = match check(&mut rng) {
            Ok(v) => v,
            Err(e) => Some(format!("unexpected error: {e}")),
        };
        if inject_fault && i == 0 {
            outcome = Some("injected fault".to_owned());
        }
        if let Some(msg) = outcome {
            failures += 1;
            first_failure.get_or_insert(format!("case {i}: {msg}"));
        }
    }
    SuiteResult { name, cases, failures, first_failure }
}

fn line() -> CurveTag {
    CurveTag::projective_line("X")
}

fn fail(ok: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(msg)
}

fn degree_multiplicativity(rng: &mut Rng64) -> Result<Option<String>> {
    let f = gen::profile(rng, 6, 1);
    let p = gen::branch_data(rng, f.target(), 3);
    let d = gen::divisor(rng, &OrbifoldCurve::new(p), 5);
    let up = d.cover_pullback(&f)?;
    let lhs = up.deg_p();
    let rhs = d.deg_p() * Rational::from_integer(f.degree() as i128);
    Ok(fail(lhs == rhs, || format!("{lhs} != {rhs} for degree {}", f.degree())))
}

fn iota_invariance(rng: &mut Rng64) -> Result<Option<String>> {
    let p = gen::branch_data(rng, &line(), 4);
    let finer = gen::refinement(rng, &p);
    let d = gen::divisor(rng, &OrbifoldCurve::new(p), 6);
    let lifted = d.iota_pullback(&finer)?;
    let same_class = lifted.class_of()? == d.class_of()?.iota_pullback(&finer)?;
    Ok(fail(lifted.deg_p() == d.deg_p() && same_class, || {
        format!("{} vs {}", lifted.deg_p(), d.deg_p())
    }))
}

fn branch_pullback(rng: &mut Rng64) -> Result<Option<String>> {
    let f = gen::profile(rng, 6, 1);
    let p = gen::branch_data(rng, f.target(), 3);
    let finer = gen::refinement(rng, &p);
    let fp = pullback_branch_data(&f, &p)?;
    let monotone = branch_data_leq(&fp, &pullback_branch_data(&f, &finer)?)?;
    let etale = is_etale_morphism(&f, &fp, &p)?;
    let bf = branch_data_of_cover(&f)?;
    // f*B_f is trivial exactly when every fiber has a single index
    let killed = pullback_branch_data(&f, &bf)?.is_trivial();
    let uniform = f.fibers().values().all(|part| part.iter().all(|&e| e == part[0]));
    Ok(fail(monotone && etale && killed == uniform, || {
        format!("monotone {monotone}, etale {etale}, B_f killed {killed}")
    }))
}

fn random_datum(rng: &mut Rng64) -> crate::monodromy::MonodromyDatum {
    loop {
        let d = rng.gen_range(2..=6);
        let genus = rng.gen_range(0..=1);
        let k = rng.gen_range(0..=3);
        if let Some(m) = gen::monodromy(rng, d, genus, k) {
            return m;
        }
    }
}

fn genuine_ramification(rng: &mut Rng64) -> Result<Option<String>> {
    let m = random_datum(rng);
    let fast = m.is_genuinely_ramified()?;
    let oracle = m.oracle_is_genuinely_ramified()?;
    Ok(fail(fast == oracle, || format!("fast {fast}, oracle {oracle}")))
}

fn max_etale_blocks(rng: &mut Rng64) -> Result<Option<String>> {
    let m = random_datum(rng);
    let sub = m.max_etale_subcover()?;
    let mut all: Vec<u32> = sub.blocks.iter().flatten().copied().collect();
    all.sort_unstable();
    let partition = all == (0..m.degree() as u32).collect::<Vec<_>>();
    let sizes = sub.blocks.iter().all(|b| b.len() == sub.residual_degree);
    let ok = partition
        && sizes
        && sub.degree * sub.residual_degree == m.degree()
        && sub.block_datum.branch_cycles().is_empty()
        && (sub.degree == 1) == m.is_genuinely_ramified()?;
    Ok(fail(ok, || format!("blocks {:?} for degree {}", sub.blocks, m.degree())))
}

fn kummer_family(rng: &mut Rng64) -> Result<Option<String>> {
    let m: u64 = rng.gen_range(2..=12);
    let f = RamificationProfile::kummer(line(), m)?;
    let bf = branch_data_of_cover(&f)?;
    let witness = is_geometric_witness(&f, &bf)?;
    let datum = crate::monodromy::MonodromyDatum::kummer(m as usize)?;
    let genuine = datum.is_genuinely_ramified()?;
    let spec = CyclicCoverSpec::new(m, 0)?;
    let pieces = pushforward_structure(spec);
    let coarse_ok = pieces
        .iter()
        .enumerate()
        .all(|(c, l)| l.floor_view().coarse_degree == if c == 0 { 0 } else { -1 });
    Ok(fail(witness && genuine && coarse_ok && bf.order(&"0".into()) == m, || {
        format!("m = {m}")
    }))
}

fn spec(rng: &mut Rng64) -> CyclicCoverSpec {
    let m = [2u64, 3, 4, 6, 12][rng.gen_range(0..5)];
    CyclicCoverSpec::new(m, 0).expect("tame")
}

fn equivariant_round_trip(rng: &mut Rng64) -> Result<Option<String>> {
    let s = spec(rng);
    let l = gen::kummer_class(rng, s, 8);
    let back = s_pushforward(&t_pullback(&l, s)?);
    let w = gen::eq_line_bundle(rng, s, 8);
    let there = t_pullback(&s_pushforward(&w), s)?;
    let degree = t_pullback(&l, s)?.eq_degree() as i128
        == (l.degree() * Rational::from_integer(s.m() as i128)).to_integer();
    Ok(fail(back == l && there.is_isomorphic(&w) && degree, || {
        format!("m = {}, class degree {}", s.m(), l.degree())
    }))
}

fn hom_equivalence(rng: &mut Rng64) -> Result<Option<String>> {
    let s = spec(rng);
    let l = gen::kummer_class(rng, s, 6);
    let m = gen::kummer_class(rng, s, 6);
    let down = hom_dim(&l, &m)?;
    let up = hom_dim_equivariant(&t_pullback(&l, s)?, &t_pullback(&m, s)?)?;
    Ok(fail(down == up, || format!("orbifold {down}, equivariant {up}")))
}

fn adjunction(rng: &mut Rng64) -> Result<Option<String>> {
    let s = CyclicCoverSpec::new(rng.gen_range(2..=4), 0)?;
    let l = gen::kummer_class(rng, s, 5);
    let m = gen::kummer_class(rng, s, 5);
    let mut total = 0;
    for piece in pushforward_structure(s) {
        total += hom_dim(&l, &m.add(&piece)?)?;
    }
    let plain = hom_dim_plain(&t_pullback(&l, s)?, &t_pullback(&m, s)?)?;
    Ok(fail(total == plain, || format!("sum {total}, plain {plain}")))
}

fn parabolic_identity(rng: &mut Rng64) -> Result<Option<String>> {
    let p = gen::branch_data(rng, &line(), 4);
    let e = gen::bundle(rng, &OrbifoldCurve::new(p), 4);
    let ok = e.parabolic_slope() == e.slope_p()
        && e.summands().iter().all(|l| l.floor_view().parabolic_degree() == l.degree());
    Ok(fail(ok, || format!("slope {}", e.slope_p())))
}

fn hn_coherence(rng: &mut Rng64) -> Result<Option<String>> {
    let p = gen::branch_data(rng, &line(), 3);
    let ambient = OrbifoldCurve::new(p.clone());
    let e = gen::bundle(rng, &ambient, 4);
    let hn = e.hn();
    let mut ok = hn.is_well_formed(e.rank())
        && e.is_semistable() == (hn.strata.len() == 1)
        && e.is_polystable() == e.is_semistable()
        && e.is_stable() == (e.rank() == 1)
        && hn.top_slope() == e.mu_max();
    let l = gen::line_class(rng, &ambient, 3);
    let twisted = e.tensor_line(&l)?;
    ok &= twisted.is_semistable() == e.is_semistable()
        && twisted.mu_max() == e.mu_max() + l.degree();
    let f = gen::genus0_profile(rng, 4);
    let fp = pullback_branch_data(&f, &p)?;
    let up: OrbBundle = e.pullback(&f, &fp)?;
    ok &= up.is_semistable() == e.is_semistable()
        && up.slope_p() == e.slope_p() * Rational::from_integer(f.degree() as i128);
    Ok(fail(ok, || format!("rank {} bundle", e.rank())))
}

fn class_equivalence(rng: &mut Rng64) -> Result<Option<String>> {
    let p = gen::branch_data(rng, &line(), 2);
    let ambient = OrbifoldCurve::new(p);
    let a = gen::divisor(rng, &ambient, 2);
    let b = gen::divisor(rng, &ambient, 2);
    // nudge b towards a so equivalent pairs are not vanishingly rare
    let b = if rng.gen_bool(0.5) {
        let lift = |x: &str, k: i64| OrbDivisor::new(ambient.clone(), [(x, k)]);
        let n0 = ambient.order(&"p0".into()) as i64;
        let n1 = ambient.order(&"p1".into()) as i64;
        a.add(&lift("p0", n0))?.add(&lift("p1", -n1))?
    } else {
        b
    };
    let by_class = a.class_of()? == b.class_of()?;
    let by_search = search_linear_equivalence(&a, &b, 6)?;
    Ok(fail(by_class == by_search, || format!("class {by_class}, search {by_search}")))
}

fn audit_builtin(rng: &mut Rng64) -> Result<Option<String>> {
    let id = BUILTIN_IDS[rng.gen_range(0..BUILTIN_IDS.len())];
    let case = builtin_case(id).expect("builtin");
    let first = run_audit(&case)?;
    let second = run_audit(&case)?;
    Ok(fail(first == second, || format!("{id} is not reproducible")))
}
