//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use orbicurve::audit::{builtin_case, run_audit, Status};
use orbicurve::bundle::OrbBundle;
use orbicurve::divisor::{hom_dim, OrbifoldCurve};
use orbicurve::equivariant::{
    hom_dim_equivariant, hom_dim_plain, pushforward_structure, s_pushforward, t_pullback,
    CyclicCoverSpec, EqBundle,
};
use orbicurve::gen::{self, Rng64, SeedableRng};
use orbicurve::monodromy::{MonodromyDatum, Permutation};
use orbicurve::orbicore::{pullback_branch_data, CurveTag};
use orbicurve::Rational;
use rand::seq::SliceRandom;
use rand::Rng;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn rng(criterion: u64) -> Rng64 {
    Rng64::seed_from_u64(0x5eed_0000 + criterion)
}

fn line() -> CurveTag {
    CurveTag::projective_line("X")
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n as i128)
}

fn degree_multiplicativity() -> Verdict {
    let mut r = rng(1);
    for i in 0..1000 {
        let f = gen::profile(&mut r, 8, 2);
        let p = gen::branch_data(&mut r, f.target(), 4);
        let d = gen::divisor(&mut r, &OrbifoldCurve::new(p), 9);
        let up = d.cover_pullback(&f).map_err(|e| e.to_string())?;
        if up.deg_p() != d.deg_p() * int(f.degree()) {
            return Err(format!("case {i}: {} vs {} * {}", up.deg_p(), f.degree(), d.deg_p()));
        }
    }
    Ok("1000 cases".into())
}

fn iota_invariance() -> Verdict {
    let mut r = rng(2);
    for i in 0..1000 {
        let p = gen::branch_data(&mut r, &line(), 5);
        let finer = gen::refinement(&mut r, &p);
        let d = gen::divisor(&mut r, &OrbifoldCurve::new(p), 9);
        let lifted = d.iota_pullback(&finer).map_err(|e| e.to_string())?;
        if lifted.deg_p() != d.deg_p() {
            return Err(format!("case {i}: {} vs {}", lifted.deg_p(), d.deg_p()));
        }
    }
    Ok("1000 cases".into())
}

/// Exhaustive genus-0 sweep plus random data up to degree 8 with handles.
/// Returns the data and the size of the exhaustive part.
fn monodromy_corpus() -> (Vec<MonodromyDatum>, usize) {
    let mut all = Vec::new();
    for d in 1..=5 {
        for k in 0..=3 {
            all.extend(gen::all_genus0_monodromy(d, k));
        }
    }
    let exhaustive = all.len();
    let mut r = rng(3);
    // half genus 0, half with one handle
    while all.len() < exhaustive + 500 {
        let d = r.gen_range(2..=8);
        let genus = u32::from(all.len() % 2 == 1);
        let k = r.gen_range(0..=3);
        if let Some(m) = gen::monodromy(&mut r, d, genus, k) {
            all.push(m);
        }
    }
    // factor through an etale cover by construction
    while all.len() < exhaustive + 650 {
        if let Some(m) = imprimitive_datum(&mut r) {
            all.push(m);
        }
    }
    (all, exhaustive)
}

/// Genus-1 datum whose handles shift `a` blocks of size `b` by commuting
/// amounts and whose branch cycles fix every block.
fn imprimitive_datum(r: &mut Rng64) -> Option<MonodromyDatum> {
    let a = r.gen_range(2..=4usize);
    let b = r.gen_range(1..=8 / a);
    let d = a * b;
    let within = |r: &mut Rng64, shift: usize| {
        let mut images = vec![0u32; d];
        for block in 0..a {
            let mut inner: Vec<usize> = (0..b).collect();
            inner.shuffle(r);
            for (i, &j) in inner.iter().enumerate() {
                images[block * b + i] = (((block + shift) % a) * b + j) as u32;
            }
        }
        Permutation::from_images(images).unwrap()
    };
    let (s1, s2) = (r.gen_range(0..a), r.gen_range(0..a));
    let alpha = within(r, s1);
    let beta = within(r, s2);
    let mut prefix = alpha.compose(&beta).compose(&alpha.inverse()).compose(&beta.inverse());
    let k = r.gen_range(1..=3);
    let mut cycles = Vec::new();
    for i in 0..k - 1 {
        let s = within(r, 0);
        prefix = prefix.compose(&s);
        cycles.push((format!("x{i}").into(), s));
    }
    cycles.push((format!("x{}", k - 1).into(), prefix.inverse()));
    let m = MonodromyDatum::new(1, d, 0, vec![(alpha, beta)], cycles).ok()?;
    m.is_connected().then_some(m)
}

fn genuine_ramification(corpus: &[MonodromyDatum], exhaustive: usize) -> Verdict {
    let mut genuine = 0;
    for (i, m) in corpus.iter().enumerate() {
        let fast = m.is_genuinely_ramified().map_err(|e| e.to_string())?;
        let oracle = m.oracle_is_genuinely_ramified().map_err(|e| e.to_string())?;
        if fast != oracle {
            return Err(format!("datum {i}: fast {fast}, oracle {oracle}"));
        }
        genuine += usize::from(fast);
    }
    Ok(format!(
        "{exhaustive} exhaustive + {} random data agree ({genuine} genuinely ramified, {} not)",
        corpus.len() - exhaustive,
        corpus.len() - genuine
    ))
}

fn block_of(blocks: &[Vec<u32>], x: u32) -> usize {
    blocks.iter().position(|b| b.contains(&x)).expect("blocks cover every sheet")
}

fn max_etale_blocks(corpus: &[MonodromyDatum]) -> Verdict {
    for (i, m) in corpus.iter().enumerate() {
        let sub = m.max_etale_subcover().map_err(|e| e.to_string())?;
        let d = m.degree();
        let size = sub.blocks[0].len();
        if sub.blocks.len() * size != d || sub.blocks.iter().any(|b| b.len() != size) {
            return Err(format!("datum {i}: unequal blocks {:?}", sub.blocks));
        }
        // every generator permutes blocks; every branch cycle fixes each block
        let maps_blocks = |g: &Permutation| {
            sub.blocks.iter().all(|b| {
                let target = block_of(&sub.blocks, g.apply(b[0]));
                b.iter().all(|&x| block_of(&sub.blocks, g.apply(x)) == target)
            })
        };
        if !m.generators().iter().all(maps_blocks) {
            return Err(format!("datum {i}: not a block system"));
        }
        let fixes_blocks = m
            .branch_cycles()
            .iter()
            .all(|(_, s)| (0..d as u32).all(|x| block_of(&sub.blocks, s.apply(x)) == block_of(&sub.blocks, x)));
        if !fixes_blocks {
            return Err(format!("datum {i}: a branch cycle moves a block"));
        }
        let genuine = m.is_genuinely_ramified().map_err(|e| e.to_string())?;
        if (sub.degree == 1) != genuine {
            return Err(format!("datum {i}: degree {} vs genuine {genuine}", sub.degree));
        }
    }
    Ok(format!("{} data", corpus.len()))
}

fn kummer_family() -> Verdict {
    for m in 2..=12usize {
        let k = MonodromyDatum::kummer(m).map_err(|e| e.to_string())?;
        let f = k.ramification_profile_of().map_err(|e| e.to_string())?;
        let sub = k.max_etale_subcover().map_err(|e| e.to_string())?;
        let ok = k.is_connected()
            && k.is_galois().map_err(|e| e.to_string())?
            && k.is_genuinely_ramified().map_err(|e| e.to_string())?
            && sub.degree == 1
            && f.riemann_hurwitz_genus() == 0;
        if !ok {
            return Err(format!("m = {m}"));
        }
    }
    Ok("m = 2..12".into())
}

const MS: [u64; 5] = [2, 3, 4, 6, 12];

fn equivariant_equivalence() -> Verdict {
    let mut r = rng(6);
    for m in MS {
        let spec = CyclicCoverSpec::new(m, 0).unwrap();
        for i in 0..500 {
            let l = gen::kummer_class(&mut r, spec, 10);
            let t = t_pullback(&l, spec).map_err(|e| e.to_string())?;
            if s_pushforward(&t) != l {
                return Err(format!("m = {m}, case {i}: S(T(L)) != L"));
            }
            if Rational::from_integer(t.eq_degree() as i128) != l.degree() * int(m) {
                return Err(format!("m = {m}, case {i}: eq_degree {}", t.eq_degree()));
            }
            let w = gen::eq_line_bundle(&mut r, spec, 10);
            let back = t_pullback(&s_pushforward(&w), spec).map_err(|e| e.to_string())?;
            if !back.is_isomorphic(&w) {
                return Err(format!("m = {m}, case {i}: T(S(W)) not isomorphic to W"));
            }
            let rank = r.gen_range(1..=3);
            let pool: Vec<_> = (0..2).map(|_| gen::kummer_class(&mut r, spec, 3)).collect();
            let summands: Vec<_> = (0..rank).map(|_| pool[r.gen_range(0..2)].clone()).collect();
            let e = OrbBundle::new(summands.clone()).unwrap();
            let up = EqBundle::new(
                summands.iter().map(|s| t_pullback(s, spec).unwrap()).collect(),
            )
            .unwrap();
            if e.is_semistable() != up.eq_is_semistable() || e.is_polystable() != up.eq_is_polystable() {
                return Err(format!("m = {m}, case {i}: verdicts differ across T"));
            }
        }
    }
    Ok("500 cases per m in {2,3,4,6,12}".into())
}

fn hom_equivalence() -> Verdict {
    let mut r = rng(7);
    for m in MS {
        let spec = CyclicCoverSpec::new(m, 0).unwrap();
        for i in 0..500 {
            let l = gen::kummer_class(&mut r, spec, 8);
            let n = gen::kummer_class(&mut r, spec, 8);
            let down = hom_dim(&l, &n).map_err(|e| e.to_string())?;
            let up = hom_dim_equivariant(&t_pullback(&l, spec).unwrap(), &t_pullback(&n, spec).unwrap())
                .map_err(|e| e.to_string())?;
            if down != up {
                return Err(format!("m = {m}, case {i}: {down} vs {up}"));
            }
        }
    }
    Ok("500 pairs per m".into())
}

fn adjunction() -> Verdict {
    let mut r = rng(8);
    for m in [2u64, 3, 4] {
        let spec = CyclicCoverSpec::new(m, 0).unwrap();
        let pieces = pushforward_structure(spec);
        for i in 0..200 {
            let l = gen::kummer_class(&mut r, spec, 6);
            let n = gen::kummer_class(&mut r, spec, 6);
            let mut sum = 0;
            for p in &pieces {
                sum += hom_dim(&l, &n.add(p).unwrap()).map_err(|e| e.to_string())?;
            }
            let plain = hom_dim_plain(&t_pullback(&l, spec).unwrap(), &t_pullback(&n, spec).unwrap())
                .map_err(|e| e.to_string())?;
            if sum != plain {
                return Err(format!("m = {m}, case {i}: {sum} vs {plain}"));
            }
        }
    }
    Ok("200 pairs per m in {2,3,4}".into())
}

fn parabolic_identity() -> Verdict {
    let mut r = rng(9);
    for i in 0..1000 {
        let p = gen::branch_data(&mut r, &line(), 5);
        let ambient = OrbifoldCurve::new(p);
        let d = gen::divisor(&mut r, &ambient, 12);
        let class = d.class_of().map_err(|e| e.to_string())?;
        // floors computed directly from the divisor
        let mut coarse = 0i64;
        let mut weights = Rational::from_integer(0);
        for (x, &c) in d.coefficients() {
            let n = ambient.order(x) as i64;
            let (q, rem) = c.div_mod_floor(&n);
            coarse += q;
            weights += Rational::new(rem as i128, n as i128);
        }
        let view = class.floor_view();
        let ok = view.coarse_degree == coarse
            && view.parabolic_degree() == class.degree()
            && Rational::from_integer(coarse as i128) + weights == d.deg_p();
        if !ok {
            return Err(format!("case {i}: coarse {} vs {coarse}", view.coarse_degree));
        }
    }
    Ok("1000 classes".into())
}

fn hn_coherence() -> Verdict {
    let mut r = rng(10);
    for i in 0..1000 {
        let p = gen::branch_data(&mut r, &line(), 3);
        let ambient = OrbifoldCurve::new(p.clone());
        let e = gen::bundle(&mut r, &ambient, 5);
        let hn = e.hn();
        let decreasing = hn.strata.windows(2).all(|w| w[0].slope > w[1].slope);
        let strata_ss = hn
            .strata
            .iter()
            .all(|s| e.sub_bundle(&s.summands).map(|b| b.is_semistable()).unwrap_or(false));
        if !decreasing || !strata_ss {
            return Err(format!("case {i}: malformed HN strata"));
        }
        if e.is_semistable() != (e.slope_p() == e.mu_max()) {
            return Err(format!("case {i}: semistable verdict vs mu_max"));
        }
        let l = gen::line_class(&mut r, &ambient, 4);
        let t = e.tensor_line(&l).map_err(|e| e.to_string())?;
        if t.is_semistable() != e.is_semistable() {
            return Err(format!("case {i}: tensor changes the verdict"));
        }
        let f = gen::genus0_profile(&mut r, 5);
        let fp = pullback_branch_data(&f, &p).map_err(|e| e.to_string())?;
        let q = gen::refinement(&mut r, &fp);
        let up = e.pullback(&f, &q).map_err(|e| e.to_string())?;
        if up.is_semistable() != e.is_semistable() {
            return Err(format!("case {i}: pullback changes the verdict"));
        }
    }
    Ok("1000 bundles".into())
}

fn audit_reproducibility() -> Verdict {
    let half = run_audit(&builtin_case("kummer2-halfweights").unwrap()).map_err(|e| e.to_string())?;
    let triple = (half.hom_orbifold, half.hom_equivariant, half.hom_plain_pullback);
    if triple != (0, Some(0), 1) {
        return Err(format!("halfweights triple {triple:?}"));
    }
    if half.pushforward_structure_degrees != vec![int(0), int(0)] {
        return Err("halfweights pushforward degrees".into());
    }
    if half.status("hom_equality", "plain") != Some(Status::Discrepant)
        || half.status("hom_equality", "equivariant") != Some(Status::Consistent)
    {
        return Err("halfweights hom_equality tags".into());
    }
    let triv = run_audit(&builtin_case("kummer2-trivialP").unwrap()).map_err(|e| e.to_string())?;
    if triv.quotient_degrees_coarse != vec![Rational::from_integer(-1)] {
        return Err(format!("trivialP quotient degrees {:?}", triv.quotient_degrees_coarse));
    }
    if triv.status("negative_degree_lb", "coarse") != Some(Status::Consistent) {
        return Err("trivialP negative_degree_lb tag".into());
    }
    let again = run_audit(&builtin_case("kummer2-halfweights").unwrap()).unwrap();
    if again != half {
        return Err("audit is not reproducible".into());
    }
    Ok("(0, 0, 1), degrees [0, 0]; quotient degree -1, consistent".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let (corpus, exhaustive) = monodromy_corpus();
    let criteria: Vec<Criterion> = vec![
        ("degree multiplicativity", Box::new(degree_multiplicativity)),
        ("iota invariance", Box::new(iota_invariance)),
        ("genuine ramification vs oracle", Box::new(|| genuine_ramification(&corpus, exhaustive))),
        ("maximal etale subcover", Box::new(|| max_etale_blocks(&corpus))),
        ("Kummer family", Box::new(kummer_family)),
        ("equivariant equivalence", Box::new(equivariant_equivalence)),
        ("rank-1 hom equivalence", Box::new(hom_equivalence)),
        ("rank-1 adjunction", Box::new(adjunction)),
        ("parabolic identity", Box::new(parabolic_identity)),
        ("HN and stability coherence", Box::new(hn_coherence)),
        ("audit reproducibility", Box::new(audit_reproducibility)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!(
                "criterion {:2} PASS  {name}: {detail} ({:.1}s)",
                i + 1,
                t.elapsed().as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass ({:.1}s)",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
