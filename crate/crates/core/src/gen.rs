//! Seeded random instances for the property suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bundle::OrbBundle;
use crate::divisor::{OrbDivisor, OrbLineClass, OrbifoldCurve};
use crate::equivariant::{CyclicCoverSpec, EqLineBundle, INFINITY, ZERO};
use crate::monodromy::{MonodromyDatum, Permutation};
use crate::orbicore::{CurveTag, Point, RamificationProfile, TameBranchData};

pub use rand::SeedableRng;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Labels shared by random branch data and random profiles, so that branch
/// points and stacky points overlap often.
pub const LABELS: [&str; 6] = ["p0", "p1", "p2", "p3", "p4", "p5"];

const ORDERS: [u64; 7] = [2, 3, 4, 5, 6, 8, 12];

pub fn branch_data(rng: &mut Rng64, curve: &CurveTag, max_points: usize) -> TameBranchData {
    let k = rng.gen_range(0..=max_points);
    let orders: Vec<(&str, u64)> = LABELS
        .choose_multiple(rng, k)
        .map(|&p| (p, *ORDERS.choose(rng).expect("non-empty")))
        .collect();
    TameBranchData::new(curve.clone(), orders).expect("characteristic 0 data are tame")
}

/// `P'` dominating `p`: every order multiplied by a small factor, plus
/// possibly new points.
pub fn refinement(rng: &mut Rng64, p: &TameBranchData) -> TameBranchData {
    let mut orders: BTreeMap<Point, u64> = p
        .orders()
        .iter()
        .map(|(x, &n)| (x.clone(), n * rng.gen_range(1..=3)))
        .collect();
    for label in LABELS {
        if rng.gen_bool(0.2) {
            orders.entry(label.into()).or_insert(rng.gen_range(2..=4));
        }
    }
    TameBranchData::new(p.curve().clone(), orders).expect("tame")
}

fn partition(rng: &mut Rng64, d: u64) -> Vec<u64> {
    let mut left = d;
    let mut parts = Vec::new();
    while left > 0 {
        let e = rng.gen_range(1..=left);
        parts.push(e);
        left -= e;
    }
    parts
}

/// Random valid profile over a target of genus `0..=max_genus`; partitions
/// are redrawn until Riemann–Hurwitz gives a non-negative integer genus.
pub fn profile(rng: &mut Rng64, max_degree: u64, max_genus: u32) -> RamificationProfile {
    loop {
        let genus = rng.gen_range(0..=max_genus);
        let target = CurveTag::new("X", genus, 0).expect("char 0");
        let d = rng.gen_range(1..=max_degree);
        if d == 1 {
            return RamificationProfile::identity(target);
        }
        let k = rng.gen_range(0..=4);
        let fibers: Vec<(&str, Vec<u64>)> = LABELS
            .choose_multiple(rng, k)
            .map(|&p| (p, partition(rng, d)))
            .collect();
        if let Ok(f) = RamificationProfile::new("Y", target, d, fibers, false) {
            return f;
        }
    }
}

/// Random profile of a genus-0 cover of the projective line.
pub fn genus0_profile(rng: &mut Rng64, max_degree: u64) -> RamificationProfile {
    loop {
        let f = profile(rng, max_degree, 0);
        if f.source().genus() == 0 {
            return f;
        }
    }
}

pub fn divisor(rng: &mut Rng64, ambient: &OrbifoldCurve, span: i64) -> OrbDivisor {
    let mut terms: Vec<(&str, i64)> = Vec::new();
    for p in LABELS {
        if rng.gen_bool(0.5) {
            terms.push((p, rng.gen_range(-span..=span)));
        }
    }
    OrbDivisor::new(ambient.clone(), terms)
}

pub fn line_class(rng: &mut Rng64, ambient: &OrbifoldCurve, span: i64) -> OrbLineClass {
    divisor(rng, ambient, span)
        .class_of()
        .expect("ambient has genus 0")
}

/// Random decomposable bundle; summands come from a small pool so that
/// equal slopes occur regularly.
pub fn bundle(rng: &mut Rng64, ambient: &OrbifoldCurve, max_rank: usize) -> OrbBundle {
    let pool_size = rng.gen_range(1..=3);
    let pool: Vec<OrbLineClass> = (0..pool_size).map(|_| line_class(rng, ambient, 3)).collect();
    let rank = rng.gen_range(1..=max_rank);
    let summands = (0..rank)
        .map(|_| pool.choose(rng).expect("non-empty").clone())
        .collect();
    OrbBundle::new(summands).expect("shared ambient")
}

/// Random class on `(P¹, {0: m, inf: m})` with a few free points.
pub fn kummer_class(rng: &mut Rng64, spec: CyclicCoverSpec, span: i64) -> OrbLineClass {
    let mut terms = vec![
        (Point::from(ZERO), rng.gen_range(-span..=span)),
        (Point::from(INFINITY), rng.gen_range(-span..=span)),
    ];
    if rng.gen_bool(0.5) {
        terms.push((Point::from("q"), rng.gen_range(-2..=2)));
    }
    OrbDivisor::new(spec.target_orbifold(), terms)
        .class_of()
        .expect("genus 0")
}

pub fn eq_line_bundle(rng: &mut Rng64, spec: CyclicCoverSpec, span: i64) -> EqLineBundle {
    let mut orbits: Vec<(&str, i64)> = Vec::new();
    for p in ["q", "r"] {
        if rng.gen_bool(0.3) {
            orbits.push((p, rng.gen_range(-2..=2)));
        }
    }
    EqLineBundle::new(
        spec,
        rng.gen_range(-span..=span),
        rng.gen_range(-span..=span),
        orbits,
        rng.gen_range(0..spec.m() as i64),
    )
}

pub fn permutation(rng: &mut Rng64, d: usize) -> Permutation {
    let mut images: Vec<u32> = (0..d as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle is a bijection")
}

/// Random connected datum of degree `d` over a genus-`genus` base with
/// `branch_points` branch cycles; the last cycle is solved from the product
/// relation. `None` if the draw is invalid (trivial cycle or disconnected).
pub fn monodromy(
    rng: &mut Rng64,
    d: usize,
    genus: u32,
    branch_points: usize,
) -> Option<MonodromyDatum> {
    let handles: Vec<(Permutation, Permutation)> = (0..genus)
        .map(|_| (permutation(rng, d), permutation(rng, d)))
        .collect();
    let mut prefix = Permutation::identity(d);
    for (a, b) in &handles {
        prefix = prefix.compose(&a.compose(b).compose(&a.inverse()).compose(&b.inverse()));
    }
    let mut cycles = Vec::new();
    if branch_points > 0 {
        for i in 0..branch_points - 1 {
            let s = permutation(rng, d);
            prefix = prefix.compose(&s);
            cycles.push((Point::new(format!("x{i}")), s));
        }
        cycles.push((Point::new(format!("x{}", branch_points - 1)), prefix.inverse()));
    } else if !prefix.is_identity() {
        return None;
    }
    let datum = MonodromyDatum::new(genus, d, 0, handles, cycles).ok()?;
    datum.is_connected().then_some(datum)
}

/// Every connected genus-0 datum of degree `d` with exactly `k ≤ 3`
/// branch cycles.
pub fn all_genus0_monodromy(d: usize, k: usize) -> Vec<MonodromyDatum> {
    let perms = all_permutations(d);
    let mut out = Vec::new();
    let mut push = |cycles: Vec<Permutation>| {
        let bc = cycles
            .into_iter()
            .enumerate()
            .map(|(i, s)| (Point::new(format!("x{i}")), s))
            .collect();
        if let Ok(m) = MonodromyDatum::new(0, d, 0, vec![], bc) {
            if m.is_connected() {
                out.push(m);
            }
        }
    };
    match k {
        0 => push(vec![]),
        1 => {}
        2 => {
            for s in &perms {
                push(vec![s.clone(), s.inverse()]);
            }
        }
        3 => {
            for s in &perms {
                for t in &perms {
                    let last = s.compose(t).inverse();
                    push(vec![s.clone(), t.clone(), last]);
                }
            }
        }
        _ => panic!("at most three branch cycles are enumerated"),
    }
    out
}

pub fn all_permutations(d: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let d = used.len();
        if prefix.len() == d {
            out.push(Permutation::from_images(prefix.clone()).expect("bijection"));
            return;
        }
        for i in 0..d {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u32);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_permutations(4).len(), 24);
        // z^2 is the only connected degree-2 datum with two branch points
        assert_eq!(all_genus0_monodromy(2, 2).len(), 1);
        assert_eq!(all_genus0_monodromy(1, 0).len(), 1);
        assert!(all_genus0_monodromy(3, 1).is_empty());
    }

    #[test]
    fn random_instances_are_valid() {
        let mut r = rng(7);
        for _ in 0..50 {
            let f = genus0_profile(&mut r, 6);
            assert_eq!(f.source().genus(), 0);
            if let Some(m) = monodromy(&mut r, 5, 1, 2) {
                assert!(m.is_connected());
            }
        }
    }
}
