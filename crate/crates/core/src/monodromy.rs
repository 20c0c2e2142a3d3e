//! Permutation-tuple presentations of branched covers.
//!
//! A degree-`d` cover of a genus-`g` curve branched over `x_1..x_k` is given
//! by permutations `α_i, β_i, σ_j` of `{1..d}` with
//! `Π [α_i, β_i] · Π σ_j = 1`. Products compose right to left:
//! `(στ)(x) = σ(τ(x))`, and `[α, β] = α β α⁻¹ β⁻¹`.
//!
//! # Genuine ramification
//!
//! Let `G` be the monodromy group, `H = Stab(1)` the subgroup fixing the
//! sheet over the base point, and `N` the normal closure of the branch
//! cycles. The image of `π₁(Y)` in `G` is `H`, and the cover `Y → X` factors
//! through an étale cover exactly when `H·N` is a proper subgroup of `G`.
//! Since `N` is normal and `H` fixes 1, the orbit of 1 under `H·N` equals its
//! `N`-orbit, so `H·N = G` iff `N` is transitive. The `N`-orbits form the
//! finest `G`-invariant block system in which every branch cycle fixes every
//! block, and the induced action on those blocks is the maximal étale
//! subcover.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::orbicore::{CurveTag, Point, RamificationProfile};
use crate::{Error, Result};

/// Default limit on the number of group elements enumerated.
pub const DEFAULT_GROUP_CAP: usize = 10_000_000;

/// Default largest degree accepted by the brute-force oracle.
pub const DEFAULT_ORACLE_DEGREE: usize = 8;

/// Bijection of `{0..d}`; rendered 1-based in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (0..d as u32).collect(),
        }
    }

    /// 0-based image list.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            let i = i as usize;
            if i >= d || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `"(1 2)(3 4)"`; the empty string
    /// and `"()"` give the identity. Cycles are composed right to left.
    pub fn parse_cycles(s: &str, d: usize) -> Result<Self> {
        let mut result = Permutation::identity(d);
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| {
                Error::InvalidPermutation(format!("expected `(` in `{s}`"))
            })?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in `{s}`")))?;
            let body = &open[..close];
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let v: usize = t.parse().map_err(|_| {
                        Error::InvalidPermutation(format!("bad point `{t}` in `{s}`"))
                    })?;
                    if v == 0 || v > d {
                        return Err(Error::InvalidPermutation(format!(
                            "point {v} out of range 1..={d}"
                        )));
                    }
                    Ok(v as u32 - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            let mut cycle: Vec<u32> = (0..d as u32).collect();
            let mut used = HashSet::new();
            for (k, &p) in points.iter().enumerate() {
                if !used.insert(p) {
                    return Err(Error::InvalidPermutation(format!(
                        "repeated point in cycle `({body})`"
                    )));
                }
                cycle[p as usize] = points[(k + 1) % points.len()];
            }
            result = result.compose(&Permutation { images: cycle });
            rest = open[close + 1..].trim_start();
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Cycle lengths including fixed points, ascending; a partition of `d`.
    pub fn cycle_type(&self) -> Vec<u64> {
        let d = self.images.len();
        let mut seen = vec![false; d];
        let mut lengths = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }

    pub fn order(&self) -> u64 {
        use num_integer::Integer;
        self.cycle_type().into_iter().fold(1, |acc, l| acc.lcm(&l))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.images.len();
        let mut seen = vec![false; d];
        let mut wrote = false;
        for start in 0..d {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.images[x] as usize;
            }
            write!(f, "({})", cycle.join(" "))?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Monodromy presentation of a branched cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyDatum {
    base_genus: u32,
    degree: usize,
    characteristic: u64,
    handles: Vec<(Permutation, Permutation)>,
    branch_cycles: Vec<(Point, Permutation)>,
}

impl MonodromyDatum {
    /// Validates degrees, the product relation, nontriviality and tameness
    /// of the branch cycles.
    pub fn new(
        base_genus: u32,
        degree: usize,
        characteristic: u64,
        handles: Vec<(Permutation, Permutation)>,
        branch_cycles: Vec<(Point, Permutation)>,
    ) -> Result<Self> {
        // Validates the characteristic.
        let base = CurveTag::new("X", base_genus, characteristic)?;
        if degree == 0 {
            return Err(Error::InvalidMonodromy("degree must be positive".into()));
        }
        if handles.len() != base_genus as usize {
            return Err(Error::InvalidMonodromy(format!(
                "{} handle pairs given for base genus {base_genus}",
                handles.len()
            )));
        }
        let all = handles
            .iter()
            .flat_map(|(a, b)| [a, b])
            .chain(branch_cycles.iter().map(|(_, s)| s));
        for p in all {
            if p.degree() != degree {
                return Err(Error::InvalidMonodromy(format!(
                    "permutation {p} has degree {}, expected {degree}",
                    p.degree()
                )));
            }
        }
        let mut labels = HashSet::new();
        for (x, s) in &branch_cycles {
            if !labels.insert(x) {
                return Err(Error::InvalidMonodromy(format!("duplicate branch point `{x}`")));
            }
            if s.is_identity() {
                return Err(Error::InvalidMonodromy(format!(
                    "branch cycle at `{x}` is the identity"
                )));
            }
            if let Some(&l) = s.cycle_type().iter().find(|&&l| !base.is_tame(l)) {
                return Err(Error::Wild {
                    point: x.to_string(),
                    order: l,
                    characteristic,
                });
            }
        }
        let datum = MonodromyDatum {
            base_genus,
            degree,
            characteristic,
            handles,
            branch_cycles,
        };
        if !datum.relation_product().is_identity() {
            return Err(Error::InvalidMonodromy(
                "product relation does not hold".into(),
            ));
        }
        Ok(datum)
    }

    /// `z ↦ z^m` on the projective line: an `m`-cycle over `0` and its
    /// inverse over `inf`.
    pub fn kummer(m: usize) -> Result<Self> {
        let images = (0..m as u32).map(|i| (i + 1) % m as u32).collect();
        let s = Permutation::from_images(images)?;
        let inv = s.inverse();
        MonodromyDatum::new(0, m, 0, vec![], vec![("0".into(), s), ("inf".into(), inv)])
    }

    pub fn base_genus(&self) -> u32 {
        self.base_genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn handles(&self) -> &[(Permutation, Permutation)] {
        &self.handles
    }

    pub fn branch_cycles(&self) -> &[(Point, Permutation)] {
        &self.branch_cycles
    }

    fn relation_product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for (a, b) in &self.handles {
            let comm = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
            acc = acc.compose(&comm);
        }
        for (_, s) in &self.branch_cycles {
            acc = acc.compose(s);
        }
        acc
    }

    /// All handle and branch permutations.
    pub fn generators(&self) -> Vec<Permutation> {
        self.handles
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .chain(self.branch_cycles.iter().map(|(_, s)| s.clone()))
            .collect()
    }

    /// Connected total space ⇔ transitive monodromy.
    pub fn is_connected(&self) -> bool {
        let gens = self.generators();
        let mut uf = UnionFind::new(self.degree);
        for g in &gens {
            for x in 0..self.degree as u32 {
                uf.union(x, g.apply(x));
            }
        }
        uf.class_count() == 1
    }

    fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Cycle types as fibers; source genus by Riemann–Hurwitz.
    pub fn ramification_profile_of(&self) -> Result<RamificationProfile> {
        self.ensure_connected()?;
        let galois = self.is_galois()?;
        let target = CurveTag::new("X", self.base_genus, self.characteristic)?;
        let fibers = self
            .branch_cycles
            .iter()
            .map(|(x, s)| (x.clone(), s.cycle_type()));
        RamificationProfile::new("Y", target, self.degree as u64, fibers, galois)
    }

    /// Order of the monodromy group by closure enumeration.
    pub fn group_order(&self) -> Result<u64> {
        self.group_order_capped(DEFAULT_GROUP_CAP)
    }

    pub fn group_order_capped(&self, cap: usize) -> Result<u64> {
        self.ensure_connected()?;
        Ok(enumerate_group(&self.generators(), self.degree, cap)?.len() as u64)
    }

    /// Galois ⇔ the transitive group acts regularly ⇔ `|G| = d`.
    pub fn is_galois(&self) -> Result<bool> {
        self.ensure_connected()?;
        // A transitive group has order ≥ d; stop one element past d.
        match enumerate_group(&self.generators(), self.degree, self.degree) {
            Ok(g) => Ok(g.len() == self.degree),
            Err(Error::CapExceeded(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Orbits of the normal closure of the branch cycles, each sorted, listed
    /// by smallest element. 0-based.
    pub fn normal_closure_orbits(&self) -> Vec<Vec<u32>> {
        let d = self.degree;
        let gens = self.generators();
        let mut uf = UnionFind::new(d);
        let mut queue = VecDeque::new();
        for (_, s) in &self.branch_cycles {
            for x in 0..d as u32 {
                if uf.union(x, s.apply(x)) {
                    queue.push_back((x, s.apply(x)));
                }
            }
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &gens {
                let (gx, gy) = (g.apply(x), g.apply(y));
                if uf.union(gx, gy) {
                    queue.push_back((gx, gy));
                }
            }
        }
        uf.classes()
    }

    /// The cover factors through no nontrivial étale subcover.
    pub fn is_genuinely_ramified(&self) -> Result<bool> {
        self.ensure_connected()?;
        Ok(self.normal_closure_orbits().len() == 1)
    }

    /// Maximal étale subcover `X̂ → X` read off from the block action on
    /// the normal-closure orbits.
    pub fn max_etale_subcover(&self) -> Result<MaxEtaleSubcover> {
        self.ensure_connected()?;
        let blocks = self.normal_closure_orbits();
        let mut block_of = vec![0u32; self.degree];
        for (b, orbit) in blocks.iter().enumerate() {
            for &x in orbit {
                block_of[x as usize] = b as u32;
            }
        }
        let induce = |p: &Permutation| -> Result<Permutation> {
            let images = blocks
                .iter()
                .map(|orbit| block_of[p.apply(orbit[0]) as usize])
                .collect();
            Permutation::from_images(images)
        };
        for (x, s) in &self.branch_cycles {
            if !induce(s)?.is_identity() {
                return Err(Error::InvalidMonodromy(format!(
                    "branch cycle at `{x}` moves a normal-closure block"
                )));
            }
        }
        let handles = self
            .handles
            .iter()
            .map(|(a, b)| Ok((induce(a)?, induce(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let degree = blocks.len();
        let block_datum =
            MonodromyDatum::new(self.base_genus, degree, self.characteristic, handles, vec![])?;
        Ok(MaxEtaleSubcover {
            degree,
            residual_degree: self.degree / degree,
            blocks,
            block_datum,
        })
    }

    /// Brute-force genuine-ramification test: enumerate `G`, build `H` from
    /// Schreier generators of `Stab(1)`, `N` from all conjugates of the
    /// branch cycles, and compare `|⟨H ∪ N⟩|` with `|G|`.
    pub fn oracle_is_genuinely_ramified(&self) -> Result<bool> {
        self.oracle_is_genuinely_ramified_capped(DEFAULT_ORACLE_DEGREE)
    }

    pub fn oracle_is_genuinely_ramified_capped(&self, max_degree: usize) -> Result<bool> {
        self.ensure_connected()?;
        if self.degree > max_degree.min(MAX_PACKED_DEGREE) {
            return Err(Error::CapExceeded(max_degree));
        }
        let d = self.degree;
        let gens = self.generators();
        let packed_gens: Vec<u64> = gens.iter().map(pack).collect();
        let group = packed_closure(&packed_gens, d);
        let mut candidates: Vec<u64> = schreier_generators(&gens, d).iter().map(pack).collect();
        let mut conjugates = HashSet::new();
        for (_, s) in &self.branch_cycles {
            let s = pack(s);
            for &g in &group {
                conjugates.insert(packed_compose(packed_compose(g, s, d), packed_inverse(g, d), d));
            }
        }
        let mut conjugates: Vec<u64> = conjugates.into_iter().collect();
        conjugates.sort_unstable();
        candidates.extend(conjugates);
        let closure = packed_closure(&candidates, d);
        Ok(closure.len() == group.len())
    }
}

/// Result of [`MonodromyDatum::max_etale_subcover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxEtaleSubcover {
    /// Degree of `X̂ → X`; the number of normal-closure orbits.
    pub degree: usize,
    /// Degree of the residual cover `Y → X̂`.
    pub residual_degree: usize,
    /// The orbits themselves, 0-based.
    pub blocks: Vec<Vec<u32>>,
    /// Monodromy of `X̂ → X`; it has no branch cycles.
    pub block_datum: MonodromyDatum,
}

/// Closure of `gens` under multiplication; errors once more than `cap`
/// elements are found.
pub fn enumerate_group(
    gens: &[Permutation],
    d: usize,
    cap: usize,
) -> Result<HashSet<Permutation>> {
    let id = Permutation::identity(d);
    let mut seen = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let gens: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
    while let Some(h) = queue.pop_front() {
        for g in &gens {
            let next = g.compose(&h);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Schreier generators `u_{s x}⁻¹ s u_x` of the stabilizer of point 0 in
/// the group generated by `gens`.
pub fn schreier_generators(gens: &[Permutation], d: usize) -> Vec<Permutation> {
    // transversal[x] maps 0 to x
    let mut transversal: Vec<Option<Permutation>> = vec![None; d];
    transversal[0] = Some(Permutation::identity(d));
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        let ux = transversal[x as usize].clone().expect("visited");
        for s in gens {
            let y = s.apply(x);
            if transversal[y as usize].is_none() {
                transversal[y as usize] = Some(s.compose(&ux));
                queue.push_back(y);
            }
        }
    }
    let mut out = HashSet::new();
    for ux in transversal.iter().flatten() {
        let x = ux.apply(0);
        for s in gens {
            let usx = transversal[s.apply(x) as usize].as_ref().expect("orbit closed");
            let h = usx.inverse().compose(s).compose(ux);
            if !h.is_identity() {
                out.insert(h);
            }
        }
    }
    out.into_iter().collect()
}

// The oracle works on permutations packed four bits per image, which bounds
// its degree.
const MAX_PACKED_DEGREE: usize = 16;

fn pack(p: &Permutation) -> u64 {
    p.images().iter().enumerate().fold(0, |acc, (i, &y)| acc | (y as u64) << (4 * i))
}

fn packed_image(p: u64, x: usize) -> usize {
    ((p >> (4 * x)) & 0xf) as usize
}

/// `a ∘ b`.
fn packed_compose(a: u64, b: u64, d: usize) -> u64 {
    (0..d).fold(0, |acc, x| acc | (packed_image(a, packed_image(b, x)) as u64) << (4 * x))
}

fn packed_inverse(a: u64, d: usize) -> u64 {
    (0..d).fold(0, |acc, x| acc | (x as u64) << (4 * packed_image(a, x)))
}

fn packed_identity(d: usize) -> u64 {
    (0..d).fold(0, |acc, x| acc | (x as u64) << (4 * x))
}

/// Subgroup generated by `gens`, grown one generator at a time; generators
/// already inside the current subgroup are skipped.
fn packed_closure(gens: &[u64], d: usize) -> HashSet<u64> {
    let mut group = HashSet::from([packed_identity(d)]);
    let mut used: Vec<u64> = Vec::new();
    for &g in gens {
        if group.contains(&g) {
            continue;
        }
        used.push(g);
        // old elements are closed under the old generators
        let mut queue: VecDeque<u64> = VecDeque::new();
        let old: Vec<u64> = group.iter().copied().collect();
        for h in old {
            let next = packed_compose(g, h, d);
            if group.insert(next) {
                queue.push_back(next);
            }
        }
        while let Some(h) = queue.pop_front() {
            for &s in &used {
                let next = packed_compose(s, h, d);
                if group.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    group
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = x;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    /// Returns true when the two classes were distinct.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }

    fn class_count(&mut self) -> usize {
        (0..self.parent.len() as u32).filter(|&x| self.find(x) == x).count()
    }

    fn classes(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len() as u32;
        let mut by_root: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
        for x in 0..n {
            let r = self.find(x);
            by_root[r as usize].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(s, d).unwrap()
    }

    fn genus0(d: usize, cycles: &[&str]) -> MonodromyDatum {
        let bc = cycles
            .iter()
            .enumerate()
            .map(|(i, c)| (Point::new(format!("x{i}")), p(c, d)))
            .collect();
        MonodromyDatum::new(0, d, 0, vec![], bc).unwrap()
    }

    fn klein() -> MonodromyDatum {
        genus0(4, &["(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"])
    }

    fn s3() -> MonodromyDatum {
        genus0(3, &["(1 2)", "(2 3)", "(1 3 2)"])
    }

    fn genus1_blocks() -> MonodromyDatum {
        MonodromyDatum::new(
            1,
            4,
            0,
            vec![(p("(1 3)(2 4)", 4), Permutation::identity(4))],
            vec![("a".into(), p("(1 2)", 4)), ("b".into(), p("(1 2)", 4))],
        )
        .unwrap()
    }

    fn etale_genus1() -> MonodromyDatum {
        MonodromyDatum::new(1, 2, 0, vec![(p("(1 2)", 2), Permutation::identity(2))], vec![])
            .unwrap()
    }

    #[test]
    fn cycle_notation_round_trip() {
        let s = p("(1 2 3)(4 5)", 5);
        assert_eq!(s.to_string(), "(1 2 3)(4 5)");
        assert_eq!(s.cycle_type(), vec![2, 3]);
        assert_eq!(s.order(), 6);
        assert_eq!(p("", 3).to_string(), "()");
        assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("1 2", 3).is_err());
        // right-to-left: (1 2)(2 3) sends 3 -> 2 -> 1
        assert_eq!(p("(1 2)(2 3)", 3).apply(2), 0);
    }

    #[test]
    fn relation_and_identity_cycles_checked() {
        assert!(matches!(
            MonodromyDatum::new(0, 3, 0, vec![], vec![("a".into(), p("(1 2)", 3))]),
            Err(Error::InvalidMonodromy(_))
        ));
        assert!(matches!(
            MonodromyDatum::new(0, 2, 0, vec![], vec![("a".into(), p("", 2))]),
            Err(Error::InvalidMonodromy(_))
        ));
        assert!(matches!(
            MonodromyDatum::new(0, 2, 2, vec![], vec![("a".into(), p("(1 2)", 2)), ("b".into(), p("(1 2)", 2))]),
            Err(Error::Wild { .. })
        ));
    }

    #[test]
    fn connectivity_examples() {
        assert!(MonodromyDatum::new(0, 1, 0, vec![], vec![]).unwrap().is_connected());
        assert!(!genus0(4, &["(1 2)", "(1 2)", "(3 4)", "(3 4)"]).is_connected());
        assert!(etale_genus1().is_connected());
        let disc = genus0(4, &["(1 2)", "(1 2)", "(3 4)", "(3 4)"]);
        assert_eq!(disc.is_genuinely_ramified(), Err(Error::Disconnected));
    }

    #[test]
    fn profile_examples() {
        let k = MonodromyDatum::kummer(5).unwrap().ramification_profile_of().unwrap();
        assert_eq!(k.fibers()[&Point::from("0")], vec![5]);
        assert_eq!(k.fibers()[&Point::from("inf")], vec![5]);
        assert_eq!(k.riemann_hurwitz_genus(), 0);
        assert!(k.is_galois());
        let kl = klein().ramification_profile_of().unwrap();
        assert!(kl.fibers().values().all(|f| f == &vec![2, 2]));
        assert_eq!(kl.riemann_hurwitz_genus(), 0);
        let c3 = genus0(3, &["(1 2 3)", "(1 2 3)", "(1 2 3)"])
            .ramification_profile_of()
            .unwrap();
        assert_eq!(c3.riemann_hurwitz_genus(), 1);
    }

    #[test]
    fn group_order_and_galois() {
        assert_eq!(MonodromyDatum::kummer(2).unwrap().group_order().unwrap(), 2);
        assert_eq!(klein().group_order().unwrap(), 4);
        assert_eq!(s3().group_order().unwrap(), 6);
        assert!(MonodromyDatum::kummer(7).unwrap().is_galois().unwrap());
        assert!(!s3().is_galois().unwrap());
        assert!(klein().is_galois().unwrap());
        assert_eq!(s3().group_order_capped(4), Err(Error::CapExceeded(4)));
    }

    #[test]
    fn normal_closure_examples() {
        let et = MonodromyDatum::new(1, 3, 0, vec![(p("(1 2 3)", 3), Permutation::identity(3))], vec![]).unwrap();
        assert_eq!(et.normal_closure_orbits(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            MonodromyDatum::kummer(2).unwrap().normal_closure_orbits(),
            vec![vec![0, 1]]
        );
        assert_eq!(genus1_blocks().normal_closure_orbits(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn genuine_ramification_examples() {
        for m in 2..6 {
            assert!(MonodromyDatum::kummer(m).unwrap().is_genuinely_ramified().unwrap());
        }
        assert!(!etale_genus1().is_genuinely_ramified().unwrap());
        assert!(!genus1_blocks().is_genuinely_ramified().unwrap());
    }

    #[test]
    fn max_etale_examples() {
        assert_eq!(MonodromyDatum::kummer(3).unwrap().max_etale_subcover().unwrap().degree, 1);
        let et = etale_genus1();
        let sub = et.max_etale_subcover().unwrap();
        assert_eq!(sub.degree, 2);
        assert_eq!(sub.block_datum, et);
        let g1 = genus1_blocks().max_etale_subcover().unwrap();
        assert_eq!(g1.degree, 2);
        assert_eq!(g1.residual_degree, 2);
        assert_eq!(g1.block_datum.handles()[0].0, p("(1 2)", 2));
        assert!(g1.block_datum.branch_cycles().is_empty());
    }

    #[test]
    fn oracle_examples() {
        let k = MonodromyDatum::kummer(2).unwrap();
        assert!(k.oracle_is_genuinely_ramified().unwrap());
        assert!(!genus1_blocks().oracle_is_genuinely_ramified().unwrap());
        assert!(klein().oracle_is_genuinely_ramified().unwrap());
        assert_eq!(
            MonodromyDatum::kummer(9).unwrap().oracle_is_genuinely_ramified(),
            Err(Error::CapExceeded(8))
        );
    }

    #[test]
    fn schreier_generators_fix_first_point() {
        let gens = s3().generators();
        let h = schreier_generators(&gens, 3);
        assert!(h.iter().all(|g| g.apply(0) == 0));
        let closure = enumerate_group(&h, 3, 100).unwrap();
        assert_eq!(closure.len(), 2);
    }
}
