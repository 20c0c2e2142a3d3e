//! Cyclic Kummer case of the correspondence between orbifold line bundles
//! on `(P¹, {0: m, inf: m})` and `Z/m`-equivariant line bundles on the
//! source of `z ↦ z^m`.
//!
//! # Conventions
//!
//! An [`EqLineBundle`] `(a, b, orbits, c)` is the sheaf
//! `O_Y(a·0' + b·∞' + Σ k_p · π⁻¹(p))` whose sections are rational
//! functions `s` with `div(s) ≥ −D`, linearised so that the monomial `z^j`
//! is invariant iff `j + c ≡ 0 (mod m)`. Functions of `w = z^m` are therefore
//! invariant for `c = 0`; that is the linearisation produced by
//! [`t_pullback`].
//!
//! Two moves preserve the isomorphism class:
//! * multiplying sections by `z⁻¹`: `(a, b, c) ≅ (a + 1, b − 1, c + 1)`,
//! * multiplying by `(w − w_p)^k`: an orbit coefficient `k` at `p` can be
//!   traded for `b + k·m`.
//!
//! So a class is determined by `a + b + m Σ k_p` and `(a − c) mod m`, and
//! the normal form has `c = 0`, `0 ≤ a < m`, no orbits. [`s_pushforward`]
//! reads `(a − c) mod m` as the residue at `0` and the total divided by `m`
//! as the orbifold degree.

use std::collections::BTreeMap;


use crate::divisor::{OrbLineClass, OrbifoldCurve};
use crate::orbicore::{CurveTag, Point, TameBranchData};
use crate::{Error, Rational, Result};

/// Label of the branch point `0` on the target.
pub const ZERO: &str = "0";
/// Label of the branch point `∞` on the target.
pub const INFINITY: &str = "inf";

/// The Kummer cover `z ↦ z^m` of the projective line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicCoverSpec {
    m: u64,
    characteristic: u64,
}

impl CyclicCoverSpec {
    pub fn new(m: u64, characteristic: u64) -> Result<Self> {
        let line = CurveTag::new("X", 0, characteristic)?;
        if m < 2 {
            return Err(Error::InvalidCyclicCover(format!("m = {m} must be at least 2")));
        }
        if !line.is_tame(m) {
            return Err(Error::InvalidCyclicCover(format!(
                "m = {m} is divisible by the characteristic {characteristic}"
            )));
        }
        Ok(CyclicCoverSpec { m, characteristic })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn target_curve(&self) -> CurveTag {
        CurveTag::new("X", 0, self.characteristic).expect("validated")
    }

    /// `(P¹, {0: m, inf: m})`.
    pub fn target_orbifold(&self) -> OrbifoldCurve {
        let data = TameBranchData::new(self.target_curve(), [(ZERO, self.m), (INFINITY, self.m)])
            .expect("tame by construction");
        OrbifoldCurve::new(data)
    }

    fn mi(&self) -> i64 {
        self.m as i64
    }
}

/// Rank-1 `Z/m`-equivariant bundle on the Kummer source.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EqLineBundle {
    spec: CyclicCoverSpec,
    a: i64,
    b: i64,
    orbits: BTreeMap<Point, i64>,
    character: u64,
}

impl EqLineBundle {
    /// The character is reduced mod `m`; zero orbit coefficients dropped.
    pub fn new<I, P>(spec: CyclicCoverSpec, a: i64, b: i64, orbits: I, character: i64) -> Self
    where
        I: IntoIterator<Item = (P, i64)>,
        P: Into<Point>,
    {
        let mut map = BTreeMap::new();
        for (p, k) in orbits {
            *map.entry(p.into()).or_insert(0) += k;
        }
        map.retain(|_, k| *k != 0);
        EqLineBundle {
            spec,
            a,
            b,
            orbits: map,
            character: character.rem_euclid(spec.mi()) as u64,
        }
    }

    pub fn trivial(spec: CyclicCoverSpec) -> Self {
        EqLineBundle::new(spec, 0, 0, Vec::<(Point, i64)>::new(), 0)
    }

    pub fn spec(&self) -> CyclicCoverSpec {
        self.spec
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn orbits(&self) -> &BTreeMap<Point, i64> {
        &self.orbits
    }

    pub fn character(&self) -> u64 {
        self.character
    }

    fn ensure_same_spec(&self, other: &EqLineBundle) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::InvalidCyclicCover(format!(
                "spec mismatch: m = {} vs m = {}",
                self.spec.m, other.spec.m
            )))
        }
    }

    pub fn tensor(&self, other: &EqLineBundle) -> Result<EqLineBundle> {
        self.ensure_same_spec(other)?;
        let orbits = self
            .orbits
            .iter()
            .chain(other.orbits.iter())
            .map(|(p, &k)| (p.clone(), k));
        Ok(EqLineBundle::new(
            self.spec,
            self.a + other.a,
            self.b + other.b,
            orbits,
            self.character as i64 + other.character as i64,
        ))
    }

    pub fn dual(&self) -> EqLineBundle {
        EqLineBundle::new(
            self.spec,
            -self.a,
            -self.b,
            self.orbits.iter().map(|(p, &k)| (p.clone(), -k)),
            -(self.character as i64),
        )
    }

    /// Degree of the underlying line bundle; every free orbit has `m` points.
    pub fn eq_degree(&self) -> i64 {
        self.a + self.b + self.spec.mi() * self.orbits.values().sum::<i64>()
    }

    /// Orbit coefficients folded into the coefficient at `∞'`.
    fn folded(&self) -> (i64, i64) {
        (self.a, self.eq_degree() - self.a)
    }

    /// Canonical representative: `c = 0`, `0 ≤ a < m`, no orbits.
    pub fn normalize(&self) -> EqLineBundle {
        let m = self.spec.mi();
        let total = self.eq_degree();
        let a = (self.a - self.character as i64).rem_euclid(m);
        EqLineBundle::new(self.spec, a, total - a, Vec::<(Point, i64)>::new(), 0)
    }

    /// Isomorphism of equivariant line bundles.
    pub fn is_isomorphic(&self, other: &EqLineBundle) -> bool {
        self.spec == other.spec && self.normalize() == other.normalize()
    }
}

/// Direct sum of equivariant line bundles over one spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqBundle {
    summands: Vec<EqLineBundle>,
}

impl EqBundle {
    pub fn new(summands: Vec<EqLineBundle>) -> Result<Self> {
        let first = summands.first().ok_or(Error::EmptyBundle)?;
        if let Some(bad) = summands.iter().find(|s| s.spec != first.spec) {
            return Err(Error::InvalidCyclicCover(format!(
                "summand over m = {} in a bundle over m = {}",
                bad.spec.m, first.spec.m
            )));
        }
        Ok(EqBundle { summands })
    }

    pub fn summands(&self) -> &[EqLineBundle] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn eq_slope(&self) -> Rational {
        let total: i64 = self.summands.iter().map(EqLineBundle::eq_degree).sum();
        Rational::new(total as i128, self.rank() as i128)
    }

    /// Equivariant semistability agrees with that of the underlying bundle.
    pub fn eq_is_semistable(&self) -> bool {
        let d = self.summands[0].eq_degree();
        self.summands.iter().all(|s| s.eq_degree() == d)
    }

    pub fn eq_is_polystable(&self) -> bool {
        self.eq_is_semistable()
    }

    /// Cyclic groups only have one-dimensional irreducibles.
    pub fn eq_is_stable(&self) -> bool {
        self.rank() == 1
    }
}

/// Counts invariant monomial sections: `z^j` with `−a ≤ j ≤ b'` and
/// `j + c ≡ 0 (mod m)`, where `b'` has the orbit coefficients folded in.
pub fn h0_invariants(l: &EqLineBundle) -> u64 {
    let m = l.spec.mi();
    let (a, b) = l.folded();
    let c = l.character as i64;
    (-a..=b).filter(|j| (j + c).rem_euclid(m) == 0).count() as u64
}

/// Sections of the underlying line bundle, character ignored.
pub fn h0_plain(l: &EqLineBundle) -> u64 {
    let (a, b) = l.folded();
    (-a..=b).count() as u64
}

/// Equivariant homs: invariant sections of `M ⊗ L^∨`.
pub fn hom_dim_equivariant(l: &EqLineBundle, m: &EqLineBundle) -> Result<u64> {
    Ok(h0_invariants(&m.tensor(&l.dual())?))
}

/// Homs of the underlying line bundles.
pub fn hom_dim_plain(l: &EqLineBundle, m: &EqLineBundle) -> Result<u64> {
    Ok(h0_plain(&m.tensor(&l.dual())?))
}

/// Pullback of an orbifold class to the Kummer source: the coefficients at
/// `0` and `∞` carry over with multiplier `m / gcd(m, m) = 1`, with the
/// invariant linearisation `c = 0`.
pub fn t_pullback(l: &OrbLineClass, spec: CyclicCoverSpec) -> Result<EqLineBundle> {
    if l.ambient() != &spec.target_orbifold() {
        return Err(Error::AmbientMismatch(format!(
            "class does not live on (P1, {{0: {m}, inf: {m}}})",
            m = spec.m
        )));
    }
    let m = spec.mi() as i128;
    let total = l.degree() * Rational::from_integer(m);
    debug_assert!(total.is_integer());
    let a = l.residue(&Point::from(ZERO)) as i64;
    let b = total.to_integer() as i64 - a;
    Ok(EqLineBundle::new(spec, a, b, Vec::<(Point, i64)>::new(), 0))
}

/// Invariant pushforward: residue `(a − c) mod m` at `0`, degree
/// `eq_degree / m`; the residue at `∞` follows from integrality.
pub fn s_pushforward(l: &EqLineBundle) -> OrbLineClass {
    let spec = l.spec;
    let m = spec.mi();
    let total = l.eq_degree();
    let r0 = (l.a - l.character as i64).rem_euclid(m);
    let rinf = (total - r0).rem_euclid(m);
    OrbLineClass::new(
        spec.target_orbifold(),
        [(ZERO, r0 as u64), (INFINITY, rinf as u64)],
        Rational::new(total as i128, m as i128),
    )
    .expect("residues and degree are compatible by construction")
}

/// `f_* O_Y` split into character pieces `S(O, χ^c)`, `c = 0..m−1`.
pub fn pushforward_structure(spec: CyclicCoverSpec) -> Vec<OrbLineClass> {
    (0..spec.m)
        .map(|c| {
            s_pushforward(&EqLineBundle::new(
                spec,
                0,
                0,
                Vec::<(Point, i64)>::new(),
                c as i64,
            ))
        })
        .collect()
}

/// Applies [`s_pushforward`] to each summand.
pub fn s_pushforward_bundle(v: &EqBundle) -> Result<crate::bundle::OrbBundle> {
    crate::bundle::OrbBundle::new(v.summands.iter().map(s_pushforward).collect())
}

/// `T(O)` is the trivial equivariant bundle.
pub fn is_unit_preserved(spec: CyclicCoverSpec) -> bool {
    let triv = OrbLineClass::trivial(spec.target_orbifold()).expect("genus 0");
    t_pullback(&triv, spec).map(|t| t == EqLineBundle::trivial(spec)).unwrap_or(false)
        && s_pushforward(&EqLineBundle::trivial(spec)).is_trivial()
}
