//! Decomposable orbifold bundles: formal direct sums of line classes.
//!
//! For a sum of line bundles `⊕ L_i`, any line subsheaf maps nontrivially
//! to some `L_i` and so has degree at most `max deg L_i`. Hence the sum is
//! semistable iff all summand slopes agree, the Harder–Narasimhan filtration
//! groups summands by slope, and an equal-slope sum is already a direct sum
//! of stable bundles. A decomposable bundle of rank ≥ 2 always contains an
//! equal-or-larger slope proper summand, so only rank 1 is stable.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::divisor::{FloorView, OrbLineClass, OrbifoldCurve};
use crate::orbicore::{is_morphism, RamificationProfile, TameBranchData};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbBundle {
    summands: Vec<OrbLineClass>,
}

/// One stratum of the HN filtration: its slope and the summand indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnStratum {
    pub slope: Rational,
    pub summands: Vec<usize>,
}

/// HN strata in strictly decreasing slope order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnReport {
    pub strata: Vec<HnStratum>,
}

impl OrbBundle {
    pub fn new(summands: Vec<OrbLineClass>) -> Result<Self> {
        let first = summands.first().ok_or(Error::EmptyBundle)?;
        if let Some(bad) = summands.iter().find(|s| s.ambient() != first.ambient()) {
            return Err(Error::AmbientMismatch(format!(
                "summand on {} differs from {}",
                bad.ambient().curve(),
                first.ambient().curve()
            )));
        }
        Ok(OrbBundle { summands })
    }

    pub fn line(l: OrbLineClass) -> Self {
        OrbBundle { summands: vec![l] }
    }

    pub fn summands(&self) -> &[OrbLineClass] {
        &self.summands
    }

    pub fn ambient(&self) -> &OrbifoldCurve {
        self.summands[0].ambient()
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn direct_sum(&self, other: &OrbBundle) -> Result<OrbBundle> {
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        OrbBundle::new(s)
    }

    /// Top exterior power.
    pub fn det(&self) -> OrbLineClass {
        let mut acc = self.summands[0].clone();
        for s in &self.summands[1..] {
            acc = acc.add(s).expect("summands share the ambient");
        }
        acc
    }

    pub fn deg_p(&self) -> Rational {
        self.summands.iter().map(OrbLineClass::degree).sum()
    }

    pub fn slope_p(&self) -> Rational {
        self.deg_p() / Rational::from_integer(self.rank() as i128)
    }

    pub fn hn(&self) -> HnReport {
        let mut by_slope: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for (i, s) in self.summands.iter().enumerate() {
            by_slope.entry(s.degree()).or_default().push(i);
        }
        HnReport {
            strata: by_slope
                .into_iter()
                .rev()
                .map(|(slope, summands)| HnStratum { slope, summands })
                .collect(),
        }
    }

    pub fn mu_max(&self) -> Rational {
        self.summands
            .iter()
            .map(OrbLineClass::degree)
            .max()
            .expect("non-empty")
    }

    pub fn mu_min(&self) -> Rational {
        self.summands
            .iter()
            .map(OrbLineClass::degree)
            .min()
            .expect("non-empty")
    }

    pub fn is_semistable(&self) -> bool {
        self.mu_max() == self.mu_min()
    }

    pub fn is_polystable(&self) -> bool {
        self.is_semistable()
    }

    pub fn is_stable(&self) -> bool {
        self.rank() == 1
    }

    /// The sub-bundle made of the listed summands.
    pub fn sub_bundle(&self, indices: &[usize]) -> Result<OrbBundle> {
        OrbBundle::new(indices.iter().map(|&i| self.summands[i].clone()).collect())
    }

    pub fn tensor_line(&self, l: &OrbLineClass) -> Result<OrbBundle> {
        let summands = self
            .summands
            .iter()
            .map(|s| s.add(l))
            .collect::<Result<Vec<_>>>()?;
        OrbBundle::new(summands)
    }

    /// `f*E` on `(Y, Q)` for a morphism `(Y, Q) → (X, P)`: summand-wise cover
    /// pullback to `(Y, f*P)` followed by `ι` to `Q`.
    pub fn pullback(&self, f: &RamificationProfile, q: &TameBranchData) -> Result<OrbBundle> {
        let p = self.ambient().branch_data();
        if !is_morphism(f, q, p)? {
            return Err(Error::NotMorphism(format!(
                "{:?} does not dominate the pullback of {:?}",
                q.orders(),
                p.orders()
            )));
        }
        let summands = self
            .summands
            .iter()
            .map(|s| s.cover_pullback(f)?.iota_pullback(q))
            .collect::<Result<Vec<_>>>()?;
        OrbBundle::new(summands)
    }

    pub fn parabolic_view(&self) -> Vec<FloorView> {
        self.summands.iter().map(OrbLineClass::floor_view).collect()
    }

    /// Mean coarse degree plus mean weight sum.
    pub fn parabolic_slope(&self) -> Rational {
        let total: Rational = self
            .parabolic_view()
            .iter()
            .map(FloorView::parabolic_degree)
            .sum();
        total / Rational::from_integer(self.rank() as i128)
    }
}

impl HnReport {
    /// Slopes strictly decrease and the indices partition `0..rank`.
    pub fn is_well_formed(&self, rank: usize) -> bool {
        let decreasing = self.strata.windows(2).all(|w| w[0].slope > w[1].slope);
        let mut seen: Vec<usize> = self.strata.iter().flat_map(|s| s.summands.clone()).collect();
        seen.sort_unstable();
        decreasing && seen == (0..rank).collect::<Vec<_>>() && self.strata.iter().all(|s| !s.summands.is_empty())
    }

    pub fn top_slope(&self) -> Rational {
        self.strata.first().map(|s| s.slope).unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::OrbDivisor;
    use crate::orbicore::{pullback_branch_data, CurveTag};

    fn ambient(pairs: &[(&str, u64)]) -> OrbifoldCurve {
        OrbifoldCurve::new(
            TameBranchData::new(CurveTag::projective_line("X"), pairs.iter().map(|&(p, n)| (p, n)))
                .unwrap(),
        )
    }

    fn cls(a: &OrbifoldCurve, pairs: &[(&str, i64)]) -> OrbLineClass {
        OrbDivisor::new(a.clone(), pairs.iter().map(|&(p, m)| (p, m)))
            .class_of()
            .unwrap()
    }

    fn q(p: i128, d: i128) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn rank_and_det() {
        let a = ambient(&[("0", 2), ("inf", 2)]);
        let l = cls(&a, &[("0", 1)]);
        let line = OrbBundle::line(l.clone());
        assert_eq!(line.rank(), 1);
        assert_eq!(line.det(), l);
        let e = OrbBundle::new(vec![l.clone(), l.neg()]).unwrap();
        assert!(e.det().is_trivial());
        let two = OrbBundle::new(vec![l.clone(), l]).unwrap().det();
        assert!(two.residues().is_empty());
        assert_eq!(two.degree(), q(1, 1));
        assert_eq!(OrbBundle::new(vec![]), Err(Error::EmptyBundle));
    }

    #[test]
    fn slope_examples() {
        let a = ambient(&[("0", 2), ("s", 3)]);
        assert_eq!(OrbBundle::line(OrbLineClass::trivial(a.clone()).unwrap()).slope_p(), q(0, 1));
        let half = cls(&a, &[("0", 1)]);
        assert_eq!(OrbBundle::new(vec![half.clone(), half]).unwrap().slope_p(), q(1, 2));
        let e = OrbBundle::new(vec![cls(&a, &[("s", 1)]), cls(&a, &[("p", 1)])]).unwrap();
        assert_eq!(e.slope_p(), q(2, 3));
    }

    #[test]
    fn hn_examples() {
        let a = ambient(&[("0", 2), ("s", 3)]);
        let one = cls(&a, &[("p", 1)]);
        let zero = OrbLineClass::trivial(a.clone()).unwrap();
        let eq = OrbBundle::new(vec![one.clone(), one.clone()]).unwrap().hn();
        assert_eq!(eq.strata.len(), 1);
        let e = OrbBundle::new(vec![one.clone(), zero, one]).unwrap();
        let hn = e.hn();
        assert_eq!(
            hn.strata,
            vec![
                HnStratum { slope: q(1, 1), summands: vec![0, 2] },
                HnStratum { slope: q(0, 1), summands: vec![1] },
            ]
        );
        assert!(hn.is_well_formed(3));
        let m = OrbBundle::new(vec![cls(&a, &[("0", 1)]), cls(&a, &[("s", -1)])]).unwrap();
        assert_eq!(m.mu_max(), q(1, 2));
    }

    #[test]
    fn stability_examples() {
        let a = ambient(&[("0", 2)]);
        let l = cls(&a, &[("0", 1)]);
        assert!(OrbBundle::line(l.clone()).is_stable());
        let ll = OrbBundle::new(vec![l.clone(), l]).unwrap();
        assert!(ll.is_semistable() && ll.is_polystable() && !ll.is_stable());
        let mixed = OrbBundle::new(vec![cls(&a, &[("p", 1)]), OrbLineClass::trivial(a).unwrap()]).unwrap();
        assert!(!mixed.is_semistable());
        assert!(!mixed.is_polystable());
    }

    #[test]
    fn tensor_examples() {
        let a = ambient(&[("0", 2)]);
        let triv = OrbLineClass::trivial(a.clone()).unwrap();
        let e = OrbBundle::new(vec![triv.clone(), triv.clone()]).unwrap();
        assert_eq!(e.tensor_line(&triv).unwrap(), e);
        let half = cls(&a, &[("0", 1)]);
        let t = e.tensor_line(&half).unwrap();
        assert!(t.summands().iter().all(|s| s.degree() == q(1, 2)));
        assert!(t.is_semistable());
        assert_eq!(t.mu_max(), e.mu_max() + half.degree());
    }

    #[test]
    fn pullback_examples() {
        let line = CurveTag::projective_line("X");
        let id = RamificationProfile::identity(line.clone());
        let a = ambient(&[("0", 2), ("inf", 2)]);
        let l = cls(&a, &[("0", 1)]);
        let e = OrbBundle::line(l.clone());
        assert_eq!(e.pullback(&id, a.branch_data()).unwrap(), e);

        let f = RamificationProfile::kummer(line, 2).unwrap();
        let o = TameBranchData::trivial(f.source().clone());
        let up = e.pullback(&f, &o).unwrap();
        let s = &up.summands()[0];
        assert!(s.residues().is_empty());
        assert_eq!(s.degree(), q(1, 1));
        assert_eq!(s.ambient().order(&"0'".into()), 1);

        let ss = OrbBundle::new(vec![l.clone(), cls(&a, &[("inf", 1)])]).unwrap();
        assert!(ss.is_semistable());
        let ssu = ss.pullback(&f, &o).unwrap();
        assert!(ssu.is_semistable());
        assert_eq!(ssu.slope_p(), ss.slope_p() * q(2, 1));
    }

    #[test]
    fn pullback_requires_morphism() {
        let line = CurveTag::projective_line("X");
        let f = RamificationProfile::kummer(line, 2).unwrap();
        let a = ambient(&[("0", 4), ("inf", 4)]);
        let e = OrbBundle::line(OrbLineClass::trivial(a.clone()).unwrap());
        let o = TameBranchData::trivial(f.source().clone());
        assert!(matches!(e.pullback(&f, &o), Err(Error::NotMorphism(_))));
        let fp = pullback_branch_data(&f, a.branch_data()).unwrap();
        assert!(e.pullback(&f, &fp).is_ok());
    }

    #[test]
    fn parabolic_view_examples() {
        let a = ambient(&[("0", 2), ("inf", 2)]);
        let triv = OrbBundle::line(OrbLineClass::trivial(a.clone()).unwrap());
        let v = triv.parabolic_view();
        assert_eq!(v[0].coarse_degree, 0);
        assert!(v[0].weights.is_empty());
        let half = OrbBundle::line(cls(&a, &[("0", 1)]));
        assert_eq!(half.parabolic_view()[0].coarse_degree, 0);
        assert_eq!(half.parabolic_slope(), q(1, 2));
        assert_eq!(half.parabolic_slope(), half.slope_p());
        let c = OrbBundle::line(OrbLineClass::new(a, [("0", 1), ("inf", 1)], q(0, 1)).unwrap());
        assert_eq!(c.parabolic_view()[0].coarse_degree, -1);
        assert_eq!(c.parabolic_slope(), q(0, 1));
    }
}
