//! Stacky divisors and line-bundle classes on tame orbifold curves.
//!
//! A point `x` with branch order `n_x` has stabilizer of order `n_x` and
//! contributes `1/n_x` to the degree per unit coefficient. On a genus-0
//! orbifold curve principal divisors are pullbacks of degree-0 divisors from
//! the coarse curve, i.e. integer combinations `Σ c_x n_x x` with
//! `Σ c_x = 0`. A class is therefore determined by the residues
//! `m_x mod n_x` at stacky points together with the total rational degree.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::orbicore::{
    branch_data_leq, pullback_branch_data, CurveTag, Point, RamificationProfile, TameBranchData,
};
use crate::{Error, Rational, Result};

/// Label used to carry the coarse part of a class representative when the
/// ambient has no stacky point.
pub const GENERIC_POINT: &str = "@generic";

/// A curve together with tame branch data on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbifoldCurve {
    curve: CurveTag,
    data: TameBranchData,
}

impl OrbifoldCurve {
    pub fn new(data: TameBranchData) -> Self {
        OrbifoldCurve {
            curve: data.curve().clone(),
            data,
        }
    }

    pub fn curve(&self) -> &CurveTag {
        &self.curve
    }

    pub fn branch_data(&self) -> &TameBranchData {
        &self.data
    }

    pub fn order(&self, p: &Point) -> u64 {
        self.data.order(p)
    }

    fn ensure_same(&self, other: &OrbifoldCurve) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!(
                "{} with {:?} vs {} with {:?}",
                self.curve,
                self.data.orders(),
                other.curve,
                other.data.orders()
            )))
        }
    }

    fn ensure_genus_zero(&self) -> Result<()> {
        if self.curve.genus() == 0 {
            Ok(())
        } else {
            Err(Error::GenusNotZero {
                curve: self.curve.name().to_owned(),
                genus: self.curve.genus(),
            })
        }
    }
}

/// Integer combination of points on an orbifold curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbDivisor {
    ambient: OrbifoldCurve,
    coefficients: BTreeMap<Point, i64>,
}

impl OrbDivisor {
    pub fn new<I, P>(ambient: OrbifoldCurve, coefficients: I) -> Self
    where
        I: IntoIterator<Item = (P, i64)>,
        P: Into<Point>,
    {
        let mut map = BTreeMap::new();
        for (p, m) in coefficients {
            *map.entry(p.into()).or_insert(0) += m;
        }
        map.retain(|_, m| *m != 0);
        OrbDivisor {
            ambient,
            coefficients: map,
        }
    }

    pub fn zero(ambient: OrbifoldCurve) -> Self {
        OrbDivisor::new(ambient, Vec::<(Point, i64)>::new())
    }

    pub fn ambient(&self) -> &OrbifoldCurve {
        &self.ambient
    }

    pub fn coefficients(&self) -> &BTreeMap<Point, i64> {
        &self.coefficients
    }

    pub fn coefficient(&self, p: &Point) -> i64 {
        self.coefficients.get(p).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &OrbDivisor) -> Result<OrbDivisor> {
        self.ambient.ensure_same(&other.ambient)?;
        let terms = self
            .coefficients
            .iter()
            .chain(other.coefficients.iter())
            .map(|(p, &m)| (p.clone(), m));
        Ok(OrbDivisor::new(self.ambient.clone(), terms))
    }

    pub fn neg(&self) -> OrbDivisor {
        OrbDivisor::new(
            self.ambient.clone(),
            self.coefficients.iter().map(|(p, &m)| (p.clone(), -m)),
        )
    }

    /// `deg_P(D) = Σ m_x / n_x`.
    pub fn deg_p(&self) -> Rational {
        self.coefficients
            .iter()
            .map(|(p, &m)| Rational::new(m as i128, self.ambient.order(p) as i128))
            .sum()
    }

    /// Pullback along `ι: (X, P') → (X, P)` for `P ≤ P'`: coefficients are
    /// multiplied by `n'_x / n_x`.
    pub fn iota_pullback(&self, finer: &TameBranchData) -> Result<OrbDivisor> {
        let coarse = self.ambient.branch_data();
        if !branch_data_leq(coarse, finer)? {
            return Err(Error::OrderViolation(format!(
                "{:?} is not dominated by {:?}",
                coarse.orders(),
                finer.orders()
            )));
        }
        let terms = self.coefficients.iter().map(|(p, &m)| {
            let k = finer.order(p) / coarse.order(p);
            (p.clone(), m * k as i64)
        });
        Ok(OrbDivisor::new(OrbifoldCurve::new(finer.clone()), terms))
    }

    /// Pullback along the cover `f` to `(Y, f*P)`: the coefficient over `x` at
    /// a preimage of index `e` is `m_x · e / gcd(n_x, e)`.
    pub fn cover_pullback(&self, f: &RamificationProfile) -> Result<OrbDivisor> {
        let p = self.ambient.branch_data();
        let pulled = pullback_branch_data(f, p)?;
        let mut terms = Vec::new();
        for (x, &m) in &self.coefficients {
            let n = p.order(x);
            for (y, e) in f.preimages(x) {
                terms.push((y, m * (e / n.gcd(&e)) as i64));
            }
        }
        Ok(OrbDivisor::new(OrbifoldCurve::new(pulled), terms))
    }

    /// Linear-equivalence class; genus 0 only.
    pub fn class_of(&self) -> Result<OrbLineClass> {
        self.ambient.ensure_genus_zero()?;
        let residues = self.coefficients.iter().filter_map(|(p, &m)| {
            let n = self.ambient.order(p);
            let r = m.rem_euclid(n as i64) as u64;
            (r != 0).then(|| (p.clone(), r))
        });
        Ok(OrbLineClass {
            ambient: self.ambient.clone(),
            residues: residues.collect(),
            degree: self.deg_p(),
        })
    }
}

/// Line-bundle class on a genus-0 orbifold curve: residues `r_x ∈ [1, n_x)`
/// at stacky points (zero residues omitted) and the total rational degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbLineClass {
    ambient: OrbifoldCurve,
    residues: BTreeMap<Point, u64>,
    degree: Rational,
}

impl OrbLineClass {
    /// Checks residues against the ambient orders and that
    /// `degree − Σ r_x / n_x` is an integer.
    pub fn new<I, P>(ambient: OrbifoldCurve, residues: I, degree: Rational) -> Result<Self>
    where
        I: IntoIterator<Item = (P, u64)>,
        P: Into<Point>,
    {
        ambient.ensure_genus_zero()?;
        let mut map = BTreeMap::new();
        for (p, r) in residues {
            let p = p.into();
            let n = ambient.order(&p);
            if r >= n {
                return Err(Error::InvalidClass(format!(
                    "residue {r} at `{p}` is not reduced modulo {n}"
                )));
            }
            if r != 0 {
                map.insert(p, r);
            }
        }
        let class = OrbLineClass {
            ambient,
            residues: map,
            degree,
        };
        if !class.coarse_part().is_integer() {
            return Err(Error::InvalidClass(format!(
                "degree {} is incompatible with the residues",
                crate::format_rational(&degree)
            )));
        }
        Ok(class)
    }

    pub fn trivial(ambient: OrbifoldCurve) -> Result<Self> {
        OrbLineClass::new(ambient, Vec::<(Point, u64)>::new(), Rational::zero())
    }

    pub fn ambient(&self) -> &OrbifoldCurve {
        &self.ambient
    }

    pub fn residues(&self) -> &BTreeMap<Point, u64> {
        &self.residues
    }

    pub fn residue(&self, p: &Point) -> u64 {
        self.residues.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Rational {
        self.degree
    }

    fn weight_sum(&self) -> Rational {
        self.residues
            .iter()
            .map(|(p, &r)| Rational::new(r as i128, self.ambient.order(p) as i128))
            .sum()
    }

    fn coarse_part(&self) -> Rational {
        self.degree - self.weight_sum()
    }

    /// Tensor product.
    pub fn add(&self, other: &OrbLineClass) -> Result<OrbLineClass> {
        self.ambient.ensure_same(&other.ambient)?;
        let mut residues = self.residues.clone();
        for (p, &r) in &other.residues {
            let n = self.ambient.order(p);
            let e = residues.entry(p.clone()).or_insert(0);
            *e = (*e + r) % n;
        }
        residues.retain(|_, r| *r != 0);
        Ok(OrbLineClass {
            ambient: self.ambient.clone(),
            residues,
            degree: self.degree + other.degree,
        })
    }

    /// Dual.
    pub fn neg(&self) -> OrbLineClass {
        let residues = self
            .residues
            .iter()
            .map(|(p, &r)| (p.clone(), self.ambient.order(p) - r))
            .collect();
        OrbLineClass {
            ambient: self.ambient.clone(),
            residues,
            degree: -self.degree,
        }
    }

    /// `L^k`.
    pub fn scale(&self, k: i64) -> OrbLineClass {
        let residues = self
            .residues
            .iter()
            .filter_map(|(p, &r)| {
                let n = self.ambient.order(p) as i64;
                let s = (r as i64 * k).rem_euclid(n) as u64;
                (s != 0).then(|| (p.clone(), s))
            })
            .collect();
        OrbLineClass {
            ambient: self.ambient.clone(),
            residues,
            degree: self.degree * Rational::from_integer(k as i128),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.is_empty() && self.degree.is_zero()
    }

    /// Parabolic reading: integer coarse degree and weights `r_x / n_x`, with
    /// `deg_P = coarse + Σ weights`.
    pub fn floor_view(&self) -> FloorView {
        let weights = self
            .residues
            .iter()
            .map(|(p, &r)| (p.clone(), Rational::new(r as i128, self.ambient.order(p) as i128)))
            .collect();
        FloorView {
            coarse_degree: self.coarse_part().to_integer() as i64,
            weights,
        }
    }

    /// Global sections: those of the coarse floor `O(k)` on the projective
    /// line.
    pub fn h0(&self) -> u64 {
        (self.floor_view().coarse_degree + 1).max(0) as u64
    }

    /// A divisor in this class. The coarse part sits on the first stacky
    /// point, or on [`GENERIC_POINT`] when there is none.
    pub fn representative(&self) -> OrbDivisor {
        let coarse = self.floor_view().coarse_degree;
        let mut terms: Vec<(Point, i64)> = self
            .residues
            .iter()
            .map(|(p, &r)| (p.clone(), r as i64))
            .collect();
        if coarse != 0 {
            match self.ambient.branch_data().support().next() {
                Some(p) => terms.push((p.clone(), coarse * self.ambient.order(p) as i64)),
                None => terms.push((Point::from(GENERIC_POINT), coarse)),
            }
        }
        OrbDivisor::new(self.ambient.clone(), terms)
    }

    /// Class pullback along `ι` to finer branch data.
    pub fn iota_pullback(&self, finer: &TameBranchData) -> Result<OrbLineClass> {
        self.representative().iota_pullback(finer)?.class_of()
    }

    /// Class pullback along a cover to `(Y, f*P)`; needs a genus-0 source.
    pub fn cover_pullback(&self, f: &RamificationProfile) -> Result<OrbLineClass> {
        self.representative().cover_pullback(f)?.class_of()
    }
}

/// Coarse degree plus parabolic weights of a line class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorView {
    pub coarse_degree: i64,
    pub weights: BTreeMap<Point, Rational>,
}

impl FloorView {
    pub fn parabolic_degree(&self) -> Rational {
        Rational::from_integer(self.coarse_degree as i128) + self.weights.values().sum::<Rational>()
    }
}

/// `dim Hom(L, M) = h⁰(M ⊗ L^∨)`.
pub fn hom_dim(l: &OrbLineClass, m: &OrbLineClass) -> Result<u64> {
    Ok(m.add(&l.neg())?.h0())
}

/// Brute-force linear equivalence on genus 0: searches for integers `c_x`
/// with `Σ c_x = 0` and `D − D' = Σ c_x n_x x`, `|c_x| ≤ bound`. Meant as
/// a test oracle for [`OrbDivisor::class_of`].
pub fn search_linear_equivalence(d: &OrbDivisor, d2: &OrbDivisor, bound: i64) -> Result<bool> {
    let diff = d.add(&d2.neg())?;
    let mut points: Vec<Point> = diff.coefficients().keys().cloned().collect();
    // one spare point so that a coarse degree-0 move can land somewhere
    points.push(Point::from(GENERIC_POINT));
    let target: Vec<i64> = points.iter().map(|p| diff.coefficient(p)).collect();
    let orders: Vec<i64> = points.iter().map(|p| diff.ambient().order(p) as i64).collect();
    fn rec(i: usize, sum: i64, target: &[i64], orders: &[i64], bound: i64) -> bool {
        if i == target.len() {
            return sum == 0;
        }
        (-bound..=bound).any(|c| c * orders[i] == target[i] && rec(i + 1, sum + c, target, orders, bound))
    }
    Ok(rec(0, 0, &target, &orders, bound))
}
