//! Curves, tame branch data and cover skeletons.
//!
//! In the tame setting a local Galois extension attached to a point is
//! cyclic and determined by its degree, so branch data are stored as a
//! finitely supported map from points to integer orders. Containment of
//! extensions becomes divisibility of orders, and a compositum of cyclic
//! tame extensions has degree equal to the lcm of the orders.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Symbolic label of a smooth projective curve over a field of given
/// characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveTag {
    name: String,
    genus: u32,
    characteristic: u64,
}

impl CurveTag {
    pub fn new(name: impl Into<String>, genus: u32, characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::BadCharacteristic(characteristic));
        }
        Ok(CurveTag {
            name: name.into(),
            genus,
            characteristic,
        })
    }

    /// Genus-0 curve in characteristic 0.
    pub fn projective_line(name: impl Into<String>) -> Self {
        CurveTag {
            name: name.into(),
            genus: 0,
            characteristic: 0,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// True when `n` is invertible in the ground field.
    pub fn is_tame(&self, n: u64) -> bool {
        self.characteristic == 0 || !n.is_multiple_of(self.characteristic)
    }

    pub(crate) fn ensure_same(&self, other: &CurveTag) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::CurveMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }
}

impl fmt::Display for CurveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (genus {}, char {})",
            self.name, self.genus, self.characteristic
        )
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Closed point label. Points are compared within a single curve; the
/// owning container carries the curve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(String);

impl Point {
    pub fn new(label: impl Into<String>) -> Self {
        Point(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Point {
    fn from(s: &str) -> Self {
        Point(s.to_owned())
    }
}

impl From<String> for Point {
    fn from(s: String) -> Self {
        Point(s)
    }
}

/// Tame branch data: a finitely supported map from points to orders `n ≥ 2`,
/// each invertible in the ground field. Points off the support have order 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TameBranchData {
    curve: CurveTag,
    orders: BTreeMap<Point, u64>,
}

impl TameBranchData {
    /// Builds branch data; entries of order 1 are dropped, order 0 and wild
    /// orders are rejected.
    pub fn new<I, P>(curve: CurveTag, orders: I) -> Result<Self>
    where
        I: IntoIterator<Item = (P, u64)>,
        P: Into<Point>,
    {
        let mut map = BTreeMap::new();
        for (p, n) in orders {
            let p = p.into();
            if n == 0 {
                return Err(Error::InvalidOrder {
                    point: p.to_string(),
                    order: n,
                });
            }
            if !curve.is_tame(n) {
                return Err(Error::Wild {
                    point: p.to_string(),
                    order: n,
                    characteristic: curve.characteristic(),
                });
            }
            if n > 1 {
                map.insert(p, n);
            }
        }
        Ok(TameBranchData { curve, orders: map })
    }

    /// The trivial branch data `O`.
    pub fn trivial(curve: CurveTag) -> Self {
        TameBranchData {
            curve,
            orders: BTreeMap::new(),
        }
    }

    pub fn curve(&self) -> &CurveTag {
        &self.curve
    }

    /// Order at `p`; 1 off the support.
    pub fn order(&self, p: &Point) -> u64 {
        self.orders.get(p).copied().unwrap_or(1)
    }

    pub fn orders(&self) -> &BTreeMap<Point, u64> {
        &self.orders
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.orders.keys()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Pointwise lcm: the smallest branch data dominating both.
    pub fn join(&self, other: &TameBranchData) -> Result<TameBranchData> {
        self.curve.ensure_same(&other.curve)?;
        let mut orders = self.orders.clone();
        for (p, &n) in &other.orders {
            let e = orders.entry(p.clone()).or_insert(1);
            *e = e.lcm(&n);
        }
        TameBranchData::new(self.curve.clone(), orders)
    }
}

/// Cover skeleton `f: Y → X`: degree and, per branch point, the partition of
/// the degree by ramification indices.
///
/// Preimages are anonymous; the `i`-th entry of the ascending partition over
/// `x` is named `x'i`. Points of `X` not listed have `d` unramified
/// preimages. A degree-1 cover is an isomorphism and keeps labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationProfile {
    source: CurveTag,
    target: CurveTag,
    degree: u64,
    fibers: BTreeMap<Point, Vec<u64>>,
    galois: bool,
}

impl RamificationProfile {
    /// Validates the profile and derives the source genus by Riemann–Hurwitz.
    pub fn new<I, P>(
        source_name: impl Into<String>,
        target: CurveTag,
        degree: u64,
        fibers: I,
        galois: bool,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (P, Vec<u64>)>,
        P: Into<Point>,
    {
        if degree == 0 {
            return Err(Error::InvalidProfile("degree must be positive".into()));
        }
        let mut map = BTreeMap::new();
        for (p, mut part) in fibers {
            let p = p.into();
            if part.contains(&0) {
                return Err(Error::InvalidProfile(format!(
                    "zero ramification index over `{p}`"
                )));
            }
            let sum: u64 = part.iter().sum();
            if sum != degree {
                return Err(Error::InvalidProfile(format!(
                    "fiber over `{p}` sums to {sum}, degree is {degree}"
                )));
            }
            if let Some(&e) = part.iter().find(|&&e| !target.is_tame(e)) {
                return Err(Error::Wild {
                    point: p.to_string(),
                    order: e,
                    characteristic: target.characteristic(),
                });
            }
            if galois {
                let first = part[0];
                if part.iter().any(|&e| e != first) || !degree.is_multiple_of(first) {
                    return Err(Error::InvalidProfile(format!(
                        "fiber over `{p}` is not a Galois fiber"
                    )));
                }
            }
            part.sort_unstable();
            if map.insert(p.clone(), part).is_some() {
                return Err(Error::InvalidProfile(format!("duplicate fiber over `{p}`")));
            }
        }
        let genus = riemann_hurwitz_genus_raw(target.genus(), degree, map.values())?;
        let source = CurveTag {
            name: source_name.into(),
            genus,
            characteristic: target.characteristic(),
        };
        Ok(RamificationProfile {
            source,
            target,
            degree,
            fibers: map,
            galois,
        })
    }

    /// The identity cover of `curve`.
    pub fn identity(curve: CurveTag) -> Self {
        RamificationProfile {
            source: curve.clone(),
            target: curve,
            degree: 1,
            fibers: BTreeMap::new(),
            galois: true,
        }
    }

    /// The Kummer cover `z ↦ z^m` of the projective line, branched over the
    /// points `0` and `inf`.
    pub fn kummer(target: CurveTag, m: u64) -> Result<Self> {
        if target.genus() != 0 {
            return Err(Error::GenusNotZero {
                curve: target.name().to_owned(),
                genus: target.genus(),
            });
        }
        let source = format!("{}~{m}", target.name());
        RamificationProfile::new(source, target, m, [("0", vec![m]), ("inf", vec![m])], true)
    }

    pub fn source(&self) -> &CurveTag {
        &self.source
    }

    pub fn target(&self) -> &CurveTag {
        &self.target
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_galois(&self) -> bool {
        self.galois
    }

    pub fn fibers(&self) -> &BTreeMap<Point, Vec<u64>> {
        &self.fibers
    }

    /// Points of `X` over which some index exceeds 1.
    pub fn branch_locus(&self) -> impl Iterator<Item = &Point> {
        self.fibers
            .iter()
            .filter(|(_, part)| part.iter().any(|&e| e > 1))
            .map(|(p, _)| p)
    }

    /// Generated name of the `i`-th preimage of `x`: `x'` when the fiber is
    /// a single point, `x'i` otherwise. Degree-1 covers keep the labels.
    pub fn preimage_point(&self, x: &Point, i: usize) -> Point {
        if self.degree == 1 {
            x.clone()
        } else if self.fibers.get(x).is_some_and(|part| part.len() == 1) {
            Point(format!("{x}'"))
        } else {
            Point(format!("{x}'{i}"))
        }
    }

    /// Preimages of `x` with their ramification indices.
    pub fn preimages(&self, x: &Point) -> Vec<(Point, u64)> {
        match self.fibers.get(x) {
            Some(part) => part
                .iter()
                .enumerate()
                .map(|(i, &e)| (self.preimage_point(x, i), e))
                .collect(),
            None => (0..self.degree as usize)
                .map(|i| (self.preimage_point(x, i), 1))
                .collect(),
        }
    }

    /// Genus of the source, as fixed by Riemann–Hurwitz at construction.
    pub fn riemann_hurwitz_genus(&self) -> u32 {
        self.source.genus()
    }
}

/// Solves `2g_Y − 2 = d(2g_X − 2) + Σ (e − 1)` for a non-negative integer `g_Y`.
pub fn riemann_hurwitz_genus(
    target_genus: u32,
    degree: u64,
    fibers: &BTreeMap<Point, Vec<u64>>,
) -> Result<u32> {
    riemann_hurwitz_genus_raw(target_genus, degree, fibers.values())
}

fn riemann_hurwitz_genus_raw<'a>(
    target_genus: u32,
    degree: u64,
    fibers: impl Iterator<Item = &'a Vec<u64>>,
) -> Result<u32> {
    let ramification: i128 = fibers.flatten().map(|&e| e as i128 - 1).sum();
    let rhs = degree as i128 * (2 * target_genus as i128 - 2) + ramification;
    if rhs % 2 != 0 {
        return Err(Error::RiemannHurwitz(format!(
            "2g - 2 = {rhs} is odd, no integer genus"
        )));
    }
    let genus = rhs / 2 + 1;
    if genus < 0 {
        return Err(Error::RiemannHurwitz(format!(
            "negative source genus {genus}"
        )));
    }
    u32::try_from(genus).map_err(|_| Error::RiemannHurwitz(format!("genus {genus} too large")))
}

/// Order of the pullback of a tame order-`n` extension along a local
/// extension of ramification index `e`: `n / gcd(n, e)`.
pub fn tame_order_after_pullback(n: u64, e: u64) -> u64 {
    n / n.gcd(&e)
}

/// `f*P` on the source of `f`.
pub fn pullback_branch_data(
    f: &RamificationProfile,
    p: &TameBranchData,
) -> Result<TameBranchData> {
    f.target.ensure_same(p.curve())?;
    let mut orders = Vec::new();
    for (x, &n) in p.orders() {
        for (y, e) in f.preimages(x) {
            orders.push((y, tame_order_after_pullback(n, e)));
        }
    }
    TameBranchData::new(f.source.clone(), orders)
}

/// `B_f`: at each branch point, the lcm of the fiber's ramification indices.
pub fn branch_data_of_cover(f: &RamificationProfile) -> Result<TameBranchData> {
    let orders = f.fibers.iter().map(|(x, part)| {
        let n = part.iter().fold(1u64, |acc, &e| acc.lcm(&e));
        (x.clone(), n)
    });
    TameBranchData::new(f.target.clone(), orders)
}

/// `P ≤ P'`: every order of `P` divides the corresponding order of `P'`.
pub fn branch_data_leq(p: &TameBranchData, p2: &TameBranchData) -> Result<bool> {
    p.curve().ensure_same(p2.curve())?;
    Ok(p.orders().iter().all(|(x, &n)| p2.order(x).is_multiple_of(n)))
}

/// There is a morphism `(Y, Q) → (X, P)` over `f` iff `Q ≥ f*P`.
pub fn is_morphism(
    f: &RamificationProfile,
    q: &TameBranchData,
    p: &TameBranchData,
) -> Result<bool> {
    f.source.ensure_same(q.curve())?;
    let pulled = pullback_branch_data(f, p)?;
    branch_data_leq(&pulled, q)
}

/// The morphism `(Y, Q) → (X, P)` is étale iff `Q = f*P` pointwise.
pub fn is_etale_morphism(
    f: &RamificationProfile,
    q: &TameBranchData,
    p: &TameBranchData,
) -> Result<bool> {
    f.source.ensure_same(q.curve())?;
    let pulled = pullback_branch_data(f, p)?;
    Ok(pulled.orders() == q.orders())
}

/// Checks whether the Galois cover `f` witnesses `P` as geometric, i.e.
/// `(Y, O) → (X, P)` is étale: `n_x` divides every index over `x`.
pub fn is_geometric_witness(f: &RamificationProfile, p: &TameBranchData) -> Result<bool> {
    if !f.galois {
        return Err(Error::NotGalois);
    }
    f.target.ensure_same(p.curve())?;
    let mut points: Vec<&Point> = p.support().collect();
    points.extend(f.branch_locus());
    Ok(points.into_iter().all(|x| {
        let n = p.order(x);
        f.preimages(x).iter().all(|(_, e)| e % n == 0)
    }))
}
