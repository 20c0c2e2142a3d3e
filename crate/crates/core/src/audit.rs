//! Numerical audit of the stability-of-pullback lemmas on Kummer covers.
//!
//! A case fixes `f: z ↦ z^m`, branch data `P` on the target and two line
//! classes `L`, `M` on `(X, P)`. The audit computes, with the other
//! modules and at run time:
//!
//! * `Hom_(X,P)(L, M)` from the coarse-floor formula,
//! * the equivariant Hom of `T(ι*L)`, `T(ι*M)` upstairs by monomial
//!   counting, when `P ≤ B_f`,
//! * the plain Hom of the pullbacks `f*L`, `f*M` in `Vect(Y, f*P)`,
//! * the degrees of `f_*O` in two readings: the stack reading (character
//!   pieces `S(O, χ^c)` on `(X, B_f)`) and the coarse reading (`ι*` of the
//!   coarse pushforward `O ⊕ O(−1)^{m−1}`).
//!
//! Each lemma statement is then tagged consistent, discrepant or
//! not-applicable per reading. Nothing is asserted; the tags are reports.

use std::fmt;

use num_traits::Zero;

use crate::bundle::OrbBundle;
use crate::divisor::{hom_dim, OrbDivisor, OrbLineClass, OrbifoldCurve};
use crate::equivariant::{
    hom_dim_equivariant, pushforward_structure, t_pullback, CyclicCoverSpec, INFINITY, ZERO,
};
use crate::monodromy::MonodromyDatum;
use crate::orbicore::{
    branch_data_leq, branch_data_of_cover, pullback_branch_data, Point, RamificationProfile,
    TameBranchData,
};
use crate::{Error, Rational, Result};

/// Identifiers accepted by [`builtin_case`].
pub const BUILTIN_IDS: [&str; 4] = [
    "kummer2-halfweights",
    "kummer2-trivialP",
    "kummer2-equal",
    "kummer3-thirdweights",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Consistent,
    Discrepant,
    NotApplicable,
}

impl Status {
    fn from_check(applicable: bool, holds: bool) -> Status {
        match (applicable, holds) {
            (false, _) => Status::NotApplicable,
            (true, true) => Status::Consistent,
            (true, false) => Status::Discrepant,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Consistent => "consistent",
            Status::Discrepant => "discrepant",
            Status::NotApplicable => "not-applicable",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Input of an audit run. Divisors live on `(X, P)` with `X` the target
/// of the Kummer cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCase {
    pub id: String,
    pub m: u64,
    pub branch_data: TameBranchData,
    pub left: OrbDivisor,
    pub right: OrbDivisor,
}

impl AuditCase {
    /// Builds a case on the Kummer target; `orders` and the coefficient lists
    /// use the labels `0`, `inf` and free labels.
    pub fn new(
        id: impl Into<String>,
        m: u64,
        orders: &[(&str, u64)],
        left: &[(&str, i64)],
        right: &[(&str, i64)],
    ) -> Result<Self> {
        let spec = CyclicCoverSpec::new(m, 0)?;
        let p = TameBranchData::new(spec.target_curve(), orders.iter().map(|&(x, n)| (x, n)))?;
        let ambient = OrbifoldCurve::new(p.clone());
        Ok(AuditCase {
            id: id.into(),
            m,
            branch_data: p,
            left: OrbDivisor::new(ambient.clone(), left.iter().map(|&(x, k)| (x, k))),
            right: OrbDivisor::new(ambient, right.iter().map(|&(x, k)| (x, k))),
        })
    }
}

pub fn builtin_case(id: &str) -> Option<AuditCase> {
    let case = match id {
        "kummer2-halfweights" => AuditCase::new(
            id,
            2,
            &[(ZERO, 2), (INFINITY, 2)],
            &[(ZERO, 1)],
            &[(INFINITY, 1)],
        ),
        "kummer2-trivialP" => AuditCase::new(id, 2, &[], &[(ZERO, 1)], &[(INFINITY, 1)]),
        "kummer2-equal" => AuditCase::new(
            id,
            2,
            &[(ZERO, 2), (INFINITY, 2)],
            &[(ZERO, 1)],
            &[(ZERO, 1)],
        ),
        "kummer3-thirdweights" => AuditCase::new(
            id,
            3,
            &[(ZERO, 3), (INFINITY, 3)],
            &[(ZERO, 1)],
            &[(INFINITY, 1)],
        ),
        _ => return None,
    };
    Some(case.expect("builtin cases are valid"))
}

/// Status of one lemma statement under one reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaStatus {
    pub lemma: &'static str,
    pub reading: &'static str,
    pub status: Status,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub case_id: String,
    pub cover_degree: u64,
    pub connected: bool,
    pub galois: bool,
    pub genuinely_ramified: bool,
    pub branch_data: TameBranchData,
    pub cover_branch_data: TameBranchData,
    pub pulled_back_branch_data: TameBranchData,
    pub left: OrbLineClass,
    pub right: OrbLineClass,
    pub slope_left: Rational,
    pub slope_right: Rational,
    pub hom_orbifold: u64,
    pub hom_equivariant: Option<u64>,
    pub hom_plain_pullback: u64,
    /// Degrees of `S(O, χ^c)`, `c = 0..m−1`, on `(X, B_f)`.
    pub pushforward_structure_degrees: Vec<Rational>,
    /// Degrees of the coarse pushforward summands, the first being `O`.
    pub coarse_pushforward_degrees: Vec<i64>,
    /// Degrees on `(X, P)` of the quotient `f_*O / O`, coarse reading.
    pub quotient_degrees_coarse: Vec<Rational>,
    /// Same in the stack reading; only when `P = B_f`.
    pub quotient_degrees_stack: Option<Vec<Rational>>,
    pub mu_max_twisted_coarse: Rational,
    pub mu_max_twisted_stack: Option<Rational>,
    pub statuses: Vec<LemmaStatus>,
}

impl AuditReport {
    pub fn status(&self, lemma: &str, reading: &str) -> Option<Status> {
        self.statuses
            .iter()
            .find(|s| s.lemma == lemma && s.reading == reading)
            .map(|s| s.status)
    }
}

/// Runs the audit; every quantity is recomputed from the modules.
pub fn run_audit(case: &AuditCase) -> Result<AuditReport> {
    let spec = CyclicCoverSpec::new(case.m, case.branch_data.curve().characteristic())?;
    let datum = MonodromyDatum::kummer(case.m as usize)?;
    let connected = datum.is_connected();
    let galois = connected && datum.is_galois()?;
    let genuinely_ramified = connected && datum.is_genuinely_ramified()?;
    let f: RamificationProfile = datum.ramification_profile_of()?;
    let p = &case.branch_data;
    if p.curve() != f.target() {
        return Err(Error::CurveMismatch {
            expected: f.target().to_string(),
            found: p.curve().to_string(),
        });
    }
    let hypotheses = connected && galois && genuinely_ramified;

    let bf = branch_data_of_cover(&f)?;
    let fp = pullback_branch_data(&f, p)?;
    let left = case.left.class_of()?;
    let right = case.right.class_of()?;
    let (slope_left, slope_right) = (left.degree(), right.degree());
    let slopes_equal = slope_left == slope_right;

    let hom_orbifold = hom_dim(&left, &right)?;

    let hom_equivariant = if branch_data_leq(p, &bf)? {
        let tl = t_pullback(&left.iota_pullback(&bf)?, spec)?;
        let tr = t_pullback(&right.iota_pullback(&bf)?, spec)?;
        Some(hom_dim_equivariant(&tl, &tr)?)
    } else {
        None
    };

    let up_left = OrbBundle::line(left.clone()).pullback(&f, &fp)?;
    let up_right = OrbBundle::line(right.clone()).pullback(&f, &fp)?;
    let hom_plain_pullback = hom_dim(&up_left.summands()[0], &up_right.summands()[0])?;

    let pieces = pushforward_structure(spec);
    let pushforward_structure_degrees: Vec<Rational> = pieces.iter().map(|c| c.degree()).collect();
    let coarse_pushforward_degrees: Vec<i64> =
        pieces.iter().map(|c| c.floor_view().coarse_degree).collect();

    // Coarse reading: ι* of O(k) from (X, O) to (X, P).
    let plain = OrbifoldCurve::new(TameBranchData::trivial(p.curve().clone()));
    let coarse_quotient = coarse_pushforward_degrees[1..]
        .iter()
        .map(|&k| {
            OrbLineClass::new(plain.clone(), Vec::<(Point, u64)>::new(), Rational::from_integer(k as i128))?
                .iota_pullback(p)
        })
        .collect::<Result<Vec<_>>>()?;
    let quotient_degrees_coarse: Vec<Rational> = coarse_quotient.iter().map(|c| c.degree()).collect();
    let mu_max_twisted_coarse = OrbBundle::new(coarse_quotient)?
        .tensor_line(&right)?
        .mu_max();

    // Stack reading: f is étale as a map (Y, O) → (X, B_f) only when P = B_f.
    let stack_applies = *p == bf;
    let (quotient_degrees_stack, mu_max_twisted_stack) = if stack_applies {
        let quotient = OrbBundle::new(pieces[1..].to_vec())?;
        let degrees = quotient.summands().iter().map(|c| c.degree()).collect();
        (Some(degrees), Some(quotient.tensor_line(&right)?.mu_max()))
    } else {
        (None, None)
    };

    let m = Rational::from_integer(case.m as i128);
    let all_negative = |ds: &[Rational]| ds.iter().all(|d| (*d * m) < Rational::zero());

    let mut statuses = vec![
        LemmaStatus {
            lemma: "negative_degree_lb",
            reading: "coarse",
            status: Status::from_check(hypotheses, all_negative(&quotient_degrees_coarse)),
            note: "f*(f_*O/O) has negative-degree summands, f_*O read as iota* of the coarse pushforward".into(),
        },
        LemmaStatus {
            lemma: "negative_degree_lb",
            reading: "stack",
            status: Status::from_check(
                hypotheses && stack_applies,
                quotient_degrees_stack.as_deref().is_some_and(all_negative),
            ),
            note: "same statement with f_*O the character decomposition on (X, B_f)".into(),
        },
        LemmaStatus {
            lemma: "slope_ineq",
            reading: "coarse",
            status: Status::from_check(hypotheses, mu_max_twisted_coarse < slope_right),
            note: "mu_max(F (x) f_*O/O) < mu(F) with F the right object".into(),
        },
        LemmaStatus {
            lemma: "slope_ineq",
            reading: "stack",
            status: Status::from_check(
                hypotheses && stack_applies,
                mu_max_twisted_stack.is_some_and(|mu| mu < slope_right),
            ),
            note: "same inequality in the stack reading".into(),
        },
        LemmaStatus {
            lemma: "hom_inclusion",
            reading: "plain",
            status: Status::from_check(true, hom_orbifold <= hom_plain_pullback),
            note: "Hom_(X,P)(L, M) embeds into Hom_(Y,f*P)(f*L, f*M)".into(),
        },
        LemmaStatus {
            lemma: "hom_equality",
            reading: "plain",
            status: Status::from_check(hypotheses && slopes_equal, hom_plain_pullback == hom_orbifold),
            note: "equality for Galois genuinely ramified f and equal slopes, plain Hom upstairs".into(),
        },
        LemmaStatus {
            lemma: "hom_equality",
            reading: "equivariant",
            status: Status::from_check(
                hypotheses && slopes_equal && hom_equivariant.is_some(),
                hom_equivariant == Some(hom_orbifold),
            ),
            note: "same equality with G-invariant Homs upstairs".into(),
        },
    ];
    // Rank-1 pullbacks are line bundles, hence stable.
    statuses.push(LemmaStatus {
        lemma: "pullback_stability",
        reading: "rank1",
        status: Status::from_check(genuinely_ramified, up_left.is_stable() && up_right.is_stable()),
        note: "f*E stays stable for stable E; rank 1 only".into(),
    });

    Ok(AuditReport {
        case_id: case.id.clone(),
        cover_degree: case.m,
        connected,
        galois,
        genuinely_ramified,
        branch_data: p.clone(),
        cover_branch_data: bf,
        pulled_back_branch_data: fp,
        left,
        right,
        slope_left,
        slope_right,
        hom_orbifold,
        hom_equivariant,
        hom_plain_pullback,
        pushforward_structure_degrees,
        coarse_pushforward_degrees,
        quotient_degrees_coarse,
        quotient_degrees_stack,
        mu_max_twisted_coarse,
        mu_max_twisted_stack,
        statuses,
    })
}
