//! Upper and lower bounds on `k`-loadout counts and their comparison with
//! enumerated counts.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::cells::{
    certify_inequality_cells, enumerate_inequality_loadouts, m3_certificate_cells, subsets_of_cells, Enumerated,
};
use crate::cyclic::{binomial, check_cap, face_count, Combinations};
use crate::designs::{exact_design_m2, exact_design_m3, identity_design, moment_curve_design, Design, DesignKind};
use crate::exactmath::{PrecisionPolicy, Rational};
use crate::lpsolver::verify_loadout;
use crate::{Error, Result, Subset};

fn check_nmk(n: usize, m: usize, k: usize) -> Result<()> {
    if !(n > m && m >= k && k >= 2) {
        return Err(Error::InvalidParams(format!("need n > m >= k >= 2, got n = {n}, m = {m}, k = {k}")));
    }
    Ok(())
}

/// `f_{k-1}(C(n+1, m)) - binom(m, k-1)`: no design with `n` tools and `m`
/// resources has more `k`-loadouts.
pub fn upper_bound(n: usize, m: usize, k: usize) -> Result<BigUint> {
    check_nmk(n, m, k)?;
    Ok(face_count(n + 1, m, k - 1) - binomial(m as u64, k as u64 - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBoundCase {
    /// `k < m/2`: the full face count `f_{k-1}(C(n, m))`.
    Full,
    /// `k >= m/2` with `m` odd, or `k = m/2` with `m` even: half of it.
    Half,
    /// `k > m/2` with `m` even: a quarter of it.
    Quarter,
    /// The `m = 3` construction: `2n - 5` three-loadouts, `3n - 6` pairs.
    ConstructionM3,
    /// The `m = 2` construction: `n - 1` pairs.
    ConstructionM2,
    /// Identity design: every subset.
    Identity,
}

impl LowerBoundCase {
    pub fn as_str(self) -> &'static str {
        match self {
            LowerBoundCase::Full => "full_face_count",
            LowerBoundCase::Half => "half_face_count",
            LowerBoundCase::Quarter => "quarter_face_count",
            LowerBoundCase::ConstructionM3 => "m3_construction",
            LowerBoundCase::ConstructionM2 => "m2_construction",
            LowerBoundCase::Identity => "identity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub value: Rational,
    pub case: LowerBoundCase,
}

/// Moment-curve lower bound `f_{k-1}(C(n, m))` scaled by 1, 1/2 or 1/4.
pub fn face_count_lower_bound(n: usize, m: usize, k: usize) -> Result<LowerBound> {
    check_nmk(n, m, k)?;
    let f = Rational::from_integer(BigInt::from(face_count(n, m, k - 1)));
    // compare 2k with m to avoid fractions
    let (case, denom) = if 2 * k < m {
        (LowerBoundCase::Full, 1)
    } else if m % 2 == 1 || 2 * k == m {
        (LowerBoundCase::Half, 2)
    } else {
        (LowerBoundCase::Quarter, 4)
    };
    Ok(LowerBound { value: f / Rational::from_integer(BigInt::from(denom)), case })
}

/// The best known lower bound: the explicit constructions for `m` in
/// `{2, 3}`, the moment-curve bound otherwise.
pub fn lower_bound(n: usize, m: usize, k: usize) -> Result<LowerBound> {
    check_nmk(n, m, k)?;
    let int = |v: usize| Rational::from_integer(BigInt::from(v));
    Ok(match (m, k) {
        (2, _) => LowerBound { value: int(n - 1), case: LowerBoundCase::ConstructionM2 },
        (3, 3) => LowerBound { value: int(2 * n - 5), case: LowerBoundCase::ConstructionM3 },
        (3, _) => LowerBound { value: int(3 * n - 6), case: LowerBoundCase::ConstructionM3 },
        _ => face_count_lower_bound(n, m, k)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticRow {
    pub n: usize,
    /// `f_{k-1}(C(n, m)) / f_{k-1}(C(n+1, m))`
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub m: usize,
    pub k: usize,
    pub rows: Vec<AsymptoticRow>,
    /// Values of `n` whose ratio is below the previous row's.
    pub decreases_at: Vec<usize>,
}

impl AsymptoticReport {
    pub fn nondecreasing(&self) -> bool {
        self.decreases_at.is_empty()
    }
}

/// Ratios of consecutive face counts, in the order of `n_list`.
pub fn asymptotic_report(m: usize, k: usize, n_list: &[usize]) -> Result<AsymptoticReport> {
    if k == 0 || k > m || m < 2 {
        return Err(Error::InvalidParams(format!("need 1 <= k <= m with m >= 2, got m = {m}, k = {k}")));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n <= m {
            return Err(Error::InvalidParams(format!("need n > m, got n = {n}, m = {m}")));
        }
        let num = BigInt::from(face_count(n, m, k - 1));
        let den = BigInt::from(face_count(n + 1, m, k - 1));
        rows.push(AsymptoticRow { n, ratio: Rational::new(num, den) });
    }
    let decreases_at = rows.windows(2).filter(|w| w[1].ratio < w[0].ratio).map(|w| w[1].n).collect();
    Ok(AsymptoticReport { m, k, rows, decreases_at })
}

/// How achieved counts are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Simplicial cells of the subdivision (for interval designs: the
    /// certified cell families).
    Cells,
    /// Every `k`-subset tested by the LP oracle.
    Oracle,
    /// Both, required to agree. Interval designs fall back to cells.
    Both,
}

impl CountMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMethod::Cells => "cells",
            CountMethod::Oracle => "oracle",
            CountMethod::Both => "both",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "cells" => CountMethod::Cells,
            "oracle" => CountMethod::Oracle,
            "both" => CountMethod::Both,
            other => return Err(Error::InvalidParams(format!("unknown method '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub kind: DesignKind,
    pub upper: BigUint,
    pub lower: LowerBound,
    /// The moment-curve face-count bound, reported alongside the construction
    /// bound when `m < 4` and the design is a moment curve.
    pub face_count_lower: Option<LowerBound>,
    pub achieved: Option<BigUint>,
    pub tight: Option<bool>,
}

/// Bounds without an achieved count.
pub fn bound_report(kind: DesignKind, n: usize, m: usize, k: usize) -> Result<BoundReport> {
    if kind == DesignKind::Identity {
        if m != n || k == 0 || k > n {
            return Err(Error::InvalidParams(format!("identity design needs m = n >= k >= 1, got n = {n}, m = {m}, k = {k}")));
        }
        let all = binomial(n as u64, k as u64);
        let lower = LowerBound { value: Rational::from_integer(BigInt::from(all.clone())), case: LowerBoundCase::Identity };
        return Ok(BoundReport { n, m, k, kind, upper: all, lower, face_count_lower: None, achieved: None, tight: None });
    }
    let upper = upper_bound(n, m, k)?;
    let (lower, face_count_lower) = match kind {
        DesignKind::MomentCurve if m < 4 => (face_count_lower_bound(n, m, k)?, Some(lower_bound(n, m, k)?)),
        DesignKind::MomentCurve => (face_count_lower_bound(n, m, k)?, None),
        _ => (lower_bound(n, m, k)?, None),
    };
    Ok(BoundReport { n, m, k, kind, upper, lower, face_count_lower, achieved: None, tight: None })
}

/// Constructs the design of a sweep row.
pub fn sweep_design(kind: DesignKind, n: usize, m: usize) -> Result<Design> {
    let expect_m = |want: usize| {
        if m == want {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("{} designs have m = {want}, got m = {m}", kind.as_str())))
        }
    };
    match kind {
        DesignKind::MomentCurve => moment_curve_design(n, m, None, None),
        DesignKind::ExactM3 => expect_m(3).and_then(|_| exact_design_m3(n)),
        DesignKind::ExactM2 => expect_m(2).and_then(|_| exact_design_m2(n)),
        DesignKind::Identity => expect_m(n).and_then(|_| identity_design(n)),
        DesignKind::User => Err(Error::InvalidParams("sweeps construct designs; user designs are not swept".into())),
    }
}

/// `k`-subsets confirmed by the LP oracle, testing every candidate.
pub fn oracle_loadouts(d: &Design, k: usize, cap: u128) -> Result<Vec<Subset>> {
    check_cap(d.n, k, cap)?;
    let mut out = Vec::new();
    for s in Combinations::new(d.n, k) {
        if verify_loadout(d, &s, None)?.confirmed() {
            out.push(s);
        }
    }
    Ok(out)
}

/// Achieved `k`-loadout count of `d` by the requested method.
pub fn achieved_loadouts(d: &Design, k: usize, method: CountMethod, cap: u128, policy: PrecisionPolicy) -> Result<Vec<Subset>> {
    if !d.is_exact() {
        if method == CountMethod::Oracle {
            return Err(Error::NotExact);
        }
        if d.kind != DesignKind::ExactM3 {
            return Err(Error::NotExact);
        }
        let cells = m3_certificate_cells(d.n);
        certify_inequality_cells(d, &cells, policy)?;
        return Ok(subsets_of_cells(&cells, k, d.n));
    }
    let cells = || -> Result<Vec<Subset>> {
        match enumerate_inequality_loadouts(d, k, cap)? {
            Enumerated::Resolved(v) => Ok(v),
            Enumerated::NonGeneric { witness } => Err(Error::RouteDisagreement(format!(
                "non-simplicial maximal cell {witness:?}; count unresolved"
            ))),
        }
    };
    match method {
        CountMethod::Cells => cells(),
        CountMethod::Oracle => oracle_loadouts(d, k, cap),
        CountMethod::Both => {
            let by_cells = cells()?;
            let by_oracle = oracle_loadouts(d, k, cap)?;
            if by_cells != by_oracle {
                return Err(Error::RouteDisagreement(format!(
                    "cells give {} loadouts, oracle gives {}",
                    by_cells.len(),
                    by_oracle.len()
                )));
            }
            Ok(by_cells)
        }
    }
}

/// One sweep row: construct, count, and check `lower <= achieved <= upper`.
pub fn evaluate_row(
    kind: DesignKind,
    n: usize,
    m: usize,
    k: usize,
    method: CountMethod,
    cap: u128,
    policy: PrecisionPolicy,
) -> Result<BoundReport> {
    let mut report = bound_report(kind, n, m, k)?;
    let d = sweep_design(kind, n, m)?;
    let achieved = BigUint::from(achieved_loadouts(&d, k, method, cap, policy)?.len());
    let as_rational = Rational::from_integer(BigInt::from(achieved.clone()));
    if as_rational < report.lower.value || achieved > report.upper {
        return Err(Error::BoundViolation(format!(
            "n = {n}, m = {m}, k = {k}: achieved {achieved} outside [{}, {}]",
            report.lower.value, report.upper
        )));
    }
    report.tight = Some(achieved == report.upper);
    report.achieved = Some(achieved);
    Ok(report)
}

/// Smallest integer not below the rational lower bound.
pub fn ceil_lower(lower: &Rational) -> BigInt {
    lower.ceil().to_integer()
}

/// `achieved / upper` as a floating-point summary for reporting only.
pub fn fill_ratio(report: &BoundReport) -> Option<f64> {
    let a = report.achieved.as_ref()?.to_f64()?;
    let u = report.upper.to_f64()?;
    (!u.is_zero()).then(|| a / u)
}
