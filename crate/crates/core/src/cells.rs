//! The regular subdivision `Δ_c(A)`: cell certificates, simplicial checks and
//! loadout enumeration.
//!
//! `C ⊆ [n]` is a cell when some `y` has `y^T A_j = c_j` on `C` and
//! `y^T A_j > c_j` off `C`; an inequality cell additionally has `y > 0`.
//! Every nonempty subset of an inequality cell of size `m` is a loadout.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::cyclic::{check_cap, gap_parity, validate_subset, Combinations, FacetClass, Parity};
use crate::designs::{Design, DesignKind, DesignParams};
use crate::exactmath::{Matrix, PrecisionPolicy, Rational, Scalar, Sign};
use crate::lpsolver::{solve_program, verify_loadout, LinearProgram, RowSense, Status, DEFAULT_ITERATION_LIMIT};
use crate::{Error, Result, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateMethod {
    /// Maximal-margin linear program.
    Lp,
    /// Unique solution of the square system on the equality set.
    LinearSolve,
    /// Signed cofactors of the bordered moment-curve determinant.
    FacetHyperplane,
}

impl CertificateMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateMethod::Lp => "lp",
            CertificateMethod::LinearSolve => "linear_solve",
            CertificateMethod::FacetHyperplane => "facet_hyperplane",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    pub subset: Subset,
    pub y: Vec<Scalar>,
    /// Columns with `y^T A_j = c_j`.
    pub equality_set: Subset,
    /// Smallest `y^T A_j - c_j` off the equality set; `None` when every column
    /// is tight.
    pub strict_margin: Option<Scalar>,
    /// Smallest `y_i`, present for inequality-cell certificates.
    pub positivity_margin: Option<Scalar>,
    pub method: CertificateMethod,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellOutcome {
    Cell(DualCertificate),
    /// Not a cell. When `contained_in` is set, every `y` tight on the subset
    /// is also tight on the listed larger set, which is the smallest cell
    /// containing it.
    NotACell { contained_in: Option<Subset> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellRecord {
    pub subset: Subset,
    pub simplicial: bool,
    pub maximal: bool,
    pub certificate: DualCertificate,
}

/// Enumeration result; non-simplicial maximal cells leave the answer
/// unresolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumerated<T> {
    Resolved(T),
    NonGeneric { witness: Subset },
}

impl<T> Enumerated<T> {
    pub fn resolved(self) -> Option<T> {
        match self {
            Enumerated::Resolved(t) => Some(t),
            Enumerated::NonGeneric { .. } => None,
        }
    }
}

fn to_zero_based(subset: &[usize]) -> Vec<usize> {
    subset.iter().map(|j| j - 1).collect()
}

fn check_subset(d: &Design, subset: &[usize]) -> Result<()> {
    validate_subset(d.n, subset)?;
    if subset.is_empty() {
        return Err(Error::InvalidParams("cell candidate must be nonempty".into()));
    }
    Ok(())
}

pub fn is_simplicial(d: &Design, subset: &[usize]) -> Result<bool> {
    check_subset(d, subset)?;
    if subset.len() > d.m {
        return Ok(false);
    }
    Ok(d.a.select_columns(&to_zero_based(subset)).rank()? == subset.len())
}

/// `y^T A_j - c_j` for every column.
fn slacks(d: &Design, y: &[Scalar]) -> Result<Vec<Scalar>> {
    let yta = d.a.vec_mul(y)?;
    Ok(yta.iter().zip(&d.c).map(|(v, c)| v - c).collect())
}

fn min_by_lower<'a>(values: impl Iterator<Item = &'a Scalar>) -> Option<Scalar> {
    values.min_by(|a, b| a.lower().cmp(&b.lower())).cloned()
}

enum SquareOutcome {
    Certified(DualCertificate),
    /// Some strict condition fails; `tight` lists off-subset columns with
    /// exactly zero slack when no condition is violated outright.
    Failed { tight: Option<Subset> },
}

/// Certificate from the unique `y` with `y^T A_j = c_j` on an `m`-subset of
/// independent columns. Interval designs are re-evaluated at increasing
/// precision until every sign is certified.
fn square_certificate(d: &Design, subset: &[usize], positive: bool, policy: PrecisionPolicy) -> Result<SquareOutcome> {
    let cols = to_zero_based(subset);
    let mut last_bits = policy.start_bits;
    for bits in policy.schedule() {
        last_bits = bits;
        let dd = if d.is_exact() { d.clone() } else { d.at_precision(bits)? };
        let system = Matrix::from_fn(d.m, d.m, |r, i| dd.a.get(i, cols[r]).clone());
        let rhs: Vec<Scalar> = cols.iter().map(|&j| dd.c[j].clone()).collect();
        let y = match system.solve(&rhs) {
            Ok(y) => y,
            Err(Error::IndeterminateSign { .. }) if !dd.is_exact() => continue,
            Err(e) => return Err(e),
        };
        let s = slacks(&dd, &y)?;
        let off: Vec<usize> = (0..d.n).filter(|j| !cols.contains(j)).collect();
        let mut undecided = false;
        let mut tight = Vec::new();
        let mut violated = false;
        for &j in &off {
            match s[j].sign() {
                Ok(Sign::Positive) => {}
                Ok(Sign::Zero) => tight.push(j + 1),
                Ok(Sign::Negative) => violated = true,
                Err(Error::IndeterminateSign { .. }) => undecided = true,
                Err(e) => return Err(e),
            }
        }
        if positive {
            for yi in &y {
                match yi.sign() {
                    Ok(Sign::Positive) => {}
                    Ok(_) => violated = true,
                    Err(Error::IndeterminateSign { .. }) => undecided = true,
                    Err(e) => return Err(e),
                }
            }
        }
        if violated {
            return Ok(SquareOutcome::Failed { tight: None });
        }
        if undecided {
            if dd.is_exact() {
                break;
            }
            continue;
        }
        if !tight.is_empty() {
            return Ok(SquareOutcome::Failed { tight: Some(tight) });
        }
        let strict_margin = min_by_lower(off.iter().map(|&j| &s[j]));
        let positivity_margin = if positive { min_by_lower(y.iter()) } else { None };
        return Ok(SquareOutcome::Certified(DualCertificate {
            subset: subset.to_vec(),
            y,
            equality_set: subset.to_vec(),
            strict_margin,
            positivity_margin,
            method: CertificateMethod::LinearSolve,
        }));
    }
    Err(Error::IndeterminateSign { bits: last_bits })
}

/// Variables `(y+, y-, ε)`; rows: equalities on the subset, `y^T A_j - ε >= c_j`
/// elsewhere, `ε <= 1`, and `y_i - ε >= 0` when `positive`.
fn margin_program(a: &Matrix<Rational>, c: &[Rational], subset: &[usize], positive: bool) -> LinearProgram {
    let (m, n) = (a.rows(), a.cols());
    let vars = 2 * m + 1;
    let mut objective = vec![Rational::zero(); vars];
    objective[2 * m] = Rational::one();
    let mut lp = LinearProgram::new(objective);
    for j in 0..n {
        let mut row = vec![Rational::zero(); vars];
        for i in 0..m {
            row[i] = a.get(i, j).clone();
            row[m + i] = -a.get(i, j);
        }
        if subset.contains(&(j + 1)) {
            lp.push(row, RowSense::Eq, c[j].clone());
        } else {
            row[2 * m] = -Rational::one();
            lp.push(row, RowSense::Ge, c[j].clone());
        }
    }
    let mut cap = vec![Rational::zero(); vars];
    cap[2 * m] = Rational::one();
    lp.push(cap, RowSense::Le, Rational::one());
    if positive {
        for i in 0..m {
            let mut row = vec![Rational::zero(); vars];
            row[i] = Rational::one();
            row[m + i] = -Rational::one();
            row[2 * m] = -Rational::one();
            lp.push(row, RowSense::Ge, Rational::zero());
        }
    }
    lp
}

fn certificate_from_margin_lp(d: &Design, subset: &[usize], x: &[Rational], positive: bool) -> Result<DualCertificate> {
    let m = d.m;
    let y: Vec<Scalar> = (0..m).map(|i| Scalar::Exact(&x[i] - &x[m + i])).collect();
    let s = slacks(d, &y)?;
    let strict_margin = min_by_lower((0..d.n).filter(|j| !subset.contains(&(j + 1))).map(|j| &s[j]));
    let positivity_margin = if positive { min_by_lower(y.iter()) } else { None };
    Ok(DualCertificate {
        subset: subset.to_vec(),
        y,
        equality_set: subset.to_vec(),
        strict_margin,
        positivity_margin,
        method: CertificateMethod::Lp,
    })
}

/// Columns off the subset whose slack is zero for every `y` tight on the
/// subset and feasible elsewhere.
fn forced_tight(a: &Matrix<Rational>, c: &[Rational], subset: &[usize]) -> Result<Subset> {
    let m = a.rows();
    let base = margin_program(a, c, subset, false);
    let mut forced = Vec::new();
    for j in (0..a.cols()).filter(|j| !subset.contains(&(j + 1))) {
        let mut lp = base.clone();
        // maximize y^T A_j with ε pinned to zero
        let mut objective = vec![Rational::zero(); 2 * m + 1];
        for i in 0..m {
            objective[i] = a.get(i, j).clone();
            objective[m + i] = -a.get(i, j);
        }
        lp.objective = objective;
        let mut pin = vec![Rational::zero(); 2 * m + 1];
        pin[2 * m] = Rational::one();
        lp.push(pin, RowSense::Eq, Rational::zero());
        let sol = solve_program(&lp, DEFAULT_ITERATION_LIMIT)?;
        if sol.status == Status::Optimal && sol.objective == c[j] {
            forced.push(j + 1);
        }
    }
    Ok(forced)
}

pub fn cell_certificate(d: &Design, subset: &[usize]) -> Result<CellOutcome> {
    cell_certificate_with(d, subset, PrecisionPolicy::default())
}

pub fn cell_certificate_with(d: &Design, subset: &[usize], policy: PrecisionPolicy) -> Result<CellOutcome> {
    check_subset(d, subset)?;
    if subset.len() == d.m && is_simplicial(d, subset)? {
        return Ok(match square_certificate(d, subset, false, policy)? {
            SquareOutcome::Certified(cert) => CellOutcome::Cell(cert),
            SquareOutcome::Failed { tight } => CellOutcome::NotACell {
                contained_in: tight.map(|t| merge(subset, &t)),
            },
        });
    }
    let a = d.exact_a()?;
    let c = d.exact_c()?;
    let sol = solve_program(&margin_program(&a, &c, subset, false), DEFAULT_ITERATION_LIMIT)?;
    if sol.status != Status::Optimal {
        return Ok(CellOutcome::NotACell { contained_in: None });
    }
    if sol.objective.is_positive() {
        return Ok(CellOutcome::Cell(certificate_from_margin_lp(d, subset, &sol.x, false)?));
    }
    let forced = forced_tight(&a, &c, subset)?;
    Ok(CellOutcome::NotACell { contained_in: Some(merge(subset, &forced)) })
}

fn merge(a: &[usize], b: &[usize]) -> Subset {
    let set: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    set.into_iter().collect()
}

/// Certificate of `y > 0`, tight on the subset and strict elsewhere; `None`
/// when no such `y` exists. Failure does not mean the subset is not a
/// loadout.
pub fn inequality_cell_certificate(d: &Design, subset: &[usize]) -> Result<Option<DualCertificate>> {
    inequality_cell_certificate_with(d, subset, PrecisionPolicy::default())
}

pub fn inequality_cell_certificate_with(
    d: &Design,
    subset: &[usize],
    policy: PrecisionPolicy,
) -> Result<Option<DualCertificate>> {
    check_subset(d, subset)?;
    if subset.len() > d.m {
        return Err(Error::InvalidParams(alloc::format!(
            "inequality cells have at most m = {} columns, got {}",
            d.m,
            subset.len()
        )));
    }
    if subset.len() == d.m && is_simplicial(d, subset)? {
        return Ok(match square_certificate(d, subset, true, policy)? {
            SquareOutcome::Certified(cert) => Some(cert),
            SquareOutcome::Failed { .. } => None,
        });
    }
    let a = d.exact_a()?;
    let c = d.exact_c()?;
    let sol = solve_program(&margin_program(&a, &c, subset, true), DEFAULT_ITERATION_LIMIT)?;
    if sol.status == Status::Optimal && sol.objective.is_positive() {
        Ok(Some(certificate_from_margin_lp(d, subset, &sol.x, true)?))
    } else {
        Ok(None)
    }
}

/// Hyperplane through the moment-curve points of an `m`-subset, written as
/// `alpha^T y = beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub alpha: Vec<Rational>,
    pub beta: Rational,
    /// The common sign every coefficient must carry.
    pub expected_sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FacetOutcome {
    Certified { certificate: DualCertificate, hyperplane: Hyperplane },
    /// A facet whose gap parity matches `m`; not certified.
    WrongParity { hyperplane: Hyperplane },
    NotAFacet { hyperplane: Hyperplane },
}

/// Expands the bordered determinant `det [[1 ... 1 1], [A_C y]]` along its
/// last column and checks that every coefficient has sign
/// `(-1)^(floor(m/2) + m + 1)`.
pub fn facet_hyperplane(d: &Design, subset: &[usize]) -> Result<Hyperplane> {
    let m = d.m;
    let a = d.exact_a()?;
    let cols = to_zero_based(subset);
    // rows 0..=m of the bordered matrix without its last column
    let bordered = |r: usize, k: usize| -> Rational {
        if r == 0 {
            Rational::one()
        } else {
            a.get(r - 1, cols[k]).clone()
        }
    };
    let minor = |skip: usize| -> Result<Rational> {
        Matrix::from_fn(m, m, |r, k| bordered(if r < skip { r } else { r + 1 }, k)).det()
    };
    let parity_sign = |e: usize| if e % 2 == 0 { Rational::one() } else { -Rational::one() };
    let beta = -(parity_sign(m) * minor(0)?);
    let alpha = (1..=m).map(|i| Ok(parity_sign(i + m) * minor(i)?)).collect::<Result<Vec<_>>>()?;
    let expected_sign = Sign::of_power((m / 2 + m + 1) as i64);
    if Sign::of(&beta) != expected_sign {
        return Err(Error::SignLemmaViolation { subset: subset.to_vec(), index: 0 });
    }
    for (i, ai) in alpha.iter().enumerate() {
        if Sign::of(ai) != expected_sign {
            return Err(Error::SignLemmaViolation { subset: subset.to_vec(), index: i + 1 });
        }
    }
    Ok(Hyperplane { alpha, beta, expected_sign })
}

/// Inequality-cell certificate `y = alpha / beta` for a facet of gap parity
/// opposite to `m` in a moment-curve design.
pub fn certificate_from_facet(d: &Design, subset: &[usize]) -> Result<FacetOutcome> {
    if d.kind != DesignKind::MomentCurve {
        return Err(Error::InvalidDesign("facet certificates need a moment-curve design".into()));
    }
    validate_subset(d.n, subset)?;
    if subset.len() != d.m {
        return Err(Error::InvalidParams(alloc::format!("facet candidates have m = {} elements", d.m)));
    }
    let hyperplane = facet_hyperplane(d, subset)?;
    let parity = match gap_parity(subset, d.n)? {
        FacetClass::NotFacet => return Ok(FacetOutcome::NotAFacet { hyperplane }),
        class => class.parity().unwrap(),
    };
    if parity == Parity::of(d.m) {
        return Ok(FacetOutcome::WrongParity { hyperplane });
    }
    let y: Vec<Rational> = hyperplane.alpha.iter().map(|a| a / &hyperplane.beta).collect();
    let ys: Vec<Scalar> = y.iter().cloned().map(Scalar::Exact).collect();
    let s: Vec<Rational> = slacks(d, &ys)?.into_iter().map(|v| v.as_rational().cloned().unwrap()).collect();
    let mut strict = None::<Rational>;
    for j in 0..d.n {
        let on = subset.contains(&(j + 1));
        if on && !s[j].is_zero() || !on && !s[j].is_positive() {
            return Err(Error::CertificateFailure { subset: subset.to_vec(), column: j + 1 });
        }
        if !on && strict.as_ref().is_none_or(|v| s[j] < *v) {
            strict = Some(s[j].clone());
        }
    }
    let positivity = y.iter().min().cloned();
    let certificate = DualCertificate {
        subset: subset.to_vec(),
        y: ys,
        equality_set: subset.to_vec(),
        strict_margin: strict.map(Scalar::Exact),
        positivity_margin: positivity.map(Scalar::Exact),
        method: CertificateMethod::FacetHyperplane,
    };
    Ok(FacetOutcome::Certified { certificate, hyperplane })
}

/// All maximal cells, found by certifying every `m`-subset of independent
/// columns. Requires exact data and a valid design.
pub fn maximal_cells(d: &Design, cap: u128) -> Result<Enumerated<Vec<CellRecord>>> {
    d.require_valid()?;
    if !d.is_exact() {
        return Err(Error::NotExact);
    }
    check_cap(d.n, d.m, cap)?;
    let mut cells = Vec::new();
    for subset in Combinations::new(d.n, d.m) {
        if !is_simplicial(d, &subset)? {
            continue;
        }
        match square_certificate(d, &subset, false, PrecisionPolicy::default())? {
            SquareOutcome::Certified(certificate) => cells.push(CellRecord {
                subset,
                simplicial: true,
                maximal: true,
                certificate,
            }),
            SquareOutcome::Failed { tight: Some(extra) } => {
                return Ok(Enumerated::NonGeneric { witness: merge(&subset, &extra) });
            }
            SquareOutcome::Failed { tight: None } => {}
        }
    }
    Ok(Enumerated::Resolved(cells))
}

/// Sorted `k`-subsets of the given cells, restricted to indices `<= limit`.
pub fn subsets_of_cells(cells: &[Subset], k: usize, limit: usize) -> Vec<Subset> {
    let mut out = BTreeSet::new();
    for cell in cells {
        let kept: Vec<usize> = cell.iter().copied().filter(|&j| j <= limit).collect();
        for pick in Combinations::new(kept.len(), k) {
            out.insert(pick.iter().map(|&p| kept[p - 1]).collect::<Subset>());
        }
    }
    out.into_iter().collect()
}

fn check_k(d: &Design, k: usize) -> Result<()> {
    if k == 0 || k > d.m {
        return Err(Error::InvalidParams(alloc::format!("need 1 <= k <= m = {}, got k = {k}", d.m)));
    }
    Ok(())
}

/// `k`-subsets that are simplicial cells, i.e. the `k`-loadouts of the
/// equality-constrained program.
pub fn enumerate_equality_loadouts(d: &Design, k: usize, cap: u128) -> Result<Enumerated<Vec<Subset>>> {
    check_k(d, k)?;
    Ok(match maximal_cells(d, cap)? {
        Enumerated::Resolved(cells) => {
            let subsets: Vec<Subset> = cells.into_iter().map(|c| c.subset).collect();
            Enumerated::Resolved(subsets_of_cells(&subsets, k, d.n))
        }
        Enumerated::NonGeneric { witness } => Enumerated::NonGeneric { witness },
    })
}

/// The design `([A | I_m], (c, 0))`; its equality program is the inequality
/// program of `d` with explicit slacks.
pub fn slack_augmented(d: &Design) -> Result<Design> {
    let id = Matrix::from_fn(d.m, d.m, |i, j| Scalar::Exact(if i == j { Rational::one() } else { Rational::zero() }));
    let a = d.a.hstack(&id)?;
    let mut c = d.c.clone();
    c.extend((0..d.m).map(|_| Scalar::zero()));
    Design::new(a, c, DesignKind::User, DesignParams::default())
}

/// `k`-loadouts of the inequality program, read off the simplicial maximal
/// cells of the slack-augmented design. Every subset is confirmed by the LP
/// oracle; a refutation is reported as [`Error::RouteDisagreement`].
pub fn enumerate_inequality_loadouts(d: &Design, k: usize, cap: u128) -> Result<Enumerated<Vec<Subset>>> {
    check_k(d, k)?;
    d.require_valid()?;
    let aug = slack_augmented(d)?;
    let cells = match maximal_cells(&aug, cap)? {
        Enumerated::Resolved(cells) => cells,
        Enumerated::NonGeneric { witness } => return Ok(Enumerated::NonGeneric { witness }),
    };
    let subsets: Vec<Subset> = cells.into_iter().map(|c| c.subset).collect();
    let loadouts = subsets_of_cells(&subsets, k, d.n);
    for l in &loadouts {
        let check = verify_loadout(d, l, None)?;
        if !check.confirmed() {
            return Err(Error::RouteDisagreement(alloc::format!(
                "{l:?} lies in a simplicial cell but the oracle reports {:?}",
                check.verdict
            )));
        }
    }
    Ok(Enumerated::Resolved(loadouts))
}

/// The three certificate families of the `m = 3` design:
/// `{1, j, j+1}`, `{2, j, j+1}` for `3 <= j < n`, and `{1, 2, 3}`.
pub fn m3_certificate_cells(n: usize) -> Vec<Subset> {
    let mut cells = vec![vec![1, 2, 3]];
    for j in 3..n {
        cells.push(vec![1, j, j + 1]);
        cells.push(vec![2, j, j + 1]);
    }
    cells.sort();
    cells
}

/// Certifies each candidate as an inequality cell; all must pass.
pub fn certify_inequality_cells(
    d: &Design,
    candidates: &[Subset],
    policy: PrecisionPolicy,
) -> Result<Vec<DualCertificate>> {
    candidates
        .iter()
        .map(|c| {
            inequality_cell_certificate_with(d, c, policy)?.ok_or_else(|| {
                Error::RouteDisagreement(alloc::format!("{c:?} is not certified as an inequality cell"))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{enumerate_facets, ParityFilter, DEFAULT_ENUMERATION_CAP};
    use crate::designs::{exact_design_m2, exact_design_m3, identity_design, moment_curve_design};
    use crate::exactmath::{int, parse_rational, ratio, Interval};
    use crate::lpsolver::verify_loadout;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const CAP: u128 = DEFAULT_ENUMERATION_CAP;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    /// The two-row, three-column example with costs `(2, 2.125 + eps, 2.25)`.
    fn example_one(eps: Rational) -> Design {
        let a = Matrix::from_rows(vec![
            vec![ratio(1, 4), ratio(1, 2), ratio(3, 4)],
            vec![int(1), int(1), int(1)],
        ])
        .unwrap();
        Design::from_rationals(a, vec![int(2), q("2.125") + eps, q("2.25")]).unwrap()
    }

    fn exact(s: &Scalar) -> Rational {
        s.as_rational().cloned().unwrap()
    }

    fn resolved(e: Enumerated<Vec<Subset>>) -> Vec<Subset> {
        e.resolved().expect("generic design")
    }

    #[test]
    fn example_one_cells() {
        let d = example_one(ratio(1, 100));
        let CellOutcome::Cell(cert) = cell_certificate(&d, &[1, 2]).unwrap() else { panic!() };
        assert_eq!(cert.y.iter().map(exact).collect::<Vec<_>>(), vec![ratio(27, 50), ratio(373, 200)]);
        assert_eq!(cert.strict_margin.as_ref().map(exact), Some(ratio(1, 50)));
        assert!(matches!(cell_certificate(&d, &[1, 3]).unwrap(), CellOutcome::NotACell { .. }));
        assert!(is_simplicial(&d, &[1, 2]).unwrap());
        for j in 1..=3 {
            assert!(matches!(cell_certificate(&d, &[j]).unwrap(), CellOutcome::Cell(_)));
        }
        assert_eq!(resolved(enumerate_equality_loadouts(&d, 2, CAP).unwrap()), vec![vec![1, 2], vec![2, 3]]);

        // Lifting the middle column below the chord leaves one simplicial
        // maximal cell; column 2 is never tight.
        let d = example_one(-ratio(1, 100));
        assert!(!is_simplicial(&d, &[1, 2, 3]).unwrap());
        assert_eq!(cell_certificate(&d, &[1, 2, 3]).unwrap(), CellOutcome::NotACell { contained_in: None });
        let CellOutcome::Cell(cert) = cell_certificate(&d, &[1, 3]).unwrap() else { panic!() };
        assert_eq!(cert.y.iter().map(exact).collect::<Vec<_>>(), vec![ratio(1, 2), q("1.875")]);
        assert_eq!(cert.strict_margin.as_ref().map(exact), Some(ratio(1, 100)));
        assert_eq!(resolved(enumerate_equality_loadouts(&d, 2, CAP).unwrap()), vec![vec![1, 3]]);
        assert!(matches!(cell_certificate(&d, &[2]).unwrap(), CellOutcome::NotACell { .. }));

        // Collinear lifting: the whole configuration is one non-simplicial cell.
        let d = example_one(Rational::zero());
        let CellOutcome::Cell(cert) = cell_certificate(&d, &[1, 2, 3]).unwrap() else { panic!() };
        assert_eq!(cert.strict_margin, None);
        assert_eq!(
            cell_certificate(&d, &[1, 3]).unwrap(),
            CellOutcome::NotACell { contained_in: Some(vec![1, 2, 3]) }
        );
        assert_eq!(
            cell_certificate(&d, &[2]).unwrap(),
            CellOutcome::NotACell { contained_in: Some(vec![1, 2, 3]) }
        );
        assert_eq!(
            enumerate_equality_loadouts(&d, 2, CAP).unwrap(),
            Enumerated::NonGeneric { witness: vec![1, 2, 3] }
        );
    }

    #[test]
    fn lower_dimensional_cells_use_the_margin_program() {
        let d = example_one(ratio(1, 100));
        let CellOutcome::Cell(cert) = cell_certificate(&d, &[2]).unwrap() else { panic!() };
        assert_eq!(cert.method, CertificateMethod::Lp);
        let s = slacks(&d, &cert.y).unwrap();
        assert!(s[1].sign().unwrap() == Sign::Zero);
        assert!(s[0].sign().unwrap() == Sign::Positive && s[2].sign().unwrap() == Sign::Positive);
    }

    #[test]
    fn identity_and_m2_loadouts() {
        let d = identity_design(3).unwrap();
        assert_eq!(resolved(enumerate_equality_loadouts(&d, 2, CAP).unwrap()).len(), 3);
        let d = identity_design(2).unwrap();
        assert_eq!(resolved(enumerate_inequality_loadouts(&d, 1, CAP).unwrap()), vec![vec![1], vec![2]]);
        let d = exact_design_m2(4).unwrap();
        let expected = vec![vec![1, 2], vec![2, 3], vec![3, 4]];
        assert_eq!(resolved(enumerate_equality_loadouts(&d, 2, CAP).unwrap()), expected);
        assert_eq!(resolved(enumerate_inequality_loadouts(&d, 2, CAP).unwrap()), expected);
    }

    #[test]
    fn m2_certificates() {
        let d = exact_design_m2(4).unwrap();
        let cert = inequality_cell_certificate(&d, &[2, 3]).unwrap().unwrap();
        assert_eq!(cert.y.iter().map(exact).collect::<Vec<_>>(), vec![ratio(1, 5), ratio(6, 5)]);
        for j in 1..4usize {
            let cert = inequality_cell_certificate(&d, &[j, j + 1]).unwrap().unwrap();
            let j = j as i64;
            assert_eq!(exact(&cert.y[0]), ratio(1, 2 * j + 1));
            assert_eq!(exact(&cert.y[1]), ratio(j * j + j, 2 * j + 1));
        }
        assert!(inequality_cell_certificate(&d, &[1, 3]).unwrap().is_none());
        assert!(inequality_cell_certificate(&d, &[1, 2, 3]).is_err());
    }

    #[test]
    fn m3_interval_certificates() {
        let d = exact_design_m3(6).unwrap();
        let cert = inequality_cell_certificate(&d, &[1, 3, 4]).unwrap().unwrap();
        let bits = 128;
        let s8 = Interval::from_rational(&int(8), bits).sqrt().unwrap();
        let s6 = Interval::from_rational(&int(6), bits).sqrt().unwrap();
        let g = s8.sub(&s6);
        let one = Interval::from_rational(&int(1), bits);
        let three = Interval::from_rational(&int(3), bits);
        let expected = [one.sub(&g), s8.sub(&one).sub(&three.mul(&g)), g.clone()];
        for (yi, e) in cert.y.iter().zip(&expected) {
            let yi = yi.to_interval(bits);
            assert!(yi.lower() <= e.upper() && e.lower() <= yi.upper());
            assert_eq!(yi.sign(), Some(Sign::Positive));
        }
        let cert = inequality_cell_certificate(&d, &[1, 2, 3]).unwrap().unwrap();
        let y3 = cert.y[2].to_interval(bits);
        assert!(y3.lower() > q("0.449") && y3.upper() < q("0.4495"));
        for n in 4..=9 {
            let d = exact_design_m3(n).unwrap();
            let certs = certify_inequality_cells(&d, &m3_certificate_cells(n), PrecisionPolicy::default()).unwrap();
            assert_eq!(certs.len(), 2 * n - 5);
            assert!(certs.iter().all(|c| c.strict_margin.as_ref().unwrap().sign().unwrap() == Sign::Positive));
        }
    }

    #[test]
    fn moment_curve_non_facet_fails() {
        let d = moment_curve_design(6, 4, None, None).unwrap();
        assert!(inequality_cell_certificate(&d, &[1, 2, 4, 6]).unwrap().is_none());
        assert!(matches!(certificate_from_facet(&d, &[1, 2, 4, 6]).unwrap(), FacetOutcome::NotAFacet { .. }));
    }

    #[test]
    fn facet_hyperplane_examples() {
        let d = moment_curve_design(6, 4, None, None).unwrap();
        let FacetOutcome::Certified { certificate, hyperplane } = certificate_from_facet(&d, &[1, 4, 5, 6]).unwrap() else {
            panic!()
        };
        assert_eq!(hyperplane.expected_sign, Sign::Negative);
        assert!(certificate.y.iter().all(|y| y.sign().unwrap() == Sign::Positive));
        // agrees with the unique solution of the square system
        let direct = inequality_cell_certificate(&d, &[1, 4, 5, 6]).unwrap().unwrap();
        assert_eq!(direct.y, certificate.y);
        assert!(matches!(certificate_from_facet(&d, &[1, 2, 3, 4]).unwrap(), FacetOutcome::WrongParity { .. }));
        for s in Combinations::new(6, 4) {
            assert_eq!(Sign::of(&facet_hyperplane(&d, &s).unwrap().beta), Sign::Negative);
        }
        assert!(certificate_from_facet(&exact_design_m2(4).unwrap(), &[1, 2]).is_err());
    }

    #[test]
    fn opposite_parity_facets_are_inequality_cells() {
        for m in 2..=5 {
            for n in m + 1..=8 {
                let d = moment_curve_design(n, m, None, None).unwrap();
                let filter = if m % 2 == 0 { ParityFilter::Odd } else { ParityFilter::Even };
                for facet in enumerate_facets(n, m, filter, CAP).unwrap() {
                    let FacetOutcome::Certified { certificate, .. } = certificate_from_facet(&d, &facet).unwrap() else {
                        panic!("m={m} n={n} {facet:?}")
                    };
                    let general = inequality_cell_certificate(&d, &facet).unwrap().unwrap();
                    assert_eq!(general.y, certificate.y);
                }
            }
        }
    }

    #[test]
    fn subsets_of_inequality_cells_are_loadouts() {
        for (d, cell) in [
            (moment_curve_design(6, 4, None, None).unwrap(), vec![1, 3, 4, 6]),
            (exact_design_m2(5).unwrap(), vec![3, 4]),
            (moment_curve_design(5, 3, None, None).unwrap(), vec![1, 4, 5]),
        ] {
            assert!(inequality_cell_certificate(&d, &cell).unwrap().is_some());
            for size in 1..=cell.len() {
                for pick in Combinations::new(cell.len(), size) {
                    let sub: Vec<usize> = pick.iter().map(|p| cell[p - 1]).collect();
                    assert!(verify_loadout(&d, &sub, None).unwrap().confirmed(), "{sub:?}");
                }
            }
        }
    }

    #[test]
    fn inequality_loadouts_are_equality_loadouts() {
        let mut designs = vec![example_one(ratio(1, 100)), identity_design(3).unwrap()];
        for n in 3..=7 {
            designs.push(exact_design_m2(n).unwrap());
        }
        for n in 4..=6 {
            designs.push(moment_curve_design(n, 3, None, None).unwrap());
        }
        designs.push(moment_curve_design(6, 4, None, None).unwrap());
        for d in &designs {
            for k in 1..=d.m {
                let ineq = resolved(enumerate_inequality_loadouts(d, k, CAP).unwrap());
                let eq = resolved(enumerate_equality_loadouts(d, k, CAP).unwrap());
                assert!(ineq.iter().all(|l| eq.contains(l)), "k={k}");
            }
        }
    }

    #[test]
    fn odd_facets_are_moment_curve_loadouts() {
        let d = moment_curve_design(6, 4, None, None).unwrap();
        let found = resolved(enumerate_inequality_loadouts(&d, 4, CAP).unwrap());
        for f in [vec![1, 2, 3, 6], vec![1, 3, 4, 6], vec![1, 4, 5, 6]] {
            assert!(found.contains(&f));
        }
    }

    #[test]
    fn column_scaling_preserves_loadouts() {
        let base = [moment_curve_design(5, 3, None, None).unwrap(), exact_design_m2(5).unwrap(), example_one(ratio(1, 100))];
        for d in &base {
            let scaled = d.scale_column(1, &ratio(7, 3)).unwrap().scale_column(0, &ratio(1, 2)).unwrap();
            for k in 1..=d.m {
                assert_eq!(
                    enumerate_inequality_loadouts(d, k, CAP).unwrap(),
                    enumerate_inequality_loadouts(&scaled, k, CAP).unwrap()
                );
                assert_eq!(
                    enumerate_equality_loadouts(d, k, CAP).unwrap(),
                    enumerate_equality_loadouts(&scaled, k, CAP).unwrap()
                );
            }
        }
    }

    fn positive_combination(d: &Design, cols: &[usize], rng: &mut StdRng) -> Vec<Rational> {
        let mut p = vec![Rational::zero(); d.m];
        for &j in cols {
            let w = ratio(rng.random_range(1..20), rng.random_range(1..20));
            for (i, pi) in p.iter_mut().enumerate() {
                *pi += d.a.get(i, j - 1).as_rational().unwrap() * &w;
            }
        }
        p
    }

    /// Coefficients of `p` in the basis of the given columns.
    fn coordinates(d: &Design, cols: &[usize], p: &[Rational]) -> Vec<Rational> {
        let b = d.exact_a().unwrap().select_columns(&to_zero_based(cols));
        b.solve(p).unwrap()
    }

    #[test]
    fn subdivision_properties() {
        let mut rng = StdRng::seed_from_u64(7);
        for d in [
            moment_curve_design(6, 3, None, None).unwrap(),
            exact_design_m2(6).unwrap(),
            moment_curve_design(6, 4, None, None).unwrap(),
        ] {
            let cells: Vec<Subset> =
                maximal_cells(&d, CAP).unwrap().resolved().unwrap().into_iter().map(|c| c.subset).collect();
            // closure: faces of cells are cells
            for cell in &cells {
                for size in 1..cell.len() {
                    for pick in Combinations::new(cell.len(), size) {
                        let face: Vec<usize> = pick.iter().map(|p| cell[p - 1]).collect();
                        assert!(matches!(cell_certificate(&d, &face).unwrap(), CellOutcome::Cell(_)));
                    }
                }
            }
            // intersection: an interior point of one cell is interior to no other
            for cell in &cells {
                let p = positive_combination(&d, cell, &mut rng);
                for other in cells.iter().filter(|o| *o != cell) {
                    let mu = coordinates(&d, other, &p);
                    assert!(!mu.iter().all(Signed::is_positive));
                }
            }
            // union, spot-checked: random points of cone(A) land in some cell
            let all: Vec<usize> = (1..=d.n).collect();
            for _ in 0..20 {
                let p = positive_combination(&d, &all, &mut rng);
                assert!(cells.iter().any(|c| coordinates(&d, c, &p).iter().all(|v| !v.is_negative())));
            }
        }
    }
}
