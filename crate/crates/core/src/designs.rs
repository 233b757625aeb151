//! Construction and validation of designs `(A, c)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::cyclic::Combinations;
use crate::exactmath::{int, ratio, Interval, Matrix, Rational, Scalar, Sign};
use crate::{Error, Result};

/// Bits used for the irrational entries when no precision is requested.
pub const DEFAULT_DESIGN_BITS: u32 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DesignKind {
    MomentCurve,
    ExactM3,
    ExactM2,
    Identity,
    User,
}

impl DesignKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DesignKind::MomentCurve => "moment_curve",
            DesignKind::ExactM3 => "exact_m3",
            DesignKind::ExactM2 => "exact_m2",
            DesignKind::Identity => "identity",
            DesignKind::User => "user",
        }
    }

    /// Accepts the canonical names plus the short alias `moment`.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "moment_curve" | "moment" => DesignKind::MomentCurve,
            "exact_m3" => DesignKind::ExactM3,
            "exact_m2" => DesignKind::ExactM2,
            "identity" => DesignKind::Identity,
            "user" => DesignKind::User,
            other => return Err(Error::InvalidParams(format!("unknown design kind '{other}'"))),
        })
    }
}

/// Construction parameters kept alongside a design.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DesignParams {
    /// Curve parameters `t_1 < ... < t_n` of a moment-curve design.
    pub t: Option<Vec<Rational>>,
    /// Flip constant `M` of a moment-curve design.
    pub big_m: Option<Rational>,
    /// Working precision of interval entries.
    pub precision_bits: Option<u32>,
    /// `δ` of an applied cost perturbation `c + δ·(1, ..., 1)`.
    pub perturbation: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub m: usize,
    pub n: usize,
    pub a: Matrix<Scalar>,
    pub c: Vec<Scalar>,
    pub kind: DesignKind,
    pub params: DesignParams,
}

impl Design {
    pub fn new(a: Matrix<Scalar>, c: Vec<Scalar>, kind: DesignKind, params: DesignParams) -> Result<Self> {
        if a.cols() != c.len() {
            return Err(Error::DimensionMismatch(format!(
                "A has {} columns but c has {} entries",
                a.cols(),
                c.len()
            )));
        }
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::InvalidDesign("A must have at least one row and one column".into()));
        }
        Ok(Design { m: a.rows(), n: a.cols(), a, c, kind, params })
    }

    /// A user design with exact rational data.
    pub fn from_rationals(a: Matrix<Rational>, c: Vec<Rational>) -> Result<Self> {
        Design::new(
            a.map(|x| Scalar::Exact(x.clone())),
            c.into_iter().map(Scalar::Exact).collect(),
            DesignKind::User,
            DesignParams::default(),
        )
    }

    pub fn is_exact(&self) -> bool {
        self.a.entries().all(Scalar::is_exact) && self.c.iter().all(Scalar::is_exact)
    }

    pub fn exact_a(&self) -> Result<Matrix<Rational>> {
        let rows = (0..self.m)
            .map(|i| self.a.row(i).iter().map(|s| s.as_rational().cloned().ok_or(Error::NotExact)).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn exact_c(&self) -> Result<Vec<Rational>> {
        self.c.iter().map(|s| s.as_rational().cloned().ok_or(Error::NotExact)).collect()
    }

    /// Column `j` (0-based) of `A`.
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.a.column(j)
    }

    /// The same design with its irrational entries re-evaluated at `bits`.
    /// Designs without irrational entries are returned unchanged.
    pub fn at_precision(&self, bits: u32) -> Result<Design> {
        if self.is_exact() {
            return Ok(self.clone());
        }
        match self.kind {
            DesignKind::ExactM3 => {
                let mut d = exact_design_m3_at(self.n, bits)?;
                if let Some(delta) = &self.params.perturbation {
                    d = d.perturbed(delta);
                }
                Ok(d)
            }
            _ => Err(Error::NotExact),
        }
    }

    /// Replaces `(A_j, c_j)` by `(λ A_j, λ c_j)` for 0-based `j`.
    pub fn scale_column(&self, j: usize, lambda: &Rational) -> Result<Design> {
        if j >= self.n || !lambda.is_positive() {
            return Err(Error::InvalidParams(format!("cannot scale column {j} by {lambda}")));
        }
        let l = Scalar::Exact(lambda.clone());
        let mut d = self.clone();
        for i in 0..self.m {
            let v = self.a.get(i, j) * &l;
            d.a.set(i, j, v);
        }
        d.c[j] = &self.c[j] * &l;
        Ok(d)
    }

    /// `c' = c + δ·(1, ..., 1)`, recorded in the parameters.
    pub fn perturbed(&self, delta: &Rational) -> Design {
        let step = Scalar::Exact(delta.clone());
        let mut d = self.clone();
        d.c = self.c.iter().map(|x| x + &step).collect();
        d.params.perturbation = Some(match &self.params.perturbation {
            Some(prev) => prev + delta,
            None => delta.clone(),
        });
        d
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Fails with [`Error::InvalidDesign`] unless the design is nonnegative
    /// and of full row rank.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDesign(report.issues.join("; ")))
        }
    }
}

/// Moment-curve design: column `j` is `v'_m(t_j)` whose row `i` is `t^i` for
/// odd `i` and `M - t^i` for even `i`; all costs are 1. Defaults are `t_j = j`
/// and `M = t_n^m + 1`.
pub fn moment_curve_design(n: usize, m: usize, t: Option<Vec<Rational>>, big_m: Option<Rational>) -> Result<Design> {
    if m < 2 || n <= m {
        return Err(Error::InvalidParams(format!("moment-curve design needs n > m >= 2, got n = {n}, m = {m}")));
    }
    let t = match t {
        Some(t) => {
            if t.len() != n {
                return Err(Error::InvalidParams(format!("expected {n} curve parameters, got {}", t.len())));
            }
            if !t[0].is_positive() || t.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParams("curve parameters must be positive and strictly increasing".into()));
            }
            t
        }
        None => (1..=n as i64).map(int).collect(),
    };
    let top = pow(&t[n - 1], m);
    let big_m = match big_m {
        Some(big_m) if big_m < top => {
            return Err(Error::InvalidParams(format!("M = {big_m} is below t_n^m = {top}")));
        }
        Some(big_m) => big_m,
        None => &top + Rational::one(),
    };
    let a = Matrix::from_fn(m, n, |i, j| Scalar::Exact(moment_entry(&t[j], i + 1, &big_m)));
    let c = (0..n).map(|_| Scalar::Exact(Rational::one())).collect();
    let params = DesignParams { t: Some(t), big_m: Some(big_m), ..DesignParams::default() };
    Design::new(a, c, DesignKind::MomentCurve, params)
}

/// Row `i` (1-based) of `v'_m(t)`.
pub fn moment_entry(t: &Rational, i: usize, big_m: &Rational) -> Rational {
    let p = pow(t, i);
    if i % 2 == 1 {
        p
    } else {
        big_m - p
    }
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// The `m = 3` design with costs `(1, 1, √(2/3), ..., √(2/n))`, square roots
/// enclosed at the default precision.
pub fn exact_design_m3(n: usize) -> Result<Design> {
    exact_design_m3_at(n, DEFAULT_DESIGN_BITS)
}

pub fn exact_design_m3_at(n: usize, bits: u32) -> Result<Design> {
    if n <= 3 {
        return Err(Error::InvalidParams(format!("m = 3 design needs n > 3, got {n}")));
    }
    let inv = |j: usize| ratio(1, j as i64);
    let a = Matrix::from_fn(3, n, |i, j| {
        let v = match (i, j) {
            (2, _) => Rational::one(),
            (0, 0) | (1, 1) => Rational::one(),
            (0, 1) | (1, 0) => Rational::zero(),
            (_, j) => inv(j + 1),
        };
        Scalar::Exact(v)
    });
    let mut c = Vec::with_capacity(n);
    for j in 1..=n {
        c.push(if j <= 2 {
            Scalar::Exact(Rational::one())
        } else {
            Scalar::Approx(Interval::from_rational(&ratio(2, j as i64), bits).sqrt()?)
        });
    }
    let params = DesignParams { precision_bits: Some(bits), ..DesignParams::default() };
    Design::new(a, c, DesignKind::ExactM3, params)
}

/// The `m = 2` design `A = [[1², ..., n²], [1, ..., 1]]`, `c = (1, ..., n)`.
pub fn exact_design_m2(n: usize) -> Result<Design> {
    if n <= 2 {
        return Err(Error::InvalidParams(format!("m = 2 design needs n > 2, got {n}")));
    }
    let a = Matrix::from_fn(2, n, |i, j| {
        let j = j as i64 + 1;
        Scalar::Exact(if i == 0 { int(j * j) } else { Rational::one() })
    });
    let c = (1..=n as i64).map(|j| Scalar::Exact(int(j))).collect();
    Design::new(a, c, DesignKind::ExactM2, DesignParams::default())
}

/// `A = I_n`, `c = (1, ..., 1)`: every subset is a loadout.
pub fn identity_design(n: usize) -> Result<Design> {
    if n == 0 {
        return Err(Error::InvalidParams("identity design needs n >= 1".into()));
    }
    let a = Matrix::from_fn(n, n, |i, j| Scalar::Exact(if i == j { Rational::one() } else { Rational::zero() }));
    let c = (0..n).map(|_| Scalar::Exact(Rational::one())).collect();
    Design::new(a, c, DesignKind::Identity, DesignParams::default())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub nonnegative: bool,
    /// Certified rank, or `None` when an interval minor could not be decided.
    pub rank: Option<usize>,
    pub full_row_rank: bool,
    pub distinct_columns: bool,
    pub issues: Vec<String>,
}

impl ValidationReport {
    /// Nonnegativity and full row rank; repeated columns are reported but
    /// allowed.
    pub fn is_valid(&self) -> bool {
        self.nonnegative && self.full_row_rank
    }
}

pub fn validate(d: &Design) -> ValidationReport {
    let mut issues = Vec::new();

    let mut nonnegative = true;
    for i in 0..d.m {
        for j in 0..d.n {
            if !certainly_nonnegative(d.a.get(i, j)) {
                nonnegative = false;
                issues.push(format!("A[{}][{}] = {} is not certified nonnegative", i + 1, j + 1, d.a.get(i, j)));
            }
        }
    }
    for (j, cj) in d.c.iter().enumerate() {
        if !certainly_nonnegative(cj) {
            nonnegative = false;
            issues.push(format!("c[{}] = {cj} is not certified nonnegative", j + 1));
        }
    }

    let rank = if d.is_exact() {
        d.exact_a().and_then(|a| a.rank()).ok()
    } else {
        certified_full_rank(d).then_some(d.m)
    };
    let full_row_rank = rank == Some(d.m);
    if !full_row_rank {
        match rank {
            Some(r) => issues.push(format!("A has rank {r} < {} rows", d.m)),
            None => issues.push("full row rank could not be certified".into()),
        }
    }

    let mut distinct_columns = true;
    for j in 0..d.n {
        for k in j + 1..d.n {
            if columns_may_coincide(d, j, k) {
                distinct_columns = false;
                issues.push(format!("columns {} and {} are not certified distinct", j + 1, k + 1));
            }
        }
    }

    ValidationReport { nonnegative, rank, full_row_rank, distinct_columns, issues }
}

fn certainly_nonnegative(s: &Scalar) -> bool {
    !s.lower().is_negative()
}

fn columns_may_coincide(d: &Design, j: usize, k: usize) -> bool {
    (0..d.m).all(|i| {
        let diff = d.a.get(i, j) - d.a.get(i, k);
        !matches!(diff.sign(), Ok(Sign::Positive | Sign::Negative))
    })
}

fn certified_full_rank(d: &Design) -> bool {
    if d.m > d.n {
        return false;
    }
    Combinations::new(d.n, d.m).any(|cols| {
        let idx: Vec<usize> = cols.iter().map(|j| j - 1).collect();
        d.a.select_columns(&idx)
            .det()
            .is_ok_and(|det| matches!(det.sign(), Ok(Sign::Positive | Sign::Negative)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse_rational, Entry};
    use alloc::vec;

    fn ex(v: i64) -> Scalar {
        Scalar::Exact(int(v))
    }

    fn col(d: &Design, j: usize) -> Vec<Scalar> {
        d.column(j - 1)
    }

    #[test]
    fn moment_curve_matches_table() {
        let d = moment_curve_design(6, 4, None, None).unwrap();
        assert_eq!(d.params.big_m, Some(int(1297)));
        assert_eq!(col(&d, 1), vec![ex(1), ex(1296), ex(1), ex(1296)]);
        assert_eq!(col(&d, 6), vec![ex(6), ex(1261), ex(216), ex(1)]);
        assert!(d.c.iter().all(|c| *c == ex(1)));
        assert!(d.validate().is_valid());
        assert_eq!(d.validate().rank, Some(4));
    }

    #[test]
    fn moment_curve_small_cases() {
        let d = moment_curve_design(3, 2, None, None).unwrap();
        assert_eq!(d.a.row(0), &[ex(1), ex(2), ex(3)]);
        assert_eq!(d.a.row(1), &[ex(9), ex(6), ex(1)]);
        let d = moment_curve_design(4, 3, None, None).unwrap();
        assert_eq!(d.a.row(2), &[ex(1), ex(8), ex(27), ex(64)]);
    }

    #[test]
    fn moment_curve_rejects_bad_parameters() {
        assert!(moment_curve_design(4, 4, None, None).is_err());
        assert!(moment_curve_design(4, 1, None, None).is_err());
        let t = vec![int(1), int(3), int(2), int(4)];
        assert!(moment_curve_design(4, 2, Some(t), None).is_err());
        let t = vec![int(0), int(1), int(2), int(3)];
        assert!(moment_curve_design(4, 2, Some(t), None).is_err());
        assert!(moment_curve_design(4, 2, None, Some(int(15))).is_err());
        assert!(moment_curve_design(4, 2, None, Some(int(16))).is_ok());
        let t = vec![ratio(1, 2), int(1), ratio(3, 2), int(2)];
        let d = moment_curve_design(4, 2, Some(t), None).unwrap();
        assert_eq!(d.params.big_m, Some(int(5)));
        assert_eq!(*d.a.get(1, 0), Scalar::Exact(parse_rational("19/4").unwrap()));
    }

    #[test]
    fn moment_curve_minor_signs() {
        for m in 2..=6usize {
            for n in m + 1..=9 {
                let d = moment_curve_design(n, m, None, None).unwrap();
                let a = d.exact_a().unwrap();
                let expected = Sign::of_power((m / 2) as i64);
                for cols in Combinations::new(n, m) {
                    let idx: Vec<usize> = cols.iter().map(|j| j - 1).collect();
                    let det = a.select_columns(&idx).det().unwrap();
                    assert_eq!(Sign::of(&det), expected, "m={m} n={n} cols={cols:?}");
                }
            }
        }
    }

    #[test]
    fn m3_design_entries() {
        let d = exact_design_m3(5).unwrap();
        assert_eq!(
            col(&d, 3),
            vec![Scalar::Exact(ratio(1, 3)), Scalar::Exact(ratio(1, 3)), ex(1)]
        );
        assert_eq!(d.c[0], ex(1));
        assert_eq!(d.c[1], ex(1));
        let c4 = d.c[3].to_interval(128);
        assert!(c4.lower() > parse_rational("0.707106").unwrap());
        assert!(c4.upper() < parse_rational("0.707107").unwrap());
        assert!(!d.is_exact());
        assert!(d.validate().is_valid());
        assert!(exact_design_m3(3).is_err());
        let hi = d.at_precision(512).unwrap();
        assert_eq!(hi.c[3].bits(), Some(512));
        assert!(hi.c[3].to_interval(512).width() < c4.width());
    }

    #[test]
    fn m2_design_entries() {
        let d = exact_design_m2(4).unwrap();
        assert_eq!(d.a.row(0), &[ex(1), ex(4), ex(9), ex(16)]);
        assert_eq!(d.a.row(1), &[ex(1), ex(1), ex(1), ex(1)]);
        assert_eq!(d.c, vec![ex(1), ex(2), ex(3), ex(4)]);
        assert_eq!(exact_design_m2(3).unwrap().c, vec![ex(1), ex(2), ex(3)]);
        assert!(exact_design_m2(2).is_err());
    }

    #[test]
    fn identity_entries() {
        let d = identity_design(2).unwrap();
        assert_eq!(d.a.to_rows(), vec![vec![ex(1), ex(0)], vec![ex(0), ex(1)]]);
        assert_eq!(identity_design(1).unwrap().a.to_rows(), vec![vec![ex(1)]]);
        assert_eq!(d.m, 2);
        assert!(identity_design(0).is_err());
    }

    #[test]
    fn validation_flags_failures() {
        let a = Matrix::from_rows(vec![vec![int(1), int(-1)], vec![int(0), int(1)]]).unwrap();
        let r = Design::from_rationals(a, vec![int(1), int(1)]).unwrap().validate();
        assert!(!r.nonnegative);
        assert!(!r.is_valid());

        let a = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(1)]]).unwrap();
        let r = Design::from_rationals(a, vec![int(1), int(1)]).unwrap().validate();
        assert_eq!(r.rank, Some(1));
        assert!(!r.full_row_rank);
        assert!(!r.distinct_columns);
        assert!(!r.issues.is_empty());
    }

    #[test]
    fn scaling_and_perturbation() {
        let d = exact_design_m2(3).unwrap();
        let s = d.scale_column(1, &ratio(3, 2)).unwrap();
        assert_eq!(s.column(1), vec![Scalar::Exact(int(6)), Scalar::Exact(ratio(3, 2))]);
        assert_eq!(s.c[1], ex(3));
        assert!(d.scale_column(1, &int(0)).is_err());
        let p = d.perturbed(&ratio(1, 10));
        assert_eq!(p.c[0], Scalar::Exact(ratio(11, 10)));
        assert_eq!(p.params.perturbation, Some(ratio(1, 10)));
        assert_eq!(Scalar::one(), ex(1));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in [
            DesignKind::MomentCurve,
            DesignKind::ExactM3,
            DesignKind::ExactM2,
            DesignKind::Identity,
            DesignKind::User,
        ] {
            assert_eq!(DesignKind::parse(k.as_str()).unwrap(), k);
        }
        assert_eq!(DesignKind::parse("moment").unwrap(), DesignKind::MomentCurve);
        assert!(DesignKind::parse("nope").is_err());
    }
}
