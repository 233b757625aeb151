//! Exact rational simplex, optimal-face uniqueness and the loadout oracle.
//!
//! The solver is a dense two-phase tableau method with Bland's rule. All
//! problems are maximizations over `x >= 0`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::designs::Design;
use crate::exactmath::{Matrix, Rational};
use crate::{Error, Result, Subset};

/// Pivot budget of a single solve.
pub const DEFAULT_ITERATION_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

/// `max c^T x` subject to `rows[i] x (sense_i) rhs[i]`, `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub rows: Vec<Vec<Rational>>,
    pub senses: Vec<RowSense>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        LinearProgram { rows: Vec::new(), senses: Vec::new(), rhs: Vec::new(), objective }
    }

    pub fn push(&mut self, row: Vec<Rational>, sense: RowSense, rhs: Rational) {
        self.rows.push(row);
        self.senses.push(sense);
        self.rhs.push(rhs);
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    fn check(&self) -> Result<()> {
        let n = self.vars();
        if self.rows.iter().any(|r| r.len() != n) || self.senses.len() != self.rows.len() || self.rhs.len() != self.rows.len() {
            return Err(Error::DimensionMismatch("linear program rows, senses and rhs disagree".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// `Ax <= b`
    Inequality,
    /// `Ax = b`
    Equality,
}

/// `max { c^T x | Ax <= b (or = b), x >= 0 }` with rational data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpInstance {
    pub a: Matrix<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
    pub sense: Constraint,
}

impl LpInstance {
    pub fn new(a: Matrix<Rational>, b: Vec<Rational>, c: Vec<Rational>, sense: Constraint) -> Result<Self> {
        if a.rows() != b.len() || a.cols() != c.len() {
            return Err(Error::DimensionMismatch(format!(
                "A is {}x{}, b has {} entries, c has {}",
                a.rows(),
                a.cols(),
                b.len(),
                c.len()
            )));
        }
        Ok(LpInstance { a, b, c, sense })
    }

    pub fn to_program(&self) -> LinearProgram {
        let sense = match self.sense {
            Constraint::Inequality => RowSense::Le,
            Constraint::Equality => RowSense::Eq,
        };
        let mut lp = LinearProgram::new(self.c.clone());
        for i in 0..self.a.rows() {
            lp.push(self.a.row(i).to_vec(), sense, self.b[i].clone());
        }
        lp
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Optimal => "optimal",
            Status::Infeasible => "infeasible",
            Status::Unbounded => "unbounded",
        }
    }
}

/// Result of a solve. `x`, `objective`, `basis` and `dual` are meaningful only
/// when `status` is optimal; otherwise they are empty or zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub status: Status,
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// 0-based structural columns in the final basis.
    pub basis: Vec<usize>,
    /// One multiplier per constraint row; `y^T b` equals the objective.
    pub dual: Vec<Rational>,
    pub iterations: usize,
}

impl Solution {
    fn without_point(status: Status, iterations: usize) -> Self {
        Solution { status, x: Vec::new(), objective: Rational::zero(), basis: Vec::new(), dual: Vec::new(), iterations }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    /// 1-indexed support of `x`.
    pub fn support(&self) -> Subset {
        support_of(&self.x)
    }
}

pub fn support_of(x: &[Rational]) -> Subset {
    x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, _)| j + 1).collect()
}

pub fn solve(inst: &LpInstance) -> Result<Solution> {
    solve_program(&inst.to_program(), DEFAULT_ITERATION_LIMIT)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    /// Constraint rows, each with the right-hand side as the last entry.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs followed by the negated objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    iterations: usize,
    limit: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width();
        let p = self.rows[r][col].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                *v /= &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in 0..=w {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for j in 0..=w {
                if !pivot_row[j].is_zero() {
                    self.obj[j] -= &f * &pivot_row[j];
                }
            }
        }
        self.basis[r] = col;
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let w = self.width();
        let mut obj: Vec<Rational> = costs.to_vec();
        obj.push(Rational::zero());
        for (r, &bc) in self.basis.iter().enumerate() {
            if costs[bc].is_zero() {
                continue;
            }
            let f = costs[bc].clone();
            for j in 0..=w {
                if !self.rows[r][j].is_zero() {
                    obj[j] -= &f * &self.rows[r][j];
                }
            }
        }
        self.obj = obj;
    }

    /// Bland's rule: lowest-index improving column, ratio ties broken by the
    /// lowest basic index.
    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> Result<PhaseEnd> {
        let w = self.width();
        loop {
            let Some(col) = (0..w).find(|&j| allowed(j) && self.obj[j].is_positive()) else {
                return Ok(PhaseEnd::Optimal);
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Ok(PhaseEnd::Unbounded);
            };
            if self.iterations >= self.limit {
                return Err(Error::IterationLimit { limit: self.limit });
            }
            self.iterations += 1;
            self.pivot(r, col);
        }
    }
}

/// Two-phase simplex on a general program. Fails only when the pivot budget
/// is exhausted.
pub fn solve_program(lp: &LinearProgram, limit: usize) -> Result<Solution> {
    lp.check()?;
    let n = lp.vars();
    let rows = lp.rows.len();

    // Normalize to nonnegative right-hand sides.
    let mut flipped = vec![false; rows];
    let mut senses = lp.senses.clone();
    for i in 0..rows {
        if lp.rhs[i].is_negative() {
            flipped[i] = true;
            senses[i] = match senses[i] {
                RowSense::Le => RowSense::Ge,
                RowSense::Ge => RowSense::Le,
                RowSense::Eq => RowSense::Eq,
            };
        }
    }

    let mut kinds = vec![ColumnKind::Structural; n];
    let mut slack_col = vec![None; rows];
    for (i, s) in senses.iter().enumerate() {
        if *s != RowSense::Eq {
            slack_col[i] = Some(kinds.len());
            kinds.push(ColumnKind::Slack);
        }
    }
    let mut art_col = vec![None; rows];
    for (i, s) in senses.iter().enumerate() {
        if *s != RowSense::Le {
            art_col[i] = Some(kinds.len());
            kinds.push(ColumnKind::Artificial);
        }
    }
    let w = kinds.len();

    let mut table = Vec::with_capacity(rows);
    let mut basis = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row = vec![Rational::zero(); w + 1];
        for j in 0..n {
            row[j] = if flipped[i] { -&lp.rows[i][j] } else { lp.rows[i][j].clone() };
        }
        row[w] = lp.rhs[i].abs();
        if let Some(s) = slack_col[i] {
            row[s] = if senses[i] == RowSense::Le { Rational::one() } else { -Rational::one() };
        }
        if let Some(a) = art_col[i] {
            row[a] = Rational::one();
            basis.push(a);
        } else {
            basis.push(slack_col[i].unwrap());
        }
        table.push(row);
    }

    let mut t = Tableau { rows: table, obj: Vec::new(), basis, kinds, iterations: 0, limit };

    // Phase 1: maximize minus the sum of artificials.
    if art_col.iter().any(Option::is_some) {
        let costs: Vec<Rational> = t
            .kinds
            .iter()
            .map(|k| if *k == ColumnKind::Artificial { -Rational::one() } else { Rational::zero() })
            .collect();
        t.set_objective(&costs);
        t.run(|_| true)?;
        if !t.obj[w].is_zero() {
            return Ok(Solution::without_point(Status::Infeasible, t.iterations));
        }
        // Drive zero-level artificials out; rows where that is impossible are
        // redundant and dropped.
        let mut r = 0;
        let mut row_ids: Vec<usize> = (0..rows).collect();
        while r < t.rows.len() {
            if t.kinds[t.basis[r]] == ColumnKind::Artificial {
                match (0..w).find(|&j| t.kinds[j] != ColumnKind::Artificial && !t.rows[r][j].is_zero()) {
                    Some(j) => {
                        t.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                        row_ids.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        return phase_two(t, lp, &flipped, &slack_col, &row_ids, n);
    }
    let row_ids: Vec<usize> = (0..rows).collect();
    phase_two(t, lp, &flipped, &slack_col, &row_ids, n)
}

fn phase_two(
    mut t: Tableau,
    lp: &LinearProgram,
    flipped: &[bool],
    slack_col: &[Option<usize>],
    row_ids: &[usize],
    n: usize,
) -> Result<Solution> {
    let w = t.width();
    let mut costs = vec![Rational::zero(); w];
    costs[..n].clone_from_slice(&lp.objective);
    t.set_objective(&costs);
    let kinds = t.kinds.clone();
    match t.run(|j| kinds[j] != ColumnKind::Artificial)? {
        PhaseEnd::Unbounded => return Ok(Solution::without_point(Status::Unbounded, t.iterations)),
        PhaseEnd::Optimal => {}
    }

    let mut x = vec![Rational::zero(); n];
    for (r, &bc) in t.basis.iter().enumerate() {
        if bc < n {
            x[bc] = t.rows[r][w].clone();
        }
    }
    let objective: Rational = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();

    // Dual multipliers from B^T y = c_B over the surviving rows.
    let k = row_ids.len();
    let column_entry = |orig_row: usize, col: usize| -> Rational {
        let sign = if flipped[orig_row] { -Rational::one() } else { Rational::one() };
        if col < n {
            &lp.rows[orig_row][col] * &sign
        } else if slack_col[orig_row] == Some(col) {
            match lp.senses[orig_row] {
                RowSense::Le => Rational::one(),
                _ => -Rational::one(),
            }
        } else {
            Rational::zero()
        }
    };
    let mut dual = vec![Rational::zero(); lp.rows.len()];
    if k > 0 {
        let bt = Matrix::from_fn(k, k, |bi, ri| column_entry(row_ids[ri], t.basis[bi]));
        let cb: Vec<Rational> = t.basis.iter().map(|&bc| costs[bc].clone()).collect();
        let y = bt.solve(&cb)?;
        for (ri, &orig) in row_ids.iter().enumerate() {
            dual[orig] = if flipped[orig] { -&y[ri] } else { y[ri].clone() };
        }
    }
    let basis = t.basis.iter().copied().filter(|&b| b < n).collect();
    Ok(Solution { status: Status::Optimal, x, objective, basis, dual, iterations: t.iterations })
}

/// Whether an optimum is the only optimal point, with the 1-indexed support
/// of the reported optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub unique: bool,
    /// Another optimal point differing from the solution, when not unique.
    pub witness: Option<Vec<Rational>>,
    pub support: Subset,
}

/// Maximizes and minimizes every coordinate over the optimal face.
pub fn optimal_face_unique(inst: &LpInstance, sol: &Solution) -> Result<UniquenessReport> {
    if !sol.is_optimal() {
        return Err(Error::InvalidParams("uniqueness test needs an optimal solution".into()));
    }
    let n = inst.c.len();
    let mut face = inst.to_program();
    face.push(inst.c.clone(), RowSense::Eq, sol.objective.clone());
    let unit = |j: usize, s: i64| -> Vec<Rational> {
        (0..n).map(|i| if i == j { Rational::from_integer(s.into()) } else { Rational::zero() }).collect()
    };
    let report = |witness: Option<Vec<Rational>>| UniquenessReport {
        unique: witness.is_none(),
        witness,
        support: sol.support(),
    };
    for j in 0..n {
        let mut hi = face.clone();
        hi.objective = unit(j, 1);
        let up = solve_program(&hi, DEFAULT_ITERATION_LIMIT)?;
        match up.status {
            Status::Optimal if up.x[j] != sol.x[j] => return Ok(report(Some(up.x))),
            Status::Optimal => {}
            Status::Unbounded => {
                // Cap the coordinate to extract a concrete second optimum.
                let mut capped = hi.clone();
                capped.push(unit(j, 1), RowSense::Le, &sol.x[j] + Rational::one());
                let w = solve_program(&capped, DEFAULT_ITERATION_LIMIT)?;
                return Ok(report(Some(w.x)));
            }
            Status::Infeasible => {
                return Err(Error::InvalidParams("solution is not feasible for its instance".into()));
            }
        }
        if sol.x[j].is_zero() {
            continue;
        }
        let mut lo = face.clone();
        lo.objective = unit(j, -1);
        let down = solve_program(&lo, DEFAULT_ITERATION_LIMIT)?;
        if down.is_optimal() && down.x[j] != sol.x[j] {
            return Ok(report(Some(down.x)));
        }
    }
    Ok(report(None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// The optimum is unique but its support differs from the candidate.
    DifferentSupport { support: Subset },
    /// The optimal face contains a second point.
    NotUnique { witness: Vec<Rational> },
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    /// The candidate failed for this particular resource vector; another
    /// witness may still succeed.
    Refuted(Refutation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadoutCheck {
    pub subset: Subset,
    pub witness: Vec<Rational>,
    pub b: Vec<Rational>,
    pub solution: Solution,
    pub verdict: Verdict,
}

impl LoadoutCheck {
    pub fn confirmed(&self) -> bool {
        self.verdict == Verdict::Confirmed
    }
}

/// Solves `LP(A, c, Ax)` for `x` the witness (default: the indicator of `L`)
/// and checks that the optimum is unique with support exactly `L`.
pub fn verify_loadout(d: &Design, subset: &[usize], witness: Option<&[Rational]>) -> Result<LoadoutCheck> {
    let a = d.exact_a()?;
    let c = d.exact_c()?;
    crate::cyclic::validate_subset(d.n, subset)?;
    if subset.is_empty() {
        return Err(Error::InvalidParams("loadout candidate must be nonempty".into()));
    }
    let x: Vec<Rational> = match witness {
        Some(w) => {
            if w.len() != d.n || w.iter().any(Signed::is_negative) || support_of(w) != subset {
                return Err(Error::InvalidParams(format!(
                    "witness must be a nonnegative vector of length {} with support {subset:?}",
                    d.n
                )));
            }
            w.to_vec()
        }
        None => (1..=d.n).map(|j| if subset.contains(&j) { Rational::one() } else { Rational::zero() }).collect(),
    };
    let b = a.mul_vec(&x)?;
    let inst = LpInstance::new(a, b.clone(), c, Constraint::Inequality)?;
    let solution = solve(&inst)?;
    let verdict = match solution.status {
        Status::Infeasible => Verdict::Refuted(Refutation::Infeasible),
        Status::Unbounded => Verdict::Refuted(Refutation::Unbounded),
        Status::Optimal => {
            let u = optimal_face_unique(&inst, &solution)?;
            match u.witness {
                Some(w) => {
                    // Report whichever optimum differs from the candidate.
                    let other = if support_of(&w) == subset { solution.x.clone() } else { w };
                    Verdict::Refuted(Refutation::NotUnique { witness: other })
                }
                None if u.support != subset => Verdict::Refuted(Refutation::DifferentSupport { support: u.support }),
                None => Verdict::Confirmed,
            }
        }
    };
    Ok(LoadoutCheck { subset: subset.to_vec(), witness: x, b, solution, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::Combinations;
    use crate::designs::{exact_design_m2, identity_design, moment_curve_design};
    use crate::exactmath::{int, ratio};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn matrix(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| ints(r)).collect()).unwrap()
    }

    fn check_duality(inst: &LpInstance, sol: &Solution) {
        assert!(sol.is_optimal());
        let ax = inst.a.mul_vec(&sol.x).unwrap();
        for i in 0..inst.b.len() {
            match inst.sense {
                Constraint::Inequality => {
                    assert!(ax[i] <= inst.b[i]);
                    assert!(!sol.dual[i].is_negative());
                    // complementary slackness on rows
                    assert!((&sol.dual[i] * (&ax[i] - &inst.b[i])).is_zero());
                }
                Constraint::Equality => assert_eq!(ax[i], inst.b[i]),
            }
        }
        let yb: Rational = sol.dual.iter().zip(&inst.b).map(|(y, b)| y * b).sum();
        assert_eq!(yb, sol.objective);
        let yta = inst.a.vec_mul(&sol.dual).unwrap();
        for j in 0..inst.c.len() {
            assert!(yta[j] >= inst.c[j], "dual infeasible at column {j}");
            assert!(((&yta[j] - &inst.c[j]) * &sol.x[j]).is_zero());
        }
    }

    #[test]
    fn identity_bounds() {
        let d = identity_design(2).unwrap();
        let inst = LpInstance::new(d.exact_a().unwrap(), ints(&[1, 0]), d.exact_c().unwrap(), Constraint::Inequality).unwrap();
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.x, ints(&[1, 0]));
        assert_eq!(sol.objective, int(1));
        check_duality(&inst, &sol);
    }

    #[test]
    fn m2_design_optimum() {
        let d = exact_design_m2(4).unwrap();
        let inst = LpInstance::new(d.exact_a().unwrap(), ints(&[13, 2]), d.exact_c().unwrap(), Constraint::Inequality).unwrap();
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.x, ints(&[0, 1, 1, 0]));
        assert_eq!(sol.objective, int(5));
        check_duality(&inst, &sol);
        assert_eq!(sol.dual, vec![ratio(1, 5), ratio(6, 5)]);
        let u = optimal_face_unique(&inst, &sol).unwrap();
        assert!(u.unique);
        assert_eq!(u.support, vec![2, 3]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let inst = LpInstance::new(matrix(&[&[1]]), ints(&[-1]), ints(&[1]), Constraint::Inequality).unwrap();
        assert_eq!(solve(&inst).unwrap().status, Status::Infeasible);
        let inst = LpInstance::new(matrix(&[&[1, -1]]), ints(&[1]), ints(&[0, 1]), Constraint::Inequality).unwrap();
        assert_eq!(solve(&inst).unwrap().status, Status::Unbounded);
        let inst = LpInstance::new(matrix(&[&[1, 1]]), ints(&[2]), ints(&[1, 1]), Constraint::Equality).unwrap();
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.objective, int(2));
        check_duality(&inst, &sol);
    }

    #[test]
    fn redundant_equality_rows() {
        let inst = LpInstance::new(matrix(&[&[1, 1], &[2, 2]]), ints(&[1, 2]), ints(&[1, 2]), Constraint::Equality).unwrap();
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.x, ints(&[0, 1]));
        check_duality(&inst, &sol);
    }

    #[test]
    fn degenerate_tie_is_not_unique() {
        let inst = LpInstance::new(matrix(&[&[1, 1]]), ints(&[1]), ints(&[1, 1]), Constraint::Inequality).unwrap();
        let sol = solve(&inst).unwrap();
        let u = optimal_face_unique(&inst, &sol).unwrap();
        assert!(!u.unique);
        let w = u.witness.unwrap();
        assert_ne!(w, sol.x);
        assert_eq!(&w[0] + &w[1], int(1));
        let d = identity_design(2).unwrap();
        let inst = LpInstance::new(d.exact_a().unwrap(), ints(&[1, 1]), d.exact_c().unwrap(), Constraint::Inequality).unwrap();
        let sol = solve(&inst).unwrap();
        assert!(optimal_face_unique(&inst, &sol).unwrap().unique);
        assert_eq!(sol.x, ints(&[1, 1]));
    }

    #[test]
    fn unbounded_optimal_face() {
        // x1 - x2 <= 1 with objective x1 - x2: the optimal face is a ray.
        let inst = LpInstance::new(matrix(&[&[1, -1]]), ints(&[1]), ints(&[1, -1]), Constraint::Inequality).unwrap();
        let sol = solve(&inst).unwrap();
        let u = optimal_face_unique(&inst, &sol).unwrap();
        assert!(!u.unique);
        let w = u.witness.unwrap();
        assert_eq!(&w[0] - &w[1], int(1));
    }

    #[test]
    fn loadout_oracle_examples() {
        let d = exact_design_m2(4).unwrap();
        let check = verify_loadout(&d, &[2, 3], None).unwrap();
        assert!(check.confirmed());
        assert_eq!(check.b, ints(&[13, 2]));
        assert!(!verify_loadout(&d, &[1, 3], None).unwrap().confirmed());

        let d = moment_curve_design(6, 4, None, None).unwrap();
        assert!(verify_loadout(&d, &[1, 2, 3, 6], None).unwrap().confirmed());

        let d = identity_design(2).unwrap();
        let check = verify_loadout(&d, &[1, 2], Some(&ints(&[1, 1]))).unwrap();
        assert!(check.confirmed());
        assert_eq!(check.b, ints(&[1, 1]));
        assert!(verify_loadout(&d, &[1, 2], Some(&ints(&[1, 0]))).is_err());
        assert!(verify_loadout(&d, &[], None).is_err());
    }

    #[test]
    fn oracle_refutes_with_reason() {
        let a = matrix(&[&[1, 1]]);
        let d = Design::from_rationals(a, ints(&[1, 1])).unwrap();
        let check = verify_loadout(&d, &[1], None).unwrap();
        assert!(matches!(check.verdict, Verdict::Refuted(Refutation::NotUnique { .. })));
        let a = matrix(&[&[1, 2]]);
        let d = Design::from_rationals(a, ints(&[1, 1])).unwrap();
        let check = verify_loadout(&d, &[2], None).unwrap();
        assert_eq!(check.verdict, Verdict::Refuted(Refutation::DifferentSupport { support: vec![1] }));
    }

    #[test]
    fn iteration_cap_is_a_hard_error() {
        let inst = LpInstance::new(matrix(&[&[1, 1], &[1, 3]]), ints(&[4, 6]), ints(&[1, 2]), Constraint::Inequality).unwrap();
        assert_eq!(solve_program(&inst.to_program(), 0), Err(Error::IterationLimit { limit: 0 }));
    }

    /// Best objective over all basic feasible solutions, or `None` when none
    /// exists. Only valid for bounded problems.
    fn brute_force(inst: &LpInstance) -> Option<Rational> {
        let m = inst.a.rows();
        let n = inst.c.len();
        // Standard form [A | I] x = b.
        let full = Matrix::from_fn(m, n + m, |i, j| {
            if j < n {
                inst.a.get(i, j).clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let mut best: Option<Rational> = None;
        for cols in Combinations::new(n + m, m) {
            let idx: Vec<usize> = cols.iter().map(|j| j - 1).collect();
            let Ok(xb) = full.select_columns(&idx).solve(&inst.b) else { continue };
            if xb.iter().any(Signed::is_negative) {
                continue;
            }
            let val: Rational = idx.iter().zip(&xb).filter(|(j, _)| **j < n).map(|(j, v)| &inst.c[*j] * v).sum();
            if best.as_ref().is_none_or(|b| val > *b) {
                best = Some(val);
            }
        }
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]
        #[test]
        fn simplex_matches_basic_solution_enumeration(
            (m, n, data) in (1usize..=3, 1usize..=6).prop_flat_map(|(m, n)| {
                (Just(m), Just(n), proptest::collection::vec(0i64..6, m * n + m + n))
            })
        ) {
            let a = Matrix::from_fn(m, n, |i, j| int(data[i * n + j]));
            let b: Vec<Rational> = (0..m).map(|i| int(data[m * n + i])).collect();
            let c: Vec<Rational> = (0..n).map(|j| int(data[m * n + m + j] - 2)).collect();
            let inst = LpInstance::new(a, b, c, Constraint::Inequality).unwrap();
            let sol = solve(&inst).unwrap();
            match sol.status {
                Status::Optimal => {
                    check_duality(&inst, &sol);
                    prop_assert_eq!(Some(sol.objective.clone()), brute_force(&inst));
                }
                Status::Unbounded => {
                    // some improving column with no positive entry
                    prop_assert!((0..n).any(|j| inst.c[j].is_positive() && (0..m).all(|i| inst.a.get(i, j).is_zero())));
                }
                Status::Infeasible => prop_assert!(false, "b >= 0 is always feasible"),
            }
        }
    }
}
