//! Exact rational linear programming.
//!
//! A dense two-phase tableau simplex over arbitrary-precision rationals.
//! Pivoting always follows Bland's rule, so the solver terminates on every
//! input and is fully deterministic. Optimal solutions come back with dual
//! values extracted from the final basis, and every returned optimum is
//! re-verified exactly (primal feasibility, dual feasibility, and equality of
//! the two objective values) before the solver hands it out.
//!
//! Dual convention, with variables bounded below by zero:
//!
//! * maximize `c'x` s.t. `Ax {<=,>=} b`: dual is minimize `b'y` s.t.
//!   `A'y >= c`, with `y_i >= 0` on `<=` rows and `y_i <= 0` on `>=` rows.
//! * minimize `c'x` s.t. `Ax {<=,>=} b`: dual is maximize `b'y` s.t.
//!   `A'y <= c`, with `y_i <= 0` on `<=` rows and `y_i >= 0` on `>=` rows.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
}

/// One constraint row, sparse, with coefficient indices strictly increasing.
#[derive(Debug, Clone)]
pub struct LpRow {
    pub coeffs: Vec<(usize, Rat)>,
    pub sense: Sense,
    pub rhs: Rat,
}

/// `direction c'x` subject to the rows and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub direction: Direction,
    pub objective: Vec<Rat>,
    pub rows: Vec<LpRow>,
}

impl LpProblem {
    pub fn new(direction: Direction, objective: Vec<Rat>) -> Self {
        LpProblem {
            direction,
            objective,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, coeffs: Vec<(usize, Rat)>, sense: Sense, rhs: Rat) {
        self.rows.push(LpRow { coeffs, sense, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            let mut last: Option<usize> = None;
            for &(j, _) in &row.coeffs {
                if j >= self.objective.len() {
                    return Err(Error::Input(format!(
                        "row {i} references variable {j}, but there are only {} variables",
                        self.objective.len()
                    )));
                }
                if last.is_some_and(|l| l >= j) {
                    return Err(Error::Input(format!(
                        "row {i} coefficients must have strictly increasing indices"
                    )));
                }
                last = Some(j);
            }
        }
        Ok(())
    }

    /// Row activity `a_i . x` at a point.
    fn activity(&self, row: &LpRow, x: &[Rat]) -> Rat {
        row.coeffs
            .iter()
            .map(|(j, c)| c * &x[*j])
            .fold(Rat::zero(), |acc, t| acc + t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver output. `value`, `primal` and `dual` are meaningful only when
/// `status == Optimal`; `dual[i]` pairs with `rows[i]` under the module-level
/// convention.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rat,
    pub primal: Vec<Rat>,
    pub dual: Vec<Rat>,
}

impl LpSolution {
    fn non_optimal(status: LpStatus) -> Self {
        LpSolution {
            status,
            value: Rat::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
        }
    }
}

struct Tableau {
    // rows[i][j] for j in 0..cols, plus rhs per row.
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    obj: Vec<Rat>,
    obj_value: Rat,
    basis: Vec<usize>,
}

impl Tableau {
    fn cols(&self) -> usize {
        self.obj.len()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        debug_assert!(!pivot.is_zero());
        for entry in &mut self.rows[row] {
            *entry /= &pivot;
        }
        self.rhs[row] /= &pivot;
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.cols() {
                let delta = &factor * &self.rows[row][j];
                self.rows[i][j] -= delta;
            }
            let delta = &factor * &self.rhs[row];
            self.rhs[i] -= delta;
        }
        let factor = self.obj[col].clone();
        if !factor.is_zero() {
            for j in 0..self.cols() {
                let delta = &factor * &self.rows[row][j];
                self.obj[j] -= delta;
            }
            let delta = &factor * &self.rhs[row];
            self.obj_value += delta;
        }
        self.basis[row] = col;
    }

    /// Rebuilds the reduced-cost row for objective `c` (maximization) by
    /// pricing out the current basis.
    fn price_out(&mut self, c: &[Rat]) {
        self.obj = c.to_vec();
        self.obj_value = Rat::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = c[b].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.obj.len() {
                let delta = &cb * &self.rows[i][j];
                self.obj[j] -= delta;
            }
            let delta = &cb * &self.rhs[i];
            self.obj_value += delta;
        }
    }

    /// Runs simplex iterations under Bland's rule until optimality or
    /// unboundedness. `active` limits the columns eligible to enter.
    fn run(&mut self, active: usize) -> LpStatus {
        loop {
            // Bland: entering column = smallest index with positive reduced
            // cost (maximization form).
            let entering = (0..active).find(|&j| self.obj[j].is_positive());
            let Some(col) = entering else {
                return LpStatus::Optimal;
            };
            // Ratio test; ties broken by smallest basis variable index.
            let mut best: Option<(Rat, usize, usize)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][col];
                    let key = (ratio, self.basis[i], i);
                    let replace = match &best {
                        None => true,
                        Some((r, b, _)) => (&key.0, &key.1) < (r, b),
                    };
                    if replace {
                        best = Some(key);
                    }
                }
            }
            let Some((_, _, row)) = best else {
                return LpStatus::Unbounded;
            };
            self.pivot(row, col);
        }
    }
}

/// Solves the problem exactly. Infeasibility and unboundedness are reported
/// in the status; only malformed input is an `Err`.
pub fn solve(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars();
    let m = p.rows.len();
    let sign = match p.direction {
        Direction::Maximize => Rat::one(),
        Direction::Minimize => -Rat::one(),
    };

    // Internal form: maximize (sign .* c) with every rhs >= 0 and one slack
    // or surplus column per row. `flip[i]` records rows multiplied by -1.
    let mut flip = vec![false; m];
    let total = n + m;
    let mut dense: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut needs_artificial: Vec<bool> = Vec::with_capacity(m);
    for (i, row) in p.rows.iter().enumerate() {
        let mut coeffs = vec![Rat::zero(); total];
        for (j, c) in &row.coeffs {
            coeffs[*j] = c.clone();
        }
        let mut b = row.rhs.clone();
        let mut sense = row.sense;
        if b.is_negative() {
            flip[i] = true;
            for c in coeffs.iter_mut().take(n) {
                *c = -std::mem::take(c);
            }
            b = -b;
            sense = match sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
            };
        }
        coeffs[n + i] = match sense {
            Sense::Le => Rat::one(),
            Sense::Ge => -Rat::one(),
        };
        needs_artificial.push(matches!(sense, Sense::Ge));
        dense.push(coeffs);
        rhs.push(b);
    }

    let artificials: Vec<usize> = needs_artificial
        .iter()
        .enumerate()
        .filter(|(_, &need)| need)
        .map(|(i, _)| i)
        .collect();
    let art_base = total;
    let cols = total + artificials.len();
    let mut rows_mat: Vec<Vec<Rat>> = dense;
    for row in &mut rows_mat {
        row.resize(cols, Rat::zero());
    }
    let mut basis = vec![0usize; m];
    for (k, &i) in artificials.iter().enumerate() {
        rows_mat[i][art_base + k] = Rat::one();
        basis[i] = art_base + k;
    }
    for i in 0..m {
        if !needs_artificial[i] {
            basis[i] = n + i;
        }
    }

    let mut tableau = Tableau {
        rows: rows_mat,
        rhs,
        obj: vec![Rat::zero(); cols],
        obj_value: Rat::zero(),
        basis,
    };

    // Phase 1: drive the artificials to zero.
    if !artificials.is_empty() {
        let mut phase1 = vec![Rat::zero(); cols];
        for k in 0..artificials.len() {
            phase1[art_base + k] = -Rat::one();
        }
        tableau.price_out(&phase1);
        let status = tableau.run(cols);
        debug_assert_eq!(status, LpStatus::Optimal, "phase 1 is always bounded");
        if !tableau.obj_value.is_zero() {
            return Ok(LpSolution::non_optimal(LpStatus::Infeasible));
        }
        // Pivot surviving artificials out of the basis. Every constraint row
        // carries its own slack or surplus column, so the rows of the
        // standard-form matrix are linearly independent and a nonzero pivot
        // entry always exists among the structural columns.
        for i in 0..m {
            if tableau.basis[i] >= art_base {
                let col = (0..total)
                    .find(|&j| !tableau.rows[i][j].is_zero())
                    .expect("full row rank: structural pivot must exist");
                tableau.pivot(i, col);
            }
        }
        // Drop artificial columns.
        for row in &mut tableau.rows {
            row.truncate(total);
        }
        tableau.obj.truncate(total);
    }

    // Phase 2 on the real objective.
    let mut c_internal = vec![Rat::zero(); total];
    for j in 0..n {
        c_internal[j] = &sign * &p.objective[j];
    }
    tableau.price_out(&c_internal);
    match tableau.run(total) {
        LpStatus::Unbounded => return Ok(LpSolution::non_optimal(LpStatus::Unbounded)),
        LpStatus::Optimal => {}
        LpStatus::Infeasible => unreachable!(),
    }

    let mut primal = vec![Rat::zero(); n];
    for (i, &b) in tableau.basis.iter().enumerate() {
        if b < n {
            primal[b] = tableau.rhs[i].clone();
        }
    }

    // Duals: solve B' y = c_B against the standard-form columns.
    let column = |j: usize, i: usize| -> Rat {
        // Column j of the (flipped) standard-form matrix, entry for row i.
        if j < n {
            let base = p.rows[i]
                .coeffs
                .iter()
                .find(|(idx, _)| *idx == j)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero);
            if flip[i] {
                -base
            } else {
                base
            }
        } else if j - n == i {
            let le = matches!(p.rows[i].sense, Sense::Le) != flip[i];
            if le {
                Rat::one()
            } else {
                -Rat::one()
            }
        } else {
            Rat::zero()
        }
    };
    // Augmented system B' y = c_B: entry (k, i) = A[i][basis[k]].
    let mut bt = vec![vec![Rat::zero(); m + 1]; m];
    for (k, &bj) in tableau.basis.iter().enumerate() {
        for i in 0..m {
            bt[k][i] = column(bj, i);
        }
        bt[k][m] = c_internal[bj].clone();
    }
    let y = gaussian_solve(&mut bt).ok_or_else(|| {
        Error::Invariant("basis matrix is singular during dual extraction".into())
    })?;
    let mut dual = Vec::with_capacity(m);
    for (i, yi) in y.into_iter().enumerate() {
        let unflipped = if flip[i] { -yi } else { yi };
        dual.push(&sign * unflipped);
    }

    let solution = LpSolution {
        status: LpStatus::Optimal,
        value: &sign * &tableau.obj_value,
        primal,
        dual,
    };
    verify_solution(p, &solution).map_err(Error::Invariant)?;
    Ok(solution)
}

/// Gaussian elimination on an augmented square system; exact, no pivoting
/// subtleties beyond nonzero selection. Returns `None` if singular.
fn gaussian_solve(aug: &mut [Vec<Rat>]) -> Option<Vec<Rat>> {
    let m = aug.len();
    for col in 0..m {
        let pivot_row = (col..m).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot_row);
        let pivot = aug[col][col].clone();
        for j in col..=m {
            aug[col][j] /= &pivot;
        }
        for r in 0..m {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for j in col..=m {
                    let delta = &factor * &aug[col][j];
                    aug[r][j] -= delta;
                }
            }
        }
    }
    Some(aug.iter().map(|row| row[m].clone()).collect())
}

/// Exact optimality audit: primal feasibility, objective consistency, dual
/// sign conditions and feasibility, and strong duality. Every check is a
/// rational equality or inequality with no tolerance.
pub fn verify_solution(p: &LpProblem, s: &LpSolution) -> std::result::Result<(), String> {
    if s.status != LpStatus::Optimal {
        return Err("verify_solution expects an optimal solution".into());
    }
    if s.primal.len() != p.num_vars() || s.dual.len() != p.rows.len() {
        return Err("solution dimensions do not match the problem".into());
    }
    if let Some(j) = s.primal.iter().position(|x| x.is_negative()) {
        return Err(format!("primal variable {j} is negative"));
    }
    for (i, row) in p.rows.iter().enumerate() {
        let lhs = p.activity(row, &s.primal);
        let ok = match row.sense {
            Sense::Le => lhs <= row.rhs,
            Sense::Ge => lhs >= row.rhs,
        };
        if !ok {
            return Err(format!("primal violates row {i}: {lhs} vs {}", row.rhs));
        }
    }
    let objective: Rat = p
        .objective
        .iter()
        .zip(&s.primal)
        .map(|(c, x)| c * x)
        .fold(Rat::zero(), |acc, t| acc + t);
    if objective != s.value {
        return Err(format!(
            "objective {objective} recomputed from the primal differs from value {}",
            s.value
        ));
    }
    // Dual sign conditions.
    for (i, row) in p.rows.iter().enumerate() {
        let y = &s.dual[i];
        let ok = match (p.direction, row.sense) {
            (Direction::Maximize, Sense::Le) => !y.is_negative(),
            (Direction::Maximize, Sense::Ge) => !y.is_positive(),
            (Direction::Minimize, Sense::Le) => !y.is_positive(),
            (Direction::Minimize, Sense::Ge) => !y.is_negative(),
        };
        if !ok {
            return Err(format!("dual variable {i} has the wrong sign: {y}"));
        }
    }
    // Dual feasibility: A'y >= c (max) or A'y <= c (min), per variable.
    let mut aty = vec![Rat::zero(); p.num_vars()];
    for (i, row) in p.rows.iter().enumerate() {
        for (j, c) in &row.coeffs {
            aty[*j] += c * &s.dual[i];
        }
    }
    for (j, c) in p.objective.iter().enumerate() {
        let ok = match p.direction {
            Direction::Maximize => aty[j] >= *c,
            Direction::Minimize => aty[j] <= *c,
        };
        if !ok {
            return Err(format!(
                "dual infeasible at variable {j}: {} vs {c}",
                aty[j]
            ));
        }
    }
    // Strong duality, exactly.
    let dual_value: Rat = p
        .rows
        .iter()
        .zip(&s.dual)
        .map(|(row, y)| &row.rhs * y)
        .fold(Rat::zero(), |acc, t| acc + t);
    if dual_value != s.value {
        return Err(format!(
            "duality gap: primal {} vs dual {dual_value}",
            s.value
        ));
    }
    Ok(())
}

/// Cutting-plane driver: solves with the rows at hand, asks the separation
/// oracle for a violated row at the optimum, and repeats until the oracle
/// returns `None`. With a sound and complete oracle the result equals solving
/// with every row present.
pub fn solve_with_lazy_rows<F>(
    base: &LpProblem,
    mut separation: F,
    max_iterations: usize,
) -> Result<LpSolution>
where
    F: FnMut(&[Rat]) -> Option<LpRow>,
{
    let mut problem = base.clone();
    let mut iterations = 0usize;
    loop {
        let solution = solve(&problem)?;
        if solution.status != LpStatus::Optimal {
            return Ok(solution);
        }
        match separation(&solution.primal) {
            None => return Ok(solution),
            Some(row) => {
                iterations += 1;
                if iterations > max_iterations {
                    return Err(Error::Resource(format!(
                        "lazy row generation exceeded {max_iterations} iterations"
                    )));
                }
                problem.rows.push(row);
            }
        }
    }
}

/// Human-readable dump of a problem with exact fractions, for audits.
///
/// Format: a direction line, `obj:` with one `coeff x_j` term per variable,
/// then one `r<i>:` line per row and the implicit bound line.
pub fn dump_lp(p: &LpProblem) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        match p.direction {
            Direction::Maximize => "maximize",
            Direction::Minimize => "minimize",
        }
    );
    let terms: Vec<String> = p
        .objective
        .iter()
        .enumerate()
        .map(|(j, c)| format!("{c} x{j}"))
        .collect();
    let _ = writeln!(out, "obj: {}", terms.join(" + "));
    let _ = writeln!(out, "subject to");
    for (i, row) in p.rows.iter().enumerate() {
        let terms: Vec<String> = row
            .coeffs
            .iter()
            .map(|(j, c)| format!("{c} x{j}"))
            .collect();
        let sense = match row.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
        };
        let _ = writeln!(out, "r{i}: {} {sense} {}", terms.join(" + "), row.rhs);
    }
    let _ = writeln!(out, "bounds: x >= 0");
    out
}
