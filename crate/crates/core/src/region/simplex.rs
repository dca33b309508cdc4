//! Dense two-phase primal simplex for small rate-region programs.
//!
//! Problems are stated over nonnegative variables with `<=` and `==` rows
//! and a maximisation objective. Bland's rule keeps the iteration finite on
//! degenerate inputs. A presolve pass fixes variables that zero right-hand
//! sides pin to the origin, which collapses most sweep cells to a fraction
//! of their nominal size.

pub const EPS: f64 = 1e-9;
/// Phase-one leftover mass above which a problem is declared infeasible.
pub const FEAS_TOL: f64 = 1e-7;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LpRow {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
    pub kind: RowKind,
}

#[derive(Debug, Clone)]
pub struct LpProblem {
    pub n_vars: usize,
    pub rows: Vec<LpRow>,
    /// Coefficients of the linear functional to maximise.
    pub objective: Vec<f64>,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Unbounded,
    /// The constraints admit no nonnegative point; `witness_row` indexes a
    /// row of the input that could not be satisfied.
    Infeasible { witness_row: usize },
}

/// Maximises `objective . x` subject to the rows and `x >= 0`.
pub fn solve(problem: &LpProblem) -> LpOutcome {
    debug_assert_eq!(problem.objective.len(), problem.n_vars);
    let n = problem.n_vars;

    // Presolve: a `<=` row with nonpositive right-hand side and no negative
    // coefficient forces every positively weighted variable to zero, and
    // likewise for `==` rows with (numerically) zero right-hand side.
    let mut fixed = vec![false; n];
    loop {
        let mut changed = false;
        for row in &problem.rows {
            let pinned = match row.kind {
                RowKind::Le => row.rhs <= EPS,
                RowKind::Eq => row.rhs.abs() <= EPS,
            };
            if !pinned {
                continue;
            }
            let has_negative = (0..n).any(|j| !fixed[j] && row.coeffs[j] < -EPS);
            if has_negative {
                continue;
            }
            for j in 0..n {
                if !fixed[j] && row.coeffs[j] > EPS {
                    fixed[j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let keep: Vec<usize> = (0..n).filter(|&j| !fixed[j]).collect();
    let mut rows = Vec::new();
    let mut origin = Vec::new();
    for (i, row) in problem.rows.iter().enumerate() {
        let coeffs: Vec<f64> = keep.iter().map(|&j| row.coeffs[j]).collect();
        if coeffs.iter().all(|c| c.abs() <= EPS) {
            let broken = match row.kind {
                RowKind::Le => row.rhs < -EPS,
                RowKind::Eq => row.rhs.abs() > EPS,
            };
            if broken {
                return LpOutcome::Infeasible { witness_row: i };
            }
            continue;
        }
        rows.push(LpRow {
            coeffs,
            rhs: row.rhs,
            kind: row.kind,
        });
        origin.push(i);
    }
    if keep.is_empty() {
        return LpOutcome::Optimal {
            value: 0.0,
            x: vec![0.0; n],
        };
    }

    let objective: Vec<f64> = keep.iter().map(|&j| problem.objective[j]).collect();
    match solve_dense(&rows, &objective) {
        DenseOutcome::Optimal { value, x } => {
            let mut full = vec![0.0; n];
            for (pos, &j) in keep.iter().enumerate() {
                full[j] = x[pos];
            }
            LpOutcome::Optimal { value, x: full }
        }
        DenseOutcome::Unbounded => LpOutcome::Unbounded,
        DenseOutcome::Infeasible { row } => LpOutcome::Infeasible {
            witness_row: origin[row],
        },
    }
}

enum DenseOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Unbounded,
    Infeasible { row: usize },
}

enum Aug {
    Slack,
    SurplusAndArtificial,
    Artificial,
}

fn solve_dense(rows: &[LpRow], objective: &[f64]) -> DenseOutcome {
    let n = objective.len();
    let m = rows.len();

    let mut work: Vec<(Vec<f64>, f64, Aug)> = Vec::with_capacity(m);
    for row in rows {
        let mut coeffs = row.coeffs.clone();
        let mut rhs = row.rhs;
        let flipped = rhs < 0.0;
        if flipped {
            for c in &mut coeffs {
                *c = -*c;
            }
            rhs = -rhs;
        }
        let aug = match (row.kind, flipped) {
            (RowKind::Le, false) => Aug::Slack,
            (RowKind::Le, true) => Aug::SurplusAndArtificial,
            (RowKind::Eq, _) => Aug::Artificial,
        };
        work.push((coeffs, rhs, aug));
    }

    let mut n_cols = n;
    let mut extra_col: Vec<Option<(usize, f64)>> = vec![None; m];
    for (i, w) in work.iter().enumerate() {
        match w.2 {
            Aug::Slack => {
                extra_col[i] = Some((n_cols, 1.0));
                n_cols += 1;
            }
            Aug::SurplusAndArtificial => {
                extra_col[i] = Some((n_cols, -1.0));
                n_cols += 1;
            }
            Aug::Artificial => {}
        }
    }
    let art_start = n_cols;
    let mut art_col: Vec<Option<usize>> = vec![None; m];
    for (i, w) in work.iter().enumerate() {
        if matches!(w.2, Aug::SurplusAndArtificial | Aug::Artificial) {
            art_col[i] = Some(n_cols);
            n_cols += 1;
        }
    }

    let mut a = vec![vec![0.0; n_cols]; m];
    let mut b = vec![0.0; m];
    let mut basis = vec![0usize; m];
    for i in 0..m {
        a[i][..n].copy_from_slice(&work[i].0);
        b[i] = work[i].1;
        if let Some((col, sign)) = extra_col[i] {
            a[i][col] = sign;
        }
        if let Some(col) = art_col[i] {
            a[i][col] = 1.0;
            basis[i] = col;
        } else {
            basis[i] = extra_col[i].expect("slack basis").0;
        }
    }

    if art_start < n_cols {
        let mut costs = vec![0.0; n_cols];
        for c in costs.iter_mut().skip(art_start) {
            *c = -1.0;
        }
        let eligible = vec![true; n_cols];
        if run(&mut a, &mut b, &mut basis, &costs, &eligible).is_err() {
            unreachable!("the phase-one objective is bounded above by zero");
        }
        let leftover: f64 = basis
            .iter()
            .zip(&b)
            .filter(|(&col, _)| col >= art_start)
            .map(|(_, &bi)| bi)
            .sum();
        if leftover > FEAS_TOL {
            let row = (0..a.len())
                .find(|&i| basis[i] >= art_start && b[i] > FEAS_TOL)
                .unwrap_or(0);
            return DenseOutcome::Infeasible { row };
        }
        // Drive zero-level artificials out of the basis; rows that cannot be
        // pivoted are redundant and get dropped.
        let mut i = 0;
        while i < a.len() {
            if basis[i] >= art_start {
                if let Some(j) = (0..art_start).find(|&j| a[i][j].abs() > EPS) {
                    pivot(&mut a, &mut b, &mut basis, i, j);
                    i += 1;
                } else {
                    a.remove(i);
                    b.remove(i);
                    basis.remove(i);
                }
            } else {
                i += 1;
            }
        }
    }

    let mut costs = vec![0.0; n_cols];
    costs[..n].copy_from_slice(objective);
    let mut eligible = vec![true; n_cols];
    for e in eligible.iter_mut().skip(art_start) {
        *e = false;
    }
    if run(&mut a, &mut b, &mut basis, &costs, &eligible).is_err() {
        return DenseOutcome::Unbounded;
    }

    let mut x = vec![0.0; n];
    for (i, &col) in basis.iter().enumerate() {
        if col < n {
            x[col] = b[i].max(0.0);
        }
    }
    let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    DenseOutcome::Optimal { value, x }
}

struct Unbounded;

fn run(
    a: &mut [Vec<f64>],
    b: &mut [f64],
    basis: &mut [usize],
    costs: &[f64],
    eligible: &[bool],
) -> Result<(), Unbounded> {
    let m = a.len();
    let n_cols = costs.len();
    for _ in 0..MAX_PIVOTS {
        // Bland's rule: enter the lowest-index improving column.
        let duals: Vec<f64> = basis.iter().map(|&col| costs[col]).collect();
        let mut entering = None;
        for j in 0..n_cols {
            if !eligible[j] {
                continue;
            }
            let mut rc = costs[j];
            for i in 0..m {
                if duals[i] != 0.0 {
                    rc -= duals[i] * a[i][j];
                }
            }
            if rc > EPS {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Ok(());
        };
        // Ratio test; ties leave the lowest-index basic variable.
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if a[i][j] > EPS {
                let ratio = b[i] / a[i][j];
                let better = ratio < best - EPS
                    || ((ratio - best).abs() <= EPS
                        && leave.is_none_or(|l| basis[i] < basis[l]));
                if better {
                    best = ratio.min(best);
                    leave = Some(i);
                }
            }
        }
        let Some(i) = leave else {
            return Err(Unbounded);
        };
        pivot(a, b, basis, i, j);
    }
    panic!("simplex exceeded the pivot cap; the tableau is numerically stuck");
}

fn pivot(a: &mut [Vec<f64>], b: &mut [f64], basis: &mut [usize], r: usize, c: usize) {
    let piv = a[r][c];
    for v in &mut a[r] {
        *v /= piv;
    }
    b[r] /= piv;
    a[r][c] = 1.0;
    let prow = a[r].clone();
    let pb = b[r];
    for i in 0..a.len() {
        if i == r {
            continue;
        }
        let f = a[i][c];
        if f.abs() <= 1e-12 {
            a[i][c] = 0.0;
            continue;
        }
        for (v, pv) in a[i].iter_mut().zip(&prow) {
            *v -= f * pv;
        }
        a[i][c] = 0.0;
        b[i] -= f * pb;
        if b[i].abs() < 1e-12 {
            b[i] = 0.0;
        }
    }
    basis[r] = c;
}
