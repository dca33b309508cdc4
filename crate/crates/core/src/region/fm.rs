//! Fourier-Motzkin elimination over nonnegative variables.
//!
//! All rows are `<=` inequalities, and every variable is implicitly bounded
//! below by zero, so eliminating a variable pairs its positive rows both
//! with its negative rows and with the implicit lower bound. Each round
//! prunes the fresh rows: normalisation, duplicate collapse, and a
//! sequential LP redundancy sweep that keeps the description near its
//! irredundant size.

use super::simplex::{self, LpOutcome, LpProblem, LpRow, RowKind, EPS};
use thiserror::Error;

pub const ROW_CAP: usize = 1_000_000;
const DUPLICATE_TOL: f64 = 1e-9;
const REDUNDANCY_TOL: f64 = 1e-9;
/// Below this row count the LP sweep costs more than it saves.
const LP_PRUNE_THRESHOLD: usize = 24;

#[derive(Debug, Error)]
pub enum FmError {
    #[error("elimination produced {rows} rows, above the cap of {cap}")]
    TooManyRows { rows: usize, cap: usize },
}

/// One `coeffs . x <= rhs` inequality.
#[derive(Debug, Clone)]
pub struct FmRow {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

/// Eliminates every variable outside `keep` and returns the projected rows,
/// with columns reordered to follow `keep`. An infeasible input system
/// yields rows with all-zero coefficients and negative right-hand sides.
pub fn project(rows: Vec<FmRow>, n_vars: usize, keep: &[usize]) -> Result<Vec<FmRow>, FmError> {
    let mut rows = rows;
    prune(&mut rows);
    let mut remaining: Vec<usize> = (0..n_vars).filter(|v| !keep.contains(v)).collect();
    while !remaining.is_empty() {
        let (slot, var) = pick_variable(&rows, &remaining);
        remaining.remove(slot);
        rows = eliminate(rows, var)?;
        prune(&mut rows);
    }
    Ok(rows
        .into_iter()
        .map(|r| FmRow {
            coeffs: keep.iter().map(|&k| r.coeffs[k]).collect(),
            rhs: r.rhs,
        })
        .collect())
}

/// Chooses the next variable by the smallest product of positive and
/// negative occurrence counts, breaking ties towards the lowest index.
fn pick_variable(rows: &[FmRow], remaining: &[usize]) -> (usize, usize) {
    let mut best = (usize::MAX, usize::MAX, usize::MAX);
    for (slot, &v) in remaining.iter().enumerate() {
        let pos = rows.iter().filter(|r| r.coeffs[v] > EPS).count();
        let neg = rows.iter().filter(|r| r.coeffs[v] < -EPS).count();
        let score = (pos * neg, v, slot);
        if score < best {
            best = score;
        }
    }
    (best.2, best.1)
}

fn eliminate(rows: Vec<FmRow>, var: usize) -> Result<Vec<FmRow>, FmError> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for mut row in rows {
        let c = row.coeffs[var];
        if c > EPS {
            pos.push(row);
        } else if c < -EPS {
            neg.push(row);
        } else {
            row.coeffs[var] = 0.0;
            out.push(row);
        }
    }
    let projected = out.len() + pos.len() * (neg.len() + 1);
    if projected > ROW_CAP {
        return Err(FmError::TooManyRows {
            rows: projected,
            cap: ROW_CAP,
        });
    }
    for p in &pos {
        let pc = p.coeffs[var];
        // Pair with the implicit lower bound: the row must hold at var = 0.
        let mut at_zero = p.clone();
        at_zero.coeffs[var] = 0.0;
        out.push(at_zero);
        for q in &neg {
            let qc = -q.coeffs[var];
            let mut coeffs: Vec<f64> = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(&a, &b)| a / pc + b / qc)
                .collect();
            coeffs[var] = 0.0;
            out.push(FmRow {
                coeffs,
                rhs: p.rhs / pc + q.rhs / qc,
            });
        }
    }
    // Rows needing the variable only from below are satisfiable by letting
    // it grow, so they vanish from the projection.
    Ok(out)
}

fn prune(rows: &mut Vec<FmRow>) {
    rows.retain_mut(|row| {
        let scale = row.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale <= 1e-12 {
            // Trivial rows drop; contradictions survive to mark emptiness.
            return row.rhs < -EPS;
        }
        for c in &mut row.coeffs {
            *c /= scale;
        }
        row.rhs /= scale;
        true
    });

    // Identical normalised coefficient vectors: keep the tightest bound.
    let mut i = 0;
    while i < rows.len() {
        let mut j = i + 1;
        while j < rows.len() {
            if same_coeffs(&rows[i], &rows[j]) {
                if rows[j].rhs < rows[i].rhs {
                    rows.swap(i, j);
                }
                rows.swap_remove(j);
            } else {
                j += 1;
            }
        }
        i += 1;
    }

    if rows.len() <= LP_PRUNE_THRESHOLD {
        return;
    }
    // Sequential redundancy: a row whose left-hand side cannot exceed its
    // bound under the remaining rows adds nothing.
    let n_vars = rows[0].coeffs.len();
    let mut idx = 0;
    while idx < rows.len() {
        let candidate = &rows[idx];
        let others: Vec<LpRow> = rows
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, r)| LpRow {
                coeffs: r.coeffs.clone(),
                rhs: r.rhs,
                kind: RowKind::Le,
            })
            .collect();
        let problem = LpProblem {
            n_vars,
            rows: others,
            objective: candidate.coeffs.clone(),
        };
        match simplex::solve(&problem) {
            LpOutcome::Optimal { value, .. } if value <= candidate.rhs + REDUNDANCY_TOL => {
                rows.remove(idx);
            }
            _ => idx += 1,
        }
    }
}

fn same_coeffs(a: &FmRow, b: &FmRow) -> bool {
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .all(|(x, y)| (x - y).abs() <= DUPLICATE_TOL)
}
