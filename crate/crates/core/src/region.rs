//! Achievable-rate polytopes and their two-dimensional shadows.
//!
//! The optimisation runs over ten nonnegative variables: four message rates
//! (common and self, per user) and six randomisation rates, one per signal
//! component. Receiver rows bound rate-plus-randomisation sums for every
//! decodable subset, eavesdropper rows bound randomisation sums for every
//! proper subset, and a single equality pins the total randomisation to
//! exactly what the eavesdropper observes. Everything downstream is linear
//! programming: support points, frontiers, feasibility checks, and a
//! Fourier-Motzkin projection that exposes the `(R1, R2)` shadow directly.

pub mod fm;
pub mod simplex;

use crate::channel::{ComponentSet, SignalComponent};
use crate::mi::{MutualInfoTable, Receiver};
use fm::{FmError, FmRow};
use serde::Serialize;
use simplex::{LpOutcome, LpProblem, LpRow, RowKind};
use thiserror::Error;

pub const N_VARS: usize = 10;
const REFINE_SLACK: f64 = 1e-12;
const COORD_SNAP: f64 = 1e-12;

/// Column of a component's message rate, if it carries one.
pub fn message_var(c: SignalComponent) -> Option<usize> {
    match c {
        SignalComponent::C1 => Some(0),
        SignalComponent::S1 => Some(1),
        SignalComponent::C2 => Some(2),
        SignalComponent::S2 => Some(3),
        SignalComponent::O1 | SignalComponent::O2 => None,
    }
}

/// Column of a component's randomisation rate.
pub fn randomisation_var(c: SignalComponent) -> usize {
    4 + c.index()
}

#[derive(Debug, Error)]
pub enum RegionError {
    #[error("rate region is empty: {constraint} cannot be satisfied")]
    Infeasible { constraint: String },
    #[error("the rate program is unbounded; the table must be malformed")]
    Unbounded,
    #[error("weights must be nonnegative with positive sum, got ({w1}, {w2})")]
    BadWeight { w1: f64, w2: f64 },
    #[error("a frontier needs at least two weights, got {got}")]
    BadWeightCount { got: usize },
    #[error("rates must be nonnegative, got ({r1}, {r2})")]
    NegativeRate { r1: f64, r2: f64 },
    #[error(transparent)]
    Projection(#[from] FmError),
}

// ---------------------------------------------------------------------------
// Constraint system
// ---------------------------------------------------------------------------

/// Identity of one constraint row, for infeasibility certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowId {
    Decode {
        receiver: Receiver,
        subset: ComponentSet,
    },
    EveBound {
        subset: ComponentSet,
    },
    EveTotal,
}

impl std::fmt::Display for RowId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RowId::Decode { receiver, subset } => {
                let who = match receiver {
                    Receiver::Rx1 => "receiver 1",
                    Receiver::Rx2 => "receiver 2",
                    Receiver::Eve => "the eavesdropper",
                };
                write!(f, "the decoding bound at {who} for {subset}")
            }
            RowId::EveBound { subset } => {
                write!(f, "the eavesdropper randomisation bound for {subset}")
            }
            RowId::EveTotal => write!(f, "the total-randomisation balance"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstraintRow {
    pub coeffs: [f64; N_VARS],
    pub rhs: f64,
    pub kind: RowKind,
    pub id: RowId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintCounts {
    pub rx1: usize,
    pub rx2: usize,
    pub eve_bounds: usize,
    pub equalities: usize,
    pub lower_bounds: usize,
}

/// The full constraint system induced by one mutual-information table.
#[derive(Debug, Clone)]
pub struct RatePolytope {
    rows: Vec<ConstraintRow>,
}

/// Assembles the rate constraints from a table. Row order is deterministic:
/// receiver 1 subsets by ascending mask, receiver 2 likewise, eavesdropper
/// proper subsets, then the total-randomisation equality.
pub fn build_constraints(table: &MutualInfoTable) -> RatePolytope {
    let mut rows = Vec::with_capacity(93);
    for receiver in [Receiver::Rx1, Receiver::Rx2] {
        for subset in receiver.decode_set().nonempty_subsets() {
            let mut coeffs = [0.0; N_VARS];
            for c in subset.iter() {
                if let Some(v) = message_var(c) {
                    coeffs[v] += 1.0;
                }
                coeffs[randomisation_var(c)] += 1.0;
            }
            rows.push(ConstraintRow {
                coeffs,
                rhs: table.entry(receiver, subset),
                kind: RowKind::Le,
                id: RowId::Decode { receiver, subset },
            });
        }
    }
    for subset in ComponentSet::FULL.nonempty_subsets() {
        if subset == ComponentSet::FULL {
            continue;
        }
        let mut coeffs = [0.0; N_VARS];
        for c in subset.iter() {
            coeffs[randomisation_var(c)] += 1.0;
        }
        rows.push(ConstraintRow {
            coeffs,
            rhs: table.entry(Receiver::Eve, subset),
            kind: RowKind::Le,
            id: RowId::EveBound { subset },
        });
    }
    let mut coeffs = [0.0; N_VARS];
    for c in SignalComponent::ALL {
        coeffs[randomisation_var(c)] = 1.0;
    }
    rows.push(ConstraintRow {
        coeffs,
        rhs: table.entry(Receiver::Eve, ComponentSet::FULL),
        kind: RowKind::Eq,
        id: RowId::EveTotal,
    });
    RatePolytope { rows }
}

impl RatePolytope {
    pub fn rows(&self) -> &[ConstraintRow] {
        &self.rows
    }

    pub fn counts(&self) -> ConstraintCounts {
        let mut counts = ConstraintCounts {
            rx1: 0,
            rx2: 0,
            eve_bounds: 0,
            equalities: 0,
            lower_bounds: N_VARS,
        };
        for row in &self.rows {
            match row.id {
                RowId::Decode {
                    receiver: Receiver::Rx1,
                    ..
                } => counts.rx1 += 1,
                RowId::Decode {
                    receiver: Receiver::Rx2,
                    ..
                } => counts.rx2 += 1,
                RowId::Decode { .. } => {}
                RowId::EveBound { .. } => counts.eve_bounds += 1,
                RowId::EveTotal => counts.equalities += 1,
            }
        }
        counts
    }

    fn lp_rows(&self) -> Vec<LpRow> {
        self.rows
            .iter()
            .map(|r| LpRow {
                coeffs: r.coeffs.to_vec(),
                rhs: r.rhs,
                kind: r.kind,
            })
            .collect()
    }

    fn certificate(&self, witness: usize) -> String {
        self.rows
            .get(witness)
            .map(|r| r.id.to_string())
            .unwrap_or_else(|| "an auxiliary constraint".to_owned())
    }
}

// ---------------------------------------------------------------------------
// Support points and feasibility
// ---------------------------------------------------------------------------

/// One optimal vertex of the rate polytope.
#[derive(Debug, Clone)]
pub struct RateSolution {
    pub value: f64,
    pub x: [f64; N_VARS],
}

impl RateSolution {
    pub fn r1(&self) -> f64 {
        self.x[0] + self.x[1]
    }

    pub fn r2(&self) -> f64 {
        self.x[2] + self.x[3]
    }

    pub fn message_rate(&self, c: SignalComponent) -> f64 {
        message_var(c).map_or(0.0, |v| self.x[v])
    }

    pub fn randomisation_rate(&self, c: SignalComponent) -> f64 {
        self.x[randomisation_var(c)]
    }
}

fn check_weight(weight: [f64; 2]) -> Result<(), RegionError> {
    let [w1, w2] = weight;
    if !w1.is_finite() || !w2.is_finite() || w1 < 0.0 || w2 < 0.0 || w1 + w2 <= simplex::EPS {
        return Err(RegionError::BadWeight { w1, w2 });
    }
    Ok(())
}

fn weight_objective(weight: [f64; 2]) -> Vec<f64> {
    let mut objective = vec![0.0; N_VARS];
    objective[0] = weight[0];
    objective[1] = weight[0];
    objective[2] = weight[1];
    objective[3] = weight[1];
    objective
}

fn run_lp(
    polytope: &RatePolytope,
    extra: Vec<LpRow>,
    objective: Vec<f64>,
) -> Result<RateSolution, RegionError> {
    let mut rows = polytope.lp_rows();
    rows.extend(extra);
    let problem = LpProblem {
        n_vars: N_VARS,
        rows,
        objective,
    };
    match simplex::solve(&problem) {
        LpOutcome::Optimal { value, x } => {
            let mut arr = [0.0; N_VARS];
            arr.copy_from_slice(&x);
            for v in &mut arr {
                if v.abs() < COORD_SNAP {
                    *v = 0.0;
                }
            }
            Ok(RateSolution { value, x: arr })
        }
        LpOutcome::Unbounded => Err(RegionError::Unbounded),
        LpOutcome::Infeasible { witness_row } => Err(RegionError::Infeasible {
            constraint: polytope.certificate(witness_row),
        }),
    }
}

/// Maximises `w1 (R_C1 + R_S1) + w2 (R_C2 + R_S2)` over the polytope.
pub fn solve_support(
    polytope: &RatePolytope,
    weight: [f64; 2],
) -> Result<RateSolution, RegionError> {
    check_weight(weight)?;
    run_lp(polytope, Vec::new(), weight_objective(weight))
}

/// Support point refined to the Pareto face: after maximising the weighted
/// sum, the rate total is maximised subject to staying optimal.
pub fn solve_support_refined(
    polytope: &RatePolytope,
    weight: [f64; 2],
) -> Result<RateSolution, RegionError> {
    check_weight(weight)?;
    let first = run_lp(polytope, Vec::new(), weight_objective(weight))?;
    let mut hold = weight_objective(weight);
    for c in &mut hold {
        *c = -*c;
    }
    let pin = LpRow {
        coeffs: hold,
        rhs: -(first.value - REFINE_SLACK),
        kind: RowKind::Le,
    };
    let mut total = vec![0.0; N_VARS];
    total[..4].copy_from_slice(&[1.0, 1.0, 1.0, 1.0]);
    match run_lp(polytope, vec![pin], total) {
        Ok(refined) => Ok(RateSolution {
            value: first.value,
            x: refined.x,
        }),
        Err(_) => Ok(first),
    }
}

/// Whether the rate pair is inside the polytope's `(R1, R2)` shadow.
pub fn is_achievable(polytope: &RatePolytope, r1: f64, r2: f64) -> Result<bool, RegionError> {
    if r1 < 0.0 || r2 < 0.0 {
        return Err(RegionError::NegativeRate { r1, r2 });
    }
    let floor = |cols: [usize; 2], rhs: f64| LpRow {
        coeffs: {
            let mut c = vec![0.0; N_VARS];
            c[cols[0]] = -1.0;
            c[cols[1]] = -1.0;
            c
        },
        rhs: -rhs,
        kind: RowKind::Le,
    };
    match run_lp(
        polytope,
        vec![floor([0, 1], r1), floor([2, 3], r2)],
        vec![0.0; N_VARS],
    ) {
        Ok(_) => Ok(true),
        Err(RegionError::Infeasible { .. }) => Ok(false),
        Err(other) => Err(other),
    }
}

// ---------------------------------------------------------------------------
// Frontiers
// ---------------------------------------------------------------------------

/// A point on a rate frontier, tagged with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontierPoint {
    pub r1: f64,
    pub r2: f64,
    pub params_id: String,
}

/// A cleaned Pareto chain: strictly increasing in `R1`, strictly decreasing
/// in `R2`. Containment treats the chain as the vertex set of a convex
/// region (time sharing between points is allowed) truncated to the
/// nonnegative quadrant.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RegionFrontier {
    points: Vec<FrontierPoint>,
}

impl RegionFrontier {
    pub fn from_points(points: Vec<(f64, f64)>) -> Self {
        Self::from_labeled(
            points
                .into_iter()
                .map(|(r1, r2)| FrontierPoint {
                    r1,
                    r2,
                    params_id: String::new(),
                })
                .collect(),
        )
    }

    pub fn from_labeled(points: Vec<FrontierPoint>) -> Self {
        RegionFrontier {
            points: cleanup(points),
        }
    }

    pub fn points(&self) -> &[FrontierPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn with_params_id(mut self, id: &str) -> Self {
        for p in &mut self.points {
            p.params_id = id.to_owned();
        }
        self
    }

    pub fn max_r1(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.r1)
    }

    pub fn max_r2(&self) -> f64 {
        self.points.first().map_or(0.0, |p| p.r2)
    }

    /// Piecewise-linear upper envelope test, with a flat extension from the
    /// leftmost point to the `R2` axis.
    pub fn contains(&self, r1: f64, r2: f64, tol: f64) -> bool {
        if r1 < -tol || r2 < -tol {
            return false;
        }
        let Some(last) = self.points.last() else {
            return r1 <= tol && r2 <= tol;
        };
        if r1 > last.r1 + tol {
            return false;
        }
        let first = &self.points[0];
        if r1 <= first.r1 {
            return r2 <= first.r2 + tol;
        }
        for w in self.points.windows(2) {
            if r1 <= w[1].r1 {
                let t = (r1 - w[0].r1) / (w[1].r1 - w[0].r1);
                let envelope = w[0].r2 + t * (w[1].r2 - w[0].r2);
                return r2 <= envelope + tol;
            }
        }
        r2 <= last.r2 + tol
    }

    /// Convex hull of several frontiers: the deterministic upper chain over
    /// all points, used to time-share across parameter choices.
    pub fn convex_hull_union<'a>(
        parts: impl IntoIterator<Item = &'a RegionFrontier>,
    ) -> RegionFrontier {
        let all: Vec<FrontierPoint> = parts
            .into_iter()
            .flat_map(|f| f.points.iter().cloned())
            .collect();
        let chain = cleanup(all);
        if chain.len() <= 2 {
            return RegionFrontier { points: chain };
        }
        let mut hull: Vec<FrontierPoint> = Vec::with_capacity(chain.len());
        for p in chain {
            while hull.len() >= 2 {
                let a = &hull[hull.len() - 2];
                let b = &hull[hull.len() - 1];
                let cross =
                    (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
                if cross >= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        RegionFrontier { points: hull }
    }
}

/// Sorts and drops dominated or duplicated points; ties break on the
/// lexicographically smallest `params_id` so outputs are reproducible.
fn cleanup(mut points: Vec<FrontierPoint>) -> Vec<FrontierPoint> {
    for p in &mut points {
        if p.r1.abs() < COORD_SNAP {
            p.r1 = 0.0;
        }
        if p.r2.abs() < COORD_SNAP {
            p.r2 = 0.0;
        }
    }
    points.sort_by(|a, b| {
        b.r1.total_cmp(&a.r1)
            .then(b.r2.total_cmp(&a.r2))
            .then(a.params_id.cmp(&b.params_id))
    });
    let mut kept: Vec<FrontierPoint> = Vec::with_capacity(points.len());
    let mut best_r2 = f64::NEG_INFINITY;
    for p in points {
        if p.r2 > best_r2 {
            best_r2 = p.r2;
            kept.push(p);
        }
    }
    kept.reverse();
    kept
}

/// Sweeps support weights over the first quadrant and assembles the Pareto
/// frontier of one polytope. Endpoint weights are exactly axis-aligned.
pub fn frontier(
    polytope: &RatePolytope,
    weight_count: usize,
) -> Result<RegionFrontier, RegionError> {
    if weight_count < 2 {
        return Err(RegionError::BadWeightCount { got: weight_count });
    }
    let mut points = Vec::with_capacity(weight_count);
    for i in 0..weight_count {
        let weight = if i == 0 {
            [1.0, 0.0]
        } else if i == weight_count - 1 {
            [0.0, 1.0]
        } else {
            let theta = (i as f64 / (weight_count - 1) as f64) * std::f64::consts::FRAC_PI_2;
            [theta.cos(), theta.sin()]
        };
        let solution = solve_support_refined(polytope, weight)?;
        points.push((solution.r1(), solution.r2()));
    }
    Ok(RegionFrontier::from_points(points))
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin projection
// ---------------------------------------------------------------------------

/// The `(R1, R2)` shadow of a polytope as explicit inequalities.
#[derive(Debug, Clone)]
pub struct ProjectedRegion {
    rows: Vec<FmRow>,
}

/// Projects the polytope onto `(R1, R2)` by eliminating the per-component
/// variables. Internally the message rates are rebased so that the totals
/// `R1` and `R2` are coordinates, with the common rates' nonnegativity kept
/// as explicit rows.
pub fn fm_project(polytope: &RatePolytope) -> Result<ProjectedRegion, RegionError> {
    // Variable order: r1, rs1, r2, rs2, then the six randomisation rates.
    let mut rows: Vec<FmRow> = Vec::with_capacity(polytope.rows.len() + 3);
    let rebase = |row: &ConstraintRow| -> Vec<f64> {
        let mut c = vec![0.0; N_VARS];
        c[0] = row.coeffs[0];
        c[1] = row.coeffs[1] - row.coeffs[0];
        c[2] = row.coeffs[2];
        c[3] = row.coeffs[3] - row.coeffs[2];
        c[4..].copy_from_slice(&row.coeffs[4..]);
        c
    };
    for row in &polytope.rows {
        let coeffs = rebase(row);
        match row.kind {
            RowKind::Le => rows.push(FmRow {
                coeffs,
                rhs: row.rhs,
            }),
            RowKind::Eq => {
                rows.push(FmRow {
                    coeffs: coeffs.clone(),
                    rhs: row.rhs,
                });
                rows.push(FmRow {
                    coeffs: coeffs.iter().map(|c| -c).collect(),
                    rhs: -row.rhs,
                });
            }
        }
    }
    // R_C1 >= 0 and R_C2 >= 0 are not implied by the rebased coordinates.
    for (total, own) in [(0usize, 1usize), (2, 3)] {
        let mut coeffs = vec![0.0; N_VARS];
        coeffs[total] = -1.0;
        coeffs[own] = 1.0;
        rows.push(FmRow { coeffs, rhs: 0.0 });
    }
    let rows = fm::project(rows, N_VARS, &[0, 2])?;
    Ok(ProjectedRegion { rows })
}

impl ProjectedRegion {
    pub fn rows(&self) -> &[FmRow] {
        &self.rows
    }

    /// Membership test; rows are normalised, so the tolerance is absolute.
    pub fn contains(&self, r1: f64, r2: f64, tol: f64) -> bool {
        if r1 < -tol || r2 < -tol {
            return false;
        }
        self.rows
            .iter()
            .all(|row| row.coeffs[0] * r1 + row.coeffs[1] * r2 <= row.rhs + tol)
    }

    /// Maximises `w . (r1, r2)` over the projected rows.
    pub fn support(&self, weight: [f64; 2]) -> Result<f64, RegionError> {
        check_weight(weight)?;
        let problem = LpProblem {
            n_vars: 2,
            rows: self
                .rows
                .iter()
                .map(|r| LpRow {
                    coeffs: r.coeffs.clone(),
                    rhs: r.rhs,
                    kind: RowKind::Le,
                })
                .collect(),
            objective: weight.to_vec(),
        };
        match simplex::solve(&problem) {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Unbounded => Err(RegionError::Unbounded),
            LpOutcome::Infeasible { .. } => Err(RegionError::Infeasible {
                constraint: "a projected constraint".to_owned(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{GaussianChannel, PowerState, TimeSharingSchedule, UserPowers};
    use crate::mi::gaussian_mi_table;
    use crate::seeded::KeyedStream;
    use proptest::prelude::*;

    const WIRETAP_SECRECY: f64 = 0.437_234_558_958_070_54; // gamma(10) - gamma(5)

    fn wiretap_table() -> MutualInfoTable {
        // Only user 1's self part carries power; the eavesdropper hears it
        // at half gain. Receiver 2 is out of range.
        let ch = GaussianChannel::new(0.0, 0.0, 0.5, 0.0, 10.0, 1.0).unwrap();
        let sched = TimeSharingSchedule::single(PowerState::new(
            UserPowers::new(0.0, 10.0, 0.0, 0.0),
            UserPowers::zero(),
        ));
        gaussian_mi_table(&ch, &sched)
    }

    fn random_setup(seed: u64) -> (GaussianChannel, TimeSharingSchedule) {
        let mut ks = KeyedStream::from_parts(&[seed, 0x7e61]);
        let ch = GaussianChannel::new(
            0.2 + ks.next_f64(),
            0.2 + ks.next_f64(),
            0.6 * ks.next_f64(),
            0.6 * ks.next_f64(),
            2.0 + 8.0 * ks.next_f64(),
            2.0 + 8.0 * ks.next_f64(),
        )
        .unwrap();
        let probs = ks.dirichlet_flat(2);
        let mut states = Vec::new();
        for &p in &probs {
            let s1 = ks.dirichlet_flat(4);
            let s2 = ks.dirichlet_flat(4);
            states.push((
                p,
                PowerState::new(
                    UserPowers::new(
                        ch.p1 * s1[0],
                        ch.p1 * s1[1],
                        ch.p1 * s1[2],
                        ch.p1 * s1[3],
                    ),
                    UserPowers::new(
                        ch.p2 * s2[0],
                        ch.p2 * s2[1],
                        ch.p2 * s2[2],
                        ch.p2 * s2[3],
                    ),
                ),
            ));
        }
        (ch, TimeSharingSchedule::new(states))
    }

    #[test]
    fn constraint_counts_are_fixed() {
        let polytope = build_constraints(&wiretap_table());
        assert_eq!(
            polytope.counts(),
            ConstraintCounts {
                rx1: 15,
                rx2: 15,
                eve_bounds: 62,
                equalities: 1,
                lower_bounds: 10,
            }
        );
    }

    #[test]
    fn wiretap_rate_matches_closed_form() {
        let polytope = build_constraints(&wiretap_table());
        let sol = solve_support(&polytope, [1.0, 0.0]).unwrap();
        assert!(
            (sol.value - WIRETAP_SECRECY).abs() < 1e-12,
            "value {}",
            sol.value
        );
        assert!((sol.r1() - WIRETAP_SECRECY).abs() < 1e-12);
        assert_eq!(sol.r2(), 0.0);
        // All the leak coverage must ride on the self part.
        assert!(
            (sol.randomisation_rate(SignalComponent::S1) - 1.292_481_250_360_578_1).abs() < 1e-12
        );
    }

    #[test]
    fn stronger_eavesdropper_empties_the_region() {
        // The eavesdropper outhears receiver 1, so the randomisation balance
        // cannot be met.
        let ch = GaussianChannel::new(0.0, 0.0, 2.0, 0.0, 10.0, 1.0).unwrap();
        let sched = TimeSharingSchedule::single(PowerState::new(
            UserPowers::new(0.0, 10.0, 0.0, 0.0),
            UserPowers::zero(),
        ));
        let polytope = build_constraints(&gaussian_mi_table(&ch, &sched));
        match solve_support(&polytope, [1.0, 0.0]) {
            Err(RegionError::Infeasible { constraint }) => {
                assert!(!constraint.is_empty());
            }
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn zero_table_collapses_to_origin() {
        let ch = GaussianChannel::new(1.0, 1.0, 1.0, 1.0, 10.0, 10.0).unwrap();
        let sched = TimeSharingSchedule::single(PowerState::default());
        let polytope = build_constraints(&gaussian_mi_table(&ch, &sched));
        let front = frontier(&polytope, 9).unwrap();
        assert_eq!(front.points().len(), 1);
        assert_eq!((front.points()[0].r1, front.points()[0].r2), (0.0, 0.0));
    }

    #[test]
    fn refinement_completes_axis_endpoints() {
        let ch = GaussianChannel::new(0.3, 0.3, 0.1, 0.1, 10.0, 10.0).unwrap();
        let sched = TimeSharingSchedule::single(PowerState::new(
            UserPowers::new(0.0, 5.0, 0.0, 5.0),
            UserPowers::new(0.0, 5.0, 0.0, 5.0),
        ));
        let polytope = build_constraints(&gaussian_mi_table(&ch, &sched));
        let endpoint = solve_support_refined(&polytope, [1.0, 0.0]).unwrap();
        let plain = solve_support(&polytope, [1.0, 0.0]).unwrap();
        assert!((endpoint.r1() - plain.value).abs() < 1e-9);
        assert!(
            endpoint.r2() > 0.1,
            "refined endpoint should recover user 2 rate, got {}",
            endpoint.r2()
        );
    }

    #[test]
    fn frontier_points_form_a_clean_chain() {
        let (ch, sched) = random_setup(3);
        let polytope = build_constraints(&gaussian_mi_table(&ch, &sched));
        match frontier(&polytope, 17) {
            Ok(front) => {
                for w in front.points().windows(2) {
                    assert!(w[0].r1 < w[1].r1);
                    assert!(w[0].r2 > w[1].r2);
                }
                for p in front.points() {
                    assert!(is_achievable(&polytope, p.r1, p.r2).unwrap());
                }
            }
            Err(RegionError::Infeasible { .. }) => {}
            Err(other) => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn achievability_tracks_the_boundary() {
        let polytope = build_constraints(&wiretap_table());
        assert!(is_achievable(&polytope, WIRETAP_SECRECY - 1e-9, 0.0).unwrap());
        assert!(!is_achievable(&polytope, WIRETAP_SECRECY * 1.01, 0.0).unwrap());
        assert!(matches!(
            is_achievable(&polytope, -0.1, 0.0),
            Err(RegionError::NegativeRate { .. })
        ));
    }

    #[test]
    fn hull_union_time_shares_between_corners() {
        let a = RegionFrontier::from_labeled(vec![FrontierPoint {
            r1: 1.0,
            r2: 0.0,
            params_id: "a".into(),
        }]);
        let b = RegionFrontier::from_labeled(vec![FrontierPoint {
            r1: 0.0,
            r2: 1.0,
            params_id: "b".into(),
        }]);
        let hull = RegionFrontier::convex_hull_union([&a, &b]);
        assert_eq!(hull.points().len(), 2);
        assert_eq!(hull.points()[0].params_id, "b");
        assert_eq!(hull.points()[1].params_id, "a");
        assert!(hull.contains(0.499, 0.499, 1e-9));
        assert!(!hull.contains(0.6, 0.6, 1e-9));
        assert!(hull.contains(1.0, 0.0, 1e-9));
    }

    #[test]
    fn hull_union_drops_interior_points() {
        let a = RegionFrontier::from_points(vec![(1.0, 0.0), (0.0, 1.0)]);
        let b = RegionFrontier::from_points(vec![(0.4, 0.4)]);
        let hull = RegionFrontier::convex_hull_union([&a, &b]);
        assert_eq!(hull.points().len(), 2, "points {:?}", hull.points());
    }

    #[test]
    fn containment_beyond_the_chain_fails() {
        let front = RegionFrontier::from_points(vec![(0.5, 0.8)]);
        assert!(front.contains(0.2, 0.8, 1e-9));
        assert!(front.contains(0.5, 0.8, 1e-9));
        assert!(!front.contains(0.51, 0.1, 1e-9));
        assert!(!front.contains(0.2, 0.81, 1e-9));
        let empty = RegionFrontier::default();
        assert!(empty.contains(0.0, 0.0, 1e-9));
        assert!(!empty.contains(0.1, 0.0, 1e-9));
    }

    #[test]
    fn projection_agrees_with_lp_on_the_wiretap_region() {
        let polytope = build_constraints(&wiretap_table());
        let shadow = fm_project(&polytope).unwrap();
        let r1 = shadow.support([1.0, 0.0]).unwrap();
        let r2 = shadow.support([0.0, 1.0]).unwrap();
        assert!((r1 - WIRETAP_SECRECY).abs() < 1e-9, "r1 {r1}");
        assert!(r2.abs() < 1e-9, "r2 {r2}");
        assert!(shadow.contains(WIRETAP_SECRECY - 1e-6, 0.0, 1e-9));
        assert!(!shadow.contains(WIRETAP_SECRECY + 1e-3, 0.0, 1e-9));
    }

    #[test]
    fn projection_agrees_with_lp_on_random_schedules() {
        for seed in [11u64, 29, 47] {
            let (ch, sched) = random_setup(seed);
            let polytope = build_constraints(&gaussian_mi_table(&ch, &sched));
            let lp_feasible = matches!(solve_support(&polytope, [1.0, 1.0]), Ok(_));
            let shadow = fm_project(&polytope).unwrap();
            for k in 0..5 {
                let theta = k as f64 / 4.0 * std::f64::consts::FRAC_PI_2;
                let weight = [
                    theta.cos().max(0.0).max(1e-6),
                    theta.sin().max(0.0).max(1e-6),
                ];
                let lp = solve_support(&polytope, weight);
                let proj = shadow.support(weight);
                match (lp, proj) {
                    (Ok(a), Ok(b)) => assert!(
                        (a.value - b).abs() < 1e-6,
                        "seed {seed}, weight {weight:?}: lp {} vs projection {b}",
                        a.value
                    ),
                    (Err(RegionError::Infeasible { .. }), Err(RegionError::Infeasible { .. })) => {
                        assert!(!lp_feasible);
                    }
                    (lp, proj) => panic!("seed {seed}: mismatched outcomes {lp:?} vs {proj:?}"),
                }
            }
        }
    }

    #[test]
    fn enlarging_receiver_entries_cannot_shrink_the_region() {
        let (ch, sched) = random_setup(5);
        let base_table = gaussian_mi_table(&ch, &sched);
        let wider = MutualInfoTable::from_fn(|receiver, subset| {
            let v = base_table.entry(receiver, subset);
            match receiver {
                Receiver::Eve => v,
                _ => v * 1.15,
            }
        });
        let base = build_constraints(&base_table);
        let grown = build_constraints(&wider);
        for weight in [[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]] {
            match (solve_support(&base, weight), solve_support(&grown, weight)) {
                (Ok(a), Ok(b)) => assert!(b.value >= a.value - 1e-9),
                (Err(RegionError::Infeasible { .. }), _) => {}
                (a, b) => panic!("unexpected outcomes {a:?} / {b:?}"),
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn support_function_is_convex(
            seed in 0u64..1000,
            t in 0.0f64..1.0,
        ) {
            let (ch, sched) = random_setup(seed);
            let polytope = build_constraints(&gaussian_mi_table(&ch, &sched));
            let wa = [1.0, 0.25];
            let wb = [0.25, 1.0];
            let mid = [
                t * wa[0] + (1.0 - t) * wb[0],
                t * wa[1] + (1.0 - t) * wb[1],
            ];
            let results = (
                solve_support(&polytope, wa),
                solve_support(&polytope, wb),
                solve_support(&polytope, mid),
            );
            if let (Ok(a), Ok(b), Ok(m)) = results {
                prop_assert!(m.value <= t * a.value + (1.0 - t) * b.value + 1e-9);
            }
        }

        #[test]
        fn support_solutions_are_achievable(seed in 0u64..1000) {
            let (ch, sched) = random_setup(seed);
            let polytope = build_constraints(&gaussian_mi_table(&ch, &sched));
            if let Ok(sol) = solve_support(&polytope, [0.7, 0.3]) {
                prop_assert!(is_achievable(&polytope, sol.r1(), sol.r2()).unwrap());
            }
        }
    }
}
