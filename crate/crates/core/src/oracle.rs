//! Independent brute-force engine over finite truncations.
//!
//! Nothing here consults the symbolic analysis: verdicts come from exact
//! counting on increasing grids. This module is the ground truth the exact
//! engine is validated against, so it must stay independent of it.

use rayon::prelude::*;

use crate::geometry::{Interval, NormSpec, Point};
use crate::ideals::IdealSpec;
use crate::sequences::StructuredSequence;
use crate::{Error, Result, MAX_DIM};

/// Density below which a decreasing estimate trace is ruled "small".
pub const DECISION_THRESHOLD: f64 = 0.02;

/// Relative slack allowed between consecutive estimates of a decreasing
/// trace.
pub const NOISE_MARGIN: f64 = 0.1;

/// Stage-independent band bound for the minimal strongly admissible
/// oracle: a small set must fit in the first B rows/columns.
pub const BAND_BOUND: u64 = 20;

/// Tail scan factor for [`classic_tail_check`]: the window is
/// [N, factor·N]².
pub const TAIL_SCAN_FACTOR: u64 = 20;

/// Default ε schedule for limit-membership scans, strictly decreasing.
pub const DEFAULT_EPS_POLICY: [f64; 3] = [0.1, 0.05, 0.01];

/// Increasing schedule of grid truncations [1..n]×[1..m].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exhaustion {
    stages: Vec<(u64, u64)>,
}

impl Exhaustion {
    pub fn new(stages: Vec<(u64, u64)>) -> Result<Self> {
        if stages.len() < 3 {
            return Err(Error::InvalidQuery(format!(
                "exhaustion needs at least 3 stages, got {}",
                stages.len()
            )));
        }
        if stages.iter().any(|&(n, m)| n == 0 || m == 0) {
            return Err(Error::InvalidQuery("stage bounds must be >= 1".into()));
        }
        for w in stages.windows(2) {
            if w[1].0 < w[0].0 || w[1].1 < w[0].1 {
                return Err(Error::InvalidQuery(
                    "stages must be nondecreasing in both coordinates".into(),
                ));
            }
        }
        Ok(Exhaustion { stages })
    }

    pub fn stages(&self) -> &[(u64, u64)] {
        &self.stages
    }

    pub fn final_stage(&self) -> (u64, u64) {
        *self.stages.last().expect("at least 3 stages")
    }
}

impl Default for Exhaustion {
    fn default() -> Self {
        Exhaustion::new(vec![(50, 50), (100, 100), (200, 200), (400, 400)]).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleDecision {
    Small,
    NotSmall,
    Inconclusive,
}

/// One truncation stage of a verdict trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageTrace {
    pub n: u64,
    pub m: u64,
    pub count: u64,
    pub estimate: f64,
    /// Smallest B such that every satisfying point has j ≤ B or k ≤ B.
    pub band_bound: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleVerdict {
    pub decision: OracleDecision,
    pub trace: Vec<StageTrace>,
}

impl OracleVerdict {
    pub fn is_small(&self) -> bool {
        self.decision == OracleDecision::Small
    }
}

/// Exact satisfied-count of a predicate over [1..n]×[1..m], divided by n·m.
pub fn empirical_density<F>(pred: F, n: u64, m: u64) -> f64
where
    F: Fn(u64, u64) -> bool + Sync,
{
    let count = grid_count(&pred, n, m);
    count as f64 / (n as f64 * m as f64)
}

fn grid_count<F>(pred: &F, n: u64, m: u64) -> u64
where
    F: Fn(u64, u64) -> bool + Sync,
{
    (1..=n)
        .into_par_iter()
        .map(|j| (1..=m).filter(|&k| pred(j, k)).count() as u64)
        .sum()
}

/// Count plus the band bound max min(j,k) over satisfying points.
fn grid_count_and_band<F>(pred: &F, n: u64, m: u64) -> (u64, u64)
where
    F: Fn(u64, u64) -> bool + Sync,
{
    (1..=n)
        .into_par_iter()
        .map(|j| {
            let mut count = 0u64;
            let mut band = 0u64;
            for k in 1..=m {
                if pred(j, k) {
                    count += 1;
                    band = band.max(j.min(k));
                }
            }
            (count, band)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.max(b.1)))
}

/// Numerical proxy for ideal membership of the set defined by `pred`.
///
/// - `DensityZero`: small iff the stage estimates decrease monotonically
///   (within a noise margin of 10% plus a few grid points) and the final
///   estimate is below [`DECISION_THRESHOLD`].
/// - `MinimalStronglyAdmissible`: small iff at every stage all satisfying
///   points lie within the first [`BAND_BOUND`] rows or columns.
/// - `FiniteSets`: small iff the count stabilizes across the last stages.
///
/// `Inconclusive` is a legal outcome and is never coerced to a decision.
pub fn oracle_small<F>(ideal: IdealSpec, pred: F, exhaustion: &Exhaustion) -> OracleVerdict
where
    F: Fn(u64, u64) -> bool + Sync,
{
    let trace: Vec<StageTrace> = exhaustion
        .stages()
        .iter()
        .map(|&(n, m)| {
            let (count, band_bound) = grid_count_and_band(&pred, n, m);
            StageTrace {
                n,
                m,
                count,
                estimate: count as f64 / (n as f64 * m as f64),
                band_bound,
            }
        })
        .collect();

    let decision = match ideal {
        IdealSpec::DensityZero => {
            let final_est = trace.last().unwrap().estimate;
            let decreasing = trace.windows(2).all(|w| {
                let slack = NOISE_MARGIN * w[0].estimate + 10.0 / (w[1].n as f64 * w[1].m as f64);
                w[1].estimate <= w[0].estimate + slack
            });
            if decreasing && final_est < DECISION_THRESHOLD {
                OracleDecision::Small
            } else if final_est >= DECISION_THRESHOLD {
                OracleDecision::NotSmall
            } else {
                OracleDecision::Inconclusive
            }
        }
        IdealSpec::MinimalStronglyAdmissible => {
            let max_band = trace.iter().map(|t| t.band_bound).max().unwrap();
            let first = trace.first().unwrap().band_bound;
            let last = trace.last().unwrap().band_bound;
            if max_band <= BAND_BOUND {
                OracleDecision::Small
            } else if last > BAND_BOUND && last > first {
                OracleDecision::NotSmall
            } else {
                OracleDecision::Inconclusive
            }
        }
        IdealSpec::FiniteSets => {
            let counts: Vec<u64> = trace.iter().map(|t| t.count).collect();
            let len = counts.len();
            if counts[len - 1] == counts[len - 2] {
                OracleDecision::Small
            } else if counts.windows(2).all(|w| w[1] > w[0]) {
                OracleDecision::NotSmall
            } else {
                OracleDecision::Inconclusive
            }
        }
    };

    OracleVerdict { decision, trace }
}

/// Truncation proxy for "ξ is a rough I-limit with degree r": applies
/// [`oracle_small`] to the exceedance set ∥x_jk − ξ∥ ≥ r + ε.
pub fn oracle_is_ri_limit(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    xi: &Point,
    r: f64,
    eps: f64,
    norm: &NormSpec,
    exhaustion: &Exhaustion,
) -> Result<OracleVerdict> {
    if xi.dim() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            actual: xi.dim(),
        });
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InvalidQuery(format!("ε must be positive, got {eps}")));
    }
    let dim = seq.dim();
    let target = xi.coords();
    let pred = move |j: u64, k: u64| {
        let mut buf = [0.0f64; MAX_DIM];
        let mut diff = [0.0f64; MAX_DIM];
        seq.eval_into(j, k, &mut buf[..dim]);
        for i in 0..dim {
            diff[i] = buf[i] - target[i];
        }
        norm.eval_slice(&diff[..dim]) >= r + eps
    };
    Ok(oracle_small(ideal, pred, exhaustion))
}

/// Lattice over a product box, row-major (last axis fastest).
fn lattice_points(boxes: &[(f64, f64)], step: f64) -> Vec<Point> {
    let axes: Vec<Vec<f64>> = boxes
        .iter()
        .map(|&(lo, hi)| {
            let mut vals = Vec::new();
            let mut i = 0u64;
            loop {
                let v = lo + step * i as f64;
                if v > hi + step * 1e-9 {
                    break;
                }
                vals.push(v);
                i += 1;
            }
            vals
        })
        .collect();
    let mut points = Vec::new();
    let mut idx = vec![0usize; axes.len()];
    'outer: loop {
        let coords: Vec<f64> = idx.iter().zip(&axes).map(|(&i, ax)| ax[i]).collect();
        points.push(Point::new(coords).expect("finite lattice coordinates"));
        for axis in (0..axes.len()).rev() {
            idx[axis] += 1;
            if idx[axis] < axes[axis].len() {
                continue 'outer;
            }
            idx[axis] = 0;
            if axis == 0 {
                break 'outer;
            }
        }
    }
    points
}

/// Scan a lattice for certified rough-limit points: a lattice point is
/// kept when the exceedance set is oracle-small for every ε in the policy.
/// Output order is row-major and independent of the parallel schedule.
#[allow(clippy::too_many_arguments)]
pub fn oracle_limit_set_scan(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    r: f64,
    boxes: &[(f64, f64)],
    step: f64,
    eps_policy: &[f64],
    norm: &NormSpec,
    exhaustion: &Exhaustion,
) -> Result<Vec<Point>> {
    if boxes.len() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            actual: boxes.len(),
        });
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidQuery(format!(
            "lattice step must be positive, got {step}"
        )));
    }
    if eps_policy.is_empty() || eps_policy.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidQuery(
            "ε policy must be nonempty and strictly decreasing".into(),
        ));
    }
    if eps_policy.iter().any(|&e| !e.is_finite() || e <= 0.0) {
        return Err(Error::InvalidQuery("ε values must be positive".into()));
    }
    let candidates = lattice_points(boxes, step);
    let kept: Vec<Option<Point>> = candidates
        .into_par_iter()
        .map(|p| {
            for &eps in eps_policy {
                let verdict = oracle_is_ri_limit(seq, ideal, &p, r, eps, norm, exhaustion)
                    .expect("validated inputs");
                if !verdict.is_small() {
                    return None;
                }
            }
            Some(p)
        })
        .collect();
    Ok(kept.into_iter().flatten().collect())
}

/// Direct Pringsheim-tail test: every (j,k) in [N, 20N]² must satisfy
/// ∥x_jk − ξ∥ < r + ε.
pub fn classic_tail_check(
    seq: &StructuredSequence,
    xi: &Point,
    r: f64,
    eps: f64,
    n_start: u64,
    norm: &NormSpec,
) -> Result<bool> {
    if n_start == 0 {
        return Err(Error::InvalidQuery("tail start must be >= 1".into()));
    }
    if xi.dim() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            actual: xi.dim(),
        });
    }
    let dim = seq.dim();
    let target = xi.coords();
    let hi = n_start.saturating_mul(TAIL_SCAN_FACTOR);
    let ok = (n_start..=hi).into_par_iter().all(|j| {
        let mut buf = [0.0f64; MAX_DIM];
        let mut diff = [0.0f64; MAX_DIM];
        for k in n_start..=hi {
            seq.eval_into(j, k, &mut buf[..dim]);
            for i in 0..dim {
                diff[i] = buf[i] - target[i];
            }
            if norm.eval_slice(&diff[..dim]) >= r + eps {
                return false;
            }
        }
        true
    });
    Ok(ok)
}

/// Hausdorff distance between a closed interval and a finite point set on
/// the real line. Both empty gives 0; exactly one empty gives +∞.
pub fn hausdorff_interval_points(interval: &Interval, points: &[f64]) -> f64 {
    match (interval, points.is_empty()) {
        (Interval::Empty, true) => 0.0,
        (Interval::Empty, false) | (Interval::Closed { .. }, true) => f64::INFINITY,
        (&Interval::Closed { lo, hi }, false) => {
            let mut xs = points.to_vec();
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // Directed: points → interval.
            let d1 = xs
                .iter()
                .map(|&x| {
                    if x < lo {
                        lo - x
                    } else if x > hi {
                        x - hi
                    } else {
                        0.0
                    }
                })
                .fold(0.0f64, f64::max);
            // Directed: interval → points. The sup over [lo, hi] of the
            // distance to xs is attained at an endpoint or mid-gap.
            let mut best_lo = f64::INFINITY;
            let mut best_hi = f64::INFINITY;
            for &x in &xs {
                best_lo = best_lo.min((x - lo).abs());
                best_hi = best_hi.min((x - hi).abs());
            }
            let mut d2 = best_lo.max(best_hi);
            for w in xs.windows(2) {
                let (a, b) = (w[0], w[1]);
                // Deepest interior point between consecutive samples.
                let mid = (a + b) / 2.0;
                if mid > lo && mid < hi {
                    d2 = d2.max((b - a) / 2.0);
                }
            }
            d1.max(d2)
        }
    }
}
