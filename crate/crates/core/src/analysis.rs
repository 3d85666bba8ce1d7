//! Rough ideal-convergence analysis: limit-set membership, rough limit
//! sets, cluster points, I-limsup/liminf, minimal roughness degree, and
//! one executable checker per supported theorem.
//!
//! Exactness rests on one reduction: after normalization every value class
//! is a constant, a convergent formula, or norm-divergent, and Pringsheim
//! tails of catalog formulas leave only band-union residuals, which both
//! implemented ideals contain. The for-all-ε membership condition then
//! collapses to finitely many closed-ball tests on class values plus ideal
//! membership of class regions. The reduction is validated against the
//! truncation oracle in the test suites rather than assumed.

use crate::geometry::{ClosedBall, Interval, NormSpec, Point};
use crate::ideals::{ideal_contains, region_density, DensityValue, IdealSpec, Region};
use crate::sequences::{
    is_bounded, is_i_bounded, validated_view, ClassKind, ExactView, StructuredSequence,
};
use crate::{Error, Result, REAL_TOLERANCE};

/// Membership query parameters: roughness degree, optional candidate, and
/// the ε schedule used by oracle-backed scans.
#[derive(Debug, Clone)]
pub struct RoughnessQuery {
    pub r: f64,
    pub candidate: Option<Point>,
    pub eps_policy: Vec<f64>,
}

impl RoughnessQuery {
    pub fn new(r: f64, candidate: Option<Point>, eps_policy: Vec<f64>) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidQuery(format!(
                "roughness degree must be finite and >= 0, got {r}"
            )));
        }
        if eps_policy.is_empty() {
            return Err(Error::InvalidQuery("ε policy must be nonempty".into()));
        }
        if eps_policy.iter().any(|&e| !e.is_finite() || e <= 0.0) {
            return Err(Error::InvalidQuery("ε values must be positive".into()));
        }
        if eps_policy.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidQuery(
                "ε policy must be strictly decreasing".into(),
            ));
        }
        Ok(RoughnessQuery {
            r,
            candidate,
            eps_policy,
        })
    }
}

/// One I-cluster point with its supporting density.
#[derive(Debug, Clone)]
pub struct ClusterPoint {
    pub point: Point,
    pub support_density: DensityValue,
    /// True when part of the support comes from a formula limit, so the
    /// density is a lower bound on the mass near the point.
    pub approximate: bool,
}

/// The finite set of I-cluster points of a structured sequence.
#[derive(Debug, Clone)]
pub struct ClusterSet {
    pub points: Vec<ClusterPoint>,
}

impl ClusterSet {
    pub fn values_1d(&self) -> Vec<f64> {
        self.points.iter().map(|c| c.point.coords()[0]).collect()
    }
}

/// Why a rough limit set came out empty.
#[derive(Debug, Clone, PartialEq)]
pub enum EmptyReason {
    NotIdealBounded,
    /// r is below the minimal roughness degree (half the cluster spread).
    RoughnessTooSmall { min_degree: f64 },
}

/// The rough I-limit set. Exact interval in dimension 1; for higher
/// dimensions a ball-intersection over-approximation plus a certified
/// lattice sample.
#[derive(Debug, Clone)]
pub enum RoughLimitSet {
    Interval {
        interval: Interval,
        empty_reason: Option<EmptyReason>,
    },
    Lattice {
        /// The set is contained in the intersection of these balls.
        balls: Vec<ClosedBall>,
        /// Lattice points individually certified by membership tests.
        points: Vec<Point>,
        step: f64,
    },
}

impl RoughLimitSet {
    pub fn interval(&self) -> Option<&Interval> {
        match self {
            RoughLimitSet::Interval { interval, .. } => Some(interval),
            RoughLimitSet::Lattice { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            RoughLimitSet::Interval { interval, .. } => interval.is_empty(),
            RoughLimitSet::Lattice { points, .. } => points.is_empty(),
        }
    }
}

/// Minimal roughness degree: the smallest r with a nonempty limit set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RoughnessDegree {
    Finite(f64),
    /// Not I-bounded: every rough limit set is empty.
    Infinite,
}

impl RoughnessDegree {
    pub fn finite(&self) -> Option<f64> {
        match self {
            RoughnessDegree::Finite(d) => Some(*d),
            RoughnessDegree::Infinite => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Core membership and sets
// ---------------------------------------------------------------------------

/// A value class merged across pieces carrying the same value.
struct MergedValue {
    point: Point,
    regions: Vec<Region>,
    approximate: bool,
}

fn merge_classes(view: &ExactView) -> Vec<MergedValue> {
    let mut merged: Vec<MergedValue> = Vec::new();
    for class in &view.classes {
        let (point, approximate) = match &class.kind {
            ClassKind::Constant(p) => (p, false),
            ClassKind::Limit(p) => (p, true),
            ClassKind::Unbounded => continue,
        };
        match merged
            .iter_mut()
            .find(|m| bits_eq(&m.point, point))
        {
            Some(m) => {
                m.regions.push(class.region.clone());
                m.approximate |= approximate;
            }
            None => merged.push(MergedValue {
                point: point.clone(),
                regions: vec![class.region.clone()],
                approximate,
            }),
        }
    }
    merged
}

fn bits_eq(a: &Point, b: &Point) -> bool {
    a.dim() == b.dim()
        && a.coords()
            .iter()
            .zip(b.coords())
            .all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Exact rough I-limit membership: every class whose region is not in the
/// ideal must carry a value (or limit) within r of ξ, and norm-divergent
/// classes must live on ideal-small regions.
pub fn is_ri_limit(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    xi: &Point,
    r: f64,
    norm: &NormSpec,
) -> Result<bool> {
    if xi.dim() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            actual: xi.dim(),
        });
    }
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidQuery(format!(
            "roughness degree must be finite and >= 0, got {r}"
        )));
    }
    let view = validated_view(seq)?;
    for class in &view.classes {
        let value = match &class.kind {
            ClassKind::Constant(p) | ClassKind::Limit(p) => Some(p),
            ClassKind::Unbounded => None,
        };
        let within = match value {
            Some(v) => norm.distance(v, xi)? <= r + REAL_TOLERANCE,
            None => false,
        };
        if !within && !ideal_contains(ideal, &class.region)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// I-cluster points: the values carried by class regions that are not in
/// the ideal, computed symbolically. Sorted by coordinates.
pub fn cluster_points(seq: &StructuredSequence, ideal: IdealSpec) -> Result<ClusterSet> {
    let view = validated_view(seq)?;
    let mut points = Vec::new();
    for m in merge_classes(&view) {
        let support = Region::union_all(m.regions.clone());
        if !ideal_contains(ideal, &support)? {
            points.push(ClusterPoint {
                point: m.point,
                support_density: region_density(&support),
                approximate: m.approximate,
            });
        }
    }
    points.sort_by(|a, b| {
        a.point
            .coords()
            .partial_cmp(b.point.coords())
            .expect("finite coordinates")
    });
    Ok(ClusterSet { points })
}

fn require_dim1(seq: &StructuredSequence) -> Result<()> {
    if seq.dim() != 1 {
        return Err(Error::DimensionNotOne(seq.dim()));
    }
    Ok(())
}

fn dim1_norm() -> NormSpec {
    NormSpec::euclidean() // every p-norm is |·| in dimension 1
}

fn cluster_bounds(seq: &StructuredSequence, ideal: IdealSpec) -> Result<(f64, f64)> {
    require_dim1(seq)?;
    if !is_i_bounded(seq, ideal, &dim1_norm())?.is_ideal_bounded() {
        return Err(Error::NotIdealBounded(format!(
            "{} under {}",
            seq.name(),
            ideal.name()
        )));
    }
    let clusters = cluster_points(seq, ideal)?;
    let values = clusters.values_1d();
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    debug_assert!(max.is_finite() && min.is_finite(), "cluster set nonempty");
    Ok((max, min))
}

/// I-limsup: the maximum I-cluster point of an I-bounded real sequence.
pub fn ideal_limsup(seq: &StructuredSequence, ideal: IdealSpec) -> Result<f64> {
    cluster_bounds(seq, ideal).map(|(max, _)| max)
}

/// I-liminf: the minimum I-cluster point of an I-bounded real sequence.
pub fn ideal_liminf(seq: &StructuredSequence, ideal: IdealSpec) -> Result<f64> {
    cluster_bounds(seq, ideal).map(|(_, min)| min)
}

/// Exact rough I-limit set of a real sequence: the interval
/// [limsup − r, liminf + r] when the cluster spread fits within 2r,
/// otherwise empty (with the reason recorded).
pub fn rough_limit_set(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    r: f64,
) -> Result<RoughLimitSet> {
    require_dim1(seq)?;
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidQuery(format!(
            "roughness degree must be finite and >= 0, got {r}"
        )));
    }
    validated_view(seq)?;
    if !is_i_bounded(seq, ideal, &dim1_norm())?.is_ideal_bounded() {
        return Ok(RoughLimitSet::Interval {
            interval: Interval::Empty,
            empty_reason: Some(EmptyReason::NotIdealBounded),
        });
    }
    let (max, min) = cluster_bounds(seq, ideal)?;
    let spread = max - min;
    if spread <= 2.0 * r + REAL_TOLERANCE {
        let lo = max - r;
        let hi = min + r;
        let interval = if lo <= hi {
            Interval::closed(lo, hi)?
        } else {
            // Spread equals 2r up to tolerance: collapse to the midpoint.
            Interval::singleton((max + min) / 2.0)?
        };
        Ok(RoughLimitSet::Interval {
            interval,
            empty_reason: None,
        })
    } else {
        Ok(RoughLimitSet::Interval {
            interval: Interval::Empty,
            empty_reason: Some(EmptyReason::RoughnessTooSmall {
                min_degree: spread / 2.0,
            }),
        })
    }
}

/// Rough limit set for any dimension: exact interval when dim = 1, else
/// the cluster-ball over-approximation plus a certified lattice sample.
pub fn rough_limit_set_nd(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    r: f64,
    norm: &NormSpec,
    step: f64,
) -> Result<RoughLimitSet> {
    if seq.dim() == 1 {
        return rough_limit_set(seq, ideal, r);
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidQuery(format!(
            "lattice step must be positive, got {step}"
        )));
    }
    let clusters = cluster_points(seq, ideal)?;
    let balls: Vec<ClosedBall> = clusters
        .points
        .iter()
        .map(|c| ClosedBall::new(c.point.clone(), r, *norm))
        .collect::<Result<_>>()?;
    if balls.is_empty() {
        return Ok(RoughLimitSet::Lattice {
            balls,
            points: Vec::new(),
            step,
        });
    }
    // Bounding box: cluster hull inflated by r + one lattice step.
    let dim = seq.dim();
    let mut boxes = Vec::with_capacity(dim);
    for axis in 0..dim {
        let lo = clusters
            .points
            .iter()
            .map(|c| c.point.coords()[axis])
            .fold(f64::INFINITY, f64::min);
        let hi = clusters
            .points
            .iter()
            .map(|c| c.point.coords()[axis])
            .fold(f64::NEG_INFINITY, f64::max);
        boxes.push((lo - r - step, hi + r + step));
    }
    let mut points = Vec::new();
    let mut idx = vec![0u64; dim];
    let counts: Vec<u64> = boxes
        .iter()
        .map(|&(lo, hi)| ((hi - lo) / step).floor() as u64 + 1)
        .collect();
    'outer: loop {
        let coords: Vec<f64> = idx
            .iter()
            .zip(&boxes)
            .map(|(&i, &(lo, _))| lo + step * i as f64)
            .collect();
        let p = Point::new(coords)?;
        if is_ri_limit(seq, ideal, &p, r, norm)? {
            points.push(p);
        }
        for axis in (0..dim).rev() {
            idx[axis] += 1;
            if idx[axis] < counts[axis] {
                continue 'outer;
            }
            idx[axis] = 0;
            if axis == 0 {
                break 'outer;
            }
        }
    }
    Ok(RoughLimitSet::Lattice {
        balls,
        points,
        step,
    })
}

/// Rough limit set under plain (Pringsheim) rough convergence, which on
/// the representable regions coincides with the minimal strongly
/// admissible ideal: tail complements {j < N or k < N} are exactly the
/// finite band unions. Verified against the direct tail oracle in tests.
pub fn classic_rough_limit_set(seq: &StructuredSequence, r: f64) -> Result<RoughLimitSet> {
    rough_limit_set(seq, IdealSpec::MinimalStronglyAdmissible, r)
}

/// Minimal roughness degree: half the cluster spread when I-bounded,
/// infinite otherwise.
pub fn min_roughness_degree(
    seq: &StructuredSequence,
    ideal: IdealSpec,
) -> Result<RoughnessDegree> {
    require_dim1(seq)?;
    validated_view(seq)?;
    if !is_i_bounded(seq, ideal, &dim1_norm())?.is_ideal_bounded() {
        return Ok(RoughnessDegree::Infinite);
    }
    let (max, min) = cluster_bounds(seq, ideal)?;
    Ok(RoughnessDegree::Finite((max - min) / 2.0))
}

/// The I-limit of the sequence, when it I-converges. Dimension 1 uses the
/// limsup = liminf criterion; higher dimensions converge coordinate-wise.
pub fn is_i_convergent(
    seq: &StructuredSequence,
    ideal: IdealSpec,
) -> Result<Option<Point>> {
    if seq.dim() == 1 {
        validated_view(seq)?;
        if !is_i_bounded(seq, ideal, &dim1_norm())?.is_ideal_bounded() {
            return Ok(None);
        }
        let (max, min) = cluster_bounds(seq, ideal)?;
        if (max - min).abs() <= REAL_TOLERANCE {
            return Ok(Some(Point::scalar((max + min) / 2.0)?));
        }
        return Ok(None);
    }
    let mut coords = Vec::with_capacity(seq.dim());
    for axis in 0..seq.dim() {
        match is_i_convergent(&seq.project(axis)?, ideal)? {
            Some(p) => coords.push(p.coords()[0]),
            None => return Ok(None),
        }
    }
    Ok(Some(Point::new(coords)?))
}

// ---------------------------------------------------------------------------
// Theorem checkers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// The checked implication did not trigger on this instance.
    Vacuous,
    /// A hypothesis of the theorem is not satisfied by the inputs.
    HypothesisNotMet,
}

impl CheckOutcome {
    pub fn is_failure(&self) -> bool {
        *self == CheckOutcome::Fail
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub theorem: &'static str,
    pub outcome: CheckOutcome,
    pub detail: String,
}

fn pass(theorem: &'static str, detail: String) -> CheckResult {
    CheckResult {
        theorem,
        outcome: CheckOutcome::Pass,
        detail,
    }
}

fn fail(theorem: &'static str, detail: String) -> CheckResult {
    CheckResult {
        theorem,
        outcome: CheckOutcome::Fail,
        detail,
    }
}

fn vacuous(theorem: &'static str, detail: String) -> CheckResult {
    CheckResult {
        theorem,
        outcome: CheckOutcome::Vacuous,
        detail,
    }
}

fn hypothesis_not_met(theorem: &'static str, detail: String) -> CheckResult {
    CheckResult {
        theorem,
        outcome: CheckOutcome::HypothesisNotMet,
        detail,
    }
}

/// diam(I-LIM^r) ≤ 2r.
pub fn check_diameter(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    r: f64,
) -> Result<CheckResult> {
    const NAME: &str = "diameter";
    if seq.dim() != 1 {
        return Ok(vacuous(NAME, "requires dimension 1".into()));
    }
    let set = rough_limit_set(seq, ideal, r)?;
    let diam = set.interval().expect("dim 1").diameter();
    if diam <= 2.0 * r + REAL_TOLERANCE {
        Ok(pass(NAME, format!("diam {diam} ≤ 2r = {}", 2.0 * r)))
    } else {
        Ok(fail(NAME, format!("diam {diam} > 2r = {}", 2.0 * r)))
    }
}

/// I-LIM^r ⊆ B̄_r(c) for every I-cluster point c.
pub fn check_cluster_ball(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    r: f64,
) -> Result<CheckResult> {
    const NAME: &str = "cluster-ball";
    if seq.dim() != 1 {
        return Ok(vacuous(NAME, "requires dimension 1".into()));
    }
    let set = rough_limit_set(seq, ideal, r)?;
    let interval = set.interval().expect("dim 1");
    let endpoints: Vec<f64> = match *interval {
        Interval::Empty => Vec::new(),
        Interval::Closed { lo, hi } => vec![lo, hi],
    };
    let clusters = cluster_points(seq, ideal)?;
    for c in clusters.values_1d() {
        for &e in &endpoints {
            if (e - c).abs() > r + REAL_TOLERANCE {
                return Ok(fail(
                    NAME,
                    format!("endpoint {e} escapes B̄_{r}({c})"),
                ));
            }
        }
    }
    Ok(pass(
        NAME,
        format!(
            "{} endpoints inside every cluster ball ({} clusters)",
            endpoints.len(),
            clusters.points.len()
        ),
    ))
}

/// The rough limit set is closed: endpoints are members, and points just
/// outside are not.
pub fn check_closedness(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    r: f64,
) -> Result<CheckResult> {
    const NAME: &str = "closedness";
    const PROBE: f64 = 1e-6;
    if seq.dim() != 1 {
        return Ok(vacuous(NAME, "requires dimension 1".into()));
    }
    let set = rough_limit_set(seq, ideal, r)?;
    let (lo, hi) = match *set.interval().expect("dim 1") {
        Interval::Empty => return Ok(vacuous(NAME, "empty set".into())),
        Interval::Closed { lo, hi } => (lo, hi),
    };
    let norm = dim1_norm();
    for e in [lo, hi] {
        if !is_ri_limit(seq, ideal, &Point::scalar(e)?, r, &norm)? {
            return Ok(fail(NAME, format!("endpoint {e} is not a member")));
        }
    }
    for probe in [lo - PROBE, hi + PROBE] {
        if is_ri_limit(seq, ideal, &Point::scalar(probe)?, r, &norm)? {
            return Ok(fail(
                NAME,
                format!("outside probe {probe} is wrongly a member"),
            ));
        }
    }
    Ok(pass(
        NAME,
        format!("endpoints {lo}, {hi} members; ±{PROBE} probes excluded"),
    ))
}

/// I-convergence to ξ holds exactly when I-LIM^r = B̄_r(ξ).
pub fn check_ball_characterization(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    r: f64,
) -> Result<CheckResult> {
    const NAME: &str = "ball-characterization";
    if seq.dim() != 1 {
        return Ok(vacuous(NAME, "requires dimension 1".into()));
    }
    let set = rough_limit_set(seq, ideal, r)?;
    let interval = *set.interval().expect("dim 1");
    let limit = is_i_convergent(seq, ideal)?;
    match limit {
        Some(xi) => {
            let xi = xi.coords()[0];
            match interval {
                Interval::Closed { lo, hi }
                    if (lo - (xi - r)).abs() <= REAL_TOLERANCE
                        && (hi - (xi + r)).abs() <= REAL_TOLERANCE =>
                {
                    Ok(pass(
                        NAME,
                        format!("converges to {xi}; set is exactly [{lo}, {hi}]"),
                    ))
                }
                other => Ok(fail(
                    NAME,
                    format!("converges to {xi} but set is {other:?}, not B̄_{r}({xi})"),
                )),
            }
        }
        None => match interval {
            Interval::Closed { lo, hi } if (hi - lo - 2.0 * r).abs() <= REAL_TOLERANCE => {
                Ok(fail(
                    NAME,
                    format!("set [{lo}, {hi}] is a full 2r ball but the sequence does not converge"),
                ))
            }
            _ => Ok(vacuous(
                NAME,
                "not convergent and set is not a full ball".into(),
            )),
        },
    }
}

/// Bounded ⇒ I-bounded ⇔ finite minimal degree ⇔ some rough limit set is
/// nonempty; and below the minimal degree the set is empty.
pub fn check_boundedness_equivalence(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    norm: &NormSpec,
) -> Result<CheckResult> {
    const NAME: &str = "boundedness";
    if seq.dim() != 1 {
        return Ok(vacuous(NAME, "requires dimension 1".into()));
    }
    let bounded = is_bounded(seq, norm).is_bounded();
    let ibounded = is_i_bounded(seq, ideal, norm)?.is_ideal_bounded();
    if bounded && !ibounded {
        return Ok(fail(NAME, "bounded but not I-bounded".into()));
    }
    let degree = min_roughness_degree(seq, ideal)?;
    match degree {
        RoughnessDegree::Finite(d) => {
            if !ibounded {
                return Ok(fail(NAME, format!("finite degree {d} but not I-bounded")));
            }
            if rough_limit_set(seq, ideal, d)?.is_empty() {
                return Ok(fail(NAME, format!("empty set at the minimal degree {d}")));
            }
            if d > 1e-6 {
                let below = d - (d / 2.0).min(0.1);
                if !rough_limit_set(seq, ideal, below)?.is_empty() {
                    return Ok(fail(
                        NAME,
                        format!("nonempty set below the minimal degree ({below} < {d})"),
                    ));
                }
            }
            Ok(pass(
                NAME,
                format!(
                    "bounded={bounded}, I-bounded, degree {d}, set nonempty at d, empty below"
                ),
            ))
        }
        RoughnessDegree::Infinite => {
            if ibounded {
                return Ok(fail(NAME, "I-bounded but infinite minimal degree".into()));
            }
            for r in [0.0, 1.0, 10.0] {
                if !rough_limit_set(seq, ideal, r)?.is_empty() {
                    return Ok(fail(
                        NAME,
                        format!("not I-bounded yet nonempty set at r = {r}"),
                    ));
                }
            }
            Ok(pass(
                NAME,
                format!("bounded={bounded}, not I-bounded, all sampled sets empty"),
            ))
        }
    }
}

/// An I-bounded real sequence I-converges exactly when its I-limsup and
/// I-liminf agree, and then the limit is that common value.
pub fn check_limsup_liminf(
    seq: &StructuredSequence,
    ideal: IdealSpec,
) -> Result<CheckResult> {
    const NAME: &str = "limsup-liminf";
    if seq.dim() != 1 {
        return Ok(vacuous(NAME, "requires dimension 1".into()));
    }
    if !is_i_bounded(seq, ideal, &dim1_norm())?.is_ideal_bounded() {
        return Ok(hypothesis_not_met(NAME, "sequence is not I-bounded".into()));
    }
    let ls = ideal_limsup(seq, ideal)?;
    let li = ideal_liminf(seq, ideal)?;
    let limit = is_i_convergent(seq, ideal)?;
    let agree = (ls - li).abs() <= REAL_TOLERANCE;
    match (limit, agree) {
        (Some(xi), true) => {
            let xi = xi.coords()[0];
            if (xi - ls).abs() <= REAL_TOLERANCE {
                Ok(pass(NAME, format!("limsup = liminf = limit = {xi}")))
            } else {
                Ok(fail(NAME, format!("limit {xi} differs from limsup {ls}")))
            }
        }
        (None, false) => Ok(pass(
            NAME,
            format!("not convergent and limsup {ls} > liminf {li}"),
        )),
        (Some(xi), false) => Ok(fail(
            NAME,
            format!("converges to {:?} but limsup {ls} ≠ liminf {li}", xi.coords()),
        )),
        (None, true) => Ok(fail(
            NAME,
            format!("limsup = liminf = {ls} but not convergent"),
        )),
    }
}

/// In a strictly convex space, two rough limits at distance exactly 2r
/// force I-convergence to their midpoint.
#[allow(clippy::too_many_arguments)]
pub fn check_midpoint(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    norm: &NormSpec,
    r: f64,
    y1: &Point,
    y2: &Point,
) -> Result<CheckResult> {
    const NAME: &str = "midpoint";
    if !norm.is_strictly_convex() {
        return Ok(hypothesis_not_met(
            NAME,
            format!("{norm:?} is not strictly convex"),
        ));
    }
    if !is_ri_limit(seq, ideal, y1, r, norm)? {
        return Ok(hypothesis_not_met(
            NAME,
            format!("y1 = {:?} is not a rough limit at r = {r}", y1.coords()),
        ));
    }
    if !is_ri_limit(seq, ideal, y2, r, norm)? {
        return Ok(hypothesis_not_met(
            NAME,
            format!("y2 = {:?} is not a rough limit at r = {r}", y2.coords()),
        ));
    }
    let gap = norm.distance(y1, y2)?;
    if (gap - 2.0 * r).abs() > REAL_TOLERANCE {
        return Ok(hypothesis_not_met(
            NAME,
            format!("∥y1 − y2∥ = {gap} ≠ 2r = {}", 2.0 * r),
        ));
    }
    let midpoint = y1.midpoint(y2)?;
    match is_i_convergent(seq, ideal)? {
        Some(xi)
            if xi
                .coords()
                .iter()
                .zip(midpoint.coords())
                .all(|(a, b)| (a - b).abs() <= REAL_TOLERANCE) =>
        {
            Ok(pass(
                NAME,
                format!("I-convergent to the midpoint {:?}", midpoint.coords()),
            ))
        }
        Some(xi) => Ok(fail(
            NAME,
            format!(
                "I-convergent to {:?}, not the midpoint {:?}",
                xi.coords(),
                midpoint.coords()
            ),
        )),
        None => Ok(fail(
            NAME,
            format!(
                "hypotheses hold but the sequence is not I-convergent \
                 (midpoint would be {:?})",
                midpoint.coords()
            ),
        )),
    }
}

/// Run every theorem checker that needs only (sequence, ideal, r).
pub fn standard_checks(
    seq: &StructuredSequence,
    ideal: IdealSpec,
    r: f64,
    norm: &NormSpec,
) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_diameter(seq, ideal, r)?,
        check_cluster_ball(seq, ideal, r)?,
        check_closedness(seq, ideal, r)?,
        check_ball_characterization(seq, ideal, r)?,
        check_boundedness_equivalence(seq, ideal, norm)?,
        check_limsup_liminf(seq, ideal)?,
    ])
}
