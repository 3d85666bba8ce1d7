//! Norms on ℝ^d, closed balls, and closed intervals.
//!
//! Everything here is the metric substrate for limit-set computations:
//! values are immutable after construction and all operations are pure.
//! Balls and intervals are closed (boundary included).

use crate::{Error, Result, MAX_DIM};

/// A point of ℝ^d, 1 ≤ d ≤ 8, with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(Error::InvalidPoint(format!(
                "dimension must be in [1, {}], got {}",
                MAX_DIM,
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("non-finite coordinate {bad}")));
        }
        Ok(Point { coords })
    }

    /// One-dimensional point.
    pub fn scalar(x: f64) -> Result<Self> {
        Point::new(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Value of a 1-dimensional point.
    pub fn as_scalar(&self) -> Result<f64> {
        if self.dim() != 1 {
            return Err(Error::DimensionNotOne(self.dim()));
        }
        Ok(self.coords[0])
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        Ok(Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        Ok(Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: f64) -> Point {
        Point {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Midpoint of two points of equal dimension.
    pub fn midpoint(&self, other: &Point) -> Result<Point> {
        Ok(self.add(other)?.scale(0.5))
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(())
    }
}

/// A norm from the p-norm family, plus the max-norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormSpec {
    /// ℓ_p norm with finite p ≥ 1.
    P(f64),
    /// ℓ_∞ norm.
    Max,
}

impl NormSpec {
    pub fn p(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidNorm(format!(
                "p-norm requires finite p >= 1, got {p}"
            )));
        }
        Ok(NormSpec::P(p))
    }

    pub fn euclidean() -> Self {
        NormSpec::P(2.0)
    }

    pub fn max() -> Self {
        NormSpec::Max
    }

    /// ∥p∥ under this norm. Non-negative, zero exactly on the zero vector.
    pub fn eval(&self, p: &Point) -> f64 {
        self.eval_slice(p.coords())
    }

    /// Norm of a raw coordinate slice; used by grid scans to avoid
    /// constructing points.
    pub fn eval_slice(&self, coords: &[f64]) -> f64 {
        let max_abs = || coords.iter().fold(0.0f64, |a, c| a.max(c.abs()));
        match *self {
            NormSpec::Max => max_abs(),
            NormSpec::P(q) => {
                if q == 1.0 {
                    return coords.iter().map(|c| c.abs()).sum();
                }
                // Factor out the max coordinate: tiny components cannot
                // underflow to a spurious zero and large p stays stable.
                let m = max_abs();
                if m == 0.0 {
                    return 0.0;
                }
                if q == 2.0 {
                    let s: f64 = coords.iter().map(|c| (c / m) * (c / m)).sum();
                    m * s.sqrt()
                } else {
                    let s: f64 = coords.iter().map(|c| (c.abs() / m).powf(q)).sum();
                    m * s.powf(1.0 / q)
                }
            }
        }
    }

    /// Distance ∥a − b∥.
    pub fn distance(&self, a: &Point, b: &Point) -> Result<f64> {
        Ok(self.eval(&a.sub(b)?))
    }

    /// True exactly for p-norms with 1 < p < ∞; their unit spheres contain
    /// no line segments. The ℓ_1 and ℓ_∞ unit balls have flat faces.
    pub fn is_strictly_convex(&self) -> bool {
        match *self {
            NormSpec::P(p) => p > 1.0,
            NormSpec::Max => false,
        }
    }
}

/// Closed ball B̄_r(c) = { y : ∥y − c∥ ≤ r }.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedBall {
    pub center: Point,
    pub radius: f64,
    pub norm: NormSpec,
}

impl ClosedBall {
    pub fn new(center: Point, radius: f64, norm: NormSpec) -> Result<Self> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidPoint(format!(
                "ball radius must be finite and >= 0, got {radius}"
            )));
        }
        Ok(ClosedBall {
            center,
            radius,
            norm,
        })
    }

    /// Boundary included; a radius-0 ball contains exactly its center.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        Ok(self.norm.distance(p, &self.center)? <= self.radius)
    }
}

/// A closed real interval, possibly empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Empty,
    Closed { lo: f64, hi: f64 },
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval::Closed { lo, hi })
    }

    pub fn singleton(x: f64) -> Result<Self> {
        Interval::closed(x, x)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    /// hi − lo; 0 for the empty interval by convention (an empty or
    /// singleton limit set has no extent).
    pub fn diameter(&self) -> f64 {
        match *self {
            Interval::Empty => 0.0,
            Interval::Closed { lo, hi } => hi - lo,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        match *self {
            Interval::Empty => false,
            Interval::Closed { lo, hi } => lo <= x && x <= hi,
        }
    }

    /// Interval containment; the empty interval is contained in everything.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        match (*self, *other) {
            (Interval::Empty, _) => true,
            (_, Interval::Empty) => false,
            (Interval::Closed { lo: a, hi: b }, Interval::Closed { lo: c, hi: d }) => {
                c <= a && b <= d
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn euclidean_pythagorean() {
        let n = NormSpec::euclidean();
        assert_eq!(n.eval(&pt(&[3.0, 4.0])), 5.0);
    }

    #[test]
    fn max_norm_takes_largest_abs() {
        assert_eq!(NormSpec::max().eval(&pt(&[3.0, -4.0])), 4.0);
    }

    #[test]
    fn one_norm_sums_abs() {
        assert_eq!(NormSpec::p(1.0).unwrap().eval(&pt(&[1.0, 1.0])), 2.0);
    }

    #[test]
    fn norm_zero_iff_zero_vector() {
        for n in [NormSpec::p(1.0).unwrap(), NormSpec::euclidean(), NormSpec::Max] {
            assert_eq!(n.eval(&pt(&[0.0, 0.0, 0.0])), 0.0);
            assert!(n.eval(&pt(&[0.0, 1e-300, 0.0])) > 0.0);
        }
    }

    #[test]
    fn strict_convexity_classification() {
        assert!(NormSpec::euclidean().is_strictly_convex());
        assert!(NormSpec::p(1.5).unwrap().is_strictly_convex());
        assert!(!NormSpec::p(1.0).unwrap().is_strictly_convex());
        assert!(!NormSpec::max().is_strictly_convex());
    }

    #[test]
    fn strict_convexity_witnesses() {
        // Independent unit vectors under a strictly convex norm: ∥u+v∥ < 2.
        let e = NormSpec::euclidean();
        let u = pt(&[1.0, 0.0]);
        let v = pt(&[0.0, 1.0]);
        assert!(e.eval(&u.add(&v).unwrap()) < 2.0);
        // Max-norm admits distinct unit vectors with ∥u+v∥ = 2.
        let m = NormSpec::max();
        let u = pt(&[1.0, 1.0]);
        let v = pt(&[1.0, -1.0]);
        assert_eq!(m.eval(&u), 1.0);
        assert_eq!(m.eval(&v), 1.0);
        assert_eq!(m.eval(&u.add(&v).unwrap()), 2.0);
    }

    #[test]
    fn ball_boundary_is_included() {
        let b = ClosedBall::new(pt(&[0.0, 0.0]), 1.0, NormSpec::euclidean()).unwrap();
        assert!(b.contains(&pt(&[1.0, 0.0])).unwrap());
        assert!(!b.contains(&pt(&[1.0, 1.0])).unwrap());
        let degenerate =
            ClosedBall::new(pt(&[1.0, 0.0]), 0.0, NormSpec::euclidean()).unwrap();
        assert!(degenerate.contains(&pt(&[1.0, 0.0])).unwrap());
    }

    #[test]
    fn ball_rejects_dimension_mismatch() {
        let b = ClosedBall::new(pt(&[0.0, 0.0]), 1.0, NormSpec::euclidean()).unwrap();
        assert!(matches!(
            b.contains(&pt(&[0.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn interval_diameters() {
        assert_eq!(Interval::closed(-1.0, 1.0).unwrap().diameter(), 2.0);
        assert_eq!(Interval::Empty.diameter(), 0.0);
        assert_eq!(Interval::closed(0.5, 0.5).unwrap().diameter(), 0.0);
    }

    #[test]
    fn interval_rejects_inverted_bounds() {
        assert!(Interval::closed(1.0, 0.0).is_err());
    }

    #[test]
    fn point_rejects_nan_and_bad_dims() {
        assert!(Point::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![]).is_err());
        assert!(Point::new(vec![0.0; 9]).is_err());
    }

    #[test]
    fn triangle_inequality_random_pairs() {
        let norms = [
            NormSpec::p(1.0).unwrap(),
            NormSpec::euclidean(),
            NormSpec::p(3.5).unwrap(),
            NormSpec::max(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for norm in norms {
            for _ in 0..10_000 {
                let dim = rng.gen_range(1..=4);
                let a = pt(&(0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect::<Vec<_>>());
                let b = pt(&(0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect::<Vec<_>>());
                let lhs = norm.eval(&a.add(&b).unwrap());
                let rhs = norm.eval(&a) + norm.eval(&b);
                assert!(lhs <= rhs + 1e-12 * rhs.max(1.0), "{norm:?} {a:?} {b:?}");
            }
        }
    }

    #[test]
    fn homogeneity_random() {
        let norms = [
            NormSpec::p(1.0).unwrap(),
            NormSpec::euclidean(),
            NormSpec::p(2.5).unwrap(),
            NormSpec::max(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for norm in norms {
            for _ in 0..10_000 {
                let dim = rng.gen_range(1..=4);
                let a = pt(&(0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect::<Vec<_>>());
                let lambda: f64 = rng.gen_range(-4.0..4.0);
                let lhs = norm.eval(&a.scale(lambda));
                let rhs = lambda.abs() * norm.eval(&a);
                let scale = rhs.abs().max(1e-300);
                assert!((lhs - rhs).abs() / scale <= 1e-12, "{norm:?} λ={lambda}");
            }
        }
    }
}
