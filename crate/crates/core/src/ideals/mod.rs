//! Symbolic regions of ℕ×ℕ with exact densities, and the decidable ideal
//! families used throughout the crate.
//!
//! An ideal is a family of "small" index sets containing the empty set and
//! closed under subsets and finite unions. Three concrete families are
//! supported, each decidable on the representable region algebra:
//!
//! - [`IdealSpec::DensityZero`]: sets of natural density zero,
//! - [`IdealSpec::MinimalStronglyAdmissible`]: sets coverable by finitely
//!   many rows, columns, and a finite set,
//! - [`IdealSpec::FiniteSets`]: the finite sets.
//!
//! The first two are strongly admissible (they contain every full row and
//! column); the finite sets are admissible only.

mod region;
mod semantics;
mod sparse;

pub use region::{region_contains, Region, SparseKind};
pub use semantics::region_error_constant;

use num_rational::BigRational;
use num_traits::Zero;

use crate::{Error, Result};
use semantics::RegionAnalysis;

/// Exact natural density of a region, when certified.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityValue {
    Exact(BigRational),
    /// The analyzer declined to certify the limit (enumeration caps hit).
    Undefined,
}

impl DensityValue {
    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            DensityValue::Exact(r) => Some(r),
            DensityValue::Undefined => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, DensityValue::Exact(r) if r.is_zero())
    }

    pub fn to_f64(&self) -> Option<f64> {
        use num_traits::ToPrimitive;
        self.exact().and_then(|r| r.to_f64())
    }
}

/// Exact natural density d(reg) = lim K(n,m)/(n·m).
///
/// Residue cells are refined to the common lattice and counted there;
/// sparse products, bands and finite sets contribute density zero, so the
/// density of any tree equals the density of its periodic part. The limit
/// exists for every representable tree; `Undefined` is returned only when
/// the tree exceeds the analyzer's enumeration caps.
pub fn region_density(region: &Region) -> DensityValue {
    match RegionAnalysis::new(region).density() {
        Some(d) => DensityValue::Exact(d),
        None => DensityValue::Undefined,
    }
}

/// The decidable ideal families on ℕ×ℕ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealSpec {
    /// I_d = { A : d(A) = 0 }.
    DensityZero,
    /// Sets coverable by finitely many rows, columns, and a finite set:
    /// the smallest strongly admissible ideal.
    MinimalStronglyAdmissible,
    /// All finite subsets.
    FiniteSets,
}

impl IdealSpec {
    pub const ALL: [IdealSpec; 3] = [
        IdealSpec::DensityZero,
        IdealSpec::MinimalStronglyAdmissible,
        IdealSpec::FiniteSets,
    ];

    /// Canonical name used by the text formats and the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            IdealSpec::DensityZero => "density-zero",
            IdealSpec::MinimalStronglyAdmissible => "minimal-sa",
            IdealSpec::FiniteSets => "finite-sets",
        }
    }

    pub fn parse_name(name: &str) -> Result<IdealSpec> {
        match name {
            "density-zero" => Ok(IdealSpec::DensityZero),
            "minimal-sa" => Ok(IdealSpec::MinimalStronglyAdmissible),
            "finite-sets" => Ok(IdealSpec::FiniteSets),
            other => Err(Error::Parse(format!(
                "unknown ideal {other:?}; expected density-zero, minimal-sa, or finite-sets"
            ))),
        }
    }

    pub fn contains(&self, region: &Region) -> Result<bool> {
        ideal_contains(*self, region)
    }
}

/// Membership of a region in an ideal.
///
/// Errors with [`Error::UndecidableRegion`] when the required analysis
/// cannot certify an answer (density undefined under `DensityZero`, or a
/// structurally unresolvable minterm under `MinimalStronglyAdmissible`).
pub fn ideal_contains(ideal: IdealSpec, region: &Region) -> Result<bool> {
    let analysis = RegionAnalysis::new(region);
    match ideal {
        IdealSpec::DensityZero => match analysis.density() {
            Some(d) => Ok(d.is_zero()),
            None => Err(Error::UndecidableRegion(
                "density not certified for this region".into(),
            )),
        },
        IdealSpec::MinimalStronglyAdmissible => analysis.minimal_sa_member(),
        IdealSpec::FiniteSets => Ok(analysis.provably_finite()),
    }
}

/// Membership of a region in the filter F(I) dual to the ideal: true iff
/// the complement of the region belongs to the ideal.
pub fn filter_member(ideal: IdealSpec, region: &Region) -> Result<bool> {
    ideal_contains(ideal, &Region::complement(region.clone()))
}

/// True when every singleton belongs to the ideal. Holds for all three
/// implemented families; re-verified by sampling in the test suite.
pub fn is_admissible(ideal: IdealSpec) -> bool {
    match ideal {
        IdealSpec::DensityZero => true,
        IdealSpec::MinimalStronglyAdmissible => true,
        IdealSpec::FiniteSets => true,
    }
}

/// True when every full row {i}×ℕ and column ℕ×{i} belongs to the ideal.
/// Rows and columns are infinite, so the finite-set ideal fails this.
pub fn is_strongly_admissible(ideal: IdealSpec) -> bool {
    match ideal {
        IdealSpec::DensityZero => true,
        IdealSpec::MinimalStronglyAdmissible => true,
        IdealSpec::FiniteSets => false,
    }
}

/// Outcome of a single axiom check in [`check_ideal_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Violation,
    /// Membership undecidable for the constructed region.
    Skipped,
}

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub detail: String,
    pub status: AxiomStatus,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub ideal: IdealSpec,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != AxiomStatus::Violation)
    }
}

/// Verifies the ideal axioms on a set of sample regions: the empty set is
/// a member, members are closed under pairwise union, and membership is
/// inherited by subsets (exercised on pairs (A, A ∩ B)). Violations become
/// report entries rather than errors.
pub fn check_ideal_axioms(ideal: IdealSpec, samples: &[Region]) -> AxiomReport {
    let mut checks = Vec::new();

    let empty_status = match ideal_contains(ideal, &Region::Empty) {
        Ok(true) => AxiomStatus::Pass,
        Ok(false) => AxiomStatus::Violation,
        Err(_) => AxiomStatus::Skipped,
    };
    checks.push(AxiomCheck {
        axiom: "empty-set-member",
        detail: "φ ∈ I".into(),
        status: empty_status,
    });

    let membership: Vec<Option<bool>> = samples
        .iter()
        .map(|r| ideal_contains(ideal, r).ok())
        .collect();

    for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate() {
            let detail = format!("samples #{i} ∪ #{j}");
            let status = match (membership[i], membership[j]) {
                (Some(true), Some(true)) => {
                    match ideal_contains(ideal, &Region::union(a.clone(), b.clone())) {
                        Ok(true) => AxiomStatus::Pass,
                        Ok(false) => AxiomStatus::Violation,
                        Err(_) => AxiomStatus::Skipped,
                    }
                }
                (None, _) | (_, None) => AxiomStatus::Skipped,
                _ => AxiomStatus::Pass, // union closure only binds members
            };
            checks.push(AxiomCheck {
                axiom: "union-closure",
                detail,
                status,
            });

            let detail = format!("samples #{i} ∩ #{j} ⊆ #{i}");
            let status = match membership[i] {
                Some(true) => {
                    match ideal_contains(ideal, &Region::intersection(a.clone(), b.clone())) {
                        Ok(true) => AxiomStatus::Pass,
                        Ok(false) => AxiomStatus::Violation,
                        Err(_) => AxiomStatus::Skipped,
                    }
                }
                Some(false) => AxiomStatus::Pass,
                None => AxiomStatus::Skipped,
            };
            checks.push(AxiomCheck {
                axiom: "subset-closure",
                detail,
                status,
            });
        }
    }

    AxiomReport { ideal, checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn density_of(r: &Region) -> BigRational {
        region_density(r).exact().cloned().expect("density defined")
    }

    /// Direct counting oracle: |{(j,k) ∈ [1..n]×[1..m] : (j,k) ∈ reg}|.
    fn count(region: &Region, n: u64, m: u64) -> u64 {
        let mut c = 0;
        for j in 1..=n {
            for k in 1..=m {
                if region.contains(j, k) {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn residue_cell_density_quarter() {
        let cell = Region::residue(2, 2, 0, 0).unwrap();
        assert_eq!(density_of(&cell), ratio(1, 4));
    }

    #[test]
    fn sparse_product_density_zero() {
        // Counting oracle: K(n,m) = ⌊√n⌋·⌊√m⌋, so K(n,m)/(nm) → 0.
        let sq = Region::sparse(SparseKind::Squares, SparseKind::Squares);
        for n in [100u64, 400] {
            let c = count(&sq, n, n);
            assert_eq!(c, n.isqrt() * n.isqrt());
            assert!((c as f64) / (n * n) as f64 <= 1.0 / (n as f64));
        }
        assert!(region_density(&sq).is_zero());
    }

    #[test]
    fn disjoint_cells_add() {
        let u = Region::union(
            Region::residue(2, 2, 0, 0).unwrap(),
            Region::residue(2, 2, 1, 1).unwrap(),
        );
        assert_eq!(density_of(&u), ratio(1, 2));
    }

    #[test]
    fn complement_density() {
        let band = Region::row_band(1).unwrap();
        assert_eq!(density_of(&Region::complement(band)), ratio(1, 1));
        let cell = Region::residue(3, 1, 0, 0).unwrap();
        assert_eq!(density_of(&Region::complement(cell)), ratio(2, 3));
    }

    #[test]
    fn mixed_moduli_inclusion_exclusion() {
        // d(A ∪ B) = d(A) + d(B) − d(A ∩ B) for overlapping cells.
        let a = Region::residue(2, 1, 0, 0).unwrap(); // even rows
        let b = Region::residue(3, 1, 0, 0).unwrap(); // rows ≡ 0 mod 3
        let union = Region::union(a.clone(), b.clone());
        let inter = Region::intersection(a.clone(), b.clone());
        assert_eq!(density_of(&a), ratio(1, 2));
        assert_eq!(density_of(&b), ratio(1, 3));
        assert_eq!(density_of(&inter), ratio(1, 6));
        assert_eq!(
            density_of(&union),
            density_of(&a) + density_of(&b) - density_of(&inter)
        );
    }

    #[test]
    fn inclusion_exclusion_holds_for_all_small_cell_pairs() {
        // Exact rational identity over every pair of residue cells with
        // moduli up to 4.
        let mut cells = Vec::new();
        for a in 1u64..=4 {
            for b in 1u64..=4 {
                for ra in 0..a {
                    for rb in 0..b {
                        cells.push(Region::residue(a, b, ra, rb).unwrap());
                    }
                }
            }
        }
        for x in &cells {
            for y in &cells {
                let union = density_of(&Region::union(x.clone(), y.clone()));
                let inter = density_of(&Region::intersection(x.clone(), y.clone()));
                assert_eq!(
                    union + inter,
                    density_of(x) + density_of(y),
                    "{x:?} vs {y:?}"
                );
            }
        }
    }

    #[test]
    fn ideal_names_round_trip() {
        for ideal in IdealSpec::ALL {
            assert_eq!(IdealSpec::parse_name(ideal.name()).unwrap(), ideal);
        }
        assert!(IdealSpec::parse_name("summable").is_err());
    }

    #[test]
    fn density_matches_counting_on_periodic_grids() {
        // On grids whose sides are multiples of the moduli the count is
        // exactly density · n · m for purely periodic trees.
        let tree = Region::difference(
            Region::union(
                Region::residue(2, 3, 0, 1).unwrap(),
                Region::residue(4, 2, 1, 0).unwrap(),
            ),
            Region::residue(2, 2, 0, 0).unwrap(),
        );
        let d = density_of(&tree);
        let (n, m) = (24u64, 24u64);
        let c = count(&tree, n, m);
        assert_eq!(ratio(c as i64, (n * m) as i64), d);
    }

    #[test]
    fn density_zero_membership() {
        let sq = Region::sparse(SparseKind::Squares, SparseKind::Squares);
        assert!(ideal_contains(IdealSpec::DensityZero, &sq).unwrap());
        let cell = Region::residue(2, 2, 0, 0).unwrap();
        assert!(!ideal_contains(IdealSpec::DensityZero, &cell).unwrap());
    }

    #[test]
    fn minimal_sa_membership() {
        let minsa = IdealSpec::MinimalStronglyAdmissible;
        assert!(ideal_contains(minsa, &Region::row_band(7).unwrap()).unwrap());
        assert!(ideal_contains(minsa, &Region::col_band(2).unwrap()).unwrap());
        assert!(ideal_contains(
            minsa,
            &Region::union(
                Region::row_band(1).unwrap(),
                Region::union(
                    Region::col_band(4).unwrap(),
                    Region::finite(vec![(5, 5), (9, 2)]).unwrap()
                )
            )
        )
        .unwrap());
        // A sparse product is not coverable by finitely many bands.
        let sq = Region::sparse(SparseKind::Squares, SparseKind::Squares);
        assert!(!ideal_contains(minsa, &sq).unwrap());
        assert!(!ideal_contains(minsa, &Region::residue(2, 2, 0, 0).unwrap()).unwrap());
        assert!(!ideal_contains(minsa, &Region::Full).unwrap());
        assert!(ideal_contains(minsa, &Region::Empty).unwrap());
    }

    #[test]
    fn minimal_sa_sparse_in_dead_residue_class_is_small() {
        // Squares are ≡ {0,1} mod 4: a sparse product restricted to
        // j ≡ 2 (mod 4) is empty, hence coverable.
        let reg = Region::intersection(
            Region::sparse(SparseKind::Squares, SparseKind::Squares),
            Region::residue(4, 1, 2, 0).unwrap(),
        );
        assert!(ideal_contains(IdealSpec::MinimalStronglyAdmissible, &reg).unwrap());
        assert!(ideal_contains(IdealSpec::FiniteSets, &reg).unwrap());
    }

    #[test]
    fn minimal_sa_sparse_difference_cases() {
        let minsa = IdealSpec::MinimalStronglyAdmissible;
        // squares×squares minus squares×cubes keeps an infinite grid.
        let reg = Region::difference(
            Region::sparse(SparseKind::Squares, SparseKind::Squares),
            Region::sparse(SparseKind::Squares, SparseKind::Cubes),
        );
        assert!(!ideal_contains(minsa, &reg).unwrap());
        // A sparse product minus itself is empty.
        let reg = Region::difference(
            Region::sparse(SparseKind::Squares, SparseKind::Squares),
            Region::sparse(SparseKind::Squares, SparseKind::Squares),
        );
        assert!(ideal_contains(minsa, &reg).unwrap());
    }

    #[test]
    fn finite_sets_membership() {
        let fin = IdealSpec::FiniteSets;
        assert!(ideal_contains(fin, &Region::finite(vec![(1, 1), (2, 3)]).unwrap()).unwrap());
        assert!(ideal_contains(
            fin,
            &Region::intersection(Region::row_band(1).unwrap(), Region::col_band(2).unwrap())
        )
        .unwrap());
        assert!(!ideal_contains(fin, &Region::row_band(1).unwrap()).unwrap());
        assert!(!ideal_contains(fin, &Region::sparse(SparseKind::Squares, SparseKind::Squares))
            .unwrap());
        assert!(!ideal_contains(fin, &Region::residue(2, 2, 0, 0).unwrap()).unwrap());
    }

    #[test]
    fn filter_duality() {
        let sq = Region::sparse(SparseKind::Squares, SparseKind::Squares);
        assert!(filter_member(IdealSpec::DensityZero, &Region::complement(sq.clone())).unwrap());
        assert!(!filter_member(IdealSpec::DensityZero, &Region::residue(2, 2, 0, 0).unwrap())
            .unwrap());
        for ideal in IdealSpec::ALL {
            assert!(filter_member(ideal, &Region::Full).unwrap());
        }
    }

    #[test]
    fn admissibility_classification() {
        for ideal in IdealSpec::ALL {
            assert!(is_admissible(ideal));
            // Verify by sampling singletons.
            for p in [(1u64, 1u64), (10, 3), (137, 42)] {
                assert!(
                    ideal_contains(ideal, &Region::finite(vec![p]).unwrap()).unwrap(),
                    "{ideal:?} must contain singleton {p:?}"
                );
            }
        }
        assert!(is_strongly_admissible(IdealSpec::DensityZero));
        assert!(is_strongly_admissible(IdealSpec::MinimalStronglyAdmissible));
        assert!(!is_strongly_admissible(IdealSpec::FiniteSets));
        // Verify by sampling bands: rows have density lim m/(nm) = 0.
        for i in [1u64, 5, 20] {
            let row = Region::row_band(i).unwrap();
            let col = Region::col_band(i).unwrap();
            for ideal in [IdealSpec::DensityZero, IdealSpec::MinimalStronglyAdmissible] {
                assert!(ideal_contains(ideal, &row).unwrap());
                assert!(ideal_contains(ideal, &col).unwrap());
            }
            assert!(!ideal_contains(IdealSpec::FiniteSets, &row).unwrap());
            assert!(!ideal_contains(IdealSpec::FiniteSets, &col).unwrap());
        }
    }

    #[test]
    fn axiom_reports_pass_on_fixtures() {
        let samples = vec![
            Region::Empty,
            Region::sparse(SparseKind::Squares, SparseKind::Squares),
            Region::row_band(1).unwrap(),
            Region::col_band(1).unwrap(),
            Region::finite(vec![(2, 2)]).unwrap(),
            Region::residue(2, 2, 0, 0).unwrap(),
        ];
        for ideal in IdealSpec::ALL {
            let report = check_ideal_axioms(ideal, &samples);
            assert!(report.passed(), "{ideal:?}: {:?}", report.checks);
        }
    }

    #[test]
    fn undefined_density_from_oversized_tree() {
        // Coprime moduli whose lcm exceeds the lattice cap: the analyzer
        // refuses to certify instead of guessing.
        let mut region = Region::residue(1009, 1, 0, 0).unwrap();
        for m in [1013u64, 1019, 1021] {
            region = Region::intersection(region, Region::residue(m, 1, 0, 0).unwrap());
        }
        assert_eq!(region_density(&region), DensityValue::Undefined);
        assert!(matches!(
            ideal_contains(IdealSpec::DensityZero, &region),
            Err(Error::UndecidableRegion(_))
        ));
    }

    #[test]
    fn empirical_counts_converge_to_density() {
        // |K(n,n)/n² − d| ≤ C/√n with per-constructor C, and the error
        // envelope shrinks monotonically along the schedule.
        let regions = vec![
            Region::residue(2, 2, 0, 0).unwrap(),
            Region::sparse(SparseKind::Squares, SparseKind::Squares),
            Region::union(
                Region::residue(3, 2, 1, 0).unwrap(),
                Region::sparse(SparseKind::Cubes, SparseKind::PowersOfTwo),
            ),
            Region::difference(
                Region::complement(Region::row_band(2).unwrap()),
                Region::residue(2, 1, 0, 0).unwrap(),
            ),
        ];
        for region in &regions {
            let d = density_of(region);
            let d = {
                use num_traits::ToPrimitive;
                d.to_f64().unwrap()
            };
            let c = region_error_constant(region);
            let mut prev_bound = f64::INFINITY;
            for n in [100u64, 400, 1600] {
                let est = count(region, n, n) as f64 / (n * n) as f64;
                let err = (est - d).abs();
                let bound = c / (n as f64).sqrt();
                assert!(err <= bound, "{region:?} n={n}: err {err} > bound {bound}");
                assert!(bound < prev_bound);
                prev_bound = bound;
            }
        }
    }
}
