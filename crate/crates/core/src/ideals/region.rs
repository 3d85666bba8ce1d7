//! Symbolic subsets of ℕ×ℕ (indices start at 1) with decidable membership.

use crate::{Error, Result};

/// Families of sparse integer sets with closed-form counting functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SparseKind {
    /// {1, 4, 9, 16, ...}
    Squares,
    /// {1, 8, 27, 64, ...}
    Cubes,
    /// {1, 2, 4, 8, ...}
    PowersOfTwo,
}

impl SparseKind {
    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        match self {
            SparseKind::Squares => {
                let r = n.isqrt();
                r * r == n
            }
            SparseKind::Cubes => {
                let r = icbrt(n);
                r * r * r == n
            }
            SparseKind::PowersOfTwo => n.is_power_of_two(),
        }
    }

    /// Number of members in [1, n].
    pub fn count_up_to(&self, n: u64) -> u64 {
        match self {
            SparseKind::Squares => n.isqrt(),
            SparseKind::Cubes => icbrt(n),
            SparseKind::PowersOfTwo => {
                if n == 0 {
                    0
                } else {
                    // 2^0 .. 2^floor(log2 n)
                    64 - n.leading_zeros() as u64
                }
            }
        }
    }
}

fn icbrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).cbrt().round() as u64;
    while r > 0 && r.saturating_mul(r).saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

/// A symbolic region of ℕ×ℕ. Membership of any pair is decidable by
/// structural recursion; the density of every representable tree is an
/// exact rational (see [`super::region_density`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Region {
    Full,
    Empty,
    /// {(j,k) : j ≡ rem_j (mod mod_j), k ≡ rem_k (mod mod_k)}
    ResidueCell {
        mod_j: u64,
        mod_k: u64,
        rem_j: u64,
        rem_k: u64,
    },
    /// {(j,k) : j ∈ rows, k ∈ cols} for sparse coordinate sets.
    SparseProduct { rows: SparseKind, cols: SparseKind },
    /// {row} × ℕ
    RowBand(u64),
    /// ℕ × {col}
    ColBand(u64),
    FiniteSet(Vec<(u64, u64)>),
    Union(Box<Region>, Box<Region>),
    Intersection(Box<Region>, Box<Region>),
    Difference(Box<Region>, Box<Region>),
    Complement(Box<Region>),
}

impl Region {
    pub fn residue(mod_j: u64, mod_k: u64, rem_j: u64, rem_k: u64) -> Result<Region> {
        if mod_j == 0 || mod_k == 0 {
            return Err(Error::InvalidRegion("residue moduli must be >= 1".into()));
        }
        if rem_j >= mod_j || rem_k >= mod_k {
            return Err(Error::InvalidRegion(format!(
                "residues must satisfy {rem_j} < {mod_j} and {rem_k} < {mod_k}"
            )));
        }
        Ok(Region::ResidueCell {
            mod_j,
            mod_k,
            rem_j,
            rem_k,
        })
    }

    pub fn sparse(rows: SparseKind, cols: SparseKind) -> Region {
        Region::SparseProduct { rows, cols }
    }

    pub fn row_band(row: u64) -> Result<Region> {
        if row == 0 {
            return Err(Error::InvalidRegion("row index must be >= 1".into()));
        }
        Ok(Region::RowBand(row))
    }

    pub fn col_band(col: u64) -> Result<Region> {
        if col == 0 {
            return Err(Error::InvalidRegion("column index must be >= 1".into()));
        }
        Ok(Region::ColBand(col))
    }

    pub fn finite(points: Vec<(u64, u64)>) -> Result<Region> {
        if points.iter().any(|&(j, k)| j == 0 || k == 0) {
            return Err(Error::InvalidRegion("indices must be >= 1".into()));
        }
        Ok(Region::FiniteSet(points))
    }

    pub fn union(a: Region, b: Region) -> Region {
        Region::Union(Box::new(a), Box::new(b))
    }

    pub fn intersection(a: Region, b: Region) -> Region {
        Region::Intersection(Box::new(a), Box::new(b))
    }

    pub fn difference(a: Region, b: Region) -> Region {
        Region::Difference(Box::new(a), Box::new(b))
    }

    pub fn complement(a: Region) -> Region {
        Region::Complement(Box::new(a))
    }

    /// Union of a whole list; empty list gives the empty region.
    pub fn union_all<I: IntoIterator<Item = Region>>(regions: I) -> Region {
        let mut it = regions.into_iter();
        match it.next() {
            None => Region::Empty,
            Some(first) => it.fold(first, Region::union),
        }
    }

    /// Membership test; indices are 1-based.
    pub fn contains(&self, j: u64, k: u64) -> bool {
        debug_assert!(j >= 1 && k >= 1);
        match self {
            Region::Full => true,
            Region::Empty => false,
            Region::ResidueCell {
                mod_j,
                mod_k,
                rem_j,
                rem_k,
            } => j % mod_j == *rem_j && k % mod_k == *rem_k,
            Region::SparseProduct { rows, cols } => rows.contains(j) && cols.contains(k),
            Region::RowBand(i) => j == *i,
            Region::ColBand(i) => k == *i,
            Region::FiniteSet(points) => points.contains(&(j, k)),
            Region::Union(a, b) => a.contains(j, k) || b.contains(j, k),
            Region::Intersection(a, b) => a.contains(j, k) && b.contains(j, k),
            Region::Difference(a, b) => a.contains(j, k) && !b.contains(j, k),
            Region::Complement(a) => !a.contains(j, k),
        }
    }
}

/// Membership test with explicit precondition checking; see
/// [`Region::contains`] for the structural recursion.
pub fn region_contains(region: &Region, j: u64, k: u64) -> Result<bool> {
    if j == 0 || k == 0 {
        return Err(Error::InvalidRegion("indices must be >= 1".into()));
    }
    Ok(region.contains(j, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_cell_membership() {
        let cell = Region::residue(2, 2, 0, 0).unwrap();
        assert!(cell.contains(4, 6));
        assert!(!cell.contains(4, 7));
        assert!(!cell.contains(3, 6));
    }

    #[test]
    fn sparse_product_membership() {
        let sq = Region::sparse(SparseKind::Squares, SparseKind::Squares);
        assert!(sq.contains(4, 9));
        assert!(sq.contains(1, 1));
        assert!(!sq.contains(4, 8));
    }

    #[test]
    fn band_membership() {
        assert!(!Region::row_band(5).unwrap().contains(6, 1));
        assert!(Region::row_band(5).unwrap().contains(5, 999));
        assert!(Region::col_band(3).unwrap().contains(17, 3));
    }

    #[test]
    fn boolean_combinators() {
        let evens = Region::residue(2, 1, 0, 0).unwrap();
        let odd_rows = Region::complement(evens.clone());
        assert!(odd_rows.contains(3, 1));
        assert!(!odd_rows.contains(4, 1));
        let diff = Region::difference(Region::Full, evens);
        assert!(diff.contains(1, 1));
        assert!(!diff.contains(2, 1));
    }

    #[test]
    fn constructors_validate() {
        assert!(Region::residue(0, 2, 0, 0).is_err());
        assert!(Region::residue(2, 2, 2, 0).is_err());
        assert!(Region::row_band(0).is_err());
        assert!(Region::finite(vec![(0, 1)]).is_err());
        assert!(region_contains(&Region::Full, 0, 1).is_err());
    }

    #[test]
    fn sparse_kind_counting_matches_membership() {
        for kind in [SparseKind::Squares, SparseKind::Cubes, SparseKind::PowersOfTwo] {
            for n in [1u64, 10, 100, 1000, 12345] {
                let direct = (1..=n).filter(|&x| kind.contains(x)).count() as u64;
                assert_eq!(direct, kind.count_up_to(n), "{kind:?} up to {n}");
            }
        }
    }
}
