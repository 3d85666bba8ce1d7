//! Exact semantic analysis of region trees.
//!
//! Every region is a Boolean combination of atoms: residue cells, sparse
//! products, row/column bands, and finite sets. The bands, finite sets and
//! sparse products are null (their counting functions are o(n·m)), so the
//! natural density of a tree equals the density of its periodic part (the
//! tree evaluated with all null atoms set to false), which is computed
//! exactly on the refined lattice of residue classes. Ideal membership for
//! the minimal strongly admissible family and finiteness are decided
//! minterm by minterm over the same atom table.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::region::{Region, SparseKind};
use super::sparse::{Infinitude, SparseSet};
use crate::{Error, Result};

/// Largest refined-lattice axis the analyzer will enumerate. Beyond this
/// the density limit still exists mathematically, but we refuse to certify
/// it rather than spend unbounded time, and report Undefined/undecidable.
const LATTICE_AXIS_CAP: u64 = 1 << 20;

/// Cap on enumerated minterms (signature pairs × null assignments).
const MINTERM_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct CellAtom {
    mod_j: u64,
    rem_j: u64,
    mod_k: u64,
    rem_k: u64,
}

#[derive(Debug, Clone)]
enum Expr {
    Const(bool),
    Cell(usize),
    Null(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

/// Null atoms: index sets whose counting function is o(n·m).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum NullAtom {
    Sparse(SparseKind, SparseKind),
    Row(u64),
    Col(u64),
    Finite(Vec<(u64, u64)>),
}

/// Distinct truth mask over the per-axis residue constraints, together
/// with the residue classes (mod the refined lattice) that realize it.
struct MaskGroup {
    mask: u64,
    classes: Vec<u64>,
}

pub struct RegionAnalysis {
    expr: Expr,
    nulls: Vec<NullAtom>,
    lat_j: u64,
    lat_k: u64,
    j_groups: Vec<MaskGroup>,
    k_groups: Vec<MaskGroup>,
    /// The refined lattice exceeds the enumeration caps; nothing can be
    /// certified.
    lattice_oversized: bool,
    /// Signature pairs × null assignments exceed the cap; minterm-based
    /// decisions are unavailable (density is unaffected).
    minterm_oversized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cover {
    Small,
    NotCoverable,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cardinality {
    Finite,
    Infinite,
    Unknown,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl RegionAnalysis {
    pub fn new(region: &Region) -> RegionAnalysis {
        let mut cells: Vec<CellAtom> = Vec::new();
        let mut nulls: Vec<NullAtom> = Vec::new();
        let mut cell_ids: HashMap<CellAtom, usize> = HashMap::new();
        let mut null_ids: HashMap<NullAtom, usize> = HashMap::new();
        let expr = compile(region, &mut cells, &mut cell_ids, &mut nulls, &mut null_ids);

        let mut lat_j: u64 = 1;
        let mut lat_k: u64 = 1;
        let mut lattice_oversized = cells.len() > 63;
        for c in &cells {
            lat_j = lat_j / gcd(lat_j, c.mod_j) * c.mod_j;
            lat_k = lat_k / gcd(lat_k, c.mod_k) * c.mod_k;
            if lat_j > LATTICE_AXIS_CAP || lat_k > LATTICE_AXIS_CAP {
                lattice_oversized = true;
                break;
            }
        }

        let (j_groups, k_groups) = if lattice_oversized {
            (Vec::new(), Vec::new())
        } else {
            (
                mask_groups(lat_j, cells.iter().map(|c| (c.mod_j, c.rem_j))),
                mask_groups(lat_k, cells.iter().map(|c| (c.mod_k, c.rem_k))),
            )
        };

        let pairs = j_groups.len() as u64 * k_groups.len() as u64;
        let minterm_oversized = lattice_oversized
            || pairs > MINTERM_CAP
            || nulls.len() >= 40
            || pairs.saturating_mul(1u64 << nulls.len()) > MINTERM_CAP;

        RegionAnalysis {
            expr,
            nulls,
            lat_j,
            lat_k,
            j_groups,
            k_groups,
            lattice_oversized,
            minterm_oversized,
        }
    }

    /// Exact natural density, or None when the region exceeds enumeration
    /// caps and we decline to certify the limit.
    pub fn density(&self) -> Option<BigRational> {
        if self.lattice_oversized {
            return None;
        }
        let mut count: u128 = 0;
        for jg in &self.j_groups {
            for kg in &self.k_groups {
                if eval(&self.expr, jg.mask, kg.mask, 0) {
                    count += jg.classes.len() as u128 * kg.classes.len() as u128;
                }
            }
        }
        let total = self.lat_j as u128 * self.lat_k as u128;
        Some(BigRational::new(BigInt::from(count), BigInt::from(total)))
    }

    /// True when forcing every band and finite atom to false makes the
    /// region empty: the region then sits inside the union of its own
    /// band/finite atoms, hence is coverable. Costs only signature pairs ×
    /// sparse assignments, so it also resolves wide band unions whose full
    /// minterm enumeration would be refused.
    fn covered_by_own_bands(&self) -> bool {
        let sparse_ids: Vec<usize> = self
            .nulls
            .iter()
            .enumerate()
            .filter(|(_, a)| matches!(a, NullAtom::Sparse(..)))
            .map(|(i, _)| i)
            .collect();
        if sparse_ids.len() >= 20 {
            return false; // give up; the main enumeration will decide
        }
        for jg in &self.j_groups {
            for kg in &self.k_groups {
                for bits in 0u64..(1 << sparse_ids.len()) {
                    let mut nmask = 0u64;
                    for (b, &id) in sparse_ids.iter().enumerate() {
                        if bits >> b & 1 == 1 {
                            nmask |= 1 << id;
                        }
                    }
                    if eval(&self.expr, jg.mask, kg.mask, nmask) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Membership in the minimal strongly admissible ideal: is the region
    /// contained in finitely many rows plus finitely many columns plus a
    /// finite set? Errors with `UndecidableRegion` when the structural
    /// analysis cannot resolve a minterm.
    pub fn minimal_sa_member(&self) -> Result<bool> {
        if self.lattice_oversized {
            return Err(Error::UndecidableRegion(
                "region exceeds the analyzer's lattice caps".into(),
            ));
        }
        if self.covered_by_own_bands() {
            return Ok(true);
        }
        if self.minterm_oversized {
            return Err(Error::UndecidableRegion(
                "region exceeds the analyzer's enumeration caps".into(),
            ));
        }
        let mut unknown = false;
        for jg in &self.j_groups {
            for kg in &self.k_groups {
                for nmask in 0u64..(1 << self.nulls.len()) {
                    if !eval(&self.expr, jg.mask, kg.mask, nmask) {
                        continue;
                    }
                    match self.classify_cover(jg, kg, nmask) {
                        Cover::NotCoverable => return Ok(false),
                        Cover::Small => {}
                        Cover::Unknown => unknown = true,
                    }
                }
            }
        }
        if unknown {
            Err(Error::UndecidableRegion(
                "band coverability not syntactically decidable for this region".into(),
            ))
        } else {
            Ok(true)
        }
    }

    /// True when the region is provably finite. Unknown counts as not
    /// provable.
    pub fn provably_finite(&self) -> bool {
        if self.minterm_oversized {
            return false;
        }
        for jg in &self.j_groups {
            for kg in &self.k_groups {
                for nmask in 0u64..(1 << self.nulls.len()) {
                    if !eval(&self.expr, jg.mask, kg.mask, nmask) {
                        continue;
                    }
                    if self.classify_cardinality(jg, kg, nmask) != Cardinality::Finite {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn positives(&self, nmask: u64) -> MintermNulls {
        let mut pos_sparse = Vec::new();
        let mut neg_sparse = Vec::new();
        let mut pos_rows = Vec::new();
        let mut neg_rows = Vec::new();
        let mut pos_cols = Vec::new();
        let mut pos_finite = false;
        for (i, atom) in self.nulls.iter().enumerate() {
            let set = nmask >> i & 1 == 1;
            match atom {
                NullAtom::Sparse(rows, cols) => {
                    if set {
                        pos_sparse.push((SparseSet::from(*rows), SparseSet::from(*cols)));
                    } else {
                        neg_sparse.push((SparseSet::from(*rows), SparseSet::from(*cols)));
                    }
                }
                NullAtom::Row(i) => {
                    if set {
                        pos_rows.push(*i)
                    } else {
                        neg_rows.push(*i)
                    }
                }
                NullAtom::Col(i) => {
                    if set {
                        pos_cols.push(*i)
                    }
                }
                NullAtom::Finite(_) => {
                    if set {
                        pos_finite = true
                    }
                }
            }
        }
        MintermNulls {
            pos_sparse,
            neg_sparse,
            pos_rows,
            neg_rows,
            pos_cols,
            pos_finite,
        }
    }

    fn admissible(&self, lat: u64, classes: &[u64]) -> Vec<bool> {
        let mut v = vec![false; lat as usize];
        for &c in classes {
            v[c as usize] = true;
        }
        v
    }

    /// Coverability of one minterm by finitely many bands plus a finite set.
    fn classify_cover(&self, jg: &MaskGroup, kg: &MaskGroup, nmask: u64) -> Cover {
        let nulls = self.positives(nmask);
        if nulls.pos_finite || !nulls.pos_rows.is_empty() || !nulls.pos_cols.is_empty() {
            return Cover::Small;
        }
        if nulls.pos_sparse.is_empty() {
            // A nonempty periodic class pattern minus null sets meets
            // infinitely many rows in infinitely many columns each.
            return Cover::NotCoverable;
        }
        let s_j = nulls
            .pos_sparse
            .iter()
            .map(|(r, _)| *r)
            .reduce(SparseSet::intersect)
            .unwrap();
        let s_k = nulls
            .pos_sparse
            .iter()
            .map(|(_, c)| *c)
            .reduce(SparseSet::intersect)
            .unwrap();
        let jadm = self.admissible(self.lat_j, &jg.classes);
        let kadm = self.admissible(self.lat_k, &kg.classes);
        let j_inf = s_j.infinitude_in_classes(self.lat_j, &jadm, &[]);
        let k_inf = s_k.infinitude_in_classes(self.lat_k, &kadm, &[]);
        if j_inf != Infinitude::Infinite || k_inf != Infinitude::Infinite {
            // Empty, or confined to finitely many rows/columns.
            return Cover::Small;
        }
        if nulls.neg_sparse.is_empty() {
            return Cover::NotCoverable;
        }
        let neg_j: Vec<SparseSet> = nulls.neg_sparse.iter().map(|(r, _)| *r).collect();
        let neg_k: Vec<SparseSet> = nulls.neg_sparse.iter().map(|(_, c)| *c).collect();
        let j_minus_all = s_j.infinitude_in_classes(self.lat_j, &jadm, &neg_j);
        if j_minus_all == Infinitude::Infinite {
            // Infinitely many rows escape every subtrahend's row set.
            return Cover::NotCoverable;
        }
        let k_minus_all = s_k.infinitude_in_classes(self.lat_k, &kadm, &neg_k);
        if k_minus_all == Infinitude::Infinite {
            return Cover::NotCoverable;
        }
        // All-but-finitely-many rows sit inside every subtrahend's row set,
        // so their column slices shrink to the j-independent remainder.
        let j_each_small = neg_j.iter().all(|t| {
            s_j.infinitude_in_classes(self.lat_j, &jadm, std::slice::from_ref(t))
                != Infinitude::Infinite
        });
        if j_each_small {
            return Cover::Small;
        }
        let k_each_small = neg_k.iter().all(|t| {
            s_k.infinitude_in_classes(self.lat_k, &kadm, std::slice::from_ref(t))
                != Infinitude::Infinite
        });
        if k_each_small {
            return Cover::Small;
        }
        Cover::Unknown
    }

    /// Finiteness of one minterm.
    fn classify_cardinality(&self, jg: &MaskGroup, kg: &MaskGroup, nmask: u64) -> Cardinality {
        let nulls = self.positives(nmask);
        if nulls.pos_finite {
            return Cardinality::Finite;
        }
        let distinct_rows: std::collections::BTreeSet<u64> =
            nulls.pos_rows.iter().copied().collect();
        let distinct_cols: std::collections::BTreeSet<u64> =
            nulls.pos_cols.iter().copied().collect();
        if distinct_rows.len() >= 2 || distinct_cols.len() >= 2 {
            return Cardinality::Finite; // contradictory bands: empty
        }
        if !distinct_rows.is_empty() && !distinct_cols.is_empty() {
            return Cardinality::Finite; // at most a single point
        }
        if let Some(&row) = distinct_rows.first() {
            return self.fixed_row_cardinality(row, jg, kg, &nulls, true);
        }
        if let Some(&col) = distinct_cols.first() {
            return self.fixed_row_cardinality(col, kg, jg, &nulls, false);
        }
        // No positive bands or finite sets.
        if nulls.pos_sparse.is_empty() {
            return Cardinality::Infinite;
        }
        let s_j = nulls
            .pos_sparse
            .iter()
            .map(|(r, _)| *r)
            .reduce(SparseSet::intersect)
            .unwrap();
        let s_k = nulls
            .pos_sparse
            .iter()
            .map(|(_, c)| *c)
            .reduce(SparseSet::intersect)
            .unwrap();
        let jadm = self.admissible(self.lat_j, &jg.classes);
        let kadm = self.admissible(self.lat_k, &kg.classes);
        let j_inf = s_j.infinitude_in_classes(self.lat_j, &jadm, &[]);
        let k_inf = s_k.infinitude_in_classes(self.lat_k, &kadm, &[]);
        if j_inf == Infinitude::Empty || k_inf == Infinitude::Empty {
            return Cardinality::Finite;
        }
        if j_inf == Infinitude::FiniteOnly && k_inf == Infinitude::FiniteOnly {
            return Cardinality::Finite;
        }
        if nulls.neg_sparse.is_empty() {
            // FiniteOnly sides are nonempty, but negative row atoms could
            // delete exactly those few rows; only rule that out when absent.
            if j_inf == Infinitude::Infinite && k_inf == Infinitude::Infinite {
                return Cardinality::Infinite;
            }
            if nulls.neg_rows.is_empty() {
                return Cardinality::Infinite;
            }
            return Cardinality::Unknown;
        }
        if j_inf == Infinitude::Infinite && k_inf == Infinitude::Infinite {
            let neg_j: Vec<SparseSet> = nulls.neg_sparse.iter().map(|(r, _)| *r).collect();
            let neg_k: Vec<SparseSet> = nulls.neg_sparse.iter().map(|(_, c)| *c).collect();
            if s_j.infinitude_in_classes(self.lat_j, &jadm, &neg_j) == Infinitude::Infinite
                || s_k.infinitude_in_classes(self.lat_k, &kadm, &neg_k) == Infinitude::Infinite
            {
                return Cardinality::Infinite;
            }
            let j_each_small = neg_j.iter().all(|t| {
                s_j.infinitude_in_classes(self.lat_j, &jadm, std::slice::from_ref(t))
                    != Infinitude::Infinite
            });
            if j_each_small
                && s_k.infinitude_in_classes(self.lat_k, &kadm, &neg_k)
                    == Infinitude::FiniteOnly
            {
                // Cofinitely many rows keep the same nonempty finite slice.
                return Cardinality::Infinite;
            }
        }
        Cardinality::Unknown
    }

    /// Cardinality of a minterm pinned to one row (or, mirrored, one
    /// column). `primary`/`secondary` are the index-side groups in that
    /// orientation; `row_axis` says whether the pinned band is a row.
    fn fixed_row_cardinality(
        &self,
        index: u64,
        primary: &MaskGroup,
        secondary: &MaskGroup,
        nulls: &MintermNulls,
        row_axis: bool,
    ) -> Cardinality {
        let (lat_p, lat_s) = if row_axis {
            (self.lat_j, self.lat_k)
        } else {
            (self.lat_k, self.lat_j)
        };
        // Atoms are deduplicated, so a band cannot be both asserted and
        // denied; only class and sparse compatibility can empty the row.
        if !primary.classes.contains(&(index % lat_p)) {
            return Cardinality::Finite; // pinned index misses its classes
        }
        let own_sparse = |s: &(SparseSet, SparseSet)| if row_axis { s.0 } else { s.1 };
        let other_sparse = |s: &(SparseSet, SparseSet)| if row_axis { s.1 } else { s.0 };
        if nulls.pos_sparse.iter().any(|s| !own_sparse(s).contains(index)) {
            return Cardinality::Finite; // pinned index not in the sparse set
        }
        let sadm = self.admissible(lat_s, &secondary.classes);
        // Negative sparse products whose pinned side contains the index
        // delete their other side from the free axis.
        let minus: Vec<SparseSet> = nulls
            .neg_sparse
            .iter()
            .filter(|s| own_sparse(s).contains(index))
            .map(&other_sparse)
            .collect();
        let free = match nulls
            .pos_sparse
            .iter()
            .map(other_sparse)
            .reduce(SparseSet::intersect)
        {
            Some(s_free) => s_free.infinitude_in_classes(lat_s, &sadm, &minus),
            None => {
                // Full residue classes minus sparse sets: still infinite.
                Infinitude::Infinite
            }
        };
        if free == Infinitude::Infinite {
            Cardinality::Infinite
        } else {
            Cardinality::Finite
        }
    }
}

struct MintermNulls {
    pos_sparse: Vec<(SparseSet, SparseSet)>,
    neg_sparse: Vec<(SparseSet, SparseSet)>,
    pos_rows: Vec<u64>,
    neg_rows: Vec<u64>,
    pos_cols: Vec<u64>,
    pos_finite: bool,
}

fn compile(
    region: &Region,
    cells: &mut Vec<CellAtom>,
    cell_ids: &mut HashMap<CellAtom, usize>,
    nulls: &mut Vec<NullAtom>,
    null_ids: &mut HashMap<NullAtom, usize>,
) -> Expr {
    match region {
        Region::Full => Expr::Const(true),
        Region::Empty => Expr::Const(false),
        Region::ResidueCell {
            mod_j,
            mod_k,
            rem_j,
            rem_k,
        } => {
            let atom = CellAtom {
                mod_j: *mod_j,
                rem_j: *rem_j,
                mod_k: *mod_k,
                rem_k: *rem_k,
            };
            let id = *cell_ids.entry(atom).or_insert_with(|| {
                cells.push(atom);
                cells.len() - 1
            });
            Expr::Cell(id)
        }
        Region::SparseProduct { rows, cols } => {
            intern_null(NullAtom::Sparse(*rows, *cols), nulls, null_ids)
        }
        Region::RowBand(i) => intern_null(NullAtom::Row(*i), nulls, null_ids),
        Region::ColBand(i) => intern_null(NullAtom::Col(*i), nulls, null_ids),
        Region::FiniteSet(pts) => {
            if pts.is_empty() {
                Expr::Const(false)
            } else {
                intern_null(NullAtom::Finite(pts.clone()), nulls, null_ids)
            }
        }
        Region::Union(a, b) => Expr::Or(
            Box::new(compile(a, cells, cell_ids, nulls, null_ids)),
            Box::new(compile(b, cells, cell_ids, nulls, null_ids)),
        ),
        Region::Intersection(a, b) => Expr::And(
            Box::new(compile(a, cells, cell_ids, nulls, null_ids)),
            Box::new(compile(b, cells, cell_ids, nulls, null_ids)),
        ),
        Region::Difference(a, b) => Expr::And(
            Box::new(compile(a, cells, cell_ids, nulls, null_ids)),
            Box::new(Expr::Not(Box::new(compile(
                b, cells, cell_ids, nulls, null_ids,
            )))),
        ),
        Region::Complement(a) => Expr::Not(Box::new(compile(
            a, cells, cell_ids, nulls, null_ids,
        ))),
    }
}

fn intern_null(
    atom: NullAtom,
    nulls: &mut Vec<NullAtom>,
    null_ids: &mut HashMap<NullAtom, usize>,
) -> Expr {
    let id = *null_ids.entry(atom.clone()).or_insert_with(|| {
        nulls.push(atom);
        nulls.len() - 1
    });
    Expr::Null(id)
}

fn eval(expr: &Expr, jmask: u64, kmask: u64, nmask: u64) -> bool {
    match expr {
        Expr::Const(b) => *b,
        Expr::Cell(i) => (jmask >> i & 1 == 1) && (kmask >> i & 1 == 1),
        Expr::Null(i) => nmask >> i & 1 == 1,
        Expr::Not(e) => !eval(e, jmask, kmask, nmask),
        Expr::And(a, b) => eval(a, jmask, kmask, nmask) && eval(b, jmask, kmask, nmask),
        Expr::Or(a, b) => eval(a, jmask, kmask, nmask) || eval(b, jmask, kmask, nmask),
    }
}

/// Group the residue classes mod `lat` by which per-axis constraints they
/// satisfy. Constraint i is (modulus, remainder).
fn mask_groups<I: Iterator<Item = (u64, u64)> + Clone>(lat: u64, constraints: I) -> Vec<MaskGroup> {
    let cons: Vec<(u64, u64)> = constraints.collect();
    let mut by_mask: HashMap<u64, Vec<u64>> = HashMap::new();
    for class in 0..lat {
        let mut mask = 0u64;
        for (i, &(m, r)) in cons.iter().enumerate() {
            if class % m == r {
                mask |= 1 << i;
            }
        }
        by_mask.entry(mask).or_default().push(class);
    }
    let mut groups: Vec<MaskGroup> = by_mask
        .into_iter()
        .map(|(mask, classes)| MaskGroup { mask, classes })
        .collect();
    groups.sort_by_key(|g| g.mask);
    groups
}

/// Envelope constant C for the truncation error |K(n,n)/n² − d| ≤ C/√n,
/// derived per constructor family and summed over the tree.
pub fn region_error_constant(region: &Region) -> f64 {
    match region {
        Region::Full | Region::Empty => 0.0,
        Region::ResidueCell { mod_j, mod_k, .. } => (mod_j + mod_k + 2) as f64,
        Region::SparseProduct { .. } => 2.0,
        Region::RowBand(_) | Region::ColBand(_) => 2.0,
        Region::FiniteSet(pts) => pts.len() as f64 + 1.0,
        Region::Union(a, b) | Region::Intersection(a, b) | Region::Difference(a, b) => {
            region_error_constant(a) + region_error_constant(b)
        }
        Region::Complement(a) => region_error_constant(a),
    }
}
