//! Intersection-closed algebra of sparse coordinate sets.
//!
//! The three sparse kinds (squares, cubes, powers of two) are closed under
//! pairwise intersection once expressed as perfect powers {x^n} or geometric
//! sets {2^(s·f)}. For the ideal decision procedures we must answer, exactly,
//! whether such a set meets a union of residue classes infinitely often,
//! possibly after removing other sparse sets.

use super::region::SparseKind;

/// Canonical form of an intersection of sparse coordinate sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SparseSet {
    /// {x^n : x ≥ 1}
    PerfectPowers(u64),
    /// {2^(s·f) : f ≥ 0}
    TwoPowers(u64),
}

/// How often a constrained sparse set is hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infinitude {
    Empty,
    /// Nonempty but finite (only pre-periodic powers of two reach here).
    FiniteOnly,
    Infinite,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl From<SparseKind> for SparseSet {
    fn from(kind: SparseKind) -> Self {
        match kind {
            SparseKind::Squares => SparseSet::PerfectPowers(2),
            SparseKind::Cubes => SparseSet::PerfectPowers(3),
            SparseKind::PowersOfTwo => SparseSet::TwoPowers(1),
        }
    }
}

impl SparseSet {
    /// Exact intersection: 2^e is an n-th power iff n | e, so every mixed
    /// case collapses back into the two canonical forms.
    pub fn intersect(self, other: SparseSet) -> SparseSet {
        use SparseSet::*;
        match (self, other) {
            (PerfectPowers(a), PerfectPowers(b)) => PerfectPowers(lcm(a, b)),
            (PerfectPowers(a), TwoPowers(s)) | (TwoPowers(s), PerfectPowers(a)) => {
                TwoPowers(lcm(s, a))
            }
            (TwoPowers(s), TwoPowers(t)) => TwoPowers(lcm(s, t)),
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        if x == 0 {
            return false;
        }
        match *self {
            SparseSet::PerfectPowers(n) => is_perfect_power(x, n),
            SparseSet::TwoPowers(s) => {
                x.is_power_of_two() && (x.trailing_zeros() as u64).is_multiple_of(s)
            }
        }
    }

    /// True when `self ⊆ other`; exact for the canonical forms.
    pub fn subset_of(&self, other: &SparseSet) -> bool {
        use SparseSet::*;
        match (*self, *other) {
            (PerfectPowers(a), PerfectPowers(b)) => a % b == 0,
            // {2^(s·f)} ⊆ {x^b} iff b | s·f for all f, i.e. b | s.
            (TwoPowers(s), PerfectPowers(b)) => s % b == 0,
            (TwoPowers(s), TwoPowers(t)) => s % t == 0,
            // Perfect powers contain non-powers-of-two members (e.g. 3^a).
            (PerfectPowers(_), TwoPowers(_)) => false,
        }
    }

    /// Classifies { x ∈ self : admissible[x mod m] and x ∉ ∪ minus }.
    ///
    /// `admissible` has length `m`. The answer is exact: `Infinite` and
    /// `Empty` are certain, and `FiniteOnly` means "nonempty but only
    /// finitely many" (which can only arise from the pre-periodic prefix of
    /// a power-of-two orbit).
    pub fn infinitude_in_classes(
        &self,
        m: u64,
        admissible: &[bool],
        minus: &[SparseSet],
    ) -> Infinitude {
        debug_assert_eq!(admissible.len(), m as usize);
        if minus.iter().any(|t| self.subset_of(t)) {
            return Infinitude::Empty;
        }
        match *self {
            SparseSet::PerfectPowers(n) => {
                // x ↦ x^n mod m is periodic in x with period m, and every
                // residue in its image is attained for infinitely many x.
                // Removing the `minus` sets deletes only a zero-density set
                // of bases x (each non-absorbing subtrahend forces x itself
                // into a proper perfect-power or power-of-two set), so any
                // attained admissible residue is attained infinitely often
                // after subtraction as well.
                for x in 0..m {
                    if admissible[pow_mod(x, n, m) as usize] {
                        return Infinitude::Infinite;
                    }
                }
                Infinitude::Empty
            }
            SparseSet::TwoPowers(s) => {
                two_powers_infinitude(s, m, admissible, minus)
            }
        }
    }
}

/// Orbit analysis for {2^(s·f)} f = 0,1,2,… against residue classes mod m,
/// minus other sparse sets. Membership of 2^(s·f) in a subtrahend is a
/// divisibility condition on the exponent s·f, hence periodic in f; the
/// residue orbit mod m is eventually periodic; so one combined period after
/// the pre-period decides everything.
fn two_powers_infinitude(
    s: u64,
    m: u64,
    admissible: &[bool],
    minus: &[SparseSet],
) -> Infinitude {
    // Exponent-divisibility periods of the subtrahends.
    let minus_periods: Vec<u64> = minus
        .iter()
        .map(|t| {
            let d = match *t {
                SparseSet::PerfectPowers(b) => b,
                SparseSet::TwoPowers(t) => t,
            };
            d / gcd(d, s)
        })
        .collect();
    let excluded = |f: u64| minus_periods.iter().any(|&p| f.is_multiple_of(p));

    // Walk the orbit v_f = 2^(s·f) mod m until the value repeats; record
    // where each value first appeared to find the cycle start.
    let step = pow_mod(2, s, m);
    let mut first_seen: std::collections::HashMap<u64, u64> = std::collections::HashMap::new();
    let mut orbit: Vec<u64> = Vec::new();
    let mut v = 1 % m;
    let cycle_start = loop {
        if let Some(&f0) = first_seen.get(&v) {
            break f0;
        }
        first_seen.insert(v, orbit.len() as u64);
        orbit.push(v);
        v = mul_mod(v, step, m);
    };
    let cycle_len = orbit.len() as u64 - cycle_start;

    // The combined pattern of (orbit value, divisibility flags) repeats in f
    // with period lcm(cycle_len, all minus periods) once f ≥ cycle_start.
    let mut window = cycle_len;
    for &p in &minus_periods {
        window = lcm(window, p);
    }

    let mut finite_hit = false;
    for f in 0..cycle_start {
        if admissible[orbit[f as usize] as usize] && !excluded(f) {
            finite_hit = true;
        }
    }
    for off in 0..window {
        let f = cycle_start + off;
        let idx = cycle_start + (f - cycle_start) % cycle_len;
        if admissible[orbit[idx as usize] as usize] && !excluded(f) {
            return Infinitude::Infinite;
        }
    }
    if finite_hit {
        Infinitude::FiniteOnly
    } else {
        Infinitude::Empty
    }
}

fn is_perfect_power(x: u64, n: u64) -> bool {
    if n == 1 {
        return true;
    }
    if x == 1 {
        return true;
    }
    if n >= 64 {
        return x == 1;
    }
    let root = nth_root(x, n);
    pow_checked(root, n) == Some(x)
}

fn nth_root(x: u64, n: u64) -> u64 {
    let mut r = (x as f64).powf(1.0 / n as f64).round() as u64;
    while r > 1 && pow_checked(r, n).is_none_or(|p| p > x) {
        r -= 1;
    }
    while pow_checked(r + 1, n).is_some_and(|p| p <= x) {
        r += 1;
    }
    r
}

fn pow_checked(base: u64, exp: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    base %= m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}
