//! The structured double-sequence model: symbolic definition of x_jk over
//! ℕ×ℕ, pointwise evaluation, validation, and boundedness classification.
//!
//! A sequence is an ordered list of (region, rule) pieces with first-match
//! semantics plus a default rule, so specs read like the piecewise
//! definitions they model ("2jk if j and k are squares, (−1)^(j+k)
//! otherwise"). The rule catalog is closed: every formula has a known
//! Pringsheim limit (or is known divergent) and a known bound, which is
//! what makes exact limit-set analysis possible.

use crate::geometry::{NormSpec, Point};
use crate::ideals::{region_density, Region};
use crate::{Error, Result, MAX_DIM};

/// One coordinate of a value rule.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarFormula {
    /// Constant coordinate.
    Const(f64),
    /// c·j·k; divergent unless c = 0.
    ProdJk(f64),
    /// (−1)^j
    AltJ,
    /// (−1)^k
    AltK,
    /// (−1)^(j+k)
    AltJk,
    /// c/(j+k) → 0
    DecaySum(f64),
    /// j/(j+1) → 1
    RatioJ,
    /// c + c'/(j·k) → c
    OffsetDecay(f64, f64),
}

/// Pringsheim limit of one coordinate formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarLimit {
    Finite(f64),
    Divergent,
}

impl ScalarFormula {
    pub fn eval(&self, j: u64, k: u64) -> f64 {
        match *self {
            ScalarFormula::Const(c) => c,
            ScalarFormula::ProdJk(c) => c * j as f64 * k as f64,
            ScalarFormula::AltJ => parity_sign(j),
            ScalarFormula::AltK => parity_sign(k),
            ScalarFormula::AltJk => parity_sign(j + k),
            ScalarFormula::DecaySum(c) => c / (j + k) as f64,
            ScalarFormula::RatioJ => j as f64 / (j + 1) as f64,
            ScalarFormula::OffsetDecay(c, c2) => c + c2 / (j as f64 * k as f64),
        }
    }

    /// Limit as j,k → ∞ jointly. The alternating signs have no Pringsheim
    /// limit; c·j·k diverges in norm for c ≠ 0.
    pub fn limit(&self) -> ScalarLimit {
        match *self {
            ScalarFormula::Const(c) => ScalarLimit::Finite(c),
            ScalarFormula::ProdJk(c) => {
                if c == 0.0 {
                    ScalarLimit::Finite(0.0)
                } else {
                    ScalarLimit::Divergent
                }
            }
            ScalarFormula::AltJ | ScalarFormula::AltK | ScalarFormula::AltJk => {
                ScalarLimit::Divergent
            }
            ScalarFormula::DecaySum(_) => ScalarLimit::Finite(0.0),
            ScalarFormula::RatioJ => ScalarLimit::Finite(1.0),
            ScalarFormula::OffsetDecay(c, _) => ScalarLimit::Finite(c),
        }
    }

    /// Supremum of |f(j,k)| over j,k ≥ 1, or None when unbounded.
    pub fn sup_abs(&self) -> Option<f64> {
        match *self {
            ScalarFormula::Const(c) => Some(c.abs()),
            ScalarFormula::ProdJk(c) => {
                if c == 0.0 {
                    Some(0.0)
                } else {
                    None
                }
            }
            ScalarFormula::AltJ | ScalarFormula::AltK | ScalarFormula::AltJk => Some(1.0),
            ScalarFormula::DecaySum(c) => Some(c.abs() / 2.0),
            ScalarFormula::RatioJ => Some(1.0),
            ScalarFormula::OffsetDecay(c, c2) => Some(c.abs() + c2.abs()),
        }
    }

    /// Envelope for |f(j,k) − limit| over the tail j,k ≥ n, for formulas
    /// with a finite limit.
    pub fn tail_error_bound(&self, n: u64) -> Option<f64> {
        let n = n as f64;
        match *self {
            ScalarFormula::Const(_) => Some(0.0),
            ScalarFormula::ProdJk(c) => {
                if c == 0.0 {
                    Some(0.0)
                } else {
                    None
                }
            }
            ScalarFormula::DecaySum(c) => Some(c.abs() / (2.0 * n)),
            ScalarFormula::RatioJ => Some(1.0 / (n + 1.0)),
            ScalarFormula::OffsetDecay(_, c2) => Some(c2.abs() / (n * n)),
            _ => None,
        }
    }

    fn is_alternating(&self) -> bool {
        matches!(
            self,
            ScalarFormula::AltJ | ScalarFormula::AltK | ScalarFormula::AltJk
        )
    }
}

fn parity_sign(n: u64) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn parity_const(parity: u64) -> f64 {
    parity_sign(parity)
}

/// Value rule of a piece: a constant point or a coordinate-wise tuple of
/// catalog formulas.
#[derive(Debug, Clone, PartialEq)]
pub enum ValueRule {
    Constant(Point),
    Formula(Vec<ScalarFormula>),
}

impl ValueRule {
    pub fn dim(&self) -> usize {
        match self {
            ValueRule::Constant(p) => p.dim(),
            ValueRule::Formula(fs) => fs.len(),
        }
    }

    pub fn eval_into(&self, j: u64, k: u64, out: &mut [f64]) {
        match self {
            ValueRule::Constant(p) => out.copy_from_slice(p.coords()),
            ValueRule::Formula(fs) => {
                for (o, f) in out.iter_mut().zip(fs) {
                    *o = f.eval(j, k);
                }
            }
        }
    }

    /// Joint Pringsheim limit of the rule.
    pub fn limit(&self) -> RuleLimit {
        match self {
            ValueRule::Constant(p) => RuleLimit::Finite(p.clone()),
            ValueRule::Formula(fs) => {
                let mut coords = Vec::with_capacity(fs.len());
                for f in fs {
                    match f.limit() {
                        ScalarLimit::Finite(v) => coords.push(v),
                        ScalarLimit::Divergent => return RuleLimit::Divergent,
                    }
                }
                RuleLimit::Finite(Point::new(coords).expect("validated dims"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RuleLimit {
    Finite(Point),
    Divergent,
}

/// Limit declared in a sequence spec; checked against the catalog limit
/// during validation rather than trusted.
#[derive(Debug, Clone, PartialEq)]
pub enum DeclaredLimit {
    Point(Point),
    Divergent,
}

/// A rule together with its optional declared limit.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSpec {
    pub rule: ValueRule,
    pub declared_limit: Option<DeclaredLimit>,
}

impl RuleSpec {
    pub fn new(rule: ValueRule) -> Self {
        RuleSpec {
            rule,
            declared_limit: None,
        }
    }

    pub fn with_limit(rule: ValueRule, limit: DeclaredLimit) -> Self {
        RuleSpec {
            rule,
            declared_limit: Some(limit),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub region: Region,
    pub spec: RuleSpec,
}

/// A total double sequence: ordered pieces with first-match semantics and
/// a default rule covering everything else.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredSequence {
    name: String,
    dim: usize,
    pieces: Vec<Piece>,
    default: RuleSpec,
}

impl StructuredSequence {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        pieces: Vec<Piece>,
        default: RuleSpec,
    ) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidSequence(format!(
                "dimension must be in [1, {MAX_DIM}], got {dim}"
            )));
        }
        for (i, piece) in pieces.iter().enumerate() {
            if piece.spec.rule.dim() != dim {
                return Err(Error::InvalidSequence(format!(
                    "piece {i} has rule dimension {}, sequence dimension {dim}",
                    piece.spec.rule.dim()
                )));
            }
            check_declared_dim(&piece.spec, dim, Some(i))?;
        }
        if default.rule.dim() != dim {
            return Err(Error::InvalidSequence(format!(
                "default rule dimension {}, sequence dimension {dim}",
                default.rule.dim()
            )));
        }
        check_declared_dim(&default, dim, None)?;
        Ok(StructuredSequence {
            name: name.into(),
            dim,
            pieces,
            default,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn default_rule(&self) -> &RuleSpec {
        &self.default
    }

    /// Rule supplying the value at (j, k): first matching piece, else the
    /// default. Returns the piece index for diagnostics.
    pub fn matching_rule(&self, j: u64, k: u64) -> (Option<usize>, &RuleSpec) {
        for (i, piece) in self.pieces.iter().enumerate() {
            if piece.region.contains(j, k) {
                return (Some(i), &piece.spec);
            }
        }
        (None, &self.default)
    }

    /// Evaluate without allocating; `out` must have length `dim`.
    pub fn eval_into(&self, j: u64, k: u64, out: &mut [f64]) {
        debug_assert!(j >= 1 && k >= 1);
        debug_assert_eq!(out.len(), self.dim);
        let (_, spec) = self.matching_rule(j, k);
        spec.rule.eval_into(j, k, out);
    }

    pub fn eval(&self, j: u64, k: u64) -> Point {
        let mut out = vec![0.0; self.dim];
        self.eval_into(j, k, &mut out);
        Point::new(out).expect("rules produce finite coordinates")
    }

    /// Scalar evaluation for dimension-1 sequences.
    pub fn eval_scalar(&self, j: u64, k: u64) -> f64 {
        debug_assert_eq!(self.dim, 1);
        let mut out = [0.0];
        self.eval_into(j, k, &mut out);
        out[0]
    }

    /// Project one coordinate as a dimension-1 sequence over the same
    /// regions.
    pub fn project(&self, coord: usize) -> Result<StructuredSequence> {
        if coord >= self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: coord,
            });
        }
        let project_spec = |spec: &RuleSpec| -> RuleSpec {
            let rule = match &spec.rule {
                ValueRule::Constant(p) => {
                    ValueRule::Constant(Point::scalar(p.coords()[coord]).unwrap())
                }
                ValueRule::Formula(fs) => ValueRule::Formula(vec![fs[coord].clone()]),
            };
            let declared_limit = spec.declared_limit.as_ref().map(|d| match d {
                DeclaredLimit::Divergent => DeclaredLimit::Divergent,
                DeclaredLimit::Point(p) => {
                    DeclaredLimit::Point(Point::scalar(p.coords()[coord]).unwrap())
                }
            });
            RuleSpec {
                rule,
                declared_limit,
            }
        };
        // A declared Divergent limit on the tuple need not hold coordinate
        // by coordinate; drop declarations that no longer apply.
        let mut seq = StructuredSequence::new(
            format!("{}[{}]", self.name, coord),
            1,
            self.pieces
                .iter()
                .map(|p| Piece {
                    region: p.region.clone(),
                    spec: project_spec(&p.spec),
                })
                .collect(),
            project_spec(&self.default),
        )?;
        strip_divergent_declarations(&mut seq);
        Ok(seq)
    }

    /// Shift every value by a constant point. Only rules that can absorb a
    /// constant offset symbolically are supported.
    pub fn translate(&self, t: &Point) -> Result<StructuredSequence> {
        if t.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: t.dim(),
            });
        }
        let shift_spec = |spec: &RuleSpec| -> Result<RuleSpec> {
            let rule = match &spec.rule {
                ValueRule::Constant(p) => ValueRule::Constant(p.add(t)?),
                ValueRule::Formula(fs) => ValueRule::Formula(
                    fs.iter()
                        .zip(t.coords())
                        .map(|(f, &tc)| match f {
                            ScalarFormula::Const(c) => Ok(ScalarFormula::Const(c + tc)),
                            ScalarFormula::OffsetDecay(c, c2) => {
                                Ok(ScalarFormula::OffsetDecay(c + tc, *c2))
                            }
                            other if tc == 0.0 => Ok(other.clone()),
                            other => Err(Error::InvalidSequence(format!(
                                "{other:?} cannot absorb a constant offset"
                            ))),
                        })
                        .collect::<Result<_>>()?,
                ),
            };
            Ok(RuleSpec {
                rule,
                declared_limit: None,
            })
        };
        StructuredSequence::new(
            format!("{}+t", self.name),
            self.dim,
            self.pieces
                .iter()
                .map(|p| {
                    Ok(Piece {
                        region: p.region.clone(),
                        spec: shift_spec(&p.spec)?,
                    })
                })
                .collect::<Result<_>>()?,
            shift_spec(&self.default)?,
        )
    }

    /// Multiply every value by a scalar λ.
    pub fn scale(&self, lambda: f64) -> Result<StructuredSequence> {
        let scale_spec = |spec: &RuleSpec| -> Result<RuleSpec> {
            let rule = match &spec.rule {
                ValueRule::Constant(p) => ValueRule::Constant(p.scale(lambda)),
                ValueRule::Formula(fs) => ValueRule::Formula(
                    fs.iter()
                        .map(|f| match f {
                            ScalarFormula::Const(c) => Ok(ScalarFormula::Const(c * lambda)),
                            ScalarFormula::ProdJk(c) => Ok(ScalarFormula::ProdJk(c * lambda)),
                            ScalarFormula::DecaySum(c) => {
                                Ok(ScalarFormula::DecaySum(c * lambda))
                            }
                            ScalarFormula::OffsetDecay(c, c2) => {
                                Ok(ScalarFormula::OffsetDecay(c * lambda, c2 * lambda))
                            }
                            other => Err(Error::InvalidSequence(format!(
                                "{other:?} cannot absorb a scale factor"
                            ))),
                        })
                        .collect::<Result<_>>()?,
                ),
            };
            Ok(RuleSpec {
                rule,
                declared_limit: None,
            })
        };
        StructuredSequence::new(
            format!("{}*λ", self.name),
            self.dim,
            self.pieces
                .iter()
                .map(|p| {
                    Ok(Piece {
                        region: p.region.clone(),
                        spec: scale_spec(&p.spec)?,
                    })
                })
                .collect::<Result<_>>()?,
            scale_spec(&self.default)?,
        )
    }
}

fn strip_divergent_declarations(seq: &mut StructuredSequence) {
    for piece in &mut seq.pieces {
        if matches!(piece.spec.declared_limit, Some(DeclaredLimit::Divergent))
            && !matches!(piece.spec.rule.limit(), RuleLimit::Divergent)
        {
            piece.spec.declared_limit = None;
        }
    }
    if matches!(seq.default.declared_limit, Some(DeclaredLimit::Divergent))
        && !matches!(seq.default.rule.limit(), RuleLimit::Divergent)
    {
        seq.default.declared_limit = None;
    }
}

fn check_declared_dim(spec: &RuleSpec, dim: usize, piece: Option<usize>) -> Result<()> {
    if let Some(DeclaredLimit::Point(p)) = &spec.declared_limit {
        if p.dim() != dim {
            let scope = piece.map_or("default".to_string(), |i| format!("piece {i}"));
            return Err(Error::InvalidSequence(format!(
                "{scope}: declared limit dimension {} != {dim}",
                p.dim()
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Normalized exact-analysis form
// ---------------------------------------------------------------------------

/// How a value class behaves on Pringsheim tails.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassKind {
    /// The rule is constant on the class region.
    Constant(Point),
    /// The rule converges to this point along the tail.
    Limit(Point),
    /// The rule's norm diverges along the tail.
    Unbounded,
}

/// One normalized piece: an effective (first-match) region together with
/// its tail behavior. Alternating-sign coordinates have been split into
/// parity cells, so no oscillating rules remain.
#[derive(Debug, Clone)]
pub struct ValueClass {
    pub region: Region,
    pub kind: ClassKind,
    /// Index of the originating piece; None for the default rule.
    pub piece: Option<usize>,
}

/// Normalized view of a sequence used by all exact analysis.
#[derive(Debug, Clone)]
pub struct ExactView {
    pub dim: usize,
    pub classes: Vec<ValueClass>,
}

/// Expand a rule on an effective region into value classes, splitting
/// alternating-sign coordinates over the parity lattice.
fn expand_rule(region: Region, spec: &RuleSpec, piece: Option<usize>, out: &mut Vec<ValueClass>) {
    let formulas: Vec<ScalarFormula> = match &spec.rule {
        ValueRule::Constant(p) => {
            out.push(ValueClass {
                region,
                kind: ClassKind::Constant(p.clone()),
                piece,
            });
            return;
        }
        ValueRule::Formula(fs) => fs.clone(),
    };
    let needs_j = formulas
        .iter()
        .any(|f| matches!(f, ScalarFormula::AltJ | ScalarFormula::AltJk));
    let needs_k = formulas
        .iter()
        .any(|f| matches!(f, ScalarFormula::AltK | ScalarFormula::AltJk));
    let j_parities: &[u64] = if needs_j { &[0, 1] } else { &[0] };
    let k_parities: &[u64] = if needs_k { &[0, 1] } else { &[0] };
    let mod_j = if needs_j { 2 } else { 1 };
    let mod_k = if needs_k { 2 } else { 1 };

    for &pj in j_parities {
        for &pk in k_parities {
            let cell_region = if needs_j || needs_k {
                Region::intersection(
                    region.clone(),
                    Region::residue(mod_j, mod_k, pj, pk).expect("valid parity cell"),
                )
            } else {
                region.clone()
            };
            let resolved: Vec<ScalarFormula> = formulas
                .iter()
                .map(|f| match f {
                    ScalarFormula::AltJ => ScalarFormula::Const(parity_const(pj)),
                    ScalarFormula::AltK => ScalarFormula::Const(parity_const(pk)),
                    ScalarFormula::AltJk => ScalarFormula::Const(parity_const(pj + pk)),
                    other => other.clone(),
                })
                .collect();
            debug_assert!(resolved.iter().all(|f| !f.is_alternating()));

            let kind = if resolved
                .iter()
                .any(|f| matches!(f, ScalarFormula::ProdJk(c) if *c != 0.0))
            {
                ClassKind::Unbounded
            } else if resolved
                .iter()
                .all(|f| matches!(f, ScalarFormula::Const(_) | ScalarFormula::ProdJk(_)))
            {
                // Only constants (ProdJk here means c = 0): a constant class.
                let coords = resolved
                    .iter()
                    .map(|f| match f {
                        ScalarFormula::Const(c) => *c,
                        _ => 0.0,
                    })
                    .collect();
                ClassKind::Constant(Point::new(coords).expect("validated dims"))
            } else {
                let coords = resolved
                    .iter()
                    .map(|f| match f.limit() {
                        ScalarLimit::Finite(v) => v,
                        ScalarLimit::Divergent => unreachable!("alternating resolved"),
                    })
                    .collect();
                ClassKind::Limit(Point::new(coords).expect("validated dims"))
            };
            out.push(ValueClass {
                region: cell_region,
                kind,
                piece,
            });
        }
    }
}

/// Build the normalized exact view: effective regions under first-match
/// semantics, alternating signs split into parity constants.
pub fn exact_view(seq: &StructuredSequence) -> ExactView {
    let mut classes = Vec::new();
    let mut shadow: Option<Region> = None;
    for (i, piece) in seq.pieces().iter().enumerate() {
        let effective = match &shadow {
            None => piece.region.clone(),
            Some(prev) => Region::difference(piece.region.clone(), prev.clone()),
        };
        expand_rule(effective, &piece.spec, Some(i), &mut classes);
        shadow = Some(match shadow {
            None => piece.region.clone(),
            Some(prev) => Region::union(prev, piece.region.clone()),
        });
    }
    let default_region = match shadow {
        None => Region::Full,
        Some(prev) => Region::complement(prev),
    };
    expand_rule(default_region, seq.default_rule(), None, &mut classes);
    ExactView {
        dim: seq.dim(),
        classes,
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub severity: Severity,
    /// Originating piece index; None for the default rule or global checks.
    pub piece: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    pub issues: Vec<Diagnostic>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.issues.iter().all(|d| d.severity != Severity::Error)
    }

    fn error(&mut self, piece: Option<usize>, message: String) {
        self.issues.push(Diagnostic {
            severity: Severity::Error,
            piece,
            message,
        });
    }

    pub fn summary(&self) -> String {
        self.issues
            .iter()
            .map(|d| {
                let scope = match d.piece {
                    Some(i) => format!("piece {i}"),
                    None => "default".to_string(),
                };
                format!("[{scope}] {}", d.message)
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Tail scales at which declared limits are re-sampled.
const TAIL_SCALES: [u64; 3] = [10, 100, 1000];

/// Validate a sequence for exact analysis.
///
/// Checks that declared limits match the catalog limits (within 1e-6),
/// samples each formula on Pringsheim tails to confirm its limit (or its
/// parity constants) numerically, and rejects divergent rules whose
/// effective region has positive density.
pub fn validate(seq: &StructuredSequence) -> Diagnostics {
    let mut diags = Diagnostics::default();
    let specs: Vec<(Option<usize>, &RuleSpec)> = seq
        .pieces()
        .iter()
        .enumerate()
        .map(|(i, p)| (Some(i), &p.spec))
        .chain(std::iter::once((None, seq.default_rule())))
        .collect();

    for (piece, spec) in &specs {
        let analytic = spec.rule.limit();
        if let Some(declared) = &spec.declared_limit {
            match (declared, &analytic) {
                (DeclaredLimit::Divergent, RuleLimit::Divergent) => {}
                (DeclaredLimit::Point(dp), RuleLimit::Finite(ap)) => {
                    let mismatch = dp
                        .coords()
                        .iter()
                        .zip(ap.coords())
                        .any(|(d, a)| (d - a).abs() > 1e-6);
                    if mismatch {
                        diags.error(
                            *piece,
                            format!(
                                "declared limit {:?} differs from catalog limit {:?}",
                                dp.coords(),
                                ap.coords()
                            ),
                        );
                    }
                }
                (DeclaredLimit::Divergent, RuleLimit::Finite(ap)) => diags.error(
                    *piece,
                    format!("declared divergent but catalog limit is {:?}", ap.coords()),
                ),
                (DeclaredLimit::Point(dp), RuleLimit::Divergent) => diags.error(
                    *piece,
                    format!("declared limit {:?} but rule diverges", dp.coords()),
                ),
            }
        }

        // Tail sampling: catalog limits are re-confirmed numerically, never
        // trusted. Alternating coordinates are checked against their parity
        // constants instead of a joint limit.
        if let ValueRule::Formula(fs) = &spec.rule {
            for n in TAIL_SCALES {
                let samples = [
                    (n, n),
                    (n, 3 * n),
                    (3 * n, n),
                    (2 * n, 5 * n + 1),
                    (7 * n + 1, n + 1),
                ];
                for (coord, f) in fs.iter().enumerate() {
                    for &(j, k) in &samples {
                        let got = f.eval(j, k);
                        let (target, bound) = if f.is_alternating() {
                            let sign = match f {
                                ScalarFormula::AltJ => parity_sign(j),
                                ScalarFormula::AltK => parity_sign(k),
                                _ => parity_sign(j + k),
                            };
                            (sign, 0.0)
                        } else {
                            match (f.limit(), f.tail_error_bound(n)) {
                                (ScalarLimit::Finite(l), Some(b)) => (l, b),
                                _ => continue, // divergent: no finite target
                            }
                        };
                        if (got - target).abs() > bound + 1e-6 {
                            diags.error(
                                *piece,
                                format!(
                                    "coordinate {coord} at ({j},{k}): value {got} is \
                                     {} from limit {target}, beyond envelope {bound}",
                                    (got - target).abs()
                                ),
                            );
                        }
                    }
                }
            }
        }
    }

    // Divergent rules are only permitted on density-zero effective regions.
    let view = exact_view(seq);
    for class in &view.classes {
        if let ClassKind::Unbounded = class.kind {
            match region_density(&class.region) {
                d if d.is_zero() => {}
                crate::ideals::DensityValue::Undefined => diags.error(
                    class.piece,
                    "divergent rule on a region with uncertified density".into(),
                ),
                d => diags.error(
                    class.piece,
                    format!(
                        "divergent rule on a region of positive density {}",
                        d.exact().map(|r| r.to_string()).unwrap_or_default()
                    ),
                ),
            }
        }
    }

    diags
}

/// Validated view: gate used by the exact analysis entry points.
pub fn validated_view(seq: &StructuredSequence) -> Result<ExactView> {
    let diags = validate(seq);
    if !diags.is_valid() {
        return Err(Error::InvalidSequence(diags.summary()));
    }
    Ok(exact_view(seq))
}

// ---------------------------------------------------------------------------
// Boundedness
// ---------------------------------------------------------------------------

/// Plain boundedness verdict, decided symbolically from the rule catalog.
#[derive(Debug, Clone)]
pub enum Boundedness {
    /// ∥x_jk∥ < bound for all (j,k).
    Bounded { bound: f64 },
    /// Some piece carries an unbounded rule; its region is the witness.
    Unbounded { witness: Region },
}

impl Boundedness {
    pub fn is_bounded(&self) -> bool {
        matches!(self, Boundedness::Bounded { .. })
    }
}

/// I-boundedness verdict relative to an ideal.
#[derive(Debug, Clone)]
pub enum IdealBoundedness {
    /// The exceedance set {(j,k) : ∥x_jk∥ ≥ bound} belongs to the ideal.
    IdealBounded { bound: f64 },
    /// The union of unbounded-rule regions is not in the ideal.
    NotIdealBounded { witness: Region },
}

impl IdealBoundedness {
    pub fn is_ideal_bounded(&self) -> bool {
        matches!(self, IdealBoundedness::IdealBounded { .. })
    }
}

fn rule_sup(norm: &NormSpec, rule: &ValueRule) -> Option<f64> {
    match rule {
        ValueRule::Constant(p) => Some(norm.eval(p)),
        ValueRule::Formula(fs) => {
            let sups: Option<Vec<f64>> = fs.iter().map(|f| f.sup_abs()).collect();
            // p-norms and the max-norm are monotone in coordinate-wise
            // absolute values, so the norm of the sup vector is a bound.
            sups.map(|s| norm.eval(&Point::new(s).expect("validated dims")))
        }
    }
}

/// Boundedness decided rule by rule: every piece must carry a bounded
/// catalog entry, and the bound is the symbolic supremum plus one.
pub fn is_bounded(seq: &StructuredSequence, norm: &NormSpec) -> Boundedness {
    let mut sup: f64 = 0.0;
    for piece in seq.pieces() {
        match rule_sup(norm, &piece.spec.rule) {
            Some(s) => sup = sup.max(s),
            None => {
                return Boundedness::Unbounded {
                    witness: piece.region.clone(),
                }
            }
        }
    }
    match rule_sup(norm, &seq.default_rule().rule) {
        Some(s) => sup = sup.max(s),
        None => {
            return Boundedness::Unbounded {
                witness: Region::Full,
            }
        }
    }
    Boundedness::Bounded { bound: sup + 1.0 }
}

/// I-boundedness: the union of effective regions carrying unbounded rules
/// must lie in the ideal; the bound then exceeds the supremum of the
/// remaining pieces.
pub fn is_i_bounded(
    seq: &StructuredSequence,
    ideal: crate::ideals::IdealSpec,
    norm: &NormSpec,
) -> Result<IdealBoundedness> {
    let view = validated_view(seq)?;
    let mut unbounded_regions: Vec<Region> = Vec::new();
    let mut sup: f64 = 0.0;
    for class in &view.classes {
        match &class.kind {
            ClassKind::Unbounded => unbounded_regions.push(class.region.clone()),
            ClassKind::Constant(p) => sup = sup.max(norm.eval(p)),
            ClassKind::Limit(_) => {
                let spec = match class.piece {
                    Some(i) => &seq.pieces()[i].spec,
                    None => seq.default_rule(),
                };
                let s =
                    rule_sup(norm, &spec.rule).expect("limit classes come from bounded rules");
                sup = sup.max(s);
            }
        }
    }
    if unbounded_regions.is_empty() {
        return Ok(IdealBoundedness::IdealBounded { bound: sup + 1.0 });
    }
    let witness = Region::union_all(unbounded_regions);
    if crate::ideals::ideal_contains(ideal, &witness)? {
        Ok(IdealBoundedness::IdealBounded { bound: sup + 1.0 })
    } else {
        Ok(IdealBoundedness::NotIdealBounded { witness })
    }
}
