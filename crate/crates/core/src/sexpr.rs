//! Canonical text format for regions, ideals, and sequence specs.
//!
//! Everything is an s-expression; `;` starts a line comment. The printer
//! emits exactly one canonical form and `parse(print(x)) == x` for every
//! representable value, so spec files double as golden fixtures.
//!
//! ```text
//! (sequence example21
//!   (dim 1)
//!   (piece (sparse squares squares) (formula (prod-jk 2)))
//!   (default (formula (alt-jk))))
//! ```

use std::fmt::Write as _;

use crate::geometry::Point;
use crate::ideals::{Region, SparseKind};
use crate::sequences::{
    DeclaredLimit, Piece, RuleSpec, ScalarFormula, StructuredSequence, ValueRule,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    fn atom(&self) -> Result<&str> {
        match self {
            Sexp::Atom(s) => Ok(s),
            Sexp::List(_) => Err(Error::Parse("expected atom, found list".into())),
        }
    }

    fn list(&self) -> Result<&[Sexp]> {
        match self {
            Sexp::List(items) => Ok(items),
            Sexp::Atom(a) => Err(Error::Parse(format!("expected list, found atom {a:?}"))),
        }
    }

    /// List whose head atom is `tag`; returns the remaining items.
    fn tagged(&self, tag: &str) -> Result<&[Sexp]> {
        let items = self.list()?;
        match items.first() {
            Some(Sexp::Atom(head)) if head == tag => Ok(&items[1..]),
            Some(Sexp::Atom(head)) => Err(Error::Parse(format!(
                "expected ({tag} ...), found ({head} ...)"
            ))),
            _ => Err(Error::Parse(format!("expected ({tag} ...)"))),
        }
    }

    fn head(&self) -> Result<&str> {
        self.list()?
            .first()
            .ok_or_else(|| Error::Parse("empty list".into()))?
            .atom()
    }
}

fn tokenize(input: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut chars = input.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            ';' => {
                for c2 in chars.by_ref() {
                    if c2 == '\n' {
                        break;
                    }
                }
            }
            '(' | ')' => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
                tokens.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
            }
            c => current.push(c),
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    Ok(tokens)
}

fn parse_sexp(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    match tokens.get(*pos) {
        None => Err(Error::Parse("unexpected end of input".into())),
        Some(t) if t == "(" => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(Error::Parse("unclosed parenthesis".into())),
                    Some(t) if t == ")" => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    _ => items.push(parse_sexp(tokens, pos)?),
                }
            }
        }
        Some(t) if t == ")" => Err(Error::Parse("unexpected )".into())),
        Some(t) => {
            *pos += 1;
            Ok(Sexp::Atom(t.clone()))
        }
    }
}

fn read_one(input: &str) -> Result<Sexp> {
    let tokens = tokenize(input)?;
    let mut pos = 0;
    let sexp = parse_sexp(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!(
            "trailing tokens after expression: {:?}",
            &tokens[pos..]
        )));
    }
    Ok(sexp)
}

fn parse_u64(s: &Sexp) -> Result<u64> {
    let a = s.atom()?;
    a.parse()
        .map_err(|_| Error::Parse(format!("expected integer, found {a:?}")))
}

fn parse_f64(s: &Sexp) -> Result<f64> {
    let a = s.atom()?;
    let v: f64 = a
        .parse()
        .map_err(|_| Error::Parse(format!("expected number, found {a:?}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("number must be finite: {a}")));
    }
    Ok(v)
}

fn expect_len(items: &[Sexp], n: usize, what: &str) -> Result<()> {
    if items.len() != n {
        return Err(Error::Parse(format!(
            "{what} expects {n} arguments, found {}",
            items.len()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------------

fn sparse_kind_name(kind: SparseKind) -> &'static str {
    match kind {
        SparseKind::Squares => "squares",
        SparseKind::Cubes => "cubes",
        SparseKind::PowersOfTwo => "pow2",
    }
}

fn parse_sparse_kind(s: &Sexp) -> Result<SparseKind> {
    match s.atom()? {
        "squares" => Ok(SparseKind::Squares),
        "cubes" => Ok(SparseKind::Cubes),
        "pow2" => Ok(SparseKind::PowersOfTwo),
        other => Err(Error::Parse(format!(
            "unknown sparse kind {other:?}; expected squares, cubes, or pow2"
        ))),
    }
}

fn region_from_sexp(s: &Sexp) -> Result<Region> {
    if let Sexp::Atom(a) = s {
        return match a.as_str() {
            "full" => Ok(Region::Full),
            "empty" => Ok(Region::Empty),
            other => Err(Error::Parse(format!("unknown region atom {other:?}"))),
        };
    }
    let items = s.list()?;
    let head = s.head()?;
    let args = &items[1..];
    match head {
        "residue" => {
            expect_len(args, 4, "residue")?;
            Region::residue(
                parse_u64(&args[0])?,
                parse_u64(&args[1])?,
                parse_u64(&args[2])?,
                parse_u64(&args[3])?,
            )
        }
        "sparse" => {
            expect_len(args, 2, "sparse")?;
            Ok(Region::sparse(
                parse_sparse_kind(&args[0])?,
                parse_sparse_kind(&args[1])?,
            ))
        }
        "row" => {
            expect_len(args, 1, "row")?;
            Region::row_band(parse_u64(&args[0])?)
        }
        "col" => {
            expect_len(args, 1, "col")?;
            Region::col_band(parse_u64(&args[0])?)
        }
        "finite" => {
            let mut points = Vec::new();
            for item in args {
                let pair = item.list()?;
                expect_len(pair, 2, "finite point")?;
                points.push((parse_u64(&pair[0])?, parse_u64(&pair[1])?));
            }
            Region::finite(points)
        }
        "union" | "inter" | "diff" => {
            expect_len(args, 2, head)?;
            let a = region_from_sexp(&args[0])?;
            let b = region_from_sexp(&args[1])?;
            Ok(match head {
                "union" => Region::union(a, b),
                "inter" => Region::intersection(a, b),
                _ => Region::difference(a, b),
            })
        }
        "compl" => {
            expect_len(args, 1, "compl")?;
            Ok(Region::complement(region_from_sexp(&args[0])?))
        }
        other => Err(Error::Parse(format!("unknown region form {other:?}"))),
    }
}

pub fn parse_region(input: &str) -> Result<Region> {
    region_from_sexp(&read_one(input)?)
}

pub fn print_region(region: &Region) -> String {
    match region {
        Region::Full => "full".into(),
        Region::Empty => "empty".into(),
        Region::ResidueCell {
            mod_j,
            mod_k,
            rem_j,
            rem_k,
        } => format!("(residue {mod_j} {mod_k} {rem_j} {rem_k})"),
        Region::SparseProduct { rows, cols } => format!(
            "(sparse {} {})",
            sparse_kind_name(*rows),
            sparse_kind_name(*cols)
        ),
        Region::RowBand(i) => format!("(row {i})"),
        Region::ColBand(i) => format!("(col {i})"),
        Region::FiniteSet(points) => {
            let mut s = String::from("(finite");
            for (j, k) in points {
                let _ = write!(s, " ({j} {k})");
            }
            s.push(')');
            s
        }
        Region::Union(a, b) => format!("(union {} {})", print_region(a), print_region(b)),
        Region::Intersection(a, b) => {
            format!("(inter {} {})", print_region(a), print_region(b))
        }
        Region::Difference(a, b) => {
            format!("(diff {} {})", print_region(a), print_region(b))
        }
        Region::Complement(a) => format!("(compl {})", print_region(a)),
    }
}

// ---------------------------------------------------------------------------
// Rules and sequences
// ---------------------------------------------------------------------------

fn scalar_from_sexp(s: &Sexp) -> Result<ScalarFormula> {
    let items = s.list()?;
    let head = s.head()?;
    let args = &items[1..];
    match head {
        "const" => {
            expect_len(args, 1, "const")?;
            Ok(ScalarFormula::Const(parse_f64(&args[0])?))
        }
        "prod-jk" => {
            expect_len(args, 1, "prod-jk")?;
            Ok(ScalarFormula::ProdJk(parse_f64(&args[0])?))
        }
        "alt-j" => {
            expect_len(args, 0, "alt-j")?;
            Ok(ScalarFormula::AltJ)
        }
        "alt-k" => {
            expect_len(args, 0, "alt-k")?;
            Ok(ScalarFormula::AltK)
        }
        "alt-jk" => {
            expect_len(args, 0, "alt-jk")?;
            Ok(ScalarFormula::AltJk)
        }
        "decay-sum" => {
            expect_len(args, 1, "decay-sum")?;
            Ok(ScalarFormula::DecaySum(parse_f64(&args[0])?))
        }
        "ratio-j" => {
            expect_len(args, 0, "ratio-j")?;
            Ok(ScalarFormula::RatioJ)
        }
        "offset-decay" => {
            expect_len(args, 2, "offset-decay")?;
            Ok(ScalarFormula::OffsetDecay(
                parse_f64(&args[0])?,
                parse_f64(&args[1])?,
            ))
        }
        other => Err(Error::Parse(format!("unknown formula {other:?}"))),
    }
}

fn print_scalar(f: &ScalarFormula) -> String {
    match f {
        ScalarFormula::Const(c) => format!("(const {c})"),
        ScalarFormula::ProdJk(c) => format!("(prod-jk {c})"),
        ScalarFormula::AltJ => "(alt-j)".into(),
        ScalarFormula::AltK => "(alt-k)".into(),
        ScalarFormula::AltJk => "(alt-jk)".into(),
        ScalarFormula::DecaySum(c) => format!("(decay-sum {c})"),
        ScalarFormula::RatioJ => "(ratio-j)".into(),
        ScalarFormula::OffsetDecay(c, c2) => format!("(offset-decay {c} {c2})"),
    }
}

fn rule_from_sexp(s: &Sexp) -> Result<ValueRule> {
    let items = s.list()?;
    let head = s.head()?;
    let args = &items[1..];
    match head {
        "const" => {
            if args.is_empty() {
                return Err(Error::Parse("const needs at least one coordinate".into()));
            }
            let coords = args.iter().map(parse_f64).collect::<Result<Vec<_>>>()?;
            Ok(ValueRule::Constant(Point::new(coords).map_err(|e| {
                Error::Parse(format!("invalid constant: {e}"))
            })?))
        }
        "formula" => {
            if args.is_empty() {
                return Err(Error::Parse("formula needs at least one coordinate".into()));
            }
            Ok(ValueRule::Formula(
                args.iter().map(scalar_from_sexp).collect::<Result<_>>()?,
            ))
        }
        other => Err(Error::Parse(format!(
            "unknown rule form {other:?}; expected const or formula"
        ))),
    }
}

fn print_rule(rule: &ValueRule) -> String {
    match rule {
        ValueRule::Constant(p) => {
            let mut s = String::from("(const");
            for c in p.coords() {
                let _ = write!(s, " {c}");
            }
            s.push(')');
            s
        }
        ValueRule::Formula(fs) => {
            let mut s = String::from("(formula");
            for f in fs {
                let _ = write!(s, " {}", print_scalar(f));
            }
            s.push(')');
            s
        }
    }
}

fn limit_from_sexp(s: &Sexp) -> Result<DeclaredLimit> {
    let args = s.tagged("limit")?;
    if args.len() == 1 {
        if let Sexp::Atom(a) = &args[0] {
            if a == "divergent" {
                return Ok(DeclaredLimit::Divergent);
            }
        }
    }
    if args.is_empty() {
        return Err(Error::Parse("limit needs coordinates or divergent".into()));
    }
    let coords = args.iter().map(parse_f64).collect::<Result<Vec<_>>>()?;
    Ok(DeclaredLimit::Point(Point::new(coords).map_err(|e| {
        Error::Parse(format!("invalid limit point: {e}"))
    })?))
}

fn print_limit(limit: &DeclaredLimit) -> String {
    match limit {
        DeclaredLimit::Divergent => "(limit divergent)".into(),
        DeclaredLimit::Point(p) => {
            let mut s = String::from("(limit");
            for c in p.coords() {
                let _ = write!(s, " {c}");
            }
            s.push(')');
            s
        }
    }
}

fn rule_spec_from_args(args: &[Sexp], what: &str) -> Result<RuleSpec> {
    match args.len() {
        1 => Ok(RuleSpec::new(rule_from_sexp(&args[0])?)),
        2 => Ok(RuleSpec {
            rule: rule_from_sexp(&args[0])?,
            declared_limit: Some(limit_from_sexp(&args[1])?),
        }),
        n => Err(Error::Parse(format!(
            "{what} expects a rule and an optional limit, found {n} items"
        ))),
    }
}

/// Parse a sequence spec file.
pub fn parse_sequence(input: &str) -> Result<StructuredSequence> {
    let sexp = read_one(input)?;
    let items = sexp.tagged("sequence")?;
    if items.is_empty() {
        return Err(Error::Parse("sequence needs a name".into()));
    }
    let name = items[0].atom()?.to_string();
    let mut dim: Option<usize> = None;
    let mut pieces: Vec<Piece> = Vec::new();
    let mut default: Option<RuleSpec> = None;
    for item in &items[1..] {
        match item.head()? {
            "dim" => {
                let args = item.tagged("dim")?;
                expect_len(args, 1, "dim")?;
                dim = Some(parse_u64(&args[0])? as usize);
            }
            "piece" => {
                let args = item.tagged("piece")?;
                if args.len() < 2 {
                    return Err(Error::Parse("piece expects a region and a rule".into()));
                }
                if default.is_some() {
                    return Err(Error::Parse("pieces must precede the default".into()));
                }
                pieces.push(Piece {
                    region: region_from_sexp(&args[0])?,
                    spec: rule_spec_from_args(&args[1..], "piece")?,
                });
            }
            "default" => {
                if default.is_some() {
                    return Err(Error::Parse("duplicate default".into()));
                }
                default = Some(rule_spec_from_args(item.tagged("default")?, "default")?);
            }
            other => return Err(Error::Parse(format!("unknown sequence item {other:?}"))),
        }
    }
    let dim = dim.ok_or_else(|| Error::Parse("missing (dim ...)".into()))?;
    let default = default.ok_or_else(|| Error::Parse("missing (default ...)".into()))?;
    StructuredSequence::new(name, dim, pieces, default)
}

/// Canonical printing; `parse_sequence(print_sequence(x)) == x`.
pub fn print_sequence(seq: &StructuredSequence) -> String {
    let mut s = format!("(sequence {}\n  (dim {})\n", seq.name(), seq.dim());
    let spec_suffix = |spec: &RuleSpec| match &spec.declared_limit {
        Some(l) => format!(" {}", print_limit(l)),
        None => String::new(),
    };
    for piece in seq.pieces() {
        let _ = writeln!(
            s,
            "  (piece {} {}{})",
            print_region(&piece.region),
            print_rule(&piece.spec.rule),
            spec_suffix(&piece.spec)
        );
    }
    let d = seq.default_rule();
    let _ = write!(
        s,
        "  (default {}{}))",
        print_rule(&d.rule),
        spec_suffix(d)
    );
    s.push('\n');
    s
}
