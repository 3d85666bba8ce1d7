//! Command-line front end: parse sequence/ideal specs, run analyses and
//! theorem checks, emit machine-readable results and plot data.
//!
//! Exit codes: 0 success, 1 check failure or oracle disagreement, 2 input
//! error, 3 undecidable region.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use roughlim::analysis::{
    check_ball_characterization, check_boundedness_equivalence, check_closedness,
    check_cluster_ball, check_diameter, check_limsup_liminf, check_midpoint, cluster_points,
    ideal_liminf, ideal_limsup, is_i_convergent, min_roughness_degree, rough_limit_set,
    rough_limit_set_nd, CheckResult, RoughnessDegree, RoughnessQuery,
};
use roughlim::geometry::{NormSpec, Point};
use roughlim::ideals::IdealSpec;
use roughlim::oracle::{
    hausdorff_interval_points, oracle_limit_set_scan, Exhaustion, DEFAULT_EPS_POLICY,
};
use roughlim::sequences::{is_bounded, is_i_bounded, validate, StructuredSequence};
use roughlim::Error;

use report::{sig12, Document, OutputFormat};

#[derive(Parser)]
#[command(
    name = "roughlim",
    version,
    about = "Rough ideal-convergence analysis of double sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boundedness, cluster points, limsup/liminf, and minimal roughness
    /// degree of a sequence.
    Analyze(AnalyzeArgs),
    /// Rough limit sets for one r or an r sweep; optional oracle scan.
    Limitset(LimitsetArgs),
    /// Run theorem checkers and report pass/fail per theorem.
    Check(CheckArgs),
    /// Compare the exact limit set against the truncation-oracle scan.
    OracleCompare(OracleCompareArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the sequence spec file.
    #[arg(long)]
    seq: PathBuf,
    /// Ideal: density-zero, minimal-sa, or finite-sets.
    #[arg(long, default_value = "density-zero")]
    ideal: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Norm: a p value (p >= 1) or "max".
    #[arg(long, default_value = "2")]
    norm: String,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct LimitsetArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Single roughness degree.
    #[arg(long, conflicts_with_all = ["r_from", "r_to", "r_step"])]
    r: Option<f64>,
    /// Sweep start (requires --r-to and --r-step).
    #[arg(long, requires = "r_to", requires = "r_step")]
    r_from: Option<f64>,
    /// Sweep end, inclusive.
    #[arg(long)]
    r_to: Option<f64>,
    /// Sweep step, > 0.
    #[arg(long)]
    r_step: Option<f64>,
    /// Also run the truncation-oracle scan and report agreement.
    #[arg(long)]
    oracle: bool,
    /// Lattice step for scans (and for limit sets in dimension >= 2).
    #[arg(long, default_value_t = 0.1)]
    lattice: f64,
    /// Exhaustion override, e.g. 50x50,100x100,200x200.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Theorem to check.
    #[arg(long, value_enum, default_value_t = TheoremSel::All)]
    theorem: TheoremSel,
    /// Roughness degree used by the checkers.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// First rough limit for the midpoint check, e.g. "0,0".
    #[arg(long, allow_hyphen_values = true)]
    y1: Option<String>,
    /// Second rough limit for the midpoint check.
    #[arg(long, allow_hyphen_values = true)]
    y2: Option<String>,
}

#[derive(Args)]
struct OracleCompareArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Roughness degree.
    #[arg(long)]
    r: f64,
    /// Lattice step for the oracle scan.
    #[arg(long, default_value_t = 0.1)]
    lattice: f64,
    /// Exhaustion override, e.g. 50x50,100x100,200x200.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremSel {
    Diameter,
    Ball,
    ClusterBall,
    Boundedness,
    Closedness,
    Midpoint,
    LimsupLiminf,
    All,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("ROUGHLIM_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Limitset(args) => cmd_limitset(args),
        Command::Check(args) => cmd_check(args),
        Command::OracleCompare(args) => cmd_oracle_compare(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::UndecidableRegion(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load_sequence(common: &CommonArgs) -> Result<StructuredSequence, Error> {
    let text = std::fs::read_to_string(&common.seq)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", common.seq.display())))?;
    let seq = roughlim::sexpr::parse_sequence(&text)?;
    let diags = validate(&seq);
    if !diags.is_valid() {
        return Err(Error::InvalidSequence(diags.summary()));
    }
    Ok(seq)
}

fn parse_norm(s: &str) -> Result<NormSpec, Error> {
    if s == "max" {
        return Ok(NormSpec::max());
    }
    let p: f64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("invalid norm {s:?}; expected a number or max")))?;
    NormSpec::p(p)
}

fn parse_point(s: &str, dim: usize) -> Result<Point, Error> {
    let coords: Vec<f64> = s
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("invalid coordinate {c:?}")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: coords.len(),
        });
    }
    Point::new(coords)
}

fn parse_grid(s: &str) -> Result<Exhaustion, Error> {
    let stages: Vec<(u64, u64)> = s
        .split(',')
        .map(|stage| {
            let (n, m) = stage
                .split_once('x')
                .ok_or_else(|| Error::Parse(format!("invalid grid stage {stage:?}")))?;
            Ok((
                n.parse()
                    .map_err(|_| Error::Parse(format!("invalid grid bound {n:?}")))?,
                m.parse()
                    .map_err(|_| Error::Parse(format!("invalid grid bound {m:?}")))?,
            ))
        })
        .collect::<Result<_, Error>>()?;
    Exhaustion::new(stages)
}

fn scan_box(seq: &StructuredSequence, ideal: IdealSpec, r: f64) -> Result<Vec<(f64, f64)>, Error> {
    let clusters = cluster_points(seq, ideal)?;
    let dim = seq.dim();
    let mut boxes = Vec::with_capacity(dim);
    for axis in 0..dim {
        let values: Vec<f64> = clusters
            .points
            .iter()
            .map(|c| c.point.coords()[axis])
            .collect();
        let (lo, hi) = if values.is_empty() {
            (0.0, 0.0)
        } else {
            (
                values.iter().cloned().fold(f64::INFINITY, f64::min),
                values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            )
        };
        boxes.push((lo - r - 1.0, hi + r + 1.0));
    }
    Ok(boxes)
}

fn inputs_echo(common: &CommonArgs, seq: &StructuredSequence) -> report::Inputs {
    let mut inputs = report::Inputs::new();
    inputs.set_str("sequence", seq.name());
    inputs.set_str("seq_path", &common.seq.display().to_string());
    inputs.set_str("ideal", common.ideal.as_str());
    inputs.set_str("norm", &common.norm);
    inputs
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<ExitCode, Error> {
    let seq = load_sequence(&args.common)?;
    let ideal = IdealSpec::parse_name(&args.common.ideal)?;
    let norm = parse_norm(&args.common.norm)?;

    let bounded = is_bounded(&seq, &norm);
    let ibounded = is_i_bounded(&seq, ideal, &norm)?;
    let clusters = cluster_points(&seq, ideal)?;
    let convergent = is_i_convergent(&seq, ideal)?;

    let mut results = report::Map::new();
    match &bounded {
        roughlim::sequences::Boundedness::Bounded { bound } => {
            results.set_bool("bounded", true);
            results.set_num("bound", *bound);
        }
        roughlim::sequences::Boundedness::Unbounded { witness } => {
            results.set_bool("bounded", false);
            results.set_str("unbounded_witness", &roughlim::sexpr::print_region(witness));
        }
    }
    match &ibounded {
        roughlim::sequences::IdealBoundedness::IdealBounded { bound } => {
            results.set_bool("i_bounded", true);
            results.set_num("i_bound", *bound);
        }
        roughlim::sequences::IdealBoundedness::NotIdealBounded { witness } => {
            results.set_bool("i_bounded", false);
            results.set_str(
                "not_i_bounded_witness",
                &roughlim::sexpr::print_region(witness),
            );
        }
    }
    results.set_val("clusters", report::clusters_json(&clusters));
    if seq.dim() == 1 && ibounded.is_ideal_bounded() {
        results.set_num("limsup", ideal_limsup(&seq, ideal)?);
        results.set_num("liminf", ideal_liminf(&seq, ideal)?);
    }
    if seq.dim() == 1 {
        match min_roughness_degree(&seq, ideal)? {
            RoughnessDegree::Finite(d) => results.set_num("r_min", d),
            RoughnessDegree::Infinite => results.set_str("r_min", "infinite"),
        }
    }
    match convergent {
        Some(p) => results.set_val("i_limit", report::point_json(&p)),
        None => results.set_val("i_limit", serde_json::Value::Null),
    }

    let doc = Document {
        command: "analyze".into(),
        inputs: inputs_echo(&args.common, &seq),
        results: results.into_value(),
    };
    doc.emit(args.common.format);
    Ok(ExitCode::SUCCESS)
}

fn sweep_values(args: &LimitsetArgs) -> Result<Vec<f64>, Error> {
    match (args.r, args.r_from, args.r_to, args.r_step) {
        (Some(r), None, None, None) => Ok(vec![r]),
        (None, Some(from), Some(to), Some(step)) => {
            if !step.is_finite() || step <= 0.0 {
                return Err(Error::InvalidQuery(format!(
                    "sweep step must be > 0, got {step}"
                )));
            }
            if from < 0.0 {
                return Err(Error::InvalidQuery("sweep start must be >= 0".into()));
            }
            let mut values = Vec::new();
            let mut i = 0u64;
            loop {
                let r = from + step * i as f64;
                if r > to + step * 1e-9 {
                    break;
                }
                values.push(r);
                i += 1;
            }
            Ok(values)
        }
        (None, None, None, None) => Err(Error::InvalidQuery(
            "limitset needs --r or --r-from/--r-to/--r-step".into(),
        )),
        _ => Err(Error::InvalidQuery(
            "use either --r or a full sweep specification".into(),
        )),
    }
}

fn cmd_limitset(args: LimitsetArgs) -> Result<ExitCode, Error> {
    let seq = load_sequence(&args.common)?;
    let ideal = IdealSpec::parse_name(&args.common.ideal)?;
    let norm = parse_norm(&args.common.norm)?;
    let rs = sweep_values(&args)?;
    let exhaustion = match &args.grid {
        Some(g) => parse_grid(g)?,
        None => Exhaustion::default(),
    };

    let mut rows = Vec::new();
    for &r in &rs {
        let mut row = report::Map::new();
        row.set_num("r", r);
        if seq.dim() == 1 {
            let set = rough_limit_set(&seq, ideal, r)?;
            report::interval_into(&mut row, &set);
            if args.oracle {
                let query = RoughnessQuery::new(r, None, DEFAULT_EPS_POLICY.to_vec())?;
                let boxes = scan_box(&seq, ideal, r)?;
                let points = oracle_limit_set_scan(
                    &seq,
                    ideal,
                    query.r,
                    &boxes,
                    args.lattice,
                    &query.eps_policy,
                    &norm,
                    &exhaustion,
                )?;
                let xs: Vec<f64> = points.iter().map(|p| p.coords()[0]).collect();
                let interval = set.interval().expect("dim 1");
                let dist = hausdorff_interval_points(interval, &xs);
                row.set_val(
                    "oracle_points",
                    serde_json::Value::Array(
                        xs.iter()
                            .map(|&x| report::num_value(sig12(x)))
                            .collect(),
                    ),
                );
                if dist.is_finite() {
                    row.set_num("hausdorff", dist);
                } else {
                    row.set_str("hausdorff", "infinite");
                }
                row.set_bool("agree", dist <= args.lattice + 0.05);
            }
        } else {
            let set = rough_limit_set_nd(&seq, ideal, r, &norm, args.lattice)?;
            report::lattice_into(&mut row, &set);
        }
        rows.push(row.into_value());
    }

    let mut inputs = inputs_echo(&args.common, &seq);
    inputs.set_val(
        "r_values",
        serde_json::Value::Array(rs.iter().map(|&r| report::num_value(sig12(r))).collect()),
    );
    let mut results = report::Map::new();
    results.set_val("sets", serde_json::Value::Array(rows));
    let doc = Document {
        command: "limitset".into(),
        inputs,
        results: results.into_value(),
    };
    doc.emit(args.common.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, Error> {
    let seq = load_sequence(&args.common)?;
    let ideal = IdealSpec::parse_name(&args.common.ideal)?;
    let norm = parse_norm(&args.common.norm)?;
    let r = args.r;

    let midpoint_args = match (&args.y1, &args.y2) {
        (Some(y1), Some(y2)) => Some((
            parse_point(y1, seq.dim())?,
            parse_point(y2, seq.dim())?,
        )),
        (None, None) => None,
        _ => {
            return Err(Error::InvalidQuery(
                "midpoint check needs both --y1 and --y2".into(),
            ))
        }
    };

    let mut checks: Vec<CheckResult> = Vec::new();
    let sel = args.theorem;
    let run = |sel_match: TheoremSel| sel == TheoremSel::All || sel == sel_match;
    if run(TheoremSel::Diameter) {
        checks.push(check_diameter(&seq, ideal, r)?);
    }
    if run(TheoremSel::ClusterBall) {
        checks.push(check_cluster_ball(&seq, ideal, r)?);
    }
    if run(TheoremSel::Closedness) {
        checks.push(check_closedness(&seq, ideal, r)?);
    }
    if run(TheoremSel::Ball) {
        checks.push(check_ball_characterization(&seq, ideal, r)?);
    }
    if run(TheoremSel::Boundedness) {
        checks.push(check_boundedness_equivalence(&seq, ideal, &norm)?);
    }
    if run(TheoremSel::LimsupLiminf) {
        checks.push(check_limsup_liminf(&seq, ideal)?);
    }
    if sel == TheoremSel::Midpoint || (sel == TheoremSel::All && midpoint_args.is_some()) {
        let (y1, y2) = midpoint_args.ok_or_else(|| {
            Error::InvalidQuery("midpoint check needs both --y1 and --y2".into())
        })?;
        checks.push(check_midpoint(&seq, ideal, &norm, r, &y1, &y2)?);
    }

    let any_fail = checks.iter().any(|c| c.outcome.is_failure());
    let mut inputs = inputs_echo(&args.common, &seq);
    inputs.set_num("r", r);
    let mut results = report::Map::new();
    results.set_val("checks", report::checks_json(&checks));
    results.set_bool("all_passed", !any_fail);
    let doc = Document {
        command: "check".into(),
        inputs,
        results: results.into_value(),
    };
    doc.emit(args.common.format);
    Ok(if any_fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_oracle_compare(args: OracleCompareArgs) -> Result<ExitCode, Error> {
    let seq = load_sequence(&args.common)?;
    if seq.dim() != 1 {
        return Err(Error::DimensionNotOne(seq.dim()));
    }
    let ideal = IdealSpec::parse_name(&args.common.ideal)?;
    let norm = parse_norm(&args.common.norm)?;
    let exhaustion = match &args.grid {
        Some(g) => parse_grid(g)?,
        None => Exhaustion::default(),
    };

    let query = RoughnessQuery::new(args.r, None, DEFAULT_EPS_POLICY.to_vec())?;
    let set = rough_limit_set(&seq, ideal, query.r)?;
    let interval = set.interval().expect("dim 1");
    let boxes = scan_box(&seq, ideal, query.r)?;
    let points = oracle_limit_set_scan(
        &seq,
        ideal,
        query.r,
        &boxes,
        args.lattice,
        &query.eps_policy,
        &norm,
        &exhaustion,
    )?;
    let xs: Vec<f64> = points.iter().map(|p| p.coords()[0]).collect();
    let dist = hausdorff_interval_points(interval, &xs);
    let tolerance = args.lattice + 0.05;
    let agree = dist <= tolerance;

    let mut inputs = inputs_echo(&args.common, &seq);
    inputs.set_num("r", args.r);
    inputs.set_num("lattice", args.lattice);
    let mut results = report::Map::new();
    report::interval_into(&mut results, &set);
    results.set_val(
        "oracle_points",
        serde_json::Value::Array(xs.iter().map(|&x| report::num_value(sig12(x))).collect()),
    );
    if dist.is_finite() {
        results.set_num("hausdorff", dist);
    } else {
        results.set_str("hausdorff", "infinite");
    }
    results.set_num("tolerance", tolerance);
    results.set_bool("agree", agree);
    let doc = Document {
        command: "oracle-compare".into(),
        inputs,
        results: results.into_value(),
    };
    doc.emit(args.common.format);
    Ok(if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
