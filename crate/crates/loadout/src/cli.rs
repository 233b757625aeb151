//! Command-line front end.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use loadout_core::bounds::{achieved_loadouts, asymptotic_report, bound_report, oracle_loadouts, CountMethod};
use loadout_core::cells::{
    cell_certificate, certificate_from_facet, enumerate_equality_loadouts, enumerate_inequality_loadouts,
    inequality_cell_certificate_with,
    is_simplicial, CellOutcome, Enumerated, FacetOutcome,
};
use loadout_core::cyclic::{
    blocks, count_arrays, enumerate_faces, enumerate_facets, fvector, gap_parity, is_face, FacetClass, Parity,
    ParityFilter, StarArray, DEFAULT_ENUMERATION_CAP,
};
use loadout_core::designs::{
    exact_design_m2, exact_design_m3_at, identity_design, moment_curve_design, Design, DesignKind,
    DEFAULT_DESIGN_BITS,
};
use loadout_core::exactmath::{parse_rational, ratio, PrecisionPolicy, Rational};
use loadout_core::lpsolver::verify_loadout;
use loadout_core::{Error, Result};

use crate::json::{self, Style};
use crate::sweep::{self, SweepSpec};

#[derive(Debug, Parser)]
#[command(name = "loadout", version, about = "Exact loadout enumeration and bounds for LP game designs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct (or load) a design and print it.
    Design {
        #[command(flatten)]
        design: DesignArgs,
        /// Include the validation report.
        #[arg(long)]
        validate: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enumerate the k-loadouts of a design.
    Loadouts {
        #[command(flatten)]
        design: DesignArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Inequality)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long)]
        cap: Option<u128>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check one subset: LP oracle, cell or inequality-cell certificate, or
    /// the moment-curve facet hyperplane.
    Verify {
        #[command(flatten)]
        design: DesignArgs,
        /// Comma-separated 1-based indices.
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value_t = Check::Oracle)]
        check: Check,
        /// Explicit nonnegative witness x with support equal to the subset.
        #[arg(long, conflicts_with = "seed")]
        witness: Option<String>,
        /// Draw a random positive rational witness from this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cyclic polytope face counts, face and facet lists, subset structure.
    Cyclic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// List the k-subsets spanning faces.
        #[arg(long, conflicts_with_all = ["parity", "subset"])]
        k: Option<usize>,
        /// List facets of the given gap parity.
        #[arg(long, value_enum, conflicts_with = "subset")]
        parity: Option<FacetParity>,
        /// Describe one subset: blocks, gap parity, face test.
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        cap: Option<u128>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Count star/dot arrays with k stars and s odd inner blocks.
    Arrays {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        /// Restrict to arrays whose last border block has this parity.
        #[arg(long, value_enum)]
        parity: Option<BorderParity>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Upper and lower bounds on k-loadout counts.
    Bounds {
        /// One value or a list/range, e.g. 5 or 20,40,60 or 5..9.
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_kind)]
        kind: Option<DesignKind>,
        /// Report f_{k-1}(C(n,m)) / f_{k-1}(C(n+1,m)) for each n instead.
        #[arg(long)]
        asymptotic: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bound reports with achieved counts over a grid of n and k.
    Sweep {
        #[arg(long, value_parser = parse_kind)]
        kind: DesignKind,
        /// List or inclusive range, e.g. 3..12.
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: Option<usize>,
        /// List or inclusive range.
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long)]
        cap: Option<u128>,
        #[arg(long = "precision-bits")]
        precision_bits: Option<u32>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    #[arg(long, value_parser = parse_kind, conflicts_with = "design")]
    pub kind: Option<DesignKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Comma-separated increasing curve parameters.
    #[arg(long)]
    pub t: Option<String>,
    #[arg(long = "M")]
    pub big_m: Option<String>,
    /// Design JSON file, or - for standard input.
    #[arg(long)]
    pub design: Option<String>,
    #[arg(long = "precision-bits")]
    pub precision_bits: Option<u32>,
    /// Add this rational to every cost.
    #[arg(long)]
    pub perturb: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Render numbers as rounded decimals instead of exact values.
    #[arg(long)]
    pub approx: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Equality,
    Inequality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Cells,
    Oracle,
    Both,
}

impl From<Method> for CountMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Cells => CountMethod::Cells,
            Method::Oracle => CountMethod::Oracle,
            Method::Both => CountMethod::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Oracle,
    Cell,
    Inequality,
    Facet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FacetParity {
    Odd,
    Even,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BorderParity {
    Odd,
    Even,
}

fn parse_kind(s: &str) -> std::result::Result<DesignKind, String> {
    DesignKind::parse(s).map_err(|e| e.to_string())
}

/// Process result: exit code plus the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNRESOLVED: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_)
        | Error::InvalidDesign(_)
        | Error::Parse(_)
        | Error::DimensionMismatch(_)
        | Error::EnumerationTooLarge { .. }
        | Error::MatrixTooLarge { .. }
        | Error::NotExact => EXIT_USAGE,
        Error::IndeterminateSign { .. } => EXIT_UNRESOLVED,
        _ => EXIT_FAILURE,
    }
}

/// Parses `argv` (including the program name) and runs the command, reading
/// `--design -` from `stdin`.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() };
            }
            let payload = json!({ "error": "invalid_arguments", "detail": e.kind().to_string() });
            return Outcome { code: EXIT_USAGE, stdout: format!("{payload}\n"), stderr: e.to_string() };
        }
    };
    match execute(cli.command, stdin) {
        Ok((code, text)) => Outcome { code, stdout: text, stderr: String::new() },
        Err(e) => {
            let payload = json::error(&e);
            Outcome { code: exit_code(&e), stdout: format!("{payload}\n"), stderr: format!("error: {e}\n") }
        }
    }
}

fn emit(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn style(out: &OutputArgs) -> Style {
    Style { approx: out.approx }
}

fn json_only(out: &OutputArgs) -> Result<()> {
    if out.format == Format::Csv {
        return Err(Error::InvalidParams("this command only writes JSON".into()));
    }
    Ok(())
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<(i32, String)> {
    match command {
        Command::Design { design, validate, out } => {
            json_only(&out)?;
            let d = load_design(&design, stdin)?;
            let mut v = json::design(&d, style(&out));
            if validate {
                let r = d.validate();
                v["validation"] = json!({
                    "valid": r.is_valid(),
                    "nonnegative": r.nonnegative,
                    "rank": r.rank,
                    "full_row_rank": r.full_row_rank,
                    "distinct_columns": r.distinct_columns,
                    "issues": r.issues,
                });
            }
            Ok((EXIT_OK, emit(&v)))
        }
        Command::Loadouts { design, k, mode, method, cap, out } => {
            let d = load_design(&design, stdin)?;
            loadouts(&d, k, mode, method, cap.unwrap_or(DEFAULT_ENUMERATION_CAP), policy(design.precision_bits), &out)
        }
        Command::Verify { design, subset, check, witness, seed, out } => {
            json_only(&out)?;
            let d = load_design(&design, stdin)?;
            let subset = parse_list(&subset)?;
            let v = verify(&d, &subset, check, witness.as_deref(), seed, policy(design.precision_bits), style(&out))?;
            Ok((EXIT_OK, emit(&v)))
        }
        Command::Cyclic { n, m, k, parity, subset, cap, out } => {
            json_only(&out)?;
            let cap = cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
            let v = if let Some(k) = k {
                let faces = enumerate_faces(n, m, k, cap)?;
                json!({ "n": n, "m": m, "k": k, "count": faces.len(), "faces": faces })
            } else if let Some(p) = parity {
                let filter = match p {
                    FacetParity::Odd => ParityFilter::Odd,
                    FacetParity::Even => ParityFilter::Even,
                    FacetParity::Both => ParityFilter::Both,
                };
                let facets = enumerate_facets(n, m, filter, cap)?;
                let name = format!("{p:?}").to_lowercase();
                json!({ "n": n, "m": m, "parity": name, "count": facets.len(), "facets": facets })
            } else if let Some(s) = subset {
                describe_subset(n, m, &parse_list(&s)?)?
            } else {
                let f = fvector(n, m)?;
                json!({ "n": n, "m": m, "fvector": f.entries.iter().map(json::count).collect::<Vec<_>>() })
            };
            Ok((EXIT_OK, emit(&v)))
        }
        Command::Arrays { n, k, s, parity, out } => {
            json_only(&out)?;
            let p = parity.map(|p| match p {
                BorderParity::Odd => Parity::Odd,
                BorderParity::Even => Parity::Even,
            });
            let c = count_arrays(n, k, s, p)?;
            let name = parity.map(|p| format!("{p:?}").to_lowercase());
            Ok((EXIT_OK, emit(&json!({ "n": n, "k": k, "s": s, "parity": name, "count": json::count(&c) }))))
        }
        Command::Bounds { n, m, k, kind, asymptotic, out } => {
            let ns = parse_range(&n)?;
            if asymptotic {
                json_only(&out)?;
                let r = asymptotic_report(m, k, &ns)?;
                return Ok((EXIT_OK, emit(&json::asymptotic(&r, style(&out)))));
            }
            let kind = kind.unwrap_or(match m {
                2 => DesignKind::ExactM2,
                3 => DesignKind::ExactM3,
                _ => DesignKind::MomentCurve,
            });
            let reports = ns.iter().map(|&n| bound_report(kind, n, m, k)).collect::<Result<Vec<_>>>()?;
            let text = match out.format {
                Format::Csv => {
                    let rows: Vec<sweep::SweepRow> = reports
                        .into_iter()
                        .map(|r| sweep::SweepRow { n: r.n, m: r.m, k: r.k, kind: r.kind, result: Ok(r), runtime_ms: 0 })
                        .collect();
                    sweep::to_csv(&rows)
                }
                Format::Json if reports.len() == 1 => emit(&json::bound_report(&reports[0], style(&out))),
                Format::Json => {
                    emit(&Value::Array(reports.iter().map(|r| json::bound_report(r, style(&out))).collect()))
                }
            };
            Ok((EXIT_OK, text))
        }
        Command::Sweep { kind, n, m, k, method, cap, precision_bits, jobs, out } => {
            let spec = SweepSpec {
                kind,
                ns: parse_range(&n)?,
                m,
                ks: parse_range(&k)?,
                method: method.into(),
                cap: cap.unwrap_or(DEFAULT_ENUMERATION_CAP),
                policy: policy(precision_bits),
            };
            let rows = sweep::run_sweep(&spec, jobs)?;
            let code = rows
                .iter()
                .filter_map(|r| r.result.as_ref().err())
                .map(|e| if exit_code(e) == EXIT_UNRESOLVED { EXIT_UNRESOLVED } else { EXIT_FAILURE })
                .min()
                .unwrap_or(EXIT_OK);
            let text = match out.format {
                Format::Csv => sweep::to_csv(&rows),
                Format::Json => emit(&sweep::to_json(&rows, style(&out))),
            };
            Ok((code, text))
        }
    }
}

fn policy(bits: Option<u32>) -> PrecisionPolicy {
    let mut p = PrecisionPolicy::default();
    if let Some(b) = bits {
        p.start_bits = b.max(1);
        p.cap_bits = p.cap_bits.max(p.start_bits);
    }
    p
}

fn loadouts(
    d: &Design,
    k: usize,
    mode: Mode,
    method: Method,
    cap: u128,
    policy: PrecisionPolicy,
    out: &OutputArgs,
) -> Result<(i32, String)> {
    let mode_name = format!("{mode:?}").to_lowercase();
    let (status, result) = match mode {
        Mode::Equality => {
            if method == Method::Oracle {
                return Err(Error::InvalidParams("the LP oracle checks the inequality program only".into()));
            }
            ("resolved", enumerate_equality_loadouts(d, k, cap)?)
        }
        Mode::Inequality if !d.is_exact() => {
            ("certified", Enumerated::Resolved(achieved_loadouts(d, k, method.into(), cap, policy)?))
        }
        Mode::Inequality => {
            let result = match method {
                Method::Oracle => Enumerated::Resolved(oracle_loadouts(d, k, cap)?),
                Method::Cells => enumerate_inequality_loadouts(d, k, cap)?,
                Method::Both => match enumerate_inequality_loadouts(d, k, cap)? {
                    Enumerated::Resolved(by_cells) => {
                        let by_oracle = oracle_loadouts(d, k, cap)?;
                        if by_cells != by_oracle {
                            return Err(Error::RouteDisagreement(format!(
                                "cells give {} loadouts, oracle gives {}",
                                by_cells.len(),
                                by_oracle.len()
                            )));
                        }
                        Enumerated::Resolved(by_cells)
                    }
                    unresolved => unresolved,
                },
            };
            ("resolved", result)
        }
    };
    match result {
        Enumerated::Resolved(list) => {
            let text = match out.format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["loadout"]).expect("writing to memory");
                    for l in &list {
                        let cell = l.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                        w.write_record([cell]).expect("writing to memory");
                    }
                    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("utf-8")
                }
                Format::Json => emit(&json!({
                    "status": status,
                    "mode": mode_name,
                    "k": k,
                    "count": list.len(),
                    "loadouts": list,
                })),
            };
            Ok((EXIT_OK, text))
        }
        Enumerated::NonGeneric { witness } => {
            json_only(out)?;
            let v = json!({
                "status": "non_generic",
                "mode": mode_name,
                "k": k,
                "witness": witness,
                "detail": "a maximal cell is not simplicial; the loadout set is unresolved",
            });
            Ok((EXIT_UNRESOLVED, emit(&v)))
        }
    }
}

fn verify(
    d: &Design,
    subset: &[usize],
    check: Check,
    witness: Option<&str>,
    seed: Option<u64>,
    policy: PrecisionPolicy,
    style: Style,
) -> Result<Value> {
    Ok(match check {
        Check::Oracle => {
            let w = match (witness, seed) {
                (Some(w), _) => Some(parse_rationals(w)?),
                (None, Some(seed)) => Some(random_witness(d.n, subset, seed)),
                (None, None) => None,
            };
            json::loadout_check(&verify_loadout(d, subset, w.as_deref())?, style)
        }
        Check::Cell => {
            let simplicial = is_simplicial(d, subset)?;
            match cell_certificate(d, subset)? {
                CellOutcome::Cell(c) => json!({
                    "subset": subset,
                    "outcome": "cell",
                    "simplicial": simplicial,
                    "certificate": json::certificate(&c, style),
                }),
                CellOutcome::NotACell { contained_in } => json!({
                    "subset": subset,
                    "outcome": "not_a_cell",
                    "simplicial": simplicial,
                    "contained_in": contained_in,
                }),
            }
        }
        Check::Inequality => match inequality_cell_certificate_with(d, subset, policy)? {
            Some(c) => json!({ "subset": subset, "certified": true, "certificate": json::certificate(&c, style) }),
            None => json!({ "subset": subset, "certified": false }),
        },
        Check::Facet => {
            let (outcome, hyperplane, cert) = match certificate_from_facet(d, subset)? {
                FacetOutcome::Certified { certificate, hyperplane } => ("certified", hyperplane, Some(certificate)),
                FacetOutcome::WrongParity { hyperplane } => ("wrong_parity", hyperplane, None),
                FacetOutcome::NotAFacet { hyperplane } => ("not_a_facet", hyperplane, None),
            };
            json!({
                "subset": subset,
                "outcome": outcome,
                "alpha": json::rationals(&hyperplane.alpha, style),
                "beta": json::rational(&hyperplane.beta, style),
                "coefficient_sign": hyperplane.expected_sign.as_i8(),
                "certificate": cert.map(|c| json::certificate(&c, style)),
            })
        }
    })
}

/// Positive rationals `p/q`, `1 <= p, q <= 9`, on the subset; zero elsewhere.
pub fn random_witness(n: usize, subset: &[usize], seed: u64) -> Vec<Rational> {
    let mut rng = StdRng::seed_from_u64(seed);
    (1..=n)
        .map(|j| {
            if subset.contains(&j) {
                ratio(rng.random_range(1..=9), rng.random_range(1..=9))
            } else {
                Rational::from_integer(0.into())
            }
        })
        .collect()
}

fn describe_subset(n: usize, m: usize, subset: &[usize]) -> Result<Value> {
    let array = StarArray::new(n, subset)?;
    let class = match gap_parity(subset, n)? {
        FacetClass::OddFacet => "odd_facet",
        FacetClass::EvenFacet => "even_facet",
        FacetClass::NotFacet => "not_facet",
    };
    let face = if (1..=m).contains(&subset.len()) { Some(is_face(subset, n, m)?) } else { None };
    Ok(json!({
        "n": n,
        "m": m,
        "subset": subset,
        "blocks": json::blocks(&blocks(&array)),
        "gap_parity": class,
        "is_face": face,
    }))
}

fn load_design(args: &DesignArgs, stdin: &mut dyn Read) -> Result<Design> {
    let mut d = match (&args.design, args.kind) {
        (Some(path), _) => {
            let text = if path == "-" {
                let mut s = String::new();
                stdin.read_to_string(&mut s).map_err(|e| Error::Parse(format!("reading standard input: {e}")))?;
                s
            } else {
                std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))?
            };
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            json::parse_design(&v)?
        }
        (None, Some(kind)) => construct(kind, args)?,
        (None, None) => return Err(Error::InvalidParams("give --design or --kind".into())),
    };
    if let Some(p) = &args.perturb {
        d = d.perturbed(&parse_rational(p)?);
    }
    Ok(d)
}

fn construct(kind: DesignKind, args: &DesignArgs) -> Result<Design> {
    let n = args.n.ok_or_else(|| Error::InvalidParams("--n is required".into()))?;
    let fixed_m = |want: usize| match args.m {
        Some(m) if m != want => Err(Error::InvalidParams(format!("{} designs have m = {want}", kind.as_str()))),
        _ => Ok(()),
    };
    if kind != DesignKind::MomentCurve && (args.t.is_some() || args.big_m.is_some()) {
        return Err(Error::InvalidParams("--t and --M apply to moment-curve designs only".into()));
    }
    match kind {
        DesignKind::MomentCurve => {
            let m = args.m.ok_or_else(|| Error::InvalidParams("--m is required".into()))?;
            let t = args.t.as_deref().map(parse_rationals).transpose()?;
            let big_m = args.big_m.as_deref().map(parse_rational).transpose()?;
            moment_curve_design(n, m, t, big_m)
        }
        DesignKind::ExactM3 => {
            fixed_m(3)?;
            exact_design_m3_at(n, args.precision_bits.unwrap_or(DEFAULT_DESIGN_BITS))
        }
        DesignKind::ExactM2 => {
            fixed_m(2)?;
            exact_design_m2(n)
        }
        DesignKind::Identity => {
            fixed_m(n)?;
            identity_design(n)
        }
        DesignKind::User => Err(Error::InvalidParams("user designs are loaded with --design".into())),
    }
}

pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("'{p}' is not a nonnegative integer"))))
        .collect()
}

fn parse_rationals(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|p| parse_rational(p.trim())).collect()
}

/// `a..b` or `a-b` (inclusive), or a comma list of values and ranges.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let bounds = part.split_once("..").or_else(|| part.split_once('-'));
        match bounds {
            Some((a, b)) => {
                let (a, b) = (parse_list(a)?[0], parse_list(b.trim_start_matches('='))?[0]);
                if a > b {
                    return Err(Error::Parse(format!("empty range '{part}'")));
                }
                out.extend(a..=b);
            }
            None => out.extend(parse_list(part)?),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_range("3-5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_range("2,4..5").unwrap(), vec![2, 4, 5]);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn witnesses_are_reproducible() {
        let a = random_witness(5, &[2, 4], 11);
        assert_eq!(a, random_witness(5, &[2, 4], 11));
        assert_eq!(loadout_core::lpsolver::support_of(&a), vec![2, 4]);
    }
}
