//! JSON encodings of designs, certificates, solutions and reports.
//!
//! Rationals are strings `"p/q"` (`q` omitted when 1); intervals are objects
//! `{"lo", "hi", "bits"}` with decimal strings rounded outward. Counts are
//! JSON integers up to 2^53 and decimal strings beyond.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use loadout_core::bounds::{AsymptoticReport, BoundReport, LowerBound};
use loadout_core::cells::DualCertificate;
use loadout_core::cyclic::{BlockDecomposition, Block};
use loadout_core::designs::{exact_design_m3_at, Design, DesignKind, DesignParams};
use loadout_core::exactmath::{format_rational, parse_rational, to_decimal, Interval, Matrix, Rational, Rounding};
use loadout_core::lpsolver::{LoadoutCheck, Refutation, Solution, Verdict};
use loadout_core::{Error, Result, Scalar};

/// Significant digits used by approximate rendering.
pub const APPROX_DIGITS: usize = 20;

/// Output options shared by every encoder.
#[derive(Debug, Clone, Copy, Default)]
pub struct Style {
    /// Render every scalar as a rounded decimal string.
    pub approx: bool,
}

fn interval_digits(bits: u32) -> usize {
    // bits * log10(2), rounded up, plus guard digits
    (bits as usize * 30103).div_ceil(100_000) + 2
}

pub fn rational(r: &Rational, style: Style) -> Value {
    if style.approx {
        Value::String(to_decimal(r, APPROX_DIGITS, Rounding::Nearest))
    } else {
        Value::String(format_rational(r))
    }
}

pub fn interval(i: &Interval, style: Style) -> Value {
    let digits = if style.approx { APPROX_DIGITS } else { interval_digits(i.bits()) };
    json!({
        "lo": to_decimal(&i.lower(), digits, Rounding::Down),
        "hi": to_decimal(&i.upper(), digits, Rounding::Up),
        "bits": i.bits(),
    })
}

pub fn scalar(s: &Scalar, style: Style) -> Value {
    match s {
        Scalar::Exact(r) => rational(r, style),
        Scalar::Approx(i) => interval(i, style),
    }
}

pub fn scalars(v: &[Scalar], style: Style) -> Value {
    Value::Array(v.iter().map(|s| scalar(s, style)).collect())
}

pub fn rationals(v: &[Rational], style: Style) -> Value {
    Value::Array(v.iter().map(|r| rational(r, style)).collect())
}

pub fn count(c: &BigUint) -> Value {
    match c.to_u64() {
        Some(v) if v <= 1 << 53 => Value::from(v),
        _ => Value::String(c.to_string()),
    }
}

pub fn subsets(v: &[Vec<usize>]) -> Value {
    json!(v)
}

pub fn parse_scalar(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(Scalar::Exact(parse_rational(s)?)),
        Value::Number(n) => Ok(Scalar::Exact(parse_rational(&n.to_string())?)),
        Value::Object(o) => {
            let field = |k: &str| -> Result<Rational> {
                match o.get(k) {
                    Some(Value::String(s)) => parse_rational(s),
                    Some(Value::Number(n)) => parse_rational(&n.to_string()),
                    _ => Err(Error::Parse(format!("interval needs a '{k}' bound"))),
                }
            };
            let bits = o
                .get("bits")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("interval needs integer 'bits'".into()))?;
            let bits = u32::try_from(bits).map_err(|_| Error::Parse("bits out of range".into()))?;
            Ok(Scalar::Approx(Interval::from_bounds(&field("lo")?, &field("hi")?, bits)?))
        }
        other => Err(Error::Parse(format!("expected a scalar, found {other}"))),
    }
}

fn parse_scalars(v: &Value, what: &str) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("'{what}' must be an array")))?
        .iter()
        .map(parse_scalar)
        .collect()
}

pub fn design(d: &Design, style: Style) -> Value {
    let rows: Vec<Value> = (0..d.m).map(|i| scalars(d.a.row(i), style)).collect();
    let mut params = Map::new();
    if let Some(t) = &d.params.t {
        params.insert("t".into(), rationals(t, style));
    }
    if let Some(m) = &d.params.big_m {
        params.insert("M".into(), rational(m, style));
    }
    if let Some(b) = d.params.precision_bits {
        params.insert("precision_bits".into(), Value::from(b));
    }
    if let Some(p) = &d.params.perturbation {
        params.insert("perturbation".into(), rational(p, style));
    }
    json!({
        "m": d.m,
        "n": d.n,
        "kind": d.kind.as_str(),
        "A": rows,
        "c": scalars(&d.c, style),
        "params": params,
    })
}

/// Reads a design. Constructed kinds whose data no longer matches their
/// construction are downgraded to `user`.
pub fn parse_design(v: &Value) -> Result<Design> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("design must be a JSON object".into()))?;
    let rows = obj
        .get("A")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("design needs an 'A' array of rows".into()))?
        .iter()
        .map(|r| parse_scalars(r, "A row"))
        .collect::<Result<Vec<_>>>()?;
    let a = Matrix::from_rows(rows)?;
    let c = parse_scalars(obj.get("c").ok_or_else(|| Error::Parse("design needs 'c'".into()))?, "c")?;
    for (key, want) in [("m", a.rows()), ("n", a.cols())] {
        if let Some(got) = obj.get(key) {
            if got.as_u64() != Some(want as u64) {
                return Err(Error::Parse(format!("'{key}' = {got} disagrees with A ({want})")));
            }
        }
    }
    let kind = match obj.get("kind").and_then(Value::as_str) {
        Some(k) => DesignKind::parse(k)?,
        None => DesignKind::User,
    };
    let params = parse_params(obj.get("params"))?;
    let mut d = Design::new(a, c, kind, params)?;
    if !matches_construction(&d) {
        d.kind = DesignKind::User;
    }
    Ok(d)
}

fn parse_params(v: Option<&Value>) -> Result<DesignParams> {
    let mut p = DesignParams::default();
    let Some(Value::Object(o)) = v else { return Ok(p) };
    let exact = |v: &Value| -> Result<Rational> {
        match parse_scalar(v)? {
            Scalar::Exact(r) => Ok(r),
            Scalar::Approx(_) => Err(Error::Parse("parameter must be exact".into())),
        }
    };
    if let Some(t) = o.get("t") {
        let arr = t.as_array().ok_or_else(|| Error::Parse("'t' must be an array".into()))?;
        p.t = Some(arr.iter().map(exact).collect::<Result<_>>()?);
    }
    if let Some(m) = o.get("M") {
        p.big_m = Some(exact(m)?);
    }
    if let Some(b) = o.get("precision_bits") {
        p.precision_bits = Some(b.as_u64().and_then(|b| u32::try_from(b).ok()).ok_or_else(|| Error::Parse("bad precision_bits".into()))?);
    }
    if let Some(d) = o.get("perturbation") {
        p.perturbation = Some(exact(d)?);
    }
    Ok(p)
}

fn matches_construction(d: &Design) -> bool {
    use loadout_core::designs::{exact_design_m2, identity_design, moment_curve_design};
    let rebuilt = match d.kind {
        DesignKind::User => return true,
        DesignKind::MomentCurve => moment_curve_design(d.n, d.m, d.params.t.clone(), d.params.big_m.clone()),
        DesignKind::ExactM2 => exact_design_m2(d.n),
        DesignKind::Identity => identity_design(d.n),
        DesignKind::ExactM3 => exact_design_m3_at(d.n, d.params.precision_bits.unwrap_or(128)),
    };
    let Ok(mut rebuilt) = rebuilt else { return false };
    if let Some(delta) = &d.params.perturbation {
        rebuilt = rebuilt.perturbed(delta);
    }
    let encloses = |loaded: &Scalar, exact: &Scalar| match (loaded, exact) {
        (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
        (Scalar::Approx(a), Scalar::Approx(b)) => a.lower() <= b.lower() && b.upper() <= a.upper(),
        _ => false,
    };
    rebuilt.m == d.m
        && rebuilt.n == d.n
        && d.a.entries().zip(rebuilt.a.entries()).all(|(x, y)| encloses(x, y))
        && d.c.iter().zip(&rebuilt.c).all(|(x, y)| encloses(x, y))
}

pub fn certificate(c: &DualCertificate, style: Style) -> Value {
    json!({
        "subset": c.subset,
        "y": scalars(&c.y, style),
        "strict_margin": c.strict_margin.as_ref().map(|s| scalar(s, style)),
        "positivity_margin": c.positivity_margin.as_ref().map(|s| scalar(s, style)),
        "method": c.method.as_str(),
    })
}

pub fn solution(s: &Solution, style: Style) -> Value {
    let mut v = json!({ "status": s.status.as_str() });
    if s.is_optimal() {
        v["x"] = rationals(&s.x, style);
        v["objective"] = rational(&s.objective, style);
        v["basis"] = json!(s.basis.iter().map(|j| j + 1).collect::<Vec<_>>());
        v["dual"] = rationals(&s.dual, style);
    }
    v
}

pub fn loadout_check(c: &LoadoutCheck, style: Style) -> Value {
    let refutation = match &c.verdict {
        Verdict::Confirmed => Value::Null,
        Verdict::Refuted(Refutation::DifferentSupport { support }) => {
            json!({ "reason": "different_support", "support": support })
        }
        Verdict::Refuted(Refutation::NotUnique { witness }) => {
            json!({ "reason": "not_unique", "other_optimum": rationals(witness, style) })
        }
        Verdict::Refuted(Refutation::Unbounded) => json!({ "reason": "unbounded" }),
        Verdict::Refuted(Refutation::Infeasible) => json!({ "reason": "infeasible" }),
    };
    json!({
        "subset": c.subset,
        "confirmed": c.confirmed(),
        "witness": rationals(&c.witness, style),
        "b": rationals(&c.b, style),
        "solution": solution(&c.solution, style),
        "refutation": refutation,
    })
}

/// A bound value: a JSON integer when integral, else an exact rational string.
pub fn bound_value(r: &Rational, style: Style) -> Value {
    if r.is_integer() && !style.approx {
        if let Ok(n) = BigUint::try_from(r.to_integer()) {
            return count(&n);
        }
    }
    rational(r, style)
}

fn lower(l: &LowerBound, style: Style) -> Value {
    json!({ "value": bound_value(&l.value, style), "case": l.case.as_str() })
}

pub fn bound_report(r: &BoundReport, style: Style) -> Value {
    let mut v = json!({
        "n": r.n,
        "m": r.m,
        "k": r.k,
        "kind": r.kind.as_str(),
        "upper": count(&r.upper),
        "lower": bound_value(&r.lower.value, style),
        "lower_case": r.lower.case.as_str(),
    });
    if let Some(alt) = &r.face_count_lower {
        v["alternative_lower"] = lower(alt, style);
    }
    if let Some(a) = &r.achieved {
        v["achieved"] = count(a);
    }
    if let Some(t) = r.tight {
        v["tight"] = Value::Bool(t);
    }
    v
}

pub fn asymptotic(r: &AsymptoticReport, style: Style) -> Value {
    json!({
        "m": r.m,
        "k": r.k,
        "rows": r.rows.iter().map(|row| json!({ "n": row.n, "ratio": rational(&row.ratio, style) })).collect::<Vec<_>>(),
        "nondecreasing": r.nondecreasing(),
        "decreases_at": r.decreases_at,
    })
}

fn block(b: &Block) -> Value {
    json!({ "start": b.start, "end": b.end, "odd": b.len() % 2 == 1 })
}

pub fn blocks(d: &BlockDecomposition) -> Value {
    json!({
        "first_border": d.first_border.as_ref().map(block),
        "inner_blocks": d.inner_blocks.iter().map(block).collect::<Vec<_>>(),
        "last_border": d.last_border.as_ref().map(block),
        "odd_inner_count": d.odd_inner_count(),
    })
}

pub fn error(e: &Error) -> Value {
    json!({ "error": e.code(), "detail": e.to_string() })
}
