//! Parallel evaluation of bound reports over a grid of `(n, m, k)`.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use loadout_core::bounds::{evaluate_row, BoundReport, CountMethod};
use loadout_core::designs::DesignKind;
use loadout_core::exactmath::{format_rational, PrecisionPolicy};
use loadout_core::{Error, Result};

use crate::json::{self, Style};

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub kind: DesignKind,
    pub ns: Vec<usize>,
    /// Defaults to the kind's natural `m` when absent.
    pub m: Option<usize>,
    pub ks: Vec<usize>,
    pub method: CountMethod,
    pub cap: u128,
    pub policy: PrecisionPolicy,
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub kind: DesignKind,
    pub result: Result<BoundReport>,
    pub runtime_ms: u128,
}

impl SweepSpec {
    fn m_for(&self, n: usize) -> Result<usize> {
        match (self.kind, self.m) {
            (_, Some(m)) => Ok(m),
            (DesignKind::ExactM2, None) => Ok(2),
            (DesignKind::ExactM3, None) => Ok(3),
            (DesignKind::Identity, None) => Ok(n),
            _ => Err(Error::InvalidParams(format!("--m is required for {} sweeps", self.kind.as_str()))),
        }
    }

    /// The `(n, m, k)` grid in sweep order.
    pub fn grid(&self) -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        for &n in &self.ns {
            let m = self.m_for(n)?;
            for &k in &self.ks {
                out.push((n, m, k));
            }
        }
        Ok(out)
    }
}

/// Runs every row, on at most `jobs` threads when given. A failing row keeps
/// its error and does not stop the others.
pub fn run_sweep(spec: &SweepSpec, jobs: Option<usize>) -> Result<Vec<SweepRow>> {
    let grid = spec.grid()?;
    let work = || -> Vec<SweepRow> {
        grid.par_iter()
            .map(|&(n, m, k)| {
                let start = Instant::now();
                let result = evaluate_row(spec.kind, n, m, k, spec.method, spec.cap, spec.policy);
                SweepRow { n, m, k, kind: spec.kind, result, runtime_ms: start.elapsed().as_millis() }
            })
            .collect()
    };
    match jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::InvalidParams(format!("cannot start {j} workers: {e}")))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

pub const CSV_HEADER: [&str; 9] = ["n", "m", "k", "kind", "lower", "achieved", "upper", "tight", "runtime_ms"];

fn csv_fields(row: &SweepRow) -> [String; 9] {
    let (lower, achieved, upper, tight) = match &row.result {
        Ok(r) => (
            format_rational(&r.lower.value),
            r.achieved.as_ref().map(|a| a.to_string()).unwrap_or_default(),
            r.upper.to_string(),
            r.tight.map(|t| t.to_string()).unwrap_or_default(),
        ),
        Err(_) => Default::default(),
    };
    [
        row.n.to_string(),
        row.m.to_string(),
        row.k.to_string(),
        row.kind.as_str().to_string(),
        lower,
        achieved,
        upper,
        tight,
        row.runtime_ms.to_string(),
    ]
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("writing to memory");
    for row in rows {
        w.write_record(csv_fields(row)).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}

pub fn to_json(rows: &[SweepRow], style: Style) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                let mut v = match &row.result {
                    Ok(r) => json::bound_report(r, style),
                    Err(e) => json!({
                        "n": row.n,
                        "m": row.m,
                        "k": row.k,
                        "kind": row.kind.as_str(),
                        "error": e.code(),
                        "detail": e.to_string(),
                    }),
                };
                v["runtime_ms"] = json!(row.runtime_ms as u64);
                v
            })
            .collect(),
    )
}
