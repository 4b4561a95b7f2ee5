//! Seeded batch runs over random admissible instances, written as one JSON
//! object per line. Every instance draws from its own ChaCha stream, so any
//! row can be regenerated (and a partial results file resumed) on its own.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::Remark1Constants;
use crate::config::{Config, SweepConfig, TRule};
use crate::ffield::{is_prime, prime_factors, FieldCtx};
use crate::oracle::{verify_instance, InstanceSpec};
use crate::poly::DensePoly;
use crate::stepanov::check_admissible_polys;
use crate::{Error, Result};

const MAX_ATTEMPTS: usize = 100_000;

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for q in prime_factors(n) {
        let mut e = 0;
        let mut rest = n;
        while rest.is_multiple_of(q) {
            rest /= q;
            e += 1;
        }
        let current = out.clone();
        let mut pw = 1;
        for _ in 0..e {
            pw *= q;
            out.extend(current.iter().map(|d| d * pw));
        }
    }
    out.sort_unstable();
    out
}

/// Divisors `t` of `p - 1` with `C_1 < t < C_2 p^(1 - 1/(2n+1))`.
pub fn window_divisors(p: u64, degrees: &[u64]) -> Vec<u64> {
    let c = Remark1Constants::new(degrees);
    divisors(p - 1)
        .into_iter()
        .filter(|&t| c.lower_window(t).holds && c.upper_window(p, t).holds)
        .collect()
}

#[derive(Debug, Clone)]
pub struct SweepInstance {
    pub index: usize,
    pub seed: u64,
    pub spec: InstanceSpec,
}

/// Draws instances for a sweep configuration.
pub struct InstanceGenerator {
    cfg: SweepConfig,
    seed: u64,
    /// Primes in range with at least one admissible `t`, and those `t`.
    candidates: Vec<(u64, Vec<u64>)>,
}

impl InstanceGenerator {
    pub fn new(cfg: &SweepConfig, seed: u64) -> Result<Self> {
        let [lo, hi] = cfg.p_range;
        let candidates: Vec<(u64, Vec<u64>)> = (lo.max(3)..=hi)
            .filter(|&p| is_prime(p))
            .map(|p| {
                let ts = match cfg.t_rule {
                    TRule::Window => window_divisors(p, &cfg.poly_degrees),
                    TRule::LargestWindow => window_divisors(p, &cfg.poly_degrees)
                        .last()
                        .map(|&t| vec![t])
                        .unwrap_or_default(),
                    TRule::AnyDivisor => divisors(p - 1).into_iter().filter(|&t| t >= 2).collect(),
                };
                (p, ts)
            })
            .filter(|(_, ts)| !ts.is_empty())
            .collect();
        if candidates.is_empty() {
            return Err(Error::Config(format!(
                "no prime in {lo}..={hi} has a usable t for degrees {:?}",
                cfg.poly_degrees
            )));
        }
        Ok(Self {
            cfg: cfg.clone(),
            seed,
            candidates,
        })
    }

    pub fn len(&self) -> usize {
        self.cfg.samples
    }

    pub fn is_empty(&self) -> bool {
        self.cfg.samples == 0
    }

    pub fn instance(&self, index: usize) -> Result<SweepInstance> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        for _ in 0..MAX_ATTEMPTS {
            let (p, ts) = self.candidates.choose(&mut rng).unwrap();
            let (p, t) = (*p, *ts.choose(&mut rng).unwrap());
            let ctx = FieldCtx::new(p)?;
            let polys: Vec<DensePoly> = self
                .cfg
                .poly_degrees
                .iter()
                .map(|&d| {
                    let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
                    c[0] = rng.gen_range(1..p);
                    c.push(1);
                    DensePoly::new(ctx, c)
                })
                .collect();
            if !check_admissible_polys(&polys).admissible {
                continue;
            }
            let cosets = polys.iter().map(|_| rng.gen_range(1..p)).collect();
            return Ok(SweepInstance {
                index,
                seed: self.seed,
                spec: InstanceSpec {
                    p,
                    t,
                    polys,
                    cosets,
                },
            });
        }
        Err(Error::Config(format!(
            "no admissible instance after {MAX_ATTEMPTS} draws"
        )))
    }
}

/// One JSON record for instance `index`.
pub fn run_instance(gen: &InstanceGenerator, index: usize) -> Value {
    let inst = match gen.instance(index) {
        Ok(i) => i,
        Err(e) => {
            return json!({"index": index, "seed": gen.seed, "status": "ERROR", "error": e.to_string()})
        }
    };
    match verify_instance(&inst.spec) {
        Ok(mut report) => {
            report.seed = Some(inst.seed);
            let mut v = serde_json::to_value(&report).expect("reports serialize");
            v.as_object_mut()
                .unwrap()
                .insert("index".into(), json!(index));
            v
        }
        Err(e) => json!({
            "index": index,
            "seed": inst.seed,
            "p": inst.spec.p,
            "t": inst.spec.t,
            "status": "ERROR",
            "error": e.to_string(),
        }),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub total: usize,
    /// Rows computed by this run; the rest were already on disk.
    pub computed: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
}

impl SweepSummary {
    pub fn all_ok(&self) -> bool {
        self.failed == 0 && self.errors == 0
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    pub out: PathBuf,
    pub csv: Option<PathBuf>,
    /// Worker count; falls back to `STEPANOV_THREADS`, then rayon's default.
    pub threads: Option<usize>,
}

pub fn worker_count(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var("STEPANOV_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0)
}

/// A results line kept verbatim next to its parsed form, so rewriting the
/// file never reformats numbers.
pub struct Row {
    pub line: String,
    pub value: Value,
}

/// Valid rows already on disk, keyed by index. Truncated or foreign lines
/// are dropped.
fn load_rows(path: &Path, samples: usize) -> Result<BTreeMap<usize, Row>> {
    let mut rows = BTreeMap::new();
    if !path.exists() {
        return Ok(rows);
    }
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        let Ok(v) = serde_json::from_str::<Value>(&line) else {
            continue;
        };
        if let Some(i) = v.get("index").and_then(Value::as_u64) {
            if (i as usize) < samples {
                rows.entry(i as usize).or_insert(Row { line, value: v });
            }
        }
    }
    Ok(rows)
}

fn write_rows(path: &Path, rows: &BTreeMap<usize, Row>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for row in rows.values() {
        writeln!(w, "{}", row.line)?;
    }
    w.flush()?;
    Ok(())
}

pub fn run_sweep(cfg: &Config, opts: &SweepOptions) -> Result<SweepSummary> {
    use rayon::prelude::*;

    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("missing sweep section".into()))?;
    let gen = InstanceGenerator::new(sweep, cfg.seed.unwrap_or(0))?;
    let mut rows = load_rows(&opts.out, sweep.samples)?;
    write_rows(&opts.out, &rows)?;
    let missing: Vec<usize> = (0..sweep.samples)
        .filter(|i| !rows.contains_key(i))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(opts.threads))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let batch = pool.current_num_threads().max(1) * 2;
    let mut sink = BufWriter::new(OpenOptions::new().append(true).open(&opts.out)?);
    for chunk in missing.chunks(batch) {
        let done: Vec<Value> =
            pool.install(|| chunk.par_iter().map(|&i| run_instance(&gen, i)).collect());
        for (i, value) in chunk.iter().zip(done) {
            let line = value.to_string();
            writeln!(sink, "{line}")?;
            rows.insert(*i, Row { line, value });
        }
        sink.flush()?;
    }
    drop(sink);
    if !missing.is_empty() {
        write_rows(&opts.out, &rows)?;
    }
    if let Some(csv_path) = &opts.csv {
        write_csv(csv_path, &rows)?;
    }

    let mut summary = SweepSummary {
        total: rows.len(),
        computed: missing.len(),
        ..Default::default()
    };
    for row in rows.values() {
        match row.value.get("status").and_then(Value::as_str) {
            Some("PASSED") => summary.passed += 1,
            Some("FAILED") => summary.failed += 1,
            Some("SKIPPED") => summary.skipped += 1,
            _ => summary.errors += 1,
        }
    }
    Ok(summary)
}

fn field(v: &Value, key: &str) -> String {
    match v.get(key) {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// Projection with columns `p, t, n, m, |M|, degPsi, D, est_bound, thm2_ok,
/// status`; `m` is `;`-separated.
pub fn write_csv(path: &Path, rows: &BTreeMap<usize, Row>) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record([
        "p",
        "t",
        "n",
        "m",
        "|M|",
        "degPsi",
        "D",
        "est_bound",
        "thm2_ok",
        "status",
    ])
    .map_err(io)?;
    for v in rows.values().map(|r| &r.value) {
        let m = v
            .get("m")
            .and_then(Value::as_array)
            .map(|a| {
                a.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_default();
        let thm2 = v
            .get("theorem2")
            .and_then(|b| b.get("bound_holds"))
            .map(|b| b.to_string())
            .unwrap_or_default();
        w.write_record([
            field(v, "p"),
            field(v, "t"),
            field(v, "n"),
            m,
            field(v, "m_size"),
            field(v, "deg_psi"),
            field(v, "d"),
            field(v, "implied_bound"),
            thm2,
            field(v, "status"),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
