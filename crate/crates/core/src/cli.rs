//! Plumbing behind the `qcanon` binary: the JSON basis document, the plan
//! of verification jobs and their execution.

use crate::cartan::{build_cartan, Weight};
use crate::error::{Error, Result};
use crate::pbw::Pbw;
use crate::scalar::LaurentPoly;
use crate::verify::{self, default_height, CheckReport};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Process exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Exit code for an error raised before or during a run.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::UnknownType(_) | Error::NotReduced(_) => EXIT_USAGE,
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        _ => EXIT_FAIL,
    }
}

/// Laurent polynomial as a map from degree (as a string) to integer
/// coefficient. Coefficients beyond `i64` are written as decimal strings.
pub fn laurent_json(p: &LaurentPoly) -> Value {
    let mut m = Map::new();
    for (d, c) in p.terms() {
        let v = match c.to_i64() {
            Some(x) => Value::from(x),
            None => Value::from(c.to_string()),
        };
        m.insert(d.to_string(), v);
    }
    Value::Object(m)
}

fn label_key(c: &[u32]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Every `b(c, h)` with weight of height at most `max_height`, as
/// `{"type", "word", "max_height", "elements": [{"label", "word", "coeffs"}]}`
/// where `coeffs` maps PBW labels to nonzero coefficients.
pub fn basis_document(tag: &str, word: &str, max_height: i32) -> Result<Value> {
    let mut p = Pbw::new(build_cartan(tag)?);
    basis_json(&mut p, word, max_height)
}

/// [`basis_document`] reusing the caches of `p`.
pub fn basis_json(p: &mut Pbw, word: &str, max_height: i32) -> Result<Value> {
    if max_height < 0 {
        return Err(Error::InvalidInput(format!("negative height {max_height}")));
    }
    let d = p.datum().clone();
    verify::ensure_height(&d.name, max_height)?;
    let h = d.parse_word(word)?;
    p.reduced_word(&h)?;
    let labels = d.word_labels(&h);
    let mut weights = vec![Weight::zero()];
    weights.extend(d.weights_up_to(max_height));
    let mut elements = Vec::new();
    for g in &weights {
        let cf = p.canonical_frame(&h, g)?;
        for e in cf.elements() {
            let mut coeffs = Map::new();
            for (k, c) in e.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    coeffs.insert(label_key(&cf.frame.labels[k]), laurent_json(c));
                }
            }
            elements.push(json!({"label": e.label, "word": labels, "coeffs": coeffs}));
        }
    }
    Ok(json!({"type": d.name, "word": labels, "max_height": max_height, "elements": elements}))
}

/// The verification suites reachable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Quotient,
    Pbw,
    Prop39,
    Canonical,
    Thm317,
    Folding,
    Tropical,
    Crystal,
    Xi,
}

impl Check {
    /// Types run when none is given.
    pub fn default_types(self) -> &'static [&'static str] {
        match self {
            Check::Quotient => &["A2", "B2", "A3", "D4", "G2"],
            Check::Pbw => &["A2", "B2", "A3", "G2"],
            Check::Canonical => &["A1xA1", "A2", "B2", "A3", "D4", "G2"],
            Check::Thm317 => &["A1xA1", "A2", "B2", "A3", "G2"],
            Check::Folding => &["A3:B2", "D4:G2"],
            Check::Crystal => &["A1xA1", "A2", "B2", "A3", "G2"],
            Check::Prop39 | Check::Tropical | Check::Xi => &["B2"],
        }
    }

    /// Height used for `tag` when none is given.
    pub fn default_height(self, tag: &str) -> i32 {
        match self {
            Check::Crystal | Check::Xi => default_height(tag).min(6),
            _ => default_height(tag),
        }
    }

    fn accepts(self, tag: &str) -> bool {
        match self {
            Check::Folding => matches!(tag, "A3" | "A3:B2" | "D4" | "D4:G2"),
            Check::Prop39 | Check::Tropical | Check::Xi => tag == "B2",
            _ => !tag.contains(':'),
        }
    }
}

impl std::str::FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Check> {
        <Check as clap::ValueEnum>::from_str(s.trim(), true).map_err(|_| Error::InvalidInput(format!("unknown check {s:?}")))
    }
}

/// One suite at one type and range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Job {
    pub check: Check,
    pub tag: String,
    pub max_height: i32,
    pub grid: u32,
    pub seed: u64,
}

impl Job {
    pub fn run(&self) -> Result<CheckReport> {
        let h = self.max_height;
        match self.check {
            Check::Quotient => verify::check_quotient(&self.tag, h, self.seed),
            Check::Pbw => verify::check_pbw(&self.tag, h),
            Check::Prop39 => verify::check_prop39(self.grid),
            Check::Canonical => verify::check_canonical(&self.tag, h),
            Check::Thm317 => verify::check_thm317(&self.tag, h),
            Check::Folding => verify::check_folding(&self.tag, h),
            Check::Tropical => verify::check_tropical(self.grid as i64),
            Check::Crystal => verify::check_crystal(&self.tag, h),
            Check::Xi => verify::check_xi(h, true),
        }
    }
}

/// Options of `qcanon verify`.
#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    pub checks: Vec<Check>,
    pub tag: Option<String>,
    pub max_height: Option<i32>,
    /// Grid size; `None` means 8 for `tropical` and 3 for `prop39`.
    pub grid: Option<u32>,
    pub seed: u64,
}

/// Expands a configuration into jobs. Without a type each check runs on
/// its default types, each at the smaller of `max_height` and its own
/// default; an explicit type runs at exactly `max_height`.
pub fn plan(cfg: &VerifyConfig) -> Result<Vec<Job>> {
    if cfg.checks.is_empty() {
        return Err(Error::InvalidInput("no checks selected".into()));
    }
    if let Some(h) = cfg.max_height {
        if h < 0 {
            return Err(Error::InvalidInput(format!("negative height {h}")));
        }
    }
    let mut checks = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    let mut jobs = Vec::new();
    for c in checks {
        let tags: Vec<String> = match &cfg.tag {
            Some(t) => {
                if !c.accepts(t) {
                    return Err(Error::InvalidInput(format!("check {c:?} does not apply to type {t}")));
                }
                vec![t.clone()]
            }
            None => c.default_types().iter().map(|s| s.to_string()).collect(),
        };
        for tag in tags {
            let base = tag.split(':').next().unwrap_or(&tag);
            build_cartan(base)?;
            let max_height = match (cfg.max_height, &cfg.tag) {
                (Some(h), Some(_)) => h,
                (Some(h), None) => h.min(c.default_height(&tag)),
                (None, _) => c.default_height(&tag),
            };
            let grid = cfg.grid.unwrap_or(if c == Check::Prop39 { 3 } else { 8 });
            if grid == 0 || (c == Check::Tropical && grid < 2) {
                return Err(Error::InvalidInput(format!("grid {grid} too small")));
            }
            jobs.push(Job { check: c, tag, max_height, grid, seed: cfg.seed });
        }
    }
    Ok(jobs)
}

/// Worker count from `QCANON_THREADS`; unset means 1.
pub fn threads_from_env() -> Result<usize> {
    match std::env::var("QCANON_THREADS") {
        Err(_) => Ok(1),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::InvalidInput(format!("QCANON_THREADS={s:?} is not a positive integer"))),
        },
    }
}

/// Runs the jobs on up to `threads` workers; results come back in job order.
pub fn run_jobs(jobs: &[Job], threads: usize) -> Vec<Result<CheckReport>> {
    let slots: Vec<Mutex<Option<Result<CheckReport>>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let k = next.fetch_add(1, Ordering::Relaxed);
        if k >= jobs.len() {
            break;
        }
        let r = jobs[k].run();
        *slots[k].lock().unwrap() = Some(r);
    };
    std::thread::scope(|s| {
        for _ in 1..threads.min(jobs.len()) {
            s.spawn(work);
        }
        work();
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect()
}

/// The verification report and its exit code. A resource limit in any job
/// takes precedence over failures.
pub fn verify_report(jobs: &[Job], results: Vec<Result<CheckReport>>) -> (Value, i32) {
    let mut code = EXIT_PASS;
    let mut entries = Vec::new();
    for (job, r) in jobs.iter().zip(results) {
        let entry = match r {
            Ok(rep) => {
                if !rep.passed && code == EXIT_PASS {
                    code = EXIT_FAIL;
                }
                json!({"job": job, "report": rep})
            }
            Err(e) => {
                let c = exit_code(&e);
                code = code.max(c);
                json!({"job": job, "error": e.to_string()})
            }
        };
        entries.push(entry);
    }
    (json!({"passed": code == EXIT_PASS, "results": entries}), code)
}

/// One summary line per job.
pub fn summary(report: &Value) -> String {
    let mut out = String::new();
    for e in report["results"].as_array().into_iter().flatten() {
        let check = e["job"]["check"].as_str().unwrap_or("?");
        if let Some(err) = e["error"].as_str() {
            out.push_str(&format!("ERROR {check} [{}]: {err}\n", e["job"]["tag"].as_str().unwrap_or("?")));
            continue;
        }
        let r = &e["report"];
        let status = if r["passed"].as_bool() == Some(true) { "PASS " } else { "FAIL " };
        out.push_str(&format!(
            "{status}{check} [{}]: {} instances, {} failures\n",
            r["scope"].as_str().unwrap_or(""),
            r["instances"],
            r["failure_count"]
        ));
        for f in r["failures"].as_array().into_iter().flatten() {
            out.push_str(&format!("    counterexample: {}\n", f.as_str().unwrap_or("")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_caps_default_heights() {
        let cfg = VerifyConfig { checks: vec![Check::Thm317], max_height: Some(8), ..Default::default() };
        let jobs = plan(&cfg).unwrap();
        let g2 = jobs.iter().find(|j| j.tag == "G2").unwrap();
        assert_eq!(g2.max_height, 5);
        let b2 = jobs.iter().find(|j| j.tag == "B2").unwrap();
        assert_eq!(b2.max_height, 8);
    }

    #[test]
    fn plan_rejects_mismatched_type() {
        let cfg = VerifyConfig { checks: vec![Check::Folding], tag: Some("B2".into()), ..Default::default() };
        assert!(matches!(plan(&cfg), Err(Error::InvalidInput(_))));
        let cfg = VerifyConfig { checks: vec![Check::Pbw], tag: Some("E8".into()), ..Default::default() };
        assert!(matches!(plan(&cfg), Err(Error::UnknownType(_))));
    }

    #[test]
    fn threaded_run_keeps_order() {
        let cfg = VerifyConfig { checks: vec![Check::Pbw, Check::Canonical], max_height: Some(3), ..Default::default() };
        let jobs = plan(&cfg).unwrap();
        let a = run_jobs(&jobs, 1);
        let b = run_jobs(&jobs, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn failures_and_errors_set_the_exit_code() {
        let jobs = plan(&VerifyConfig { checks: vec![Check::Tropical], grid: Some(2), ..Default::default() }).unwrap();
        let mut rep = jobs[0].run().unwrap();
        let (_, code) = verify_report(&jobs, vec![Ok(rep.clone())]);
        assert_eq!(code, EXIT_PASS);
        rep.passed = false;
        rep.failure_count = 1;
        let (v, code) = verify_report(&jobs, vec![Ok(rep.clone())]);
        assert_eq!((code, v["passed"].as_bool()), (EXIT_FAIL, Some(false)));
        assert!(summary(&v).starts_with("FAIL tropical"));
        let two = [jobs[0].clone(), jobs[0].clone()];
        let (_, code) = verify_report(&two, vec![Ok(rep), Err(Error::ResourceLimit("x".into()))]);
        assert_eq!(code, EXIT_RESOURCE);
    }

    #[test]
    fn laurent_map_keys() {
        let p = &LaurentPoly::q_pow(-1) + &LaurentPoly::from_int(3);
        assert_eq!(laurent_json(&p).to_string(), r#"{"-1":1,"0":3}"#);
    }

    #[test]
    fn trivial_basis() {
        let doc = basis_document("B2", "1,2,1,2", 0).unwrap();
        let els = doc["elements"].as_array().unwrap();
        assert_eq!(els.len(), 1);
        assert_eq!(els[0]["label"], json!([0, 0, 0, 0]));
        assert_eq!(els[0]["coeffs"], json!({"0,0,0,0": {"0": 1}}));
    }
}
