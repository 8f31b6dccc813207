//! One PASS/FAIL line per acceptance criterion. All comparisons are exact.

use qcanon::cli::{plan, run_jobs, Check, Job, VerifyConfig};
use qcanon::tropical::Side;
use qcanon::verify::{check_xi, check_xi_sides, CheckReport};
use std::process::ExitCode;
use std::time::{Duration, Instant};

struct Criterion {
    id: u32,
    what: &'static str,
    jobs: Vec<Job>,
    budget: Option<Duration>,
    extra: fn(&[CheckReport]) -> Result<(), String>,
}

fn jobs(check: Check, types: &[(&str, i32)]) -> Vec<Job> {
    types
        .iter()
        .flat_map(|&(t, h)| {
            let cfg = VerifyConfig { checks: vec![check], tag: Some(t.into()), max_height: Some(h), grid: None, seed: 7 };
            plan(&cfg).expect("valid plan")
        })
        .collect()
}

fn gridded(check: Check, grid: u32) -> Vec<Job> {
    plan(&VerifyConfig { checks: vec![check], grid: Some(grid), seed: 7, ..Default::default() }).expect("valid plan")
}

fn none(_: &[CheckReport]) -> Result<(), String> {
    Ok(())
}

fn main() -> ExitCode {
    let criteria = vec![
        Criterion {
            id: 1,
            what: "quotient dimensions equal Kostant counts and the form radical equals the Serre ideal",
            jobs: jobs(Check::Quotient, &[("A2", 8), ("B2", 8), ("A3", 6), ("D4", 5), ("G2", 5)]),
            budget: Some(Duration::from_secs(300)),
            extra: none,
        },
        Criterion {
            id: 2,
            what: "PBW transitions over Z[q], mutually inverse, permutations mod q, all word pairs",
            jobs: jobs(Check::Pbw, &[("A2", 8), ("B2", 8), ("A3", 6), ("G2", 5)]),
            budget: None,
            extra: |r| {
                let words: Vec<&str> = r.iter().flat_map(|x| x.notes.iter().map(|s| s.as_str())).collect();
                let want = ["2 reduced words", "2 reduced words", "16 reduced words", "2 reduced words"];
                if words == want { Ok(()) } else { Err(format!("word counts {words:?}")) }
            },
        },
        Criterion {
            id: 3,
            what: "left multiplication by f_2 and f_1 in the B2 PBW bases, labels in {0,1,2}^4",
            jobs: gridded(Check::Prop39, 3),
            budget: None,
            extra: |r| {
                // one expansion comparison per label and side, plus one lowest-term check per predicted term
                let want: u64 = (0..81u32)
                    .map(|n| {
                        let c = [n / 27, (n / 9) % 3, (n / 3) % 3, n % 3];
                        let h = 1 + (c[0] >= 1) as u64 + (c[1] >= 1) as u64 + 1;
                        let h2 = 1 + (c[0] >= 2) as u64 + (c[0] >= 1) as u64 + (c[1] >= 1) as u64 + 1;
                        h + h2
                    })
                    .sum();
                if r[0].instances == want { Ok(()) } else { Err(format!("{} instances, expected {want}", r[0].instances)) }
            },
        },
        Criterion {
            id: 4,
            what: "canonical bases: unique unitriangular solve, bar invariance, signed-basis test",
            jobs: jobs(Check::Canonical, &[("A1xA1", 8), ("A2", 8), ("B2", 8), ("A3", 6), ("D4", 5), ("G2", 5)]),
            budget: None,
            extra: none,
        },
        Criterion {
            id: 5,
            what: "canonical bases of two words agree with sign +1, labels matched by phi_b2 and phi_a2",
            jobs: jobs(Check::Thm317, &[("B2", 8), ("A2", 8), ("G2", 5)]),
            budget: None,
            extra: none,
        },
        Criterion {
            id: 6,
            what: "folding A3 -> B2 over F_2 and D4 -> G2 over F_3",
            jobs: jobs(Check::Folding, &[("A3:B2", 6), ("D4:G2", 5)]),
            budget: None,
            extra: none,
        },
        Criterion {
            id: 7,
            what: "piecewise-linear maps and case formulas on exhaustive grids",
            jobs: gridded(Check::Tropical, 8),
            budget: Some(Duration::from_secs(30)),
            extra: |r| {
                let want = "A2 {0..10}^3, B2 {0..8}^4, A3 chain {0..6}^4";
                if r[0].scope == want { Ok(()) } else { Err(format!("scope {}", r[0].scope)) }
            },
        },
        Criterion {
            id: 8,
            what: "epsilon_j, the bijections B_{j,0} -> B_{j,a} for a <= 3, Kashiwara operators",
            jobs: jobs(Check::Crystal, &[("A2", 6), ("B2", 6), ("G2", 5)]),
            budget: None,
            extra: none,
        },
    ];

    let mut all = true;
    for c in criteria {
        let t0 = Instant::now();
        let results = run_jobs(&c.jobs, 1);
        let elapsed = t0.elapsed();
        let mut problems = Vec::new();
        let mut reports = Vec::new();
        for (job, r) in c.jobs.iter().zip(results) {
            match r {
                Ok(rep) => {
                    if !rep.passed {
                        problems.push(format!("{} {}: {} failures, first {:?}", rep.check, rep.scope, rep.failure_count, rep.failures.first()));
                    }
                    reports.push(rep);
                }
                Err(e) => problems.push(format!("{:?} {}: {e}", job.check, job.tag)),
            }
        }
        if problems.is_empty() {
            if let Err(e) = (c.extra)(&reports) {
                problems.push(e);
            }
        }
        if let Some(b) = c.budget {
            if elapsed > b {
                problems.push(format!("took {elapsed:?}, budget {b:?}"));
            }
        }
        let instances: u64 = reports.iter().map(|r| r.instances).sum();
        let scopes: Vec<String> = reports.iter().map(|r| r.scope.clone()).collect();
        let ok = problems.is_empty();
        all &= ok;
        println!(
            "{} criterion {}: {} [{}; {instances} instances, tolerance 0, {:.2}s]",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.what,
            scopes.join("; "),
            elapsed.as_secs_f64()
        );
        for p in problems {
            println!("    {p}");
        }
        for r in &reports {
            for n in &r.notes {
                println!("    note ({}): {n}", r.check);
            }
        }
    }
    all &= criterion_9();
    if all { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

/// The lowest term of xi is claimed to be q^-a' on both words. On the
/// (2,1,2,1) side f_1 raises the first label with [a'+1]_{q^2}, whose lowest
/// term is q^-2a', so the claim as stated fails there whenever a' > 0. The
/// line reports that failure. It is an expected deviation, and does not fail
/// the run, exactly when the claim as stated holds on (1,2,1,2) and the
/// claim with q_1^-a' = q^-2a' holds on (2,1,2,1).
fn criterion_9() -> bool {
    let t0 = Instant::now();
    let runs = (
        check_xi(6, false),
        check_xi_sides(6, &[Side::H], false),
        check_xi_sides(6, &[Side::HPrime], true),
    );
    let (literal, h_side, h_prime_scaled) = match runs {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (a, b, c) => {
            println!("FAIL criterion 9: xi lowest terms could not be computed: {:?} {:?} {:?}", a.err(), b.err(), c.err());
            return false;
        }
    };
    println!(
        "{} criterion 9: xi of b° in q^-a'(1 + qZ[q]) on both B2 words [{}; {} instances, {} counterexamples, tolerance 0, {:.2}s]",
        if literal.passed { "PASS" } else { "FAIL" },
        literal.scope,
        literal.instances,
        literal.failure_count,
        t0.elapsed().as_secs_f64()
    );
    for f in literal.failures.iter().take(3) {
        println!("    counterexample: {f}");
    }
    for r in [&h_side, &h_prime_scaled] {
        println!("    {} [{}; {} instances, {} failures]", if r.passed { "holds" } else { "fails" }, r.scope, r.instances, r.failure_count);
    }
    for n in &literal.notes {
        println!("    note (xi): {n}");
    }
    let expected = !literal.passed && h_side.passed && h_prime_scaled.passed;
    if expected {
        println!("    expected deviation: every counterexample is on (2,1,2,1), where the lowest term is q^-2a'");
    }
    literal.passed || expected
}
