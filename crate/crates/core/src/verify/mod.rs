//! Verification suites. Each suite returns a [`CheckReport`]; a suite fails
//! by reporting counterexamples, and only resource limits abort it.

mod crystal;
mod grids;
mod structure;
mod theorems;

pub use crystal::{check_crystal, check_xi, check_xi_sides};
pub use grids::{check_folding, check_tropical};
pub use structure::{check_canonical, check_pbw, check_quotient};
pub use theorems::{check_prop39, check_thm317};

use crate::error::{Error, Result};
use serde::Serialize;

/// Failures kept per report; the total is always counted.
const MAX_WITNESSES: usize = 20;

/// The Mersenne prime `2^61 - 1` used for specialised rank computations.
pub const RANK_PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub scope: String,
    pub passed: bool,
    pub instances: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

/// Accumulates instances and failures for one report.
#[derive(Default)]
pub(crate) struct Tally {
    instances: u64,
    failure_count: u64,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) -> bool {
        self.instances += 1;
        if !cond {
            self.fail(msg());
        }
        cond
    }

    pub fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(msg);
        }
    }

    pub fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    /// Turns an error into a failure, except for resource limits.
    pub fn absorb<T>(&mut self, r: Result<T>, ctx: impl FnOnce() -> String) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e @ Error::ResourceLimit(_)) => Err(e),
            Err(e) => {
                self.instances += 1;
                self.fail(format!("{}: {e}", ctx()));
                Ok(None)
            }
        }
    }

    pub fn finish(self, check: &str, scope: String) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            scope,
            passed: self.failure_count == 0,
            instances: self.instances,
            failure_count: self.failure_count,
            failures: self.failures,
            notes: self.notes,
        }
    }
}

/// Default height bound per type.
pub fn default_height(tag: &str) -> i32 {
    match tag {
        "A3" | "A3:B2" => 6,
        "D4" | "G2" | "D4:G2" => 5,
        _ => 8,
    }
}

/// Largest height accepted per type before reporting a resource limit.
pub fn height_limit(tag: &str) -> i32 {
    match tag {
        "A1xA1" => 24,
        "A2" => 12,
        "B2" => 10,
        "A3" | "A3:B2" => 8,
        _ => 7,
    }
}

pub fn ensure_height(tag: &str, h: i32) -> Result<()> {
    if h > height_limit(tag) {
        return Err(Error::ResourceLimit(format!("height {h} exceeds the limit {} for {tag}", height_limit(tag))));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_caps_witnesses() {
        let mut t = Tally::default();
        for k in 0..30 {
            t.check(false, || format!("bad {k}"));
        }
        let r = t.finish("x", "y".into());
        assert_eq!((r.failure_count, r.failures.len(), r.passed), (30, MAX_WITNESSES, false));
    }

    #[test]
    fn resource_limits_propagate() {
        let mut t = Tally::default();
        let r: Result<Option<()>> = t.absorb(Err(Error::ResourceLimit("big".into())), || "ctx".into());
        assert!(r.is_err());
        let r: Result<Option<()>> = t.absorb(Err(Error::NotFixed), || "ctx".into());
        assert_eq!(r.unwrap(), None);
        assert!(ensure_height("B2", 11).is_err());
    }
}
