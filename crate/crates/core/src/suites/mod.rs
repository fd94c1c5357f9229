//! The verification suites behind the command-line tool. Each suite reads
//! its parameters from a [`RunConfig`] and returns a [`Report`]; running a
//! suite twice with the same configuration gives the same report apart
//! from timings.

mod adjoint;
mod cubes;
mod graphs;
mod tensor;

use std::path::Path;
use std::time::Instant;

use crate::adjoint::{FiniteMonoid, FiniteZ2Set};
use crate::error::{Error, Result};
use crate::report::{CheckResult, Report, RunConfig};
use crate::tensor::thm4::color_pairs;

pub const SUITES: [&str; 11] = [
    "axioms",
    "homology",
    "recognize",
    "counterexample",
    "roundtrip",
    "cells",
    "gtensor",
    "obstruction",
    "interchange",
    "enumerate",
    "identification",
];

/// Runs the suite named by `cfg.suite`. An exceeded budget becomes a
/// failing `within budget` check; other errors are returned.
pub fn run_suite(cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::new(cfg);
    let start = Instant::now();
    let outcome = match cfg.suite.as_str() {
        "axioms" => graphs::axioms(cfg, &mut report),
        "homology" => graphs::homology(cfg, &mut report),
        "recognize" => graphs::recognize(cfg, &mut report),
        "enumerate" => graphs::enumerate(cfg, &mut report),
        "counterexample" => adjoint::counterexample(cfg, &mut report),
        "obstruction" => adjoint::obstruction(cfg, &mut report),
        "identification" => adjoint::identification(cfg, &mut report),
        "roundtrip" => cubes::roundtrip(cfg, &mut report),
        "cells" => cubes::cells(cfg, &mut report),
        "gtensor" => tensor::gtensor(cfg, &mut report),
        "interchange" => tensor::interchange(cfg, &mut report),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    match outcome {
        Ok(()) => {}
        Err(e @ Error::BudgetExceeded { .. }) => {
            report.push(CheckResult::new("within budget", false).witness(e.to_string()));
        }
        Err(e) => return Err(e),
    }
    report.timings_ms.insert("total".into(), start.elapsed().as_millis() as u64);
    Ok(report)
}

/// Runs `f`, recording its wall time under `phase`.
fn timed<T>(report: &mut Report, phase: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    report.timings_ms.insert(phase.to_string(), start.elapsed().as_millis() as u64);
    out
}

fn small(cfg_value: Option<usize>, default: usize, what: &str, max: usize) -> Result<usize> {
    let v = cfg_value.unwrap_or(default);
    if v > max {
        return Err(Error::BudgetExceeded {
            what: what.to_string(),
            needed: v as u64,
            budget: max as u64,
        });
    }
    Ok(v)
}

/// `z2`, `z3`, `zN`, `idempotent`, or a path to a Cayley table CSV.
pub fn parse_monoid(spec: &str) -> Result<FiniteMonoid> {
    if spec == "idempotent" {
        return Ok(FiniteMonoid::idempotent());
    }
    if let Some(n) = spec.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
        if n == 0 {
            return Err(Error::Parse("Z/0 is not finite".into()));
        }
        return Ok(FiniteMonoid::cyclic(n));
    }
    let path = Path::new(spec);
    if path.exists() {
        return FiniteMonoid::from_csv(std::fs::File::open(path)?);
    }
    Err(Error::Parse(format!("unknown monoid {spec:?} (z2, z3, zN, idempotent, or a CSV file)")))
}

/// `s0`, `freeM` (M free orbits), `colorsN` (`K⁽ᴺ⁾(2)`), or a JSON file.
pub fn parse_z2set(spec: &str) -> Result<FiniteZ2Set> {
    if spec == "s0" {
        return Ok(FiniteZ2Set::s0());
    }
    if let Some(m) = spec.strip_prefix("free").and_then(|m| m.parse().ok()) {
        return Ok(FiniteZ2Set::free(m));
    }
    if let Some(n) = spec.strip_prefix("colors").and_then(|n| n.parse::<u8>().ok()) {
        if n == 0 {
            return Err(Error::Parse("colors0 is empty".into()));
        }
        return Ok(color_pairs(n));
    }
    let path = Path::new(spec);
    if path.exists() {
        return FiniteZ2Set::from_json_str(&std::fs::read_to_string(path)?);
    }
    Err(Error::Parse(format!("unknown Z/2-set {spec:?} (s0, freeM, colorsN, or a JSON file)")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(run_suite(&RunConfig::new("nope")).unwrap_err(), Error::UnknownSuite("nope".into()));
    }

    #[test]
    fn carriers_parse() {
        assert_eq!(parse_monoid("z3").unwrap().len(), 3);
        assert_eq!(parse_monoid("idempotent").unwrap().len(), 2);
        assert!(parse_monoid("z0").is_err());
        assert!(parse_monoid("/no/such/file.csv").is_err());
        assert_eq!(parse_z2set("free3").unwrap().len(), 6);
        assert_eq!(parse_z2set("colors2").unwrap().len(), 4);
        assert!(parse_z2set("s1").is_err());
    }

    #[test]
    fn oversized_request_is_reported() {
        let mut cfg = RunConfig::new("enumerate");
        cfg.k = Some(40);
        let r = run_suite(&cfg).unwrap();
        assert!(!r.passed());
        assert!(r.check("within budget").unwrap().witness.is_some());
    }
}
