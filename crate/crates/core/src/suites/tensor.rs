//! Suites over the generalized tensor products and interchange.

use rand::Rng;
use serde_json::json;

use crate::cubes::random::random_config;
use crate::cubes::cells::cell_contains;
use crate::error::{Error, Result};
use crate::graphs::{k_enumerate, PartialGraphLabel};
use crate::operad::sampled_checks;
use crate::report::{CheckResult, Report, RunConfig};
use crate::tensor::cells::gtensor_cell_contains;
use crate::tensor::gtensor::gtensor_checks;
use crate::tensor::thm4::{color_pairs, s0_identification_check, thm4_checks};
use crate::tensor::{c2_interchange_failure, dunn_interchange, GTensorCubes};

use super::{parse_z2set, small, timed};

pub(super) fn gtensor(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let m = small(cfg.m, 1, "dimension m", 4)?;
    let n = small(cfg.n, 1, "dimension n", 4)?;
    if m == 0 || n == 0 {
        return Err(Error::Parse("both factors need dimension at least 1".into()));
    }
    let k = small(cfg.k, 3, "arity k", 5)?.max(1);
    let samples = cfg.samples.unwrap_or(10_000);
    let checks = timed(report, "properties", || gtensor_checks(m, n, k, samples, cfg.seed));
    report.extend(checks.into_iter().map(CheckResult::from));

    // each product cell sits inside the cell of C_{m+n} with the same index
    let labels: Vec<PartialGraphLabel> = k_enumerate((m + n) as u8, k)?;
    let op = GTensorCubes::new(m, n);
    let cell_samples = samples.min(1000);
    let cells = timed(report, "cells", || {
        sampled_checks(
            &["product cells lie inside cube cells", "every element lies in a product cell"],
            cell_samples,
            cfg.seed ^ 1,
            |rng, rec| {
                let el = op.random(k, rng);
                let Ok(cube) = el.product_embed() else {
                    rec.record(0, false, || format!("{el:?} does not embed"));
                    return;
                };
                let mut covered = false;
                for lambda in &labels {
                    if gtensor_cell_contains(lambda, &el).unwrap_or(false) {
                        covered = true;
                        rec.record(0, cell_contains(lambda, &cube).unwrap_or(false), || format!("{lambda}: {el:?}"));
                    }
                }
                rec.record(1, covered, || format!("{el:?}"));
            },
        )
    });
    report.extend(cells.into_iter().map(CheckResult::from));
    report.set_data("factors", json!([m, n]));
    report.set_data("max_arity", json!(k));
    Ok(())
}

pub(super) fn interchange(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let case = cfg.case.as_deref().unwrap_or("all");
    let cases: &[&str] = match case {
        "all" => &["dunn", "c2-fail", "thm4"],
        "dunn" => &["dunn"],
        "c2-fail" => &["c2-fail"],
        "thm4" => &["thm4"],
        other => return Err(Error::Parse(format!("unknown case {other:?} (dunn, c2-fail, thm4, all)"))),
    };
    let k = small(cfg.k, 3, "arity k", 4)?;
    let samples = cfg.samples.unwrap_or(1000);
    for &c in cases {
        match c {
            "dunn" => {
                let checks = timed(report, "dunn", || {
                    sampled_checks(&["axis-split copies of C1 interchange in C2"], samples, cfg.seed, |rng, rec| {
                        let a = random_config(1, rng.gen_range(0..=k), rng);
                        let b = random_config(1, rng.gen_range(0..=k), rng);
                        let ok = matches!(dunn_interchange(&a, &b), Ok(r) if r.equal);
                        rec.record(0, ok, || format!("α = {}, β = {}", a.to_json_string(), b.to_json_string()));
                    })
                });
                report.extend(checks.into_iter().map(CheckResult::from));
            }
            "c2-fail" => {
                let failure = c2_interchange_failure()?;
                report.push(
                    CheckResult::new("a pair inside C2 that does not interchange", failure.is_some())
                        .witness_if(failure.is_none(), || "every candidate pair interchanged".into()),
                );
                let witness = failure.as_ref().map(|f| {
                    format!("α = {}, β = {}: {} vs {}", f.alpha, f.beta, f.lhs, f.rhs)
                });
                report.push(
                    CheckResult::new("C2 interchanges with itself", failure.is_none())
                        .optional()
                        .detail("expected to fail: one copy of C2 is not interchangeable with itself")
                        .witness_opt(witness),
                );
                report.set_data("c2_failure", json!(failure));
            }
            _ => {
                let m = small(cfg.m, 1, "dimension m", 3)?.max(1);
                let spec = cfg.z2set.clone().unwrap_or_else(|| format!("colors{}", cfg.n.unwrap_or(1).max(1)));
                let x = match spec.strip_prefix("colors").and_then(|n| n.parse::<u8>().ok()) {
                    Some(n) if n > 0 => color_pairs(n),
                    _ => parse_z2set(&spec)?,
                };
                let checks = timed(report, "thm4", || thm4_checks(m, &x, k, 2, samples, cfg.seed));
                report.extend(checks.into_iter().map(|c| {
                    let name = format!("C{m} ⊗ R({spec}): {}", c.name);
                    CheckResult { name, ..c.into() }
                }));
                let s0 = timed(report, "s0", || s0_identification_check(k, samples, cfg.seed));
                report.push(s0.into());
            }
        }
    }
    Ok(())
}
