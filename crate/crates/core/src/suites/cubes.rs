//! Suites over the little cubes: 2-cogeneration round trips and the
//! cellular decomposition indexed by the complete-graphs posets.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use crate::cubes::cells::containing_total_cells;
use crate::cubes::random::{random_config, random_tuple};
use crate::cubes::{cell_contains, config_preoperad_check, decompose, min_cell, reconstruct, CubeConfig, LittleCubes};
use crate::error::{Error, Result};
use crate::graphs::{enumerate as enumerate_graphs, CompleteGraphs, PartialGraphLabel, DEFAULT_ENUMERATION_BUDGET};
use crate::operad::{sampled_checks, Operad};
use crate::perm::Perm;
use crate::report::{CheckResult, Report, RunConfig};

use super::{small, timed};

fn dims(cfg: &RunConfig) -> Result<(usize, usize)> {
    let n = small(cfg.n, 2, "dimension n", 6)?;
    if n == 0 {
        return Err(Error::Parse("dimension n must be at least 1".into()));
    }
    Ok((n, small(cfg.k, 3, "arity k", 6)?))
}

pub(super) fn roundtrip(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let (n, k) = dims(cfg)?;
    let samples = cfg.samples.unwrap_or(1000);
    let names = [
        "reconstruct after decompose is the identity",
        "decompose after reconstruct is the identity",
        "reconstruct accepts exactly the disjoint tuples",
    ];
    let checks = timed(report, "round trip", || {
        sampled_checks(&names, samples, cfg.seed, |rng, rec| {
            let x = random_config(n, k, rng);
            let back = reconstruct(n, &decompose(&x));
            rec.record(0, back.as_ref() == Some(&x), || format!("{} ↦ {back:?}", x.to_json_string()));
            // tuples with overlaps leave the domain of reconstruct
            let t = random_tuple(n, k, rng);
            let el = decompose(&t);
            match reconstruct(n, &el) {
                Some(c) => rec.record(1, decompose(&c) == el && t.is_valid(), || t.to_json_string()),
                None => rec.record(2, !t.is_valid(), || format!("valid tuple rejected: {}", t.to_json_string())),
            }
        })
    });
    report.extend(checks.into_iter().map(CheckResult::from));
    let pre = timed(report, "preoperad", || config_preoperad_check(n, k, samples, cfg.seed));
    report.extend(pre.into_iter().map(|c| {
        let name = format!("configuration preoperad: {}", c.name);
        CheckResult { name, ..c.into() }
    }));
    report.set_data("n", json!(n));
    report.set_data("k", json!(k));
    Ok(())
}

/// Raises `lambda` in `K̂` by forgetting each edge with probability 1/3.
fn forget_some<R: Rng>(lambda: &PartialGraphLabel, rng: &mut R) -> PartialGraphLabel {
    let mut out = lambda.clone();
    for (a, b) in crate::edges::pairs(lambda.k()) {
        if rng.gen_ratio(1, 3) {
            out.set(a, b, None);
        }
    }
    out
}

/// A random element of `K̂⁽ⁿ⁾(k)` whose cell contains `x`.
fn random_containing<R: Rng>(x: &CubeConfig, rng: &mut R) -> Result<PartialGraphLabel> {
    let cells = containing_total_cells(x, DEFAULT_ENUMERATION_BUDGET)?;
    let lambda = cells
        .choose(rng)
        .ok_or_else(|| Error::NoLeastCell(format!("no cell contains {}", x.to_json_string())))?;
    Ok(forget_some(lambda, rng))
}

pub(super) fn cells(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let (n, k) = dims(cfg)?;
    let colors = n as u8;
    let samples = cfg.samples.unwrap_or(100);
    let khat = timed(report, "enumerate", || enumerate_graphs(colors, k, false, DEFAULT_ENUMERATION_BUDGET))?;
    let totals = enumerate_graphs(colors, k, true, DEFAULT_ENUMERATION_BUDGET)?;
    let op = CompleteGraphs::khat(colors);
    let comparable: Vec<(usize, usize)> = (0..khat.len())
        .flat_map(|i| (0..khat.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && op.leq(&khat[i], &khat[j]))
        .collect();

    let mono = timed(report, "monotonicity", || {
        sampled_checks(&["monotonicity: λ ≤ λ′ puts the cell of λ inside the cell of λ′"], samples, cfg.seed, |rng, rec| {
            let x = random_config(n, k, rng);
            let inside: Vec<bool> = khat.iter().map(|l| cell_contains(l, &x).unwrap_or(false)).collect();
            for &(i, j) in &comparable {
                rec.record(0, !inside[i] || inside[j], || {
                    format!("{} ≤ {} but {} is only in the first", khat[i], khat[j], x.to_json_string())
                });
            }
        })
    });
    report.extend(mono.into_iter().map(|c| {
        CheckResult::from(c).detail(format!(
            "all {} comparable pairs of {}({k}) on each sampled configuration",
            comparable.len(),
            op.name()
        ))
    }));

    let cubes = LittleCubes::new(n);
    // ten composite tuples per sampled configuration
    let tuples = samples * 10;
    let compat = timed(report, "composition", || {
        sampled_checks(&["composition maps cells into the composite cell"], tuples, cfg.seed ^ 1, |rng, rec| {
            let a = rng.gen_range(1..=k);
            let x = random_config(n, a, rng);
            let ys: Vec<CubeConfig> = (0..a).map(|_| random_config(n, rng.gen_range(0..=k), rng)).collect();
            let lambda = random_containing(&x, rng);
            let mus: Result<Vec<PartialGraphLabel>> = ys.iter().map(|y| random_containing(y, rng)).collect();
            let (Ok(lambda), Ok(mus)) = (lambda, mus) else {
                rec.record(0, false, || format!("no containing cell for {} or its inputs", x.to_json_string()));
                return;
            };
            let ok = match (cubes.compose(&x, &ys), lambda.compose(&mus)) {
                (Ok(z), Ok(nu)) => cell_contains(&nu, &z).unwrap_or(false),
                _ => false,
            };
            rec.record(0, ok, || format!("λ = {lambda}, μ = {mus:?}, x = {}, y = {ys:?}", x.to_json_string()));
        })
    });
    report.extend(compat.into_iter().map(CheckResult::from));

    let minimal = timed(report, "min cell", || {
        sampled_checks(
            &["min_cell agrees with a scan of every total cell", "min_cell is equivariant"],
            samples,
            cfg.seed ^ 2,
            |rng, rec| {
                let x = random_config(n, k, rng);
                let containing: Vec<&PartialGraphLabel> =
                    totals.iter().filter(|l| cell_contains(l, &x).unwrap_or(false)).collect();
                let least = containing.iter().find(|l| containing.iter().all(|m| l.leq(m).unwrap_or(false)));
                let m = min_cell(&x);
                let ok = match (&m, least) {
                    (Ok(m), Some(l)) => m == *l,
                    (Err(Error::NoLeastCell(_)), None) => true,
                    _ => false,
                };
                rec.record(0, ok, || format!("{}: min_cell {m:?}, scan {least:?}", x.to_json_string()));
                let perms = Perm::all(k);
                let g = &perms[rng.gen_range(0..perms.len())];
                let gx = cubes.act(&x, g);
                let ok = match (&m, min_cell(&gx)) {
                    (Ok(m), Ok(gm)) => gm == m.act(g),
                    (Err(_), Err(_)) => true,
                    _ => false,
                };
                rec.record(1, ok, || format!("{g} on {}", x.to_json_string()));
            },
        )
    });
    report.extend(minimal.into_iter().map(|c| {
        let name = c.name.clone();
        let r = CheckResult::from(c);
        if name.starts_with("min_cell agrees") {
            r.detail(format!("against all {} elements of K^({n})({k})", totals.len()))
        } else {
            r
        }
    }));
    report.set_data("khat_size", json!(khat.len()));
    report.set_data("k_size", json!(totals.len()));
    report.set_data("comparable_pairs", json!(comparable.len()));
    Ok(())
}
