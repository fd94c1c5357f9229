//! Suites over the complete-graphs operads: axioms, enumeration, homology
//! of arity posets and recognition evidence.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::adjoint::{AtomicOperad, RConstruction};
use crate::complex::{configuration_poincare, poset_homology, PosetHomology};
use crate::edges::{edge_count, pairs};
use crate::error::{Error, Result};
use crate::graphs::{enumerate as enumerate_graphs, CompleteGraphs, PartialGraphLabel, DEFAULT_ENUMERATION_BUDGET};
use crate::homology::HomologyResult;
use crate::operad::{verify_operad, FiniteOperad, VerifyOptions, DEFAULT_SAMPLES};
use crate::perm::Perm;
use crate::poset::{action_fixed_points, induced_index_map, FinPoset};
use crate::report::{CheckResult, Report, RunConfig, Table};

use super::{parse_monoid, parse_z2set, small, timed};

fn colors(cfg: &RunConfig, default: usize) -> Result<u8> {
    let n = small(cfg.n, default, "colors n", 16)?;
    if n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    Ok(n as u8)
}

fn total_family(cfg: &RunConfig) -> Result<bool> {
    match cfg.family.as_deref().unwrap_or("k") {
        "k" => Ok(true),
        "khat" => Ok(false),
        other => Err(Error::Parse(format!("family {other:?} is not k or khat"))),
    }
}

fn run_axioms<O>(op: &O, name: &str, cfg: &RunConfig, report: &mut Report) -> Result<()>
where
    O: FiniteOperad + Sync,
    O::El: Eq + std::hash::Hash + Send + Sync,
{
    let opts = VerifyOptions {
        max_arity: small(cfg.max_arity, 3, "max arity", 8)?,
        exhaustive_limit: cfg.exhaustive_limit,
        samples: cfg.samples.unwrap_or(DEFAULT_SAMPLES),
        seed: cfg.seed,
        force_sampled: false,
    };
    let axioms = timed(report, "verify", || verify_operad(op, opts))?;
    report.set_data("operad", json!(name));
    report.set_data("carrier_sizes", json!(axioms.carrier_sizes));
    report.extend(axioms.checks.into_iter().map(CheckResult::from));
    Ok(())
}

pub(super) fn axioms(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    match cfg.family.as_deref().unwrap_or("khat") {
        "khat" | "k" => {
            let n = colors(cfg, 2)?;
            let op = if total_family(cfg)? { CompleteGraphs::k(n) } else { CompleteGraphs::khat(n) };
            run_axioms(&op, &op.name(), cfg, report)
        }
        "atomic" => {
            let spec = cfg.monoid.as_deref().unwrap_or("z2");
            run_axioms(&AtomicOperad::new(parse_monoid(spec)?), &format!("R1({spec})"), cfg, report)
        }
        "rx" => {
            let spec = cfg.z2set.as_deref().unwrap_or("s0");
            run_axioms(&RConstruction::new(parse_z2set(spec)?), &format!("R({spec})"), cfg, report)
        }
        other => Err(Error::Parse(format!("unknown family {other:?} (khat, k, atomic, rx)"))),
    }
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Counts labellings of the complete graph on `k` vertices by trying every
/// assignment and testing acyclicity with Kahn's algorithm. Shares no code
/// with the enumerator; `None` if there are more than `budget` assignments.
fn brute_count(n: u8, k: usize, total: bool, budget: u64) -> Option<u64> {
    let choices = 2 * n as u64 + u64::from(!total);
    let edges: Vec<(usize, usize)> = pairs(k).collect();
    let count = choices.checked_pow(edges.len() as u32).filter(|&c| c <= budget)?;
    let mut acyclic = 0;
    for mut code in 0..count {
        let mut succ = vec![0u64; k];
        for &(a, b) in &edges {
            let c = code % choices;
            code /= choices;
            // 0..2n are oriented edges, even a → b and odd b → a; 2n is blank
            if c < 2 * n as u64 {
                if c % 2 == 0 {
                    succ[a] |= 1 << b;
                } else {
                    succ[b] |= 1 << a;
                }
            }
        }
        let mut indeg: Vec<u32> = (0..k).map(|v| succ.iter().filter(|s| *s >> v & 1 == 1).count() as u32).collect();
        let mut ready: Vec<usize> = (0..k).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for w in 0..k {
                if succ[v] >> w & 1 == 1 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        if seen == k {
            acyclic += 1;
        }
    }
    Some(acyclic)
}

pub(super) fn enumerate(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let n = colors(cfg, 2)?;
    let k = small(cfg.k, 3, "arity k", 12)?;
    let total = total_family(cfg)?;
    let elements = timed(report, "enumerate", || enumerate_graphs(n, k, total, DEFAULT_ENUMERATION_BUDGET))?;
    let count = elements.len() as u64;
    report.set_data("count", json!(count));
    if total {
        let oracle = factorial(k) * (n as u64).pow(edge_count(k) as u32);
        report.push(
            CheckResult::new("count equals k!·n^C(k,2)", count == oracle)
                .detail(format!("{count} enumerated, {oracle} expected"))
                .witness_if(count != oracle, || format!("n={n} k={k}: {count} vs {oracle}")),
        );
    }
    if k == 2 {
        let expected = 2 * n as u64 + u64::from(!total);
        report.push(
            CheckResult::new("arity 2 count", count == expected)
                .detail(format!("{count} enumerated, {expected} expected"))
                .witness_if(count != expected, || format!("n={n}: {count} vs {expected}")),
        );
    }
    let brute = timed(report, "brute force", || brute_count(n, k, total, DEFAULT_ENUMERATION_BUDGET));
    report.push(match brute {
        Some(b) => CheckResult::new("count equals direct acyclicity scan", b == count)
            .detail(format!("{b} acyclic labellings among all assignments"))
            .witness_if(b != count, || format!("n={n} k={k}: enumerator {count}, scan {b}")),
        None => CheckResult::skipped("count equals direct acyclicity scan", "more assignments than the budget allows"),
    });
    let all_valid = elements.iter().all(PartialGraphLabel::validate);
    report.push(CheckResult::new("every element is acyclic", all_valid).cases(count).witness_if(!all_valid, || {
        format!("{:?}", elements.iter().find(|e| !e.validate()))
    }));
    if elements.len() <= 500 {
        report.set_data("elements", json!(elements.iter().map(|e| e.to_json()).collect::<Vec<_>>()));
        report.table = Some(Table {
            columns: vec!["index".into(), "element".into()],
            rows: elements.iter().enumerate().map(|(i, e)| vec![i.to_string(), e.to_json_string()]).collect(),
        });
    }
    Ok(())
}

fn carrier_poset(n: u8, k: usize, total: bool) -> Result<(Vec<PartialGraphLabel>, FinPoset)> {
    let elements = enumerate_graphs(n, k, total, DEFAULT_ENUMERATION_BUDGET)?;
    let poset = FinPoset::from_elements(&elements, |a, b| a.leq(b).unwrap_or(false))?;
    Ok((elements, poset))
}

fn homology_table(h: &HomologyResult, oracle: Option<&[u64]>) -> Table {
    let degrees = h.betti.len().max(oracle.map_or(0, <[u64]>::len));
    let mut columns = vec!["degree".to_string(), "betti".into(), "torsion".into()];
    if oracle.is_some() {
        columns.push("expected".into());
    }
    let rows = (0..degrees)
        .map(|d| {
            let torsion: Vec<String> = h.torsion.get(d).map(|t| t.iter().map(ToString::to_string).collect()).unwrap_or_default();
            let mut row = vec![
                d.to_string(),
                h.betti.get(d).copied().unwrap_or(0).to_string(),
                torsion.join(" "),
            ];
            if let Some(o) = oracle {
                row.push(o.get(d).copied().unwrap_or(0).to_string());
            }
            row
        })
        .collect();
    Table { columns, rows }
}

fn homology_data(ph: &PosetHomology, size: usize) -> Value {
    json!({
        "homology": ph.homology.to_json(),
        "poset_size": size,
        "elements_used": ph.elements_used,
        "via_core": ph.via_core,
        "simplex_counts": ph.simplex_counts,
    })
}

fn betti_u64(h: &HomologyResult) -> Vec<u64> {
    let mut b: Vec<u64> = h.betti.iter().map(|&x| x as u64).collect();
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

pub(super) fn homology(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let family = cfg.family.clone().unwrap_or_else(|| "k".into());
    let n = colors(cfg, 2)?;
    let (poset, what) = if family == "join" {
        let m = small(cfg.m, 1, "colors m", 16)?.max(1) as u8;
        let (_, p) = carrier_poset(n, 2, true)?;
        let (_, q) = carrier_poset(m, 2, true)?;
        (p.ordinal_join(&q), format!("K^({n})(2) * K^({m})(2)"))
    } else {
        let k = small(cfg.k, 3, "arity k", 6)?;
        let total = total_family(cfg)?;
        let (_, p) = timed(report, "enumerate", || carrier_poset(n, k, total))?;
        (p, format!("{}({k})", if total { CompleteGraphs::k(n) } else { CompleteGraphs::khat(n) }.name()))
    };
    let ph = timed(report, "homology", || poset_homology(&poset, cfg.simplex_budget))?;
    let h = &ph.homology;
    report.set_data("space", json!(what));
    report.set_data("result", homology_data(&ph, poset.size()));
    report.push(
        CheckResult::new("nerve and homology Euler characteristics agree", ph.via_core || ph.simplicial_euler == h.euler_characteristic())
            .witness_if(!ph.via_core && ph.simplicial_euler != h.euler_characteristic(), || {
                format!("simplices give {}, homology gives {}", ph.simplicial_euler, h.euler_characteristic())
            }),
    );
    let betti = betti_u64(h);
    let mut oracle = None;
    match family.as_str() {
        "k" => {
            let k = cfg.k.unwrap_or(3);
            let expected = configuration_poincare(n as usize, k);
            let ok = betti == expected && h.is_torsion_free();
            report.push(
                CheckResult::new("betti numbers match the configuration space", ok)
                    .detail(format!("betti {betti:?}, expected {expected:?}, torsion free: {}", h.is_torsion_free()))
                    .witness_if(!ok, || format!("{what}: {}", h.to_json())),
            );
            oracle = Some(expected);
        }
        "khat" => {
            let ok = h.is_acyclic();
            report.push(
                CheckResult::new("trivial reduced homology", ok)
                    .detail(format!("betti {betti:?}"))
                    .witness_if(!ok, || format!("{what}: {}", h.to_json())),
            );
        }
        "join" => {
            let m = cfg.m.unwrap_or(1).max(1);
            let d = n as usize + m - 1;
            let ok = h.is_sphere(d);
            report.push(
                CheckResult::new(format!("homology of S^{d}"), ok)
                    .detail(format!("betti {betti:?}"))
                    .witness_if(!ok, || format!("{what}: {}", h.to_json())),
            );
        }
        other => return Err(Error::Parse(format!("unknown family {other:?} (k, khat, join)"))),
    }
    report.table = Some(homology_table(h, oracle.as_deref()));
    Ok(())
}

/// The orbit structure of Σₖ on the components of the arity-`k` poset and
/// on its elements, and the homology of each component. Only evidence: the
/// checks here are informational except order preservation.
pub(super) fn recognize(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let n = colors(cfg, 2)?;
    let k = small(cfg.k, 3, "arity k", 6)?;
    let total = total_family(cfg)?;
    let name = if total { CompleteGraphs::k(n) } else { CompleteGraphs::khat(n) }.name();
    let (elements, poset) = timed(report, "enumerate", || carrier_poset(n, k, total))?;
    let components = poset.components();
    let mut comp_of = vec![0usize; poset.size()];
    for (c, members) in components.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    report.set_data("space", json!(format!("{name}({k})")));
    report.set_data("elements", json!(elements.len()));
    report.set_data("components", json!(components.len()));

    let perms = Perm::all(k);
    let mut order_witness = None;
    let mut fixed_pairs = 0u64;
    let mut fixed_example = None;
    let mut orbit: BTreeSet<usize> = BTreeSet::new();
    let mut comp_fixed_example = None;
    for g in &perms {
        let map = induced_index_map(&elements, |x| x.act(g))?;
        match action_fixed_points(Some(&poset), &map) {
            Ok(fixed) if !g.is_identity() => {
                fixed_pairs += fixed.len() as u64;
                if let Some(&v) = fixed.first() {
                    fixed_example.get_or_insert_with(|| format!("{g} fixes {}", elements[v]));
                }
            }
            Ok(_) => {}
            Err(e) => {
                order_witness.get_or_insert_with(|| format!("{g}: {e}"));
            }
        }
        if let Some(first) = components.first() {
            orbit.insert(comp_of[map[first[0]]]);
        }
        if !g.is_identity() && comp_fixed_example.is_none() {
            if let Some(c) = components.iter().position(|m| comp_of[map[m[0]]] == comp_of[m[0]]) {
                comp_fixed_example = Some(format!("{g} fixes the component of {}", elements[components[c][0]]));
            }
        }
    }
    report.push(
        CheckResult::new("Σk acts by order automorphisms", order_witness.is_none())
            .cases(perms.len() as u64)
            .witness_opt(order_witness),
    );
    let transitive = orbit.len() == components.len();
    report.push(
        CheckResult::new("Σk transitive on components", transitive)
            .optional()
            .detail(format!("orbit of one component has {} of {} components", orbit.len(), components.len()))
            .witness_if(!transitive, || format!("{} components outside the orbit", components.len() - orbit.len())),
    );
    report.push(
        CheckResult::new("Σk free on components", comp_fixed_example.is_none())
            .optional()
            .witness_opt(comp_fixed_example),
    );
    report.push(
        CheckResult::new("Σk free on elements", fixed_pairs == 0)
            .optional()
            .cases((perms.len() as u64 - 1) * elements.len() as u64)
            .detail(format!("{fixed_pairs} (permutation, element) fixed pairs"))
            .witness_opt(fixed_example),
    );
    let top = poset.has_greatest_element();
    report.push(
        CheckResult::new("greatest element", top.is_some())
            .optional()
            .detail(match top {
                Some(t) => format!("greatest element {}", elements[t]),
                None => "no greatest element".into(),
            })
            .witness_if(top.is_none(), || format!("{} maximal elements", poset.maximal_elements().len())),
    );

    let mut homologies = Vec::new();
    let mut nontrivial = None;
    timed(report, "homology", || -> Result<()> {
        for members in &components {
            let ph = poset_homology(&poset.subposet(members), cfg.simplex_budget)?;
            if !ph.homology.is_acyclic() && nontrivial.is_none() {
                nontrivial = Some(format!("component of {}: {}", elements[members[0]], ph.homology.to_json()));
            }
            homologies.push(ph);
        }
        Ok(())
    })?;
    let contractible = nontrivial.is_none();
    report.push(
        CheckResult::new("components have trivial reduced homology", contractible)
            .optional()
            .cases(components.len() as u64)
            .witness_opt(nontrivial),
    );
    let distinct: BTreeSet<String> = homologies.iter().map(|h| h.homology.to_json().to_string()).collect();
    report.set_data(
        "component_homology",
        Value::Array(distinct.iter().map(|s| serde_json::from_str(s).expect("json")).collect()),
    );
    let mut matches_config = None;
    if total && components.len() == 1 {
        let expected = configuration_poincare(n as usize, k);
        let betti = betti_u64(&homologies[0].homology);
        let ok = betti == expected && homologies[0].homology.is_torsion_free();
        matches_config = Some(ok);
        report.push(
            CheckResult::new("homology matches the configuration space", ok)
                .optional()
                .detail(format!("betti {betti:?}, expected {expected:?}"))
                .witness_if(!ok, || format!("betti {betti:?}")),
        );
    }

    let free = fixed_pairs == 0;
    let free_transitive = transitive && report.check("Σk free on components").is_some_and(|c| c.status == crate::report::Status::Pass);
    let summary = if total && n == 1 && contractible && free_transitive && components.len() as u64 == factorial(k) {
        format!("E1 evidence: {} contractible components, permuted freely and transitively by Σ{k}", components.len())
    } else if contractible && components.len() == 1 && !free {
        format!("contractible, but Σ{k} has fixed points, so the E∞ criteria fail at freeness")
    } else if contractible && components.len() == 1 && free {
        format!("contractible with a free Σ{k} action: consistent with E∞ at this arity")
    } else if free && matches_config == Some(true) {
        format!("connected, free action, homology of the configuration space of {k} points in R^{n}: consistent with E{n}; no recognition principle decides 2 ≤ n < ∞, so this is evidence only")
    } else {
        "no recognition criterion is met at this arity".to_string()
    };
    report.set_data("summary", json!(summary));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_counts_match_oracles() {
        assert_eq!(brute_count(2, 3, true, u64::MAX), Some(48));
        assert_eq!(brute_count(3, 2, false, u64::MAX), Some(7));
        assert_eq!(brute_count(1, 4, true, u64::MAX), Some(24));
        assert_eq!(brute_count(2, 5, false, 10), None);
    }
}
