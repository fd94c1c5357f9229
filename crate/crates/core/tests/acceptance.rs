//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --test acceptance`. Each criterion either passes,
//! fails with the reason, or is reported as a documented deviation when the
//! stated property is false for the faithful construction (the true facts
//! are still asserted, so the line can only appear if they hold).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use serde_json::Value;

use operad_forge::complex::{configuration_poincare, poset_homology, DEFAULT_SIMPLEX_BUDGET};
use operad_forge::graphs::{enumerate, CompleteGraphs, PartialGraphLabel, DEFAULT_ENUMERATION_BUDGET};
use operad_forge::operad::{verify_operad, CheckMode, VerifyOptions, DEFAULT_SEED};
use operad_forge::perm::Perm;
use operad_forge::poset::FinPoset;
use operad_forge::report::{CheckResult, Report, RunConfig, Status};
use operad_forge::suites::run_suite;

enum Outcome {
    Pass(String),
    Deviation(String),
}

type Criterion = fn() -> Result<Outcome, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run(suite: &str, settings: &[(&str, &str)]) -> Result<Report, String> {
    let mut cfg = RunConfig::new(suite);
    for (k, v) in settings {
        cfg.set(k, v).map_err(|e| e.to_string())?;
    }
    run_suite(&cfg).map_err(|e| e.to_string())
}

fn check<'a>(r: &'a Report, name: &str) -> Result<&'a CheckResult, String> {
    r.check(name).ok_or_else(|| format!("{} has no check {name:?}", r.suite))
}

fn require_pass(r: &Report, name: &str) -> Result<(), String> {
    let c = check(r, name)?;
    ensure!(c.status == Status::Pass, "{}: {name} failed: {:?}", r.suite, c.witness);
    Ok(())
}

/// Every required check passed, and the report names at least one check.
fn all_required_pass(r: &Report) -> Result<(), String> {
    ensure!(!r.checks.is_empty(), "{} produced no checks", r.suite);
    for c in r.checks.iter().filter(|c| c.required) {
        ensure!(c.status == Status::Pass, "{} / {}: {:?}", r.suite, c.name, c.witness);
    }
    Ok(())
}

fn carrier(n: u8, k: usize, total: bool) -> (Vec<PartialGraphLabel>, FinPoset) {
    let els = enumerate(n, k, total, DEFAULT_ENUMERATION_BUDGET).expect("enumerable");
    let poset = FinPoset::from_elements(&els, |a, b| a.leq(b).unwrap_or(false)).expect("a poset");
    (els, poset)
}

/// Counts acyclic orientations of the complete graph on `k` vertices by
/// brute force: an orientation is acyclic iff some vertex order agrees
/// with every arrow.
fn acyclic_orientations(k: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
    let orders = Perm::all(k);
    (0u64..1 << pairs.len())
        .filter(|mask| {
            orders.iter().any(|p| {
                pairs.iter().enumerate().all(|(i, &(a, b))| {
                    let forward = mask >> i & 1 == 1;
                    (p.apply(a) < p.apply(b)) == forward
                })
            })
        })
        .count() as u64
}

/// Coefficients of ∏_{i=1}^{k−1} (1 + i t^{n−1}), expanded directly.
fn poincare_oracle(n: usize, k: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; (n - 1) * (k - 1) + 1];
    // choose for each factor either 1 or i·t^{n−1}
    for subset in 0u32..1 << (k - 1) {
        let mut c = 1u64;
        for i in 1..k {
            if subset >> (i - 1) & 1 == 1 {
                c *= i as u64;
            }
        }
        coeffs[(n - 1) * subset.count_ones() as usize] += c;
    }
    coeffs
}

fn trimmed(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn c1_axioms() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut notes = Vec::new();
    for family in ["khat", "k"] {
        let r = run(
            "axioms",
            &[("family", family), ("n", "2"), ("max_arity", "3"), ("exhaustive_limit", "100000000")],
        )?;
        all_required_pass(&r)?;
        for name in ["unit", "associativity", "equivariance", "degeneracy", "monotonicity"] {
            let c = check(&r, name)?;
            ensure!(c.mode == Some(CheckMode::Exhaustive), "{family} {name} was not exhaustive");
        }
        let assoc = check(&r, "associativity")?.cases;
        let op = if family == "k" { CompleteGraphs::k(2) } else { CompleteGraphs::khat(2) };
        let sampled = verify_operad(&op, VerifyOptions::sampled(4, 10_000, DEFAULT_SEED)).map_err(|e| e.to_string())?;
        for c in &sampled.checks {
            ensure!(c.passed, "{family} arity 4 {}: {:?}", c.name, c.witness);
            if let CheckMode::Sampled { samples, .. } = c.mode {
                ensure!(samples >= 10_000, "only {samples} samples");
            }
        }
        notes.push(format!("{} {assoc} associativity tuples", op.name()));
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(300), "took {took:?}");
    Ok(Outcome::Pass(format!("exhaustive to arity 3 ({}), 10^4 samples at arity 4, {:.1}s", notes.join(", "), took.as_secs_f64())))
}

fn c2_carrier_counts() -> Result<Outcome, String> {
    for n in 1..=4u8 {
        let k2 = enumerate(n, 2, true, DEFAULT_ENUMERATION_BUDGET).map_err(|e| e.to_string())?.len();
        let khat2 = enumerate(n, 2, false, DEFAULT_ENUMERATION_BUDGET).map_err(|e| e.to_string())?.len();
        ensure!(k2 == 2 * n as usize, "|K^({n})(2)| = {k2}");
        ensure!(khat2 == 2 * n as usize + 1, "|Khat^({n})(2)| = {khat2}");
    }
    let direct = acyclic_orientations(3) * 2u64.pow(3);
    ensure!(direct == 48, "direct acyclic count {direct}");
    let r = run("enumerate", &[("family", "k"), ("n", "2"), ("k", "3")])?;
    all_required_pass(&r)?;
    require_pass(&r, "count equals direct acyclicity scan")?;
    ensure!(r.data["count"] == 48, "enumerate reports {}", r.data["count"]);
    Ok(Outcome::Pass("2n and 2n+1 for n ≤ 4; |K^(2)(3)| = 48 = 3!·2^3 = direct scan".into()))
}

fn c3_spheres() -> Result<Outcome, String> {
    let start = Instant::now();
    for n in 1..=4u8 {
        let (_, p) = carrier(n, 2, true);
        let h = poset_homology(&p, DEFAULT_SIMPLEX_BUDGET).map_err(|e| e.to_string())?.homology;
        ensure!(h.is_sphere(n as usize - 1), "K^({n})(2) has betti {:?}", h.betti);
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(10), "took {took:?}");
    Ok(Outcome::Pass(format!("S^0..S^3 for n = 1..4 in {:.0} ms", took.as_secs_f64() * 1e3)))
}

fn c4_configuration_spaces() -> Result<Outcome, String> {
    let start = Instant::now();
    for (n, expected) in [(2u8, vec![1u64, 3, 2]), (3, vec![1, 0, 3, 0, 2])] {
        let oracle = poincare_oracle(n as usize, 3);
        ensure!(oracle == expected, "oracle {oracle:?}");
        ensure!(trimmed(configuration_poincare(n as usize, 3)) == expected, "library Poincaré series disagrees");
        let (_, p) = carrier(n, 3, true);
        let h = poset_homology(&p, DEFAULT_SIMPLEX_BUDGET).map_err(|e| e.to_string())?.homology;
        let betti = trimmed(h.betti.iter().map(|&b| b as u64).collect());
        ensure!(betti == expected, "K^({n})(3) betti {betti:?}");
        ensure!(h.is_torsion_free(), "torsion {:?}", h.torsion);
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(120), "took {took:?}");
    Ok(Outcome::Pass(format!("(1,3,2) and (1,0,3,0,2), torsion-free, in {:.1}s", took.as_secs_f64())))
}

fn c5_e1() -> Result<Outcome, String> {
    for k in 1..=4usize {
        let r = run("recognize", &[("family", "k"), ("n", "1"), ("k", &k.to_string())])?;
        all_required_pass(&r)?;
        let fact: u64 = (1..=k as u64).product();
        ensure!(r.data["components"] == fact, "K^(1)({k}) has {} components", r.data["components"]);
        for name in ["Σk transitive on components", "Σk free on components", "components have trivial reduced homology"] {
            require_pass(&r, name)?;
        }
    }
    Ok(Outcome::Pass("k! contractible components, free transitive Σk, k ≤ 4".into()))
}

fn c6_khat() -> Result<Outcome, String> {
    for n in 1..=3u8 {
        for k in 1..=3usize {
            let r = run("recognize", &[("family", "khat"), ("n", &n.to_string()), ("k", &k.to_string())])?;
            all_required_pass(&r)?;
            require_pass(&r, "greatest element")?;
            require_pass(&r, "components have trivial reduced homology")?;
            let free = check(&r, "Σk free on elements")?;
            ensure!((free.status == Status::Pass) == (k == 1), "Khat^({n})({k}) freeness reported {:?}", free.status);
            let top = PartialGraphLabel::top(k, n);
            ensure!(Perm::all(k).iter().all(|g| top.act(g) == top), "top element moved");
        }
    }
    Ok(Outcome::Pass("top element and trivial reduced homology for n,k ≤ 3; Σk fixes the top".into()))
}

fn c7_freeness() -> Result<Outcome, String> {
    let mut scanned = 0usize;
    for n in 1..=3u8 {
        for k in 1..=4usize {
            let els = enumerate(n, k, true, DEFAULT_ENUMERATION_BUDGET).map_err(|e| e.to_string())?;
            for g in Perm::all(k).iter().filter(|g| !g.is_identity()) {
                if let Some(x) = els.iter().find(|x| x.act(g) == **x) {
                    return Err(format!("{g} fixes {x}"));
                }
            }
            scanned += els.len();
        }
    }
    let r = run("counterexample", &[("target", "rx-cyclic")])?;
    all_required_pass(&r)?;
    let cyclic = r.checks.iter().filter(|c| c.name.starts_with("cyclic fixed point")).count();
    ensure!(cyclic >= 5, "only {cyclic} carriers tested");
    Ok(Outcome::Pass(format!("no fixed points among {scanned} elements; cyclic fixed point in RX(3) for {cyclic} free carriers")))
}

fn c8_non_commuting() -> Result<Outcome, String> {
    let r = run("counterexample", &[("target", "ru-c2")])?;
    all_required_pass(&r)?;
    require_pass(&r, "chases differ at edge {1,2}")?;
    require_pass(&r, "edge {1,2}: quarter squares against half squares")?;
    ensure!(r.data["lhs_edge_12"] != r.data["rhs_edge_12"], "edge {{1,2}} labels are equal");
    let quarter = |side: &Value| side.as_array().is_some_and(|cubes| cubes.iter().all(|c| c["intervals"].as_array().is_some_and(|iv| iv.iter().all(|i| i[0] == "0" && i[1] == "1/2" || i[0] == "1/2" && i[1] == "1"))));
    ensure!(quarter(&r.data["lhs_edge_12"]), "C2 side is not quarter squares: {}", r.data["lhs_edge_12"]);
    let differing = r.data["differing_edges"].clone();
    let expected = serde_json::json!([[1, 2], [1, 3], [2, 3]]);
    ensure!(differing == expected, "differing edges {differing}");
    Ok(Outcome::Deviation(
        "chases differ at {1,2}, quarter against half squares (exact); they also differ at {1,3} and {2,3}, where \
         the composite restricts to quarter squares but RUC2 keeps the outer half squares, so \"exactly {1,2}\" does not hold"
            .into(),
    ))
}

fn c9_round_trip() -> Result<Outcome, String> {
    for (n, k) in [(1, 3), (2, 3), (2, 4), (3, 3)] {
        let r = run("roundtrip", &[("n", &n.to_string()), ("k", &k.to_string()), ("samples", "1000")])?;
        all_required_pass(&r)?;
        let c = check(&r, "reconstruct after decompose is the identity")?;
        ensure!(c.cases == 1000, "({n},{k}) ran {} cases", c.cases);
        require_pass(&r, "decompose after reconstruct is the identity")?;
    }
    Ok(Outcome::Pass("1000 configurations each for (1,3), (2,3), (2,4), (3,3)".into()))
}

fn c10_cells() -> Result<Outcome, String> {
    let r = run("cells", &[("n", "2"), ("k", "3"), ("samples", "100")])?;
    all_required_pass(&r)?;
    let pairs = r.data["comparable_pairs"].as_u64().unwrap_or(0);
    let mono = check(&r, "monotonicity: λ ≤ λ′ puts the cell of λ inside the cell of λ′")?;
    ensure!(r.data["khat_size"] == 109 && pairs > 0, "Khat^(2)(3) not fully scanned");
    ensure!(mono.cases == 100 * pairs, "monotonicity ran {} cases", mono.cases);
    let comp = check(&r, "composition maps cells into the composite cell")?;
    ensure!(comp.cases >= 1000, "composition ran {} cases", comp.cases);
    require_pass(&r, "min_cell agrees with a scan of every total cell")?;
    ensure!(r.data["k_size"] == 48, "min_cell scan not over K^(2)(3)");
    Ok(Outcome::Pass(format!("{pairs} comparable pairs × 100 configurations; {} composite tuples; min_cell against all 48 cells", comp.cases)))
}

fn c11_atomic() -> Result<Outcome, String> {
    for monoid in ["z2", "z3", "idempotent"] {
        let r = run(
            "axioms",
            &[("family", "atomic"), ("monoid", monoid), ("max_arity", "3"), ("exhaustive_limit", "100000000")],
        )?;
        all_required_pass(&r)?;
        ensure!(r.checks.iter().all(|c| c.mode == Some(CheckMode::Exhaustive)), "{monoid} not exhaustive");
    }
    Ok(Outcome::Pass("Z/2, Z/3, idempotent: every axiom exhaustive to arity 3".into()))
}

fn c12_identification() -> Result<Outcome, String> {
    let r = run("identification", &[("n", "2"), ("max_arity", "3")])?;
    all_required_pass(&r)?;
    require_pass(&r, "R2T2B = RUB for B = K^(2)")?;
    Ok(Outcome::Pass(format!("B = K^(2) to arity 3, {} cases", check(&r, "R2T2B = RUB for B = K^(2)")?.cases)))
}

fn c13_gtensor() -> Result<Outcome, String> {
    for (m, n) in [(1, 1), (1, 2)] {
        let r = run("gtensor", &[("m", &m.to_string()), ("n", &n.to_string()), ("k", "3"), ("samples", "10000")])?;
        all_required_pass(&r)?;
        for name in [
            "closure under composition",
            "product_embed preserves composition",
            "product_embed is injective",
            "cube configurations split",
        ] {
            let c = check(&r, name)?;
            ensure!(c.status == Status::Pass && c.cases >= 10_000, "({m},{n}) {name}: {} cases", c.cases);
        }
    }
    Ok(Outcome::Pass("(1,1) and (1,2), k ≤ 3, 10^4 samples per property".into()))
}

fn c14_interchange() -> Result<Outcome, String> {
    let r = run("interchange", &[("case", "all"), ("samples", "1000")])?;
    all_required_pass(&r)?;
    let dunn = check(&r, "axis-split copies of C1 interchange in C2")?;
    ensure!(dunn.cases >= 1000, "only {} samples", dunn.cases);
    require_pass(&r, "a pair inside C2 that does not interchange")?;
    ensure!(!r.data["c2_failure"].is_null(), "no failing pair recorded");
    let chase = r.checks.iter().find(|c| c.name.ends_with("interchange chase")).ok_or("no chase check")?;
    ensure!(chase.status == Status::Pass, "chase failed: {:?}", chase.witness);
    Ok(Outcome::Pass("axis-split C1 pairs interchange, a failing pair in C2, vertex chase holds".into()))
}

fn c15_obstruction() -> Result<Outcome, String> {
    let r = run("obstruction", &[("monoid", "idempotent")])?;
    all_required_pass(&r)?;
    let w = check(&r, "witness c′ = c′τ")?;
    ensure!(w.detail.as_deref().is_some_and(|d| d.contains("c′ = (a, a)")), "witness {:?}", w.detail);
    for monoid in ["z2", "z3", "z4"] {
        let r = run("obstruction", &[("monoid", monoid)])?;
        all_required_pass(&r)?;
        require_pass(&r, "endpoints of c′ and c′τ agree on the doubled square")?;
    }
    Ok(Outcome::Pass("c′ = (a, a) fixed by τ; endpoints agree on every instance".into()))
}

fn main() {
    let criteria: [(&str, Criterion); 15] = [
        ("operad axioms for Khat^(2) and K^(2)", c1_axioms),
        ("carrier counts", c2_carrier_counts),
        ("K^(n)(2) is a homology sphere", c3_spheres),
        ("configuration space homology", c4_configuration_spaces),
        ("E1 evidence", c5_e1),
        ("Khat contractible but not free", c6_khat),
        ("freeness and cyclic fixed points", c7_freeness),
        ("C2 → RUC2 does not commute", c8_non_commuting),
        ("2-cogeneration round trip", c9_round_trip),
        ("cellular decomposition", c10_cells),
        ("atomic operads", c11_atomic),
        ("R2T2B = RUB", c12_identification),
        ("generalized tensor product", c13_gtensor),
        ("interchange", c14_interchange),
        ("finiteness obstruction", c15_obstruction),
    ];
    let (mut failures, mut deviations) = (0, 0);
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(Outcome::Pass(note)) => println!("criterion {:>2} PASS {title} [{secs:.1}s]: {note}", i + 1),
            Ok(Outcome::Deviation(note)) => {
                deviations += 1;
                println!("criterion {:>2} DEVIATION {title} [{secs:.1}s]: {note}", i + 1);
            }
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL {title} [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {deviations} documented deviation, {failures} failed, of {}",
        criteria.len() - failures - deviations,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
