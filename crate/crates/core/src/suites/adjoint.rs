//! Suites over the right-adjoint constructions: the two counterexamples,
//! the finiteness obstruction and the `R₂T₂B = RUB` identification.

use serde_json::json;

use crate::adjoint::obstruction::{endpoints_injective, free_square, obstruction_scan, DoubledSquare};
use crate::adjoint::trunc2::FiniteTrunc2;
use crate::adjoint::{
    finiteness_obstruction_witness, r2t2_equals_ru_check, ru_nonclosure_check, AtomicOperad, FiniteMonoid,
    FiniteZ2Set, Monoid, RConstruction, REdgeLabelling, Z2Carrier,
};
use crate::cubes::{counterexample_tuple, CubeConfig, LittleCubes};
use crate::error::{Error, Result};
use crate::graphs::CompleteGraphs;
use crate::operad::{FiniteOperad, Operad};
use crate::perm::Perm;
use crate::report::{CheckResult, Report, RunConfig};

use super::{parse_monoid, parse_z2set, small, timed};

pub(super) fn counterexample(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    match cfg.target.as_deref().unwrap_or("ru-c2") {
        "ru-c2" => ru_c2(report),
        "rx-cyclic" => rx_cyclic(cfg, report),
        other => Err(Error::Parse(format!("unknown target {other:?} (ru-c2, rx-cyclic)"))),
    }
}

/// `C₂ → RUC₂` is not a map of operads: composing the tuple in `C₂` and
/// then taking pairs differs from composing the pair labellings in `RUC₂`.
fn ru_c2(report: &mut Report) -> Result<()> {
    let c2 = LittleCubes::new(2);
    let (alpha, inners) = counterexample_tuple();
    let nc = ru_nonclosure_check(&c2, &alpha, &inners)?;
    let composite = c2.compose(&alpha, &inners)?;
    let beta = &inners[0];
    let lhs_edge = nc.lhs.canonical(0, 1);
    let rhs_edge = nc.rhs.canonical(0, 1);
    let edge_json = |c: &CubeConfig| c.to_json_string();
    report.set_data("alpha", json!(alpha.to_json()));
    report.set_data("inners", json!(inners.iter().map(CubeConfig::to_json).collect::<Vec<_>>()));
    report.set_data("composite", json!(composite.to_json()));
    report.set_data("differing_edges", json!(nc.differing_edges));
    report.set_data("lhs_edge_12", json!(lhs_edge.to_json()));
    report.set_data("rhs_edge_12", json!(rhs_edge.to_json()));

    let at_12 = nc.differing_edges.contains(&(1, 2));
    report.push(
        CheckResult::new("chases differ at edge {1,2}", at_12)
            .cases(nc.lhs.labels().len() as u64)
            .detail(format!("differing edges {:?}", nc.differing_edges))
            .witness_if(!at_12, || format!("differing edges {:?}", nc.differing_edges)),
    );
    // edges between the two blocks keep the outer halves on the RUC2 side
    // while the composite has quarters there, so {1,3} and {2,3} differ too
    let only_12 = nc.differing_edges == [(1, 2)];
    report.push(
        CheckResult::new("chases differ only at edge {1,2}", only_12)
            .optional()
            .witness_if(!only_12, || {
                nc.differing_edges
                    .iter()
                    .filter(|&&e| e != (1, 2))
                    .map(|&(a, b)| {
                        format!(
                            "edge {{{a},{b}}}: {} vs {}",
                            edge_json(nc.lhs.canonical(a - 1, b - 1)),
                            edge_json(nc.rhs.canonical(a - 1, b - 1))
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("; ")
            }),
    );
    let quarters = *lhs_edge == composite.select(&[0, 1]) && lhs_edge.cubes().iter().all(|c| area(c) == (1, 4));
    let halves = rhs_edge == beta && rhs_edge.cubes().iter().all(|c| area(c) == (1, 2));
    report.push(
        CheckResult::new("edge {1,2}: quarter squares against half squares", quarters && halves && lhs_edge != rhs_edge)
            .detail(format!("A-side {}, RUA-side {}", edge_json(lhs_edge), edge_json(rhs_edge)))
            .witness_if(!(quarters && halves), || {
                format!("A-side {}, RUA-side {}", edge_json(lhs_edge), edge_json(rhs_edge))
            }),
    );
    report.push(
        CheckResult::new("C2 → RUC2 commutes with composition", nc.commutes())
            .optional()
            .detail("expected to fail: the unit map is not an operad map")
            .witness(format!(
                "μ(α; β, γ) with α = {}, β = {}, γ = {}: edge {{1,2}} is {} after composing, {} in RUC2",
                alpha.to_json_string(),
                beta.to_json_string(),
                inners[1].to_json_string(),
                edge_json(lhs_edge),
                edge_json(rhs_edge)
            )),
    );
    Ok(())
}

/// Area of a square cube as a reduced fraction.
fn area(c: &crate::cubes::CubeN) -> (i64, i64) {
    use num_traits::ToPrimitive;
    let a = c.intervals().iter().fold(crate::cubes::rat(1, 1), |acc, (lo, hi)| acc * (hi - lo));
    (a.numer().to_i64().unwrap_or(0), a.denom().to_i64().unwrap_or(0))
}

/// In `RX(3)` the labelling `f(1,2) = f(2,3) = f(3,1) = x` is fixed by the
/// 3-cycle, for every `x`, even when `X` is free.
fn rx_cyclic(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let specs: Vec<String> = match &cfg.z2set {
        Some(s) => vec![s.clone()],
        None => ["s0", "free2", "free3", "colors2", "colors3"].map(String::from).to_vec(),
    };
    let cycle = Perm::cycle(3, &[1, 2, 3])?;
    let mut rows = Vec::new();
    for spec in &specs {
        let x = parse_z2set(spec)?;
        let r = RConstruction::new(x.clone());
        let carrier = r.carrier(3)?;
        let fixed: Vec<&REdgeLabelling<usize>> = carrier.iter().filter(|f| r.act(f, &cycle) == **f).collect();
        let mut missing = None;
        for a in 0..x.len() {
            // storage order {1,2}, {1,3}, {2,3}; f(1,3) is the bar of f(3,1)
            let f = REdgeLabelling::new(3, vec![a, x.bar(&a), a])?;
            if !fixed.contains(&&f) {
                missing.get_or_insert_with(|| format!("f(1,2)=f(2,3)=f(3,1)={} is not fixed", x.name(a)));
            }
        }
        report.push(
            CheckResult::new(format!("cyclic fixed point in R({spec})(3) for every x"), missing.is_none())
                .cases(x.len() as u64)
                .detail(format!("{} fixed labellings, involution free: {}", fixed.len(), x.is_free()))
                .witness_opt(missing),
        );
        let example = fixed.first().map(|f| labelling_names(&x, f));
        report.push(
            CheckResult::new(format!("Σ3 acts freely on R({spec})(3)"), fixed.is_empty())
                .optional()
                .detail("expected to fail: RX is not an E∞ operad")
                .witness_opt(example.map(|e| format!("(1 2 3) fixes {e}"))),
        );
        rows.push(json!({"z2set": spec, "free": x.is_free(), "carrier": carrier.len(), "cyclic_fixed": fixed.len()}));
    }
    report.set_data("sets", json!(rows));
    Ok(())
}

fn labelling_names(x: &FiniteZ2Set, f: &REdgeLabelling<usize>) -> String {
    let k = f.k();
    let parts: Vec<String> = crate::edges::pairs(k)
        .map(|(a, b)| format!("f({},{})={}", a + 1, b + 1, x.name(*f.canonical(a, b))))
        .collect();
    parts.join(", ")
}

/// Finite `A(1)` and an injective endpoint map force `c′ = c′τ`.
pub(super) fn obstruction(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let spec = cfg.monoid.as_deref().unwrap_or("idempotent");
    let monoid = parse_monoid(spec)?;
    let name = |i: usize| monoid.name(i).to_string();
    let t = free_square(monoid.clone());
    report.set_data("monoid", json!(spec));

    let injective = endpoints_injective(&t)?;
    report.push(CheckResult::new("endpoint map of T2R1M is injective", injective).witness_if(!injective, || spec.into()));

    let one = monoid.one();
    if let Some(a) = monoid.elements().find(|&e| e != one) {
        let c = vec![a, one];
        let w = finiteness_obstruction_witness(&t, &c, monoid.len() + 1)?;
        let pair = |v: &Vec<usize>| format!("({}, {})", name(v[0]), name(v[1]));
        report.set_data(
            "witness",
            json!({
                "c": pair(&w.c),
                "m": w.m,
                "r": w.r,
                "c_prime": pair(&w.c_prime),
                "c_prime_tau": pair(&w.c_prime_swapped),
            }),
        );
        report.push(
            CheckResult::new("witness c′ = c′τ", w.fixed && w.endpoints_agree())
                .detail(format!("c = {}, a^{} = a^{}, c′ = {}", pair(&w.c), w.m, w.m + w.r, pair(&w.c_prime)))
                .witness_if(!(w.fixed && w.endpoints_agree()), || format!("c′ = {}, c′τ = {}", pair(&w.c_prime), pair(&w.c_prime_swapped))),
        );
    }

    let scan = timed(report, "scan", || obstruction_scan(&t))?;
    let bad = scan.iter().find(|w| !(w.endpoints_agree() && w.fixed));
    report.push(
        CheckResult::new("every c gives a Σ2-fixed c′", bad.is_none())
            .cases(scan.len() as u64)
            .witness_opt(bad.map(|w| format!("{w:?}"))),
    );

    // Σ₂ acts freely on the doubled square, so the endpoint map is not injective
    let doubled = DoubledSquare { monoid };
    let injective = endpoints_injective(&doubled)?;
    report.push(
        CheckResult::new("doubled square has non-injective endpoints", !injective)
            .witness_if(injective, || "endpoint map injective".into()),
    );
    let scan = obstruction_scan(&doubled)?;
    let bad = scan.iter().find(|w| !w.endpoints_agree());
    report.push(
        CheckResult::new("endpoints of c′ and c′τ agree on the doubled square", bad.is_none())
            .cases(scan.len() as u64)
            .witness_opt(bad.map(|w| format!("{w:?}"))),
    );
    let fixed = scan.iter().filter(|w| w.fixed).count();
    report.push(
        CheckResult::new("c′ is Σ2-fixed on the doubled square", fixed == scan.len())
            .optional()
            .detail("expected to fail: Σ2 acts freely there")
            .witness_opt(scan.iter().find(|w| !w.fixed).map(|w| format!("{:?} ≠ {:?}", w.c_prime, w.c_prime_swapped))),
    );
    report.set_data("a2_sizes", json!({"free_square": t.a2_elements()?.len(), "doubled": doubled.a2_elements()?.len()}));
    Ok(())
}

/// `R₂T₂B ≅ RUB` for `B = K⁽ⁿ⁾`, and the failure for `B = R₁(Z/2)` whose
/// vertex labels are not recovered from edge labels.
pub(super) fn identification(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let n = small(cfg.n, 2, "colors n", 4)?.max(1) as u8;
    let max_arity = small(cfg.max_arity, 3, "max arity", 4)?;
    let b = CompleteGraphs::k(n);
    let id = timed(report, "identification", || r2t2_equals_ru_check(&b, max_arity))?;
    report.set_data("r2_sizes", json!(id.r2_sizes));
    report.set_data("ru_sizes", json!(id.ru_sizes));
    report.push(
        CheckResult::new(format!("R2T2B = RUB for B = {}", b.name()), id.holds())
            .cases(id.compositions_checked + id.actions_checked)
            .detail(format!(
                "carriers {:?}, {} compositions and {} actions compared",
                id.r2_sizes, id.compositions_checked, id.actions_checked
            ))
            .witness_opt(id.witness.clone()),
    );
    let control = r2t2_equals_ru_check(&AtomicOperad::new(FiniteMonoid::cyclic(2)), max_arity.min(3))?;
    report.set_data("control_sizes", json!({"r2": control.r2_sizes, "ru": control.ru_sizes}));
    report.push(
        CheckResult::new("negative control R1(Z/2) is told apart", !control.holds())
            .detail(format!("R2T2 sizes {:?}, RU sizes {:?}", control.r2_sizes, control.ru_sizes))
            .witness_if(control.holds(), || "the check accepted R1(Z/2)".into()),
    );
    Ok(())
}
