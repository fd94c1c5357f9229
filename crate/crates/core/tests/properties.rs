use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use operad_forge::adjoint::{FiniteZ2Set, RConstruction};
use operad_forge::complex::{order_complex, poset_homology};
use operad_forge::cubes::random::random_config;
use operad_forge::cubes::{cell_contains, decompose, min_cell, reconstruct, LittleCubes};
use operad_forge::graphs::{enumerate, CompleteGraphs, DEFAULT_ENUMERATION_BUDGET};
use operad_forge::operad::{FiniteOperad, Operad};
use operad_forge::perm::Perm;
use operad_forge::poset::FinPoset;
use operad_forge::report::{RunConfig, Status};
use operad_forge::suites::run_suite;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_perm(k: usize, r: &mut ChaCha8Rng) -> Perm {
    let all = Perm::all(k);
    all[r.gen_range(0..all.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_cell_is_equivariant(seed in any::<u64>(), n in 1usize..=3, k in 0usize..=4) {
        let mut r = rng(seed);
        let x = random_config(n, k, &mut r);
        let g = random_perm(k, &mut r);
        let gx = LittleCubes::new(n).act(&x, &g);
        match (min_cell(&x), min_cell(&gx)) {
            (Ok(m), Ok(gm)) => {
                prop_assert_eq!(gm, m.act(&g));
                prop_assert!(cell_contains(&m, &x).unwrap());
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
        }
    }

    #[test]
    fn cube_composition_is_associative(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let op = LittleCubes::new(n);
        let k = r.gen_range(0..=3);
        let x = random_config(n, k, &mut r);
        let ys: Vec<_> = (0..k).map(|_| random_config(n, r.gen_range(0..=2), &mut r)).collect();
        let total: usize = ys.iter().map(|y| op.arity(y)).sum();
        let zs: Vec<_> = (0..total).map(|_| random_config(n, r.gen_range(0..=2), &mut r)).collect();
        let lhs = op.compose(&op.compose(&x, &ys).unwrap(), &zs).unwrap();
        let mut offset = 0;
        let inner: Vec<_> = ys
            .iter()
            .map(|y| {
                let a = op.arity(y);
                offset += a;
                op.compose(y, &zs[offset - a..offset]).unwrap()
            })
            .collect();
        let rhs = op.compose(&x, &inner).unwrap();
        prop_assert!(lhs.is_valid());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cube_decomposition_round_trips(seed in any::<u64>(), n in 1usize..=3, k in 0usize..=5) {
        let x = random_config(n, k, &mut rng(seed));
        prop_assert_eq!(reconstruct(n, &decompose(&x)), Some(x));
    }

    #[test]
    fn composition_respects_cells(seed in any::<u64>()) {
        // the cell of a composite contains the composite of configurations
        let mut r = rng(seed);
        let (n, op) = (2, LittleCubes::new(2));
        let x = random_config(n, 2, &mut r);
        let ys = vec![random_config(n, 2, &mut r), random_config(n, 1, &mut r)];
        if let (Ok(l), Ok(m0), Ok(m1)) = (min_cell(&x), min_cell(&ys[0]), min_cell(&ys[1])) {
            let nu = l.compose(&[m0, m1]).unwrap();
            prop_assert!(cell_contains(&nu, &op.compose(&x, &ys).unwrap()).unwrap());
        }
    }

    #[test]
    fn graph_composition_is_associative_and_equivariant(seed in any::<u64>(), n in 1u8..=2) {
        let mut r = rng(seed);
        let op = CompleteGraphs::khat(n);
        let pick = |k: usize, r: &mut ChaCha8Rng| {
            let c = op.carrier(k).unwrap();
            c[r.gen_range(0..c.len())].clone()
        };
        let x = pick(2, &mut r);
        let ys = vec![pick(2, &mut r), pick(1, &mut r)];
        let zs: Vec<_> = (0..3).map(|_| pick(r.gen_range(0..=1), &mut r)).collect();
        let lhs = op.compose(&op.compose(&x, &ys).unwrap(), &zs).unwrap();
        let rhs = op
            .compose(&x, &[op.compose(&ys[0], &zs[..2]).unwrap(), op.compose(&ys[1], &zs[2..]).unwrap()])
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        let g = Perm::transposition(2, 0, 1);
        let moved = op.compose(&op.act(&x, &g), &g.push(&ys)).unwrap();
        let blocks = g.block_permutation(&[2, 1]);
        prop_assert_eq!(moved, op.act(&op.compose(&x, &ys).unwrap(), &blocks));
    }

    #[test]
    fn nerve_euler_characteristic_matches_homology(edges in prop::collection::vec((0usize..7, 0usize..7), 0..14)) {
        // pairs i < j only, so the relation generates a partial order
        let pairs: Vec<_> = edges.into_iter().filter(|(i, j)| i < j).collect();
        let p = FinPoset::from_relation(7, &pairs).unwrap();
        let nerve = order_complex(&p, 1_000_000).unwrap();
        let h = poset_homology(&p, 1_000_000).unwrap();
        prop_assert_eq!(h.homology.euler_characteristic(), nerve.euler_characteristic());
        prop_assert_eq!(h.homology.betti[0], p.components().len());
    }

    #[test]
    fn beat_point_core_keeps_homology(edges in prop::collection::vec((0usize..8, 0usize..8), 0..16)) {
        let pairs: Vec<_> = edges.into_iter().filter(|(i, j)| i < j).collect();
        let p = FinPoset::from_relation(8, &pairs).unwrap();
        let full = poset_homology(&p, 1_000_000).unwrap().homology;
        let core = p.subposet(&p.core());
        prop_assert_eq!(poset_homology(&core, 1_000_000).unwrap().homology, full);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn rx_carriers_have_the_expected_size(m in 1usize..=2, k in 0usize..=3) {
        let x = FiniteZ2Set::free(m);
        let r = RConstruction::new(x);
        let carrier = r.carrier(k).unwrap();
        let edges = k * k.saturating_sub(1) / 2;
        prop_assert_eq!(carrier.len(), (2 * m).pow(edges as u32));
        let set: HashSet<_> = carrier.iter().cloned().collect();
        prop_assert_eq!(set.len(), carrier.len());
        for g in Perm::all(k) {
            prop_assert!(carrier.iter().all(|f| set.contains(&r.act(f, &g))));
        }
    }

    #[test]
    fn reports_are_deterministic(seed in any::<u64>(), suite in prop::sample::select(vec!["roundtrip", "cells", "interchange", "axioms"])) {
        let mut cfg = RunConfig::new(suite);
        cfg.seed = seed;
        cfg.samples = Some(50);
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        prop_assert_eq!(a.to_json_without_timings(), b.to_json_without_timings());
    }
}

#[test]
fn failing_checks_carry_witnesses() {
    let runs: &[(&str, &[(&str, &str)])] = &[
        ("counterexample", &[("target", "ru-c2")]),
        ("counterexample", &[("target", "rx-cyclic")]),
        ("obstruction", &[]),
        ("interchange", &[("case", "c2-fail")]),
        ("recognize", &[("family", "khat"), ("n", "2"), ("k", "3")]),
        ("enumerate", &[("family", "k"), ("n", "2"), ("k", "40")]),
    ];
    let mut failing = 0;
    for (suite, settings) in runs {
        let mut cfg = RunConfig::new(suite);
        for (k, v) in *settings {
            cfg.set(k, v).unwrap();
        }
        let report = run_suite(&cfg).unwrap();
        for c in report.checks.iter().filter(|c| c.status == Status::Fail) {
            failing += 1;
            assert!(c.witness.is_some(), "{suite}: {} has no witness", c.name);
        }
    }
    assert!(failing >= 6, "expected the fail-by-design checks to fail, saw {failing}");
}

#[test]
fn complete_graph_carriers_are_closed_under_the_action() {
    for (n, k) in [(1u8, 3usize), (2, 3), (3, 2)] {
        let els = enumerate(n, k, true, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let set: HashSet<_> = els.iter().cloned().collect();
        for g in Perm::all(k) {
            assert!(els.iter().all(|x| set.contains(&x.act(&g))));
        }
    }
}
