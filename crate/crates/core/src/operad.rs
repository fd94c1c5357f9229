//! The operad interface shared by every construction in the crate, and a
//! brute-force axiom verifier for operads with finite arity carriers.
//!
//! Conventions: inputs are numbered from 0, the symmetric group acts by
//! pushing (see [`Perm`]), and `degeneracy(x, i)` plugs the point of `A(0)`
//! into input `i`.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::perm::Perm;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 1_000_000;
pub const DEFAULT_SAMPLES: u64 = 10_000;

pub trait Operad {
    type El: Clone + PartialEq + Debug;

    fn arity(&self, x: &Self::El) -> usize;

    /// The identity operation in arity 1.
    fn unit(&self) -> Self::El;

    /// The unique element of arity 0.
    fn point(&self) -> Self::El;

    fn compose(&self, outer: &Self::El, inners: &[Self::El]) -> Result<Self::El>;

    fn act(&self, x: &Self::El, g: &Perm) -> Self::El;

    /// Delete input `i`. Must agree with composing the point into slot `i`.
    fn degeneracy(&self, x: &Self::El, i: usize) -> Self::El;

    /// Partial order on each arity; equality for set operads.
    fn leq(&self, x: &Self::El, y: &Self::El) -> bool {
        x == y
    }

    fn is_poset_operad(&self) -> bool {
        false
    }
}

/// An operad whose arity carriers can be listed.
pub trait FiniteOperad: Operad
where
    Self::El: Eq + Hash,
{
    fn carrier(&self, k: usize) -> Result<Vec<Self::El>>;
}

/// Compose with units everywhere except the listed slots. Handy for
/// degeneracy chains.
pub fn compose_units<O: Operad>(op: &O, x: &O::El, replace: &[(usize, O::El)]) -> Result<O::El> {
    let mut inners = vec![op.unit(); op.arity(x)];
    for (slot, el) in replace {
        inners[*slot] = el.clone();
    }
    op.compose(x, &inners)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CheckMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    #[serde(flatten)]
    pub mode: CheckMode,
    pub cases: u64,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub max_arity: usize,
    pub carrier_sizes: Vec<usize>,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Outcomes of one sampled case, one slot per named check.
pub struct CaseRecord {
    cases: Vec<u64>,
    witness: Vec<Option<String>>,
}

impl CaseRecord {
    pub fn record(&mut self, check: usize, ok: bool, witness: impl FnOnce() -> String) {
        self.cases[check] += 1;
        if !ok && self.witness[check].is_none() {
            self.witness[check] = Some(witness());
        }
    }
}

/// Runs `samples` seeded cases in parallel. Case `i` draws from stream `i`
/// of a ChaCha8 generator seeded with `seed`, and the tallies are merged in
/// case order, so the result does not depend on scheduling.
pub fn sampled_checks<F>(names: &[&str], samples: u64, seed: u64, case: F) -> Vec<AxiomCheck>
where
    F: Fn(&mut ChaCha8Rng, &mut CaseRecord) + Sync,
{
    let records: Vec<CaseRecord> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let mut rec = CaseRecord {
                cases: vec![0; names.len()],
                witness: vec![None; names.len()],
            };
            case(&mut rng, &mut rec);
            rec
        })
        .collect();
    names
        .iter()
        .enumerate()
        .map(|(c, name)| {
            let witness = records.iter().find_map(|r| r.witness[c].clone());
            AxiomCheck {
                name: name.to_string(),
                mode: CheckMode::Sampled { samples, seed },
                cases: records.iter().map(|r| r.cases[c]).sum(),
                passed: witness.is_none(),
                witness,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub max_arity: usize,
    pub exhaustive_limit: u64,
    pub samples: u64,
    pub seed: u64,
    pub force_sampled: bool,
}

impl VerifyOptions {
    pub fn exhaustive(max_arity: usize) -> Self {
        VerifyOptions {
            max_arity,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            force_sampled: false,
        }
    }

    pub fn sampled(max_arity: usize, samples: u64, seed: u64) -> Self {
        VerifyOptions {
            max_arity,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            samples,
            seed,
            force_sampled: true,
        }
    }
}

/// All vectors of `len` non-negative entries with sum at most `max_sum`.
pub fn arity_vectors(len: usize, max_sum: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(len, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max_sum, &mut Vec::new(), &mut out);
    out
}

/// Visit every tuple of the cartesian product, stopping when `f` returns
/// `false`.
fn for_each_tuple<T>(sets: &[&[T]], mut f: impl FnMut(&[&T]) -> bool) {
    if sets.iter().any(|s| s.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; sets.len()];
    let mut cur: Vec<&T> = sets.iter().map(|s| &s[0]).collect();
    loop {
        if !f(&cur) {
            return;
        }
        let mut pos = sets.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < sets[pos].len() {
                cur[pos] = &sets[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            cur[pos] = &sets[pos][0];
        }
    }
}

struct Carriers<E> {
    by_arity: Vec<Vec<E>>,
    members: Vec<HashSet<E>>,
    comparable: Vec<Vec<(usize, usize)>>,
}

/// One family of test cases: the arity shape, the element sets to range
/// over, and how many cases a full enumeration would take.
struct Family {
    shape: Vec<usize>,
    count: u64,
}

/// Runs every axiom check on `op` up to `opts.max_arity`.
pub fn verify_operad<O>(op: &O, opts: VerifyOptions) -> Result<AxiomReport>
where
    O: FiniteOperad + Sync,
    O::El: Eq + Hash + Send + Sync,
{
    let n = opts.max_arity;
    let by_arity: Vec<Vec<O::El>> = (0..=n).map(|k| op.carrier(k)).collect::<Result<_>>()?;
    let members = by_arity.iter().map(|c| c.iter().cloned().collect()).collect();
    let comparable = by_arity
        .iter()
        .map(|c| {
            let mut v = Vec::new();
            if op.is_poset_operad() {
                for i in 0..c.len() {
                    for j in 0..c.len() {
                        if i != j && op.leq(&c[i], &c[j]) {
                            v.push((i, j));
                        }
                    }
                }
            }
            v
        })
        .collect();
    let cars = Carriers {
        by_arity,
        members,
        comparable,
    };
    let mut checks = vec![
        check_carriers(op, &cars),
        check_action(op, &cars, &opts),
        check_units(op, &cars),
        check_degeneracies(op, &cars),
        check_associativity(op, &cars, &opts),
        check_equivariance(op, &cars, &opts),
    ];
    if op.is_poset_operad() {
        checks.push(check_monotonicity(op, &cars, &opts));
    }
    Ok(AxiomReport {
        max_arity: n,
        carrier_sizes: cars.by_arity.iter().map(Vec::len).collect(),
        checks,
    })
}

struct Tally {
    name: &'static str,
    cases: u64,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            witness: None,
        }
    }

    /// Records one case; returns whether to keep going.
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
        self.witness.is_none()
    }

    fn finish(self, mode: CheckMode) -> AxiomCheck {
        AxiomCheck {
            name: self.name.to_string(),
            mode,
            cases: self.cases,
            passed: self.witness.is_none(),
            witness: self.witness,
        }
    }
}

fn check_carriers<O>(op: &O, cars: &Carriers<O::El>) -> AxiomCheck
where
    O: FiniteOperad,
    O::El: Eq + Hash,
{
    let mut t = Tally::new("carriers");
    t.record(cars.by_arity[0].len() == 1 && cars.by_arity[0][0] == op.point(), || {
        format!("A(0) = {:?}, expected the single point", cars.by_arity[0])
    });
    if cars.by_arity.len() > 1 {
        let u = op.unit();
        t.record(cars.members[1].contains(&u), || format!("unit {u:?} not in A(1)"));
    }
    for (k, c) in cars.by_arity.iter().enumerate() {
        for x in c {
            let a = op.arity(x);
            if !t.record(a == k, || format!("{x:?} listed in arity {k} has arity {a}")) {
                break;
            }
        }
        if op.is_poset_operad() {
            let r = crate::poset::FinPoset::from_elements(c, |x, y| op.leq(x, y));
            t.record(r.is_ok(), || format!("order on A({k}) is not a partial order: {r:?}"));
        }
    }
    t.finish(CheckMode::Exhaustive)
}

fn check_action<O>(op: &O, cars: &Carriers<O::El>, opts: &VerifyOptions) -> AxiomCheck
where
    O: FiniteOperad,
    O::El: Eq + Hash,
{
    let mut t = Tally::new("action");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xA);
    let mut sampled = false;
    'outer: for (k, c) in cars.by_arity.iter().enumerate() {
        let perms = Perm::all(k);
        let exhaustive = (c.len() as u64) * (perms.len() as u64).pow(2) <= opts.exhaustive_limit
            && !opts.force_sampled;
        let one = |x: &O::El, g: &Perm, h: &Perm, t: &mut Tally| -> bool {
            let gx = op.act(x, g);
            if !t.record(cars.members[k].contains(&gx), || format!("{g}·{x:?} = {gx:?} left A({k})")) {
                return false;
            }
            if g.is_identity() && !t.record(gx == *x, || format!("identity moved {x:?}")) {
                return false;
            }
            let lhs = op.act(&op.act(x, h), g);
            let rhs = op.act(x, &g.after(h));
            t.record(lhs == rhs, || format!("g·(h·x) ≠ (gh)·x for g={g}, h={h}, x={x:?}"))
        };
        if exhaustive {
            for x in c {
                for g in &perms {
                    for h in &perms {
                        if !one(x, g, h, &mut t) {
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            sampled = true;
            for _ in 0..opts.samples {
                let x = c.choose(&mut rng).expect("nonempty");
                let g = perms.choose(&mut rng).expect("nonempty");
                let h = perms.choose(&mut rng).expect("nonempty");
                if !one(x, g, h, &mut t) {
                    break 'outer;
                }
            }
        }
    }
    let mode = if sampled {
        CheckMode::Sampled {
            samples: opts.samples,
            seed: opts.seed,
        }
    } else {
        CheckMode::Exhaustive
    };
    t.finish(mode)
}

fn check_units<O>(op: &O, cars: &Carriers<O::El>) -> AxiomCheck
where
    O: FiniteOperad,
    O::El: Eq + Hash,
{
    let mut t = Tally::new("unit");
    let u = op.unit();
    'outer: for (k, c) in cars.by_arity.iter().enumerate() {
        for x in c {
            let left = op.compose(&u, std::slice::from_ref(x));
            if !t.record(left.as_ref() == Ok(x), || format!("μ(1; {x:?}) = {left:?}")) {
                break 'outer;
            }
            let right = op.compose(x, &vec![u.clone(); k]);
            if !t.record(right.as_ref() == Ok(x), || format!("μ({x:?}; 1,…,1) = {right:?}")) {
                break 'outer;
            }
        }
    }
    t.finish(CheckMode::Exhaustive)
}

fn check_degeneracies<O>(op: &O, cars: &Carriers<O::El>) -> AxiomCheck
where
    O: FiniteOperad,
    O::El: Eq + Hash,
{
    let mut t = Tally::new("degeneracy");
    let p = op.point();
    'outer: for (k, c) in cars.by_arity.iter().enumerate() {
        for x in c {
            for i in 0..k {
                let d = op.degeneracy(x, i);
                let via = compose_units(op, x, &[(i, p.clone())]);
                if !t.record(via.as_ref() == Ok(&d), || {
                    format!("d_{}({x:?}) = {d:?} but composing the point gives {via:?}", i + 1)
                }) {
                    break 'outer;
                }
            }
        }
    }
    t.finish(CheckMode::Exhaustive)
}

/// Shapes `(k; m_1..m_k; p_1..p_M)` with every intermediate arity within
/// bounds.
fn associativity_families<E>(cars: &Carriers<E>, n: usize) -> Vec<Family> {
    let size = |a: usize| cars.by_arity[a].len() as u64;
    let mut out = Vec::new();
    for k in 0..=n {
        for m in arity_vectors(k, n) {
            let big_m: usize = m.iter().sum();
            for p in arity_vectors(big_m, n) {
                let mut shape = vec![k];
                shape.extend(&m);
                shape.extend(&p);
                let count = shape.iter().map(|&a| size(a)).product();
                out.push(Family { shape, count });
            }
        }
    }
    out
}

fn two_level_families<E>(cars: &Carriers<E>, n: usize) -> Vec<Family> {
    let size = |a: usize| cars.by_arity[a].len() as u64;
    let mut out = Vec::new();
    for k in 0..=n {
        for m in arity_vectors(k, n) {
            let mut shape = vec![k];
            shape.extend(&m);
            let count = shape.iter().map(|&a| size(a)).product();
            out.push(Family { shape, count });
        }
    }
    out
}

/// Drives either a full enumeration of every family or uniform sampling
/// (uniform family, then uniform elements). The case function gets a random
/// source only when sampling. Enumeration is split over the first slot and
/// run in parallel; partial tallies merge in enumeration order, so the
/// report does not depend on the thread count.
fn drive<E, F>(
    name: &'static str,
    cars: &Carriers<E>,
    families: &[Family],
    per_case: u64,
    opts: &VerifyOptions,
    salt: u64,
    f: F,
) -> AxiomCheck
where
    E: Sync,
    F: Fn(&[usize], &[&E], Option<&mut ChaCha8Rng>, &mut Tally) -> bool + Sync,
{
    let total: u64 = families.iter().map(|fam| fam.count.saturating_mul(per_case)).sum();
    if total <= opts.exhaustive_limit && !opts.force_sampled {
        let jobs: Vec<(&Family, usize)> = families
            .iter()
            .filter(|fam| fam.count > 0)
            .flat_map(|fam| (0..cars.by_arity[fam.shape[0]].len()).map(move |i| (fam, i)))
            .collect();
        let parts: Vec<Tally> = jobs
            .par_iter()
            .map(|&(fam, first)| {
                let mut t = Tally::new(name);
                let mut sets: Vec<&[E]> = fam.shape.iter().map(|&a| cars.by_arity[a].as_slice()).collect();
                sets[0] = std::slice::from_ref(&sets[0][first]);
                for_each_tuple(&sets, |tuple| f(&fam.shape, tuple, None, &mut t));
                t
            })
            .collect();
        let mut t = Tally::new(name);
        for part in parts {
            t.cases += part.cases;
            if t.witness.is_none() {
                t.witness = part.witness;
            }
        }
        t.finish(CheckMode::Exhaustive)
    } else {
        let mut t = Tally::new(name);
        let live: Vec<&Family> = families.iter().filter(|fam| fam.count > 0).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ salt);
        for _ in 0..opts.samples {
            let fam = live.choose(&mut rng).expect("some family is nonempty");
            let tuple: Vec<&E> = fam
                .shape
                .iter()
                .map(|&a| &cars.by_arity[a][rng.gen_range(0..cars.by_arity[a].len())])
                .collect();
            if !f(&fam.shape, &tuple, Some(&mut rng), &mut t) {
                break;
            }
        }
        t.finish(CheckMode::Sampled {
            samples: opts.samples,
            seed: opts.seed,
        })
    }
}

fn check_associativity<O>(op: &O, cars: &Carriers<O::El>, opts: &VerifyOptions) -> AxiomCheck
where
    O: FiniteOperad + Sync,
    O::El: Eq + Hash + Send + Sync,
{
    let families = associativity_families(cars, opts.max_arity);
    drive("associativity", cars, &families, 1, opts, 0xA55, |shape, tuple, _, t| {
        let k = shape[0];
        let m = &shape[1..1 + k];
        let x = tuple[0];
        let ys: Vec<O::El> = tuple[1..1 + k].iter().map(|&e| e.clone()).collect();
        let zs: Vec<O::El> = tuple[1 + k..].iter().map(|&e| e.clone()).collect();
        let lhs = op.compose(x, &ys).and_then(|xy| op.compose(&xy, &zs));
        let mut offset = 0;
        let mut inner = Vec::with_capacity(k);
        let mut err = None;
        for (i, y) in ys.iter().enumerate() {
            match op.compose(y, &zs[offset..offset + m[i]]) {
                Ok(v) => inner.push(v),
                Err(e) => err = Some(e),
            }
            offset += m[i];
        }
        let rhs = match err {
            Some(e) => Err(e),
            None => op.compose(x, &inner),
        };
        let closed = match &lhs {
            Ok(v) => cars.members.get(op.arity(v)).is_some_and(|s| s.contains(v)),
            Err(_) => false,
        };
        t.record(lhs.is_ok() && lhs == rhs && closed, || {
            format!("x={x:?}, y={ys:?}, z={zs:?}: (xy)z={lhs:?}, x(yz)={rhs:?}")
        })
    })
}

fn check_equivariance<O>(op: &O, cars: &Carriers<O::El>, opts: &VerifyOptions) -> AxiomCheck
where
    O: FiniteOperad + Sync,
    O::El: Eq + Hash + Send + Sync,
{
    let n = opts.max_arity;
    let families = two_level_families(cars, n);
    let perms: Vec<Vec<Perm>> = (0..=n).map(Perm::all).collect();
    let per_case = perms.iter().map(|p| p.len() as u64).max().unwrap_or(1) * 2;
    drive("equivariance", cars, &families, per_case, opts, 0xE1, |shape, tuple, mut rng, t| {
        let k = shape[0];
        let m = &shape[1..];
        let x = tuple[0];
        let ys: Vec<O::El> = tuple[1..].iter().map(|&e| e.clone()).collect();
        let Ok(base) = op.compose(x, &ys) else {
            return t.record(false, || format!("composition failed for {x:?}; {ys:?}"));
        };
        let mut pick = |a: usize| -> Vec<&Perm> {
            match rng.as_deref_mut() {
                Some(r) => vec![perms[a].choose(r).expect("nonempty")],
                None => perms[a].iter().collect(),
            }
        };
        for g in pick(k) {
            let lhs = op.compose(&op.act(x, g), &g.push(&ys));
            let rhs = op.act(&base, &g.block_permutation(m));
            if !t.record(lhs.as_ref() == Ok(&rhs), || {
                format!("outer g={g}: μ(g·x; y∘g⁻¹)={lhs:?} ≠ g_blocks·μ(x;y)={rhs:?} for x={x:?}, y={ys:?}")
            }) {
                return false;
            }
        }
        for slot in 0..k {
            for h in pick(m[slot]) {
                let mut ys2 = ys.clone();
                ys2[slot] = op.act(&ys[slot], h);
                let lhs = op.compose(x, &ys2);
                let parts: Vec<Perm> = (0..k)
                    .map(|i| if i == slot { h.clone() } else { Perm::identity(m[i]) })
                    .collect();
                let rhs = op.act(&base, &Perm::block_sum(&parts));
                if !t.record(lhs.as_ref() == Ok(&rhs), || {
                    format!("inner slot {} h={h}: {lhs:?} ≠ {rhs:?} for x={x:?}, y={ys:?}", slot + 1)
                }) {
                    return false;
                }
            }
        }
        true
    })
}

fn check_monotonicity<O>(op: &O, cars: &Carriers<O::El>, opts: &VerifyOptions) -> AxiomCheck
where
    O: FiniteOperad,
    O::El: Eq + Hash,
{
    let n = opts.max_arity;
    let mut t = Tally::new("monotonicity");
    // action is monotone
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x30);
    let perms: Vec<Vec<Perm>> = (0..=n).map(Perm::all).collect();
    let act_total: u64 = cars
        .comparable
        .iter()
        .enumerate()
        .map(|(k, pairs)| pairs.len() as u64 * perms[k].len() as u64)
        .sum();
    let act_one = |k: usize, (i, j): (usize, usize), g: &Perm, t: &mut Tally| -> bool {
        let c = &cars.by_arity[k];
        let (a, b) = (op.act(&c[i], g), op.act(&c[j], g));
        t.record(op.leq(&a, &b), || format!("{g} does not preserve {:?} ≤ {:?}", c[i], c[j]))
    };
    let mut act_sampled = false;
    if act_total <= opts.exhaustive_limit && !opts.force_sampled {
        'act: for (k, pairs) in cars.comparable.iter().enumerate() {
            for &pair in pairs {
                for g in &perms[k] {
                    if !act_one(k, pair, g, &mut t) {
                        break 'act;
                    }
                }
            }
        }
    } else {
        act_sampled = true;
        let live: Vec<usize> = (0..=n).filter(|&k| !cars.comparable[k].is_empty()).collect();
        for _ in 0..opts.samples {
            let Some(&k) = live.choose(&mut rng) else { break };
            let pair = *cars.comparable[k].choose(&mut rng).expect("nonempty");
            let g = perms[k].choose(&mut rng).expect("nonempty");
            if !act_one(k, pair, g, &mut t) {
                break;
            }
        }
    }
    // composition is monotone in each argument: vary one slot over
    // comparable pairs, the rest over the carriers
    let families = two_level_families(cars, n);
    let mut total = 0u64;
    for fam in &families {
        for &a in &fam.shape {
            let size = cars.by_arity[a].len().max(1) as u64;
            total = total.saturating_add(fam.count / size * cars.comparable[a].len() as u64);
        }
    }
    let exhaustive = total <= opts.exhaustive_limit && !opts.force_sampled;
    let one = |shape: &[usize], tuple: &[&O::El], slot: usize, lo: &O::El, hi: &O::El, t: &mut Tally| -> bool {
        let mut a: Vec<O::El> = tuple.iter().map(|&e| e.clone()).collect();
        let mut b = a.clone();
        a[slot] = lo.clone();
        b[slot] = hi.clone();
        let ra = op.compose(&a[0], &a[1..]);
        let rb = op.compose(&b[0], &b[1..]);
        let ok = match (&ra, &rb) {
            (Ok(x), Ok(y)) => op.leq(x, y),
            _ => false,
        };
        t.record(ok, || {
            format!(
                "shape {shape:?}, slot {slot}: {lo:?} ≤ {hi:?} but {ra:?} ≰ {rb:?} (other args {tuple:?})"
            )
        })
    };
    if exhaustive {
        'fam: for fam in &families {
            for slot in 0..fam.shape.len() {
                let a = fam.shape[slot];
                let sets: Vec<&[O::El]> = fam.shape.iter().map(|&s| cars.by_arity[s].as_slice()).collect();
                let mut go = true;
                for &(i, j) in &cars.comparable[a] {
                    let (lo, hi) = (&cars.by_arity[a][i], &cars.by_arity[a][j]);
                    // enumerate the other slots only
                    let mut reduced = sets.clone();
                    reduced[slot] = std::slice::from_ref(lo);
                    for_each_tuple(&reduced, |tuple| {
                        go = one(&fam.shape, tuple, slot, lo, hi, &mut t);
                        go
                    });
                    if !go {
                        break 'fam;
                    }
                }
            }
        }
        if act_sampled {
            return t.finish(CheckMode::Sampled {
                samples: opts.samples,
                seed: opts.seed,
            });
        }
        t.finish(CheckMode::Exhaustive)
    } else {
        let live: Vec<(&Family, usize)> = families
            .iter()
            .flat_map(|fam| (0..fam.shape.len()).map(move |s| (fam, s)))
            .filter(|(fam, s)| fam.count > 0 && !cars.comparable[fam.shape[*s]].is_empty())
            .collect();
        for _ in 0..opts.samples {
            let Some(&(fam, slot)) = live.choose(&mut rng) else { break };
            let tuple: Vec<&O::El> = fam
                .shape
                .iter()
                .map(|&a| &cars.by_arity[a][rng.gen_range(0..cars.by_arity[a].len())])
                .collect();
            let a = fam.shape[slot];
            let &(i, j) = cars.comparable[a].choose(&mut rng).expect("nonempty");
            if !one(&fam.shape, &tuple, slot, &cars.by_arity[a][i], &cars.by_arity[a][j], &mut t) {
                break;
            }
        }
        t.finish(CheckMode::Sampled {
            samples: opts.samples,
            seed: opts.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_vectors_counts() {
        assert_eq!(arity_vectors(0, 3), vec![Vec::<usize>::new()]);
        assert_eq!(arity_vectors(2, 1).len(), 3);
        // weak compositions of at most 3 into 3 parts: C(6,3)
        assert_eq!(arity_vectors(3, 3).len(), 20);
    }

    #[test]
    fn tuple_enumeration_is_complete() {
        let a = [1, 2];
        let b = [10, 20, 30];
        let mut seen = Vec::new();
        for_each_tuple(&[&a[..], &b[..]], |t| {
            seen.push(*t[0] + *t[1]);
            true
        });
        assert_eq!(seen, vec![11, 21, 31, 12, 22, 32]);
    }
}
