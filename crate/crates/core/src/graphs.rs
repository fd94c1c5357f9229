//! The augmented complete-graphs poset operad `K̂⁽ⁿ⁾` and its suboperad
//! `K⁽ⁿ⁾` of total labellings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::edges::{block_layout, edge_count, pair_index, pairs};
use crate::error::{Error, Result};
use crate::operad::{FiniteOperad, Operad};
use crate::perm::Perm;

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 2_000_000;

/// A labelled edge `{a, b}`, `a < b`: oriented `a → b` when `forward`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub forward: bool,
    pub color: u8,
}

impl Edge {
    pub fn reversed(self) -> Edge {
        Edge {
            forward: !self.forward,
            color: self.color,
        }
    }

    /// The order on a single edge slot: `self ≤ other`.
    fn leq(self, other: Option<Edge>) -> bool {
        match other {
            None => true,
            Some(o) if o.forward == self.forward => o.color >= self.color,
            Some(o) => o.color > self.color,
        }
    }
}

/// A partial acyclic orientation and coloring of the complete graph on `k`
/// vertices, colors in `1..=n`. `None` is an unoriented, uncolored edge.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialGraphLabel {
    k: usize,
    n: u8,
    edges: Vec<Option<Edge>>,
}

impl PartialGraphLabel {
    /// The all-unlabelled graph, the top element of `K̂⁽ⁿ⁾(k)`.
    pub fn top(k: usize, n: u8) -> PartialGraphLabel {
        PartialGraphLabel {
            k,
            n,
            edges: vec![None; edge_count(k)],
        }
    }

    /// Raw constructor; does not validate.
    pub fn from_edges(k: usize, n: u8, edges: Vec<Option<Edge>>) -> Result<PartialGraphLabel> {
        if edges.len() != edge_count(k) {
            return Err(Error::ArityMismatch(format!(
                "{} edge slots for k={k}, expected {}",
                edges.len(),
                edge_count(k)
            )));
        }
        Ok(PartialGraphLabel { k, n, edges })
    }

    /// Build from 1-based arrows `(source, target, color)`.
    pub fn from_arrows(k: usize, n: u8, arrows: &[(usize, usize, u8)]) -> Result<PartialGraphLabel> {
        let mut g = PartialGraphLabel::top(k, n);
        for &(s, t, color) in arrows {
            if s == 0 || t == 0 || s > k || t > k || s == t {
                return Err(Error::InvalidElement(format!("arrow {s}→{t} out of range for k={k}")));
            }
            g.set(s - 1, t - 1, Some(color));
        }
        Ok(g)
    }

    /// The tournament of a linear order (first vertex is the source) with
    /// every edge colored `color`.
    pub fn linear_order(order: &[usize], n: u8, color: u8) -> PartialGraphLabel {
        let k = order.len();
        let mut g = PartialGraphLabel::top(k, n);
        for (i, &s) in order.iter().enumerate() {
            for &t in &order[i + 1..] {
                g.set(s, t, Some(color));
            }
        }
        g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn edges(&self) -> &[Option<Edge>] {
        &self.edges
    }

    /// Arrow between `s` and `t` (0-based) seen from `s`: `Some((true, c))`
    /// when `s → t`, `Some((false, c))` when `t → s`.
    pub fn arrow(&self, s: usize, t: usize) -> Option<(bool, u8)> {
        let (a, b, flip) = if s < t { (s, t, false) } else { (t, s, true) };
        self.edges[pair_index(self.k, a, b)].map(|e| (e.forward != flip, e.color))
    }

    /// Set the edge `s → t` (0-based) with the given color, or clear it.
    pub fn set(&mut self, s: usize, t: usize, color: Option<u8>) {
        let (a, b, forward) = if s < t { (s, t, true) } else { (t, s, false) };
        self.edges[pair_index(self.k, a, b)] = color.map(|color| Edge { forward, color });
    }

    pub fn is_total(&self) -> bool {
        self.edges.iter().all(Option::is_some)
    }

    /// True iff all colors lie in `1..=n` and the labelled edges have no
    /// directed cycle.
    pub fn validate(&self) -> bool {
        self.edges.iter().flatten().all(|e| e.color >= 1 && e.color <= self.n) && self.is_acyclic()
    }

    /// Kahn's algorithm on the labelled edges.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let k = self.k;
        let mut indeg = vec![0usize; k];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (idx, (a, b)) in pairs(k).enumerate() {
            if let Some(e) = self.edges[idx] {
                let (s, t) = if e.forward { (a, b) } else { (b, a) };
                out[s].push(t);
                indeg[t] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..k).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(k);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &t in &out[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        (order.len() == k).then_some(order)
    }

    fn check_compatible(&self, other: &PartialGraphLabel) -> Result<()> {
        if self.k != other.k {
            return Err(Error::ArityMismatch(format!("k={} vs k={}", self.k, other.k)));
        }
        if self.n != other.n {
            return Err(Error::FiltrationMismatch(format!("n={} vs n={}", self.n, other.n)));
        }
        Ok(())
    }

    /// The order of `K̂⁽ⁿ⁾(k)`.
    pub fn leq(&self, other: &PartialGraphLabel) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.leq_unchecked(other))
    }

    fn leq_unchecked(&self, other: &PartialGraphLabel) -> bool {
        self.edges.iter().zip(&other.edges).all(|(x, y)| match x {
            None => y.is_none(),
            Some(e) => e.leq(*y),
        })
    }

    /// Block composition: edges inside block `p` come from `inners[p]`, edges
    /// between blocks `p < q` from the outer edge `{p, q}`.
    pub fn compose(&self, inners: &[PartialGraphLabel]) -> Result<PartialGraphLabel> {
        if inners.len() != self.k {
            return Err(Error::ArityMismatch(format!(
                "outer arity {} with {} inputs",
                self.k,
                inners.len()
            )));
        }
        for g in std::iter::once(self).chain(inners) {
            if g.n != self.n {
                return Err(Error::FiltrationMismatch(format!("n={} vs n={}", g.n, self.n)));
            }
            if !g.validate() {
                return Err(Error::InvalidElement(format!("{g}")));
            }
        }
        let sizes: Vec<usize> = inners.iter().map(|g| g.k).collect();
        let layout = block_layout(&sizes);
        let total = layout.len();
        let edges = pairs(total)
            .map(|(u, v)| {
                let ((p, i), (q, j)) = (layout[u], layout[v]);
                if p == q {
                    inners[p].edges[pair_index(sizes[p], i, j)]
                } else {
                    self.edges[pair_index(self.k, p, q)]
                }
            })
            .collect();
        Ok(PartialGraphLabel {
            k: total,
            n: self.n,
            edges,
        })
    }

    /// Relabel vertex `i` as `g(i)`.
    pub fn act(&self, g: &Perm) -> PartialGraphLabel {
        assert_eq!(g.len(), self.k, "permutation size must match arity");
        let mut out = PartialGraphLabel::top(self.k, self.n);
        for (idx, (a, b)) in pairs(self.k).enumerate() {
            if let Some(e) = self.edges[idx] {
                let (ga, gb) = (g.apply(a), g.apply(b));
                let (s, t) = if e.forward { (ga, gb) } else { (gb, ga) };
                out.set(s, t, Some(e.color));
            }
        }
        out
    }

    /// Delete vertex `i` (0-based), renumbering the rest in order.
    pub fn delete_vertex(&self, i: usize) -> PartialGraphLabel {
        assert!(i < self.k, "vertex out of range");
        let keep: Vec<usize> = (0..self.k).filter(|&v| v != i).collect();
        self.restrict(&keep)
    }

    /// The full subgraph on `keep` (increasing 0-based vertices).
    pub fn restrict(&self, keep: &[usize]) -> PartialGraphLabel {
        let k = keep.len();
        let edges = pairs(k)
            .map(|(a, b)| self.edges[pair_index(self.k, keep[a], keep[b])])
            .collect();
        PartialGraphLabel { k, n: self.n, edges }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            k: self.k,
            n: self.n,
            edges: pairs(self.k)
                .zip(&self.edges)
                .filter_map(|((a, b), e)| {
                    e.map(|e| EdgeJson {
                        a: a + 1,
                        b: b + 1,
                        dir: if e.forward { "ab".into() } else { "ba".into() },
                        color: e.color,
                    })
                })
                .collect(),
        }
    }

    /// Parse and validate.
    pub fn from_json(json: &GraphJson) -> Result<PartialGraphLabel> {
        let mut g = PartialGraphLabel::top(json.k, json.n);
        let mut seen = vec![false; edge_count(json.k)];
        for e in &json.edges {
            if e.a == 0 || e.a >= e.b || e.b > json.k {
                return Err(Error::Parse(format!("edge ({}, {}) must have 1 ≤ a < b ≤ k", e.a, e.b)));
            }
            let idx = pair_index(json.k, e.a - 1, e.b - 1);
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::Parse(format!("edge ({}, {}) listed twice", e.a, e.b)));
            }
            let forward = match e.dir.as_str() {
                "ab" => true,
                "ba" => false,
                other => return Err(Error::Parse(format!("dir must be \"ab\" or \"ba\", got {other:?}"))),
            };
            g.edges[idx] = Some(Edge {
                forward,
                color: e.color,
            });
        }
        if !g.validate() {
            return Err(Error::InvalidElement(format!("{g} has a directed cycle or a color outside 1..={}", json.n)));
        }
        Ok(g)
    }

    pub fn from_json_str(s: &str) -> Result<PartialGraphLabel> {
        PartialGraphLabel::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph JSON serializes")
    }
}

impl fmt::Display for PartialGraphLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for ((a, b), e) in pairs(self.k).zip(&self.edges) {
            if let Some(e) = e {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                let (s, t) = if e.forward { (a, b) } else { (b, a) };
                write!(f, "{}→{}:{}", s + 1, t + 1, e.color)?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PartialGraphLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K̂({};n={}){self}", self.k, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub a: usize,
    pub b: usize,
    pub dir: String,
    pub color: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub k: usize,
    pub n: u8,
    pub edges: Vec<EdgeJson>,
}

/// All elements of `K̂⁽ⁿ⁾(k)` (or `K⁽ⁿ⁾(k)` when `total`), in canonical
/// order: edges in storage order, each slot ranging over unlabelled first,
/// then `a → b` by color, then `b → a` by color.
pub fn enumerate(n: u8, k: usize, total: bool, budget: u64) -> Result<Vec<PartialGraphLabel>> {
    let mut choices: Vec<Option<Edge>> = Vec::new();
    if !total {
        choices.push(None);
    }
    for forward in [true, false] {
        for color in 1..=n {
            choices.push(Some(Edge { forward, color }));
        }
    }
    let m = edge_count(k);
    let mut out = Vec::new();
    let mut cur = PartialGraphLabel::top(k, n);
    // reach[v] = bitmask of vertices reachable from v using assigned edges
    let reach: Vec<u64> = (0..k).map(|v| 1u64 << v).collect();
    if k > 64 {
        return Err(Error::BudgetExceeded {
            what: "graph vertices".into(),
            needed: k as u64,
            budget: 64,
        });
    }
    let edge_list: Vec<(usize, usize)> = pairs(k).collect();
    fn rec(
        idx: usize,
        m: usize,
        edge_list: &[(usize, usize)],
        choices: &[Option<Edge>],
        cur: &mut PartialGraphLabel,
        reach: &[u64],
        out: &mut Vec<PartialGraphLabel>,
        budget: u64,
    ) -> Result<()> {
        if idx == m {
            if out.len() as u64 >= budget {
                return Err(Error::BudgetExceeded {
                    what: "enumerated graph labellings".into(),
                    needed: budget + 1,
                    budget,
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        let (a, b) = edge_list[idx];
        for &c in choices {
            match c {
                None => {
                    cur.edges[idx] = None;
                    rec(idx + 1, m, edge_list, choices, cur, reach, out, budget)?;
                }
                Some(e) => {
                    let (s, t) = if e.forward { (a, b) } else { (b, a) };
                    if reach[t] >> s & 1 == 1 {
                        continue;
                    }
                    // add s → t: everything reaching s now reaches reach[t]
                    let mut next = reach.to_vec();
                    for v in 0..next.len() {
                        if next[v] >> s & 1 == 1 {
                            next[v] |= reach[t];
                        }
                    }
                    cur.edges[idx] = Some(e);
                    rec(idx + 1, m, edge_list, choices, cur, &next, out, budget)?;
                }
            }
        }
        cur.edges[idx] = None;
        Ok(())
    }
    rec(0, m, &edge_list, &choices, &mut cur, &reach, &mut out, budget)?;
    Ok(out)
}

pub fn khat_enumerate(n: u8, k: usize) -> Result<Vec<PartialGraphLabel>> {
    enumerate(n, k, false, DEFAULT_ENUMERATION_BUDGET)
}

pub fn k_enumerate(n: u8, k: usize) -> Result<Vec<PartialGraphLabel>> {
    enumerate(n, k, true, DEFAULT_ENUMERATION_BUDGET)
}

/// `K̂⁽ⁿ⁾` (`total == false`) or `K⁽ⁿ⁾` (`total == true`) as a poset operad.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompleteGraphs {
    pub n: u8,
    pub total: bool,
}

impl CompleteGraphs {
    pub fn khat(n: u8) -> Self {
        CompleteGraphs { n, total: false }
    }

    pub fn k(n: u8) -> Self {
        CompleteGraphs { n, total: true }
    }

    pub fn name(&self) -> String {
        if self.total {
            format!("K^({})", self.n)
        } else {
            format!("Khat^({})", self.n)
        }
    }
}

impl Operad for CompleteGraphs {
    type El = PartialGraphLabel;

    fn arity(&self, x: &PartialGraphLabel) -> usize {
        x.k
    }

    fn unit(&self) -> PartialGraphLabel {
        PartialGraphLabel::top(1, self.n)
    }

    fn point(&self) -> PartialGraphLabel {
        PartialGraphLabel::top(0, self.n)
    }

    fn compose(&self, outer: &PartialGraphLabel, inners: &[PartialGraphLabel]) -> Result<PartialGraphLabel> {
        outer.compose(inners)
    }

    fn act(&self, x: &PartialGraphLabel, g: &Perm) -> PartialGraphLabel {
        x.act(g)
    }

    fn degeneracy(&self, x: &PartialGraphLabel, i: usize) -> PartialGraphLabel {
        x.delete_vertex(i)
    }

    fn leq(&self, x: &PartialGraphLabel, y: &PartialGraphLabel) -> bool {
        x.k == y.k && x.n == y.n && x.leq_unchecked(y)
    }

    fn is_poset_operad(&self) -> bool {
        true
    }
}

impl FiniteOperad for CompleteGraphs {
    fn carrier(&self, k: usize) -> Result<Vec<PartialGraphLabel>> {
        enumerate(self.n, k, self.total, DEFAULT_ENUMERATION_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(k: usize, arrows: &[(usize, usize, u8)]) -> PartialGraphLabel {
        PartialGraphLabel::from_arrows(k, 2, arrows).unwrap()
    }

    #[test]
    fn validate_rejects_cycles_and_bad_colors() {
        assert!(!g(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]).validate());
        assert!(PartialGraphLabel::top(3, 2).validate());
        assert!(g(3, &[(1, 2, 1), (1, 3, 2), (2, 3, 1)]).validate());
        assert!(!g(2, &[(1, 2, 3)]).validate());
    }

    #[test]
    fn order_examples() {
        let x = g(2, &[(1, 2, 1)]);
        assert!(x.leq(&g(2, &[(2, 1, 2)])).unwrap());
        assert!(!g(2, &[(1, 2, 2)]).leq(&g(2, &[(2, 1, 2)])).unwrap());
        assert!(x.leq(&PartialGraphLabel::top(2, 2)).unwrap());
        assert!(!PartialGraphLabel::top(2, 2).leq(&x).unwrap());
        assert!(matches!(x.leq(&PartialGraphLabel::top(3, 2)), Err(Error::ArityMismatch(_))));
        assert!(matches!(x.leq(&PartialGraphLabel::top(2, 3)), Err(Error::FiltrationMismatch(_))));
    }

    #[test]
    fn composition_block_rule() {
        let x = g(2, &[(2, 1, 2)]);
        let out = PartialGraphLabel::top(2, 2)
            .compose(&[x.clone(), PartialGraphLabel::top(1, 2)])
            .unwrap();
        assert_eq!(out, g(3, &[(2, 1, 2)]));
        let e = g(2, &[(1, 2, 1)]);
        let unit = PartialGraphLabel::top(1, 2);
        assert_eq!(e.compose(&[unit.clone(), unit.clone()]).unwrap(), e);
        assert_eq!(unit.compose(std::slice::from_ref(&x)).unwrap(), x);
    }

    #[test]
    fn action_relabels_vertices() {
        let x = g(2, &[(1, 2, 1)]);
        assert_eq!(x.act(&Perm::transposition(2, 0, 1)), g(2, &[(2, 1, 1)]));
        let t = PartialGraphLabel::linear_order(&[0, 1, 2], 2, 1);
        let c = Perm::cycle(3, &[1, 2, 3]).unwrap();
        let moved = t.act(&c);
        assert_eq!(moved, PartialGraphLabel::linear_order(&[1, 2, 0], 2, 1));
        assert_eq!(moved.topological_order().unwrap()[0], 1);
    }

    #[test]
    fn carrier_counts() {
        for n in 1..=4u8 {
            assert_eq!(khat_enumerate(n, 2).unwrap().len(), 2 * n as usize + 1);
            assert_eq!(k_enumerate(n, 2).unwrap().len(), 2 * n as usize);
        }
        assert_eq!(k_enumerate(2, 3).unwrap().len(), 48);
        let k13 = k_enumerate(1, 3).unwrap();
        assert_eq!(k13.len(), 6);
        for x in &k13 {
            for y in &k13 {
                assert_eq!(x.leq(y).unwrap(), x == y);
            }
        }
    }

    #[test]
    fn enumeration_budget() {
        assert!(matches!(enumerate(2, 4, false, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn json_round_trip() {
        let x = g(3, &[(2, 1, 2), (1, 3, 1)]);
        let s = x.to_json_string();
        assert_eq!(s, r#"{"k":3,"n":2,"edges":[{"a":1,"b":2,"dir":"ba","color":2},{"a":1,"b":3,"dir":"ab","color":1}]}"#);
        assert_eq!(PartialGraphLabel::from_json_str(&s).unwrap(), x);
        let cyclic = r#"{"k":3,"n":1,"edges":[{"a":1,"b":2,"dir":"ab","color":1},{"a":2,"b":3,"dir":"ab","color":1},{"a":1,"b":3,"dir":"ba","color":1}]}"#;
        assert!(PartialGraphLabel::from_json_str(cyclic).is_err());
    }
}
