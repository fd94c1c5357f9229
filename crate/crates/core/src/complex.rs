//! Order complexes (nerves) of finite posets and their simplicial chain
//! complexes.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::homology::{homology, ChainComplexZ, HomologyResult, SparseMatrix};
use crate::poset::FinPoset;

pub const DEFAULT_SIMPLEX_BUDGET: u64 = 5_000_000;

/// A finite simplicial complex. `simplices[d]` holds the `d`-simplices, each
/// a strictly increasing vertex tuple, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Build from arbitrary simplices, adding all faces.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<u32>]) -> Result<SimplicialComplex> {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<u32>>> = Vec::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.iter().any(|&v| v as usize >= vertex_count) {
                return Err(Error::InvalidElement(format!("facet {f:?} uses an unknown vertex")));
            }
            let n = f.len();
            for mask in 1u64..(1u64 << n) {
                let face: Vec<u32> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, Default::default);
                }
                by_dim[d].insert(face);
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<u32>] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    pub fn is_closed_under_faces(&self) -> bool {
        for d in 1..self.simplices.len() {
            let lower: std::collections::HashSet<&Vec<u32>> = self.simplices[d - 1].iter().collect();
            for s in &self.simplices[d] {
                for skip in 0..s.len() {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    if !lower.contains(&face) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Simplicial chain complex with the usual alternating-sign boundary.
    pub fn chain_complex(&self) -> ChainComplexZ {
        let ranks = self.counts();
        let mut boundaries = Vec::new();
        for d in 1..self.simplices.len() {
            let index: HashMap<&[u32], u32> = self.simplices[d - 1]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i as u32))
                .collect();
            let mut columns = Vec::with_capacity(self.simplices[d].len());
            let mut face = Vec::with_capacity(d);
            for s in &self.simplices[d] {
                let mut col: Vec<(u32, i64)> = Vec::with_capacity(d + 1);
                for skip in 0..s.len() {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    let row = index[face.as_slice()];
                    col.push((row, if skip % 2 == 0 { 1 } else { -1 }));
                }
                col.sort_unstable_by_key(|e| e.0);
                columns.push(col);
            }
            boundaries.push(SparseMatrix::from_columns(ranks[d - 1], columns));
        }
        ChainComplexZ::new(ranks, boundaries).expect("simplicial boundaries are consistent")
    }

    /// Simplicial join: vertices of `other` are shifted by
    /// `self.vertex_count()`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.vertex_count as u32;
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut push = |s: Vec<u32>| {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(s);
        };
        for s in self.simplices.iter().flatten() {
            push(s.clone());
        }
        for t in other.simplices.iter().flatten() {
            push(t.iter().map(|v| v + shift).collect());
        }
        for s in self.simplices.iter().flatten() {
            for t in other.simplices.iter().flatten() {
                let mut u = s.clone();
                u.extend(t.iter().map(|v| v + shift));
                push(u);
            }
        }
        for level in &mut by_dim {
            level.sort();
        }
        SimplicialComplex {
            vertex_count: self.vertex_count + other.vertex_count,
            simplices: by_dim,
        }
    }
}

/// Number of chains of each length (index `d` counts `(d+1)`-chains).
pub fn chain_counts(p: &FinPoset) -> Vec<u64> {
    let n = p.size();
    let ups: Vec<Vec<usize>> = (0..n).map(|i| p.strict_up(i)).collect();
    // process elements so that everything above x is done before x
    let order = linear_extension(p, &ups);
    let mut counts: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &x in order.iter().rev() {
        let mut c = vec![1u64];
        for &y in &ups[x] {
            for (len, &v) in counts[y].iter().enumerate() {
                if c.len() <= len + 1 {
                    c.resize(len + 2, 0);
                }
                c[len + 1] = c[len + 1].saturating_add(v);
            }
        }
        counts[x] = c;
    }
    let mut total: Vec<u64> = Vec::new();
    for c in &counts {
        if total.len() < c.len() {
            total.resize(c.len(), 0);
        }
        for (i, &v) in c.iter().enumerate() {
            total[i] = total[i].saturating_add(v);
        }
    }
    total
}

fn linear_extension(p: &FinPoset, ups: &[Vec<usize>]) -> Vec<usize> {
    let n = p.size();
    let mut indeg = vec![0usize; n];
    for u in ups {
        for &v in u {
            indeg[v] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(x) = stack.pop() {
        out.push(x);
        for &y in ups[x].iter().rev() {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    out
}

/// The nerve of `p`: one simplex per nonempty chain. Fails when the number of
/// simplices would exceed `budget`.
pub fn order_complex(p: &FinPoset, budget: u64) -> Result<SimplicialComplex> {
    let counts = chain_counts(p);
    let total = counts.iter().fold(0u64, |a, &b| a.saturating_add(b));
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: "order complex simplices".into(),
            needed: total,
            budget,
        });
    }
    let n = p.size();
    let ups: Vec<Vec<usize>> = (0..n).map(|i| p.strict_up(i)).collect();
    let mut by_dim: Vec<Vec<Vec<u32>>> = counts.iter().map(|&c| Vec::with_capacity(c as usize)).collect();
    let mut chain: Vec<usize> = Vec::new();
    for start in 0..n {
        chain.clear();
        chain.push(start);
        extend_chains(&ups, &mut chain, &mut by_dim);
    }
    for level in &mut by_dim {
        level.sort_unstable();
    }
    Ok(SimplicialComplex {
        vertex_count: n,
        simplices: by_dim,
    })
}

fn extend_chains(ups: &[Vec<usize>], chain: &mut Vec<usize>, out: &mut [Vec<Vec<u32>>]) {
    let mut s: Vec<u32> = chain.iter().map(|&v| v as u32).collect();
    s.sort_unstable();
    out[chain.len() - 1].push(s);
    let top = *chain.last().expect("nonempty chain");
    for &next in &ups[top] {
        chain.push(next);
        extend_chains(ups, chain, out);
        chain.pop();
    }
}

/// How the homology of a poset's nerve was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetHomology {
    pub homology: HomologyResult,
    /// Elements of the poset whose nerve was used: all of them, or the
    /// core left after removing beat points.
    pub elements_used: usize,
    pub via_core: bool,
    /// Simplex counts by dimension of the nerve actually built.
    pub simplex_counts: Vec<usize>,
    /// Alternating simplex count of that nerve.
    pub simplicial_euler: i64,
}

/// Integer homology of the nerve of `p`. When the nerve exceeds `budget`
/// simplices, beat points are removed first (the nerve of the core is
/// homotopy equivalent), and the budget applies to the core's nerve.
pub fn poset_homology(p: &FinPoset, budget: u64) -> Result<PosetHomology> {
    let (complex, used, via_core) = match order_complex(p, budget) {
        Ok(c) => (c, p.size(), false),
        Err(Error::BudgetExceeded { .. }) => {
            let keep = p.core();
            let core = p.subposet(&keep);
            (order_complex(&core, budget)?, keep.len(), true)
        }
        Err(e) => return Err(e),
    };
    let homology = homology(&complex.chain_complex())?;
    Ok(PosetHomology {
        homology,
        elements_used: used,
        via_core,
        simplex_counts: complex.counts(),
        simplicial_euler: complex.euler_characteristic(),
    })
}

/// Coefficients of `∏_{i=1}^{k−1} (1 + i·t^{n−1})`, the Poincaré
/// polynomial of the space of `k` distinct points in `Rⁿ`, `n ≥ 1`.
pub fn configuration_poincare(n: usize, k: usize) -> Vec<u64> {
    let step = n.saturating_sub(1);
    let mut poly = vec![1u64];
    for i in 1..k {
        let mut next = vec![0u64; poly.len() + step];
        for (d, &c) in poly.iter().enumerate() {
            next[d] += c;
            next[d + step] += c * i as u64;
        }
        poly = next;
    }
    while poly.len() > 1 && poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}
