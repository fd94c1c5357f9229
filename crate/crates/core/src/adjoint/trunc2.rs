//! 2-truncated operads and the operad `R₂T` built from one: vertices of the
//! complete graph carry `A(1)` labels, oriented edges carry `A(2)` labels,
//! and each edge label restricts to the labels of its endpoints.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::edges::{block_layout, edge_count, pair_index, pairs};
use crate::error::{Error, Result};
use crate::operad::{arity_vectors, FiniteOperad, Operad};
use crate::perm::Perm;

use super::r::{RConstruction, REdgeLabelling};
use super::z2::UCarrier;

/// The structure of an operad in arities 1 and 2.
pub trait Trunc2 {
    type A1: Clone + Eq + Hash + Debug + Send + Sync;
    type A2: Clone + Eq + Hash + Debug + Send + Sync;

    fn one(&self) -> Self::A1;

    fn mul(&self, a: &Self::A1, b: &Self::A1) -> Self::A1;

    /// `μ(a; c)`.
    fn left(&self, a: &Self::A1, c: &Self::A2) -> Self::A2;

    /// `μ(c; a, b)`.
    fn right(&self, c: &Self::A2, a: &Self::A1, b: &Self::A1) -> Self::A2;

    /// The transposition.
    fn swap(&self, c: &Self::A2) -> Self::A2;

    /// Labels of the first and second input: delete the other input.
    fn vertex_pair(&self, c: &Self::A2) -> (Self::A1, Self::A1);
}

pub trait FiniteTrunc2: Trunc2 {
    fn a1_elements(&self) -> Result<Vec<Self::A1>>;
    fn a2_elements(&self) -> Result<Vec<Self::A2>>;
}

/// `T₂A`: forget everything above arity 2.
#[derive(Debug, Clone)]
pub struct TruncatedOperad<O> {
    pub operad: O,
}

impl<O: Operad> TruncatedOperad<O> {
    pub fn new(operad: O) -> Self {
        TruncatedOperad { operad }
    }
}

impl<O> Trunc2 for TruncatedOperad<O>
where
    O: Operad,
    O::El: Eq + Hash + Send + Sync,
{
    type A1 = O::El;
    type A2 = O::El;

    fn one(&self) -> O::El {
        self.operad.unit()
    }

    fn mul(&self, a: &O::El, b: &O::El) -> O::El {
        self.operad.compose(a, std::slice::from_ref(b)).expect("arity-1 composition")
    }

    fn left(&self, a: &O::El, c: &O::El) -> O::El {
        self.operad.compose(a, std::slice::from_ref(c)).expect("arity-1 composition")
    }

    fn right(&self, c: &O::El, a: &O::El, b: &O::El) -> O::El {
        self.operad.compose(c, &[a.clone(), b.clone()]).expect("arity-2 composition")
    }

    fn swap(&self, c: &O::El) -> O::El {
        self.operad.act(c, &Perm::transposition(2, 0, 1))
    }

    fn vertex_pair(&self, c: &O::El) -> (O::El, O::El) {
        (self.operad.degeneracy(c, 1), self.operad.degeneracy(c, 0))
    }
}

impl<O> FiniteTrunc2 for TruncatedOperad<O>
where
    O: FiniteOperad,
    O::El: Eq + Hash + Send + Sync,
{
    fn a1_elements(&self) -> Result<Vec<O::El>> {
        self.operad.carrier(1)
    }

    fn a2_elements(&self) -> Result<Vec<O::El>> {
        self.operad.carrier(2)
    }
}

/// An element of `R₂T(k)`: vertex labels and, for `a < b`, the label of the
/// edge oriented `a → b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct R2Element<A1, A2> {
    pub vertices: Vec<A1>,
    pub edges: Vec<A2>,
}

impl<A1, A2> R2Element<A1, A2> {
    pub fn k(&self) -> usize {
        self.vertices.len()
    }
}

/// The operad `R₂T`.
#[derive(Debug, Clone)]
pub struct R2Operad<T> {
    pub t: T,
}

impl<T: Trunc2> R2Operad<T> {
    pub fn new(t: T) -> Self {
        R2Operad { t }
    }

    /// Every edge label restricts to its endpoint labels.
    pub fn validate(&self, el: &R2Element<T::A1, T::A2>) -> bool {
        r2_element_validate(&self.t, &el.vertices, &el.edges)
    }

    /// Label of the edge oriented `s → t`.
    pub fn edge(&self, el: &R2Element<T::A1, T::A2>, s: usize, t: usize) -> T::A2 {
        if s < t {
            el.edges[pair_index(el.k(), s, t)].clone()
        } else {
            self.t.swap(&el.edges[pair_index(el.k(), t, s)])
        }
    }
}

pub fn r2_element_validate<T: Trunc2>(t: &T, vertices: &[T::A1], edges: &[T::A2]) -> bool {
    let k = vertices.len();
    edges.len() == edge_count(k)
        && pairs(k).zip(edges).all(|((a, b), c)| {
            let (first, second) = t.vertex_pair(c);
            first == vertices[a] && second == vertices[b]
        })
}

impl<T: Trunc2> Operad for R2Operad<T> {
    type El = R2Element<T::A1, T::A2>;

    fn arity(&self, x: &Self::El) -> usize {
        x.k()
    }

    fn unit(&self) -> Self::El {
        R2Element {
            vertices: vec![self.t.one()],
            edges: Vec::new(),
        }
    }

    fn point(&self) -> Self::El {
        R2Element {
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Vertices and inner edges are multiplied on the left by the outer
    /// vertex label of their block; an edge between blocks takes the outer
    /// edge label acted on the right by its two endpoint labels.
    fn compose(&self, outer: &Self::El, inners: &[Self::El]) -> Result<Self::El> {
        if inners.len() != outer.k() {
            return Err(Error::ArityMismatch(format!(
                "outer arity {} with {} inputs",
                outer.k(),
                inners.len()
            )));
        }
        let sizes: Vec<usize> = inners.iter().map(R2Element::k).collect();
        let layout = block_layout(&sizes);
        let vertices = layout
            .iter()
            .map(|&(p, j)| self.t.mul(&outer.vertices[p], &inners[p].vertices[j]))
            .collect();
        let edges = pairs(layout.len())
            .map(|(u, v)| {
                let ((p, i), (q, j)) = (layout[u], layout[v]);
                if p == q {
                    self.t.left(&outer.vertices[p], &inners[p].edges[pair_index(sizes[p], i, j)])
                } else {
                    self.t.right(
                        &outer.edges[pair_index(outer.k(), p, q)],
                        &inners[p].vertices[i],
                        &inners[q].vertices[j],
                    )
                }
            })
            .collect();
        Ok(R2Element { vertices, edges })
    }

    fn act(&self, x: &Self::El, g: &Perm) -> Self::El {
        let k = x.k();
        let mut edges: Vec<Option<T::A2>> = vec![None; x.edges.len()];
        for ((a, b), c) in pairs(k).zip(&x.edges) {
            let (ga, gb) = (g.apply(a), g.apply(b));
            if ga < gb {
                edges[pair_index(k, ga, gb)] = Some(c.clone());
            } else {
                edges[pair_index(k, gb, ga)] = Some(self.t.swap(c));
            }
        }
        R2Element {
            vertices: g.push(&x.vertices),
            edges: edges.into_iter().map(|c| c.expect("bijection")).collect(),
        }
    }

    fn degeneracy(&self, x: &Self::El, i: usize) -> Self::El {
        let keep: Vec<usize> = (0..x.k()).filter(|&v| v != i).collect();
        let k = keep.len();
        R2Element {
            vertices: keep.iter().map(|&v| x.vertices[v].clone()).collect(),
            edges: pairs(k)
                .map(|(a, b)| x.edges[pair_index(x.k(), keep[a], keep[b])].clone())
                .collect(),
        }
    }
}

impl<T: FiniteTrunc2> FiniteOperad for R2Operad<T> {
    fn carrier(&self, k: usize) -> Result<Vec<Self::El>> {
        let a1 = self.t.a1_elements()?;
        let a2 = self.t.a2_elements()?;
        let mut by_pair: HashMap<(T::A1, T::A1), Vec<T::A2>> = HashMap::new();
        for c in a2 {
            by_pair.entry(self.t.vertex_pair(&c)).or_default().push(c);
        }
        let mut vertex_tuples: Vec<Vec<T::A1>> = vec![Vec::new()];
        for _ in 0..k {
            vertex_tuples = vertex_tuples
                .into_iter()
                .flat_map(|t| {
                    a1.iter().map(move |v| {
                        let mut t = t.clone();
                        t.push(v.clone());
                        t
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        let empty = Vec::new();
        for vertices in vertex_tuples {
            let options: Vec<&Vec<T::A2>> = pairs(k)
                .map(|(a, b)| by_pair.get(&(vertices[a].clone(), vertices[b].clone())).unwrap_or(&empty))
                .collect();
            let mut partial: Vec<Vec<T::A2>> = vec![Vec::new()];
            for opts in options {
                partial = partial
                    .into_iter()
                    .flat_map(|t| {
                        opts.iter().map(move |c| {
                            let mut t = t.clone();
                            t.push(c.clone());
                            t
                        })
                    })
                    .collect();
            }
            for edges in partial {
                out.push(R2Element {
                    vertices: vertices.clone(),
                    edges,
                });
            }
            if out.len() as u64 > crate::graphs::DEFAULT_ENUMERATION_BUDGET {
                return Err(Error::BudgetExceeded {
                    what: format!("R2T({k}) elements"),
                    needed: out.len() as u64,
                    budget: crate::graphs::DEFAULT_ENUMERATION_BUDGET,
                });
            }
        }
        Ok(out)
    }
}

/// Outcome of comparing `R₂T₂B` with `RUB` by forgetting vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub r2_sizes: Vec<usize>,
    pub ru_sizes: Vec<usize>,
    pub bijective: bool,
    pub compositions_checked: u64,
    pub actions_checked: u64,
    pub witness: Option<String>,
}

impl Identification {
    pub fn holds(&self) -> bool {
        self.bijective && self.witness.is_none()
    }
}

/// Checks that forgetting vertex labels is an isomorphism `R₂T₂B ≅ RUB` of
/// operads up to `max_arity`: a bijection on every carrier that commutes
/// with the actions and with every composition of total arity in range.
pub fn r2t2_equals_ru_check<B>(b: &B, max_arity: usize) -> Result<Identification>
where
    B: FiniteOperad + Clone,
    B::El: Eq + Hash + Send + Sync,
{
    let r2 = R2Operad::new(TruncatedOperad::new(b.clone()));
    let ru = RConstruction::new(UCarrier::new(b.clone()));
    let forget = |x: &R2Element<B::El, B::El>| REdgeLabelling::new(x.k(), x.edges.clone()).expect("edge count");
    let mut report = Identification {
        r2_sizes: Vec::new(),
        ru_sizes: Vec::new(),
        bijective: true,
        compositions_checked: 0,
        actions_checked: 0,
        witness: None,
    };
    let mut r2_carriers = Vec::new();
    for k in 0..=max_arity {
        let left = r2.carrier(k)?;
        let right = ru.carrier(k)?;
        report.r2_sizes.push(left.len());
        report.ru_sizes.push(right.len());
        let images: std::collections::HashSet<_> = left.iter().map(forget).collect();
        let targets: std::collections::HashSet<_> = right.iter().cloned().collect();
        if images.len() != left.len() || images != targets {
            report.bijective = false;
            report.witness.get_or_insert_with(|| {
                format!(
                    "arity {k}: |R2T2B| = {}, |RUB| = {}, {} distinct images",
                    left.len(),
                    right.len(),
                    images.len()
                )
            });
        }
        r2_carriers.push(left);
    }
    for (k, carrier) in r2_carriers.iter().enumerate() {
        for x in carrier {
            for g in Perm::all(k) {
                report.actions_checked += 1;
                if forget(&r2.act(x, &g)) != ru.act(&forget(x), &g) && report.witness.is_none() {
                    report.witness = Some(format!("action of {g} on {x:?}"));
                }
            }
        }
    }
    for k in 0..=max_arity {
        for m in arity_vectors(k, max_arity) {
            let sets: Vec<&Vec<_>> = m.iter().map(|&a| &r2_carriers[a]).collect();
            for x in &r2_carriers[k] {
                let mut idx = vec![0usize; k];
                if sets.iter().any(|s| s.is_empty()) {
                    continue;
                }
                loop {
                    let ys: Vec<_> = idx.iter().zip(&sets).map(|(&i, s)| s[i].clone()).collect();
                    report.compositions_checked += 1;
                    let lhs = forget(&r2.compose(x, &ys)?);
                    let rhs = ru.compose(&forget(x), &ys.iter().map(forget).collect::<Vec<_>>())?;
                    if lhs != rhs && report.witness.is_none() {
                        report.witness = Some(format!("μ({x:?}; {ys:?}): {lhs:?} vs {rhs:?}"));
                    }
                    let mut pos = k;
                    let done = loop {
                        if pos == 0 {
                            break true;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < sets[pos].len() {
                            break false;
                        }
                        idx[pos] = 0;
                    };
                    if done {
                        break;
                    }
                }
            }
        }
    }
    Ok(report)
}
