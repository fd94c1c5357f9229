//! The operad `RX`: labellings of the edges of complete graphs by a Z/2-set
//! `X`, where reversing an edge applies the involution.

use std::fmt;
use std::hash::Hash;

use crate::edges::{block_layout, edge_count, pair_index, pairs};
use crate::error::{Error, Result};
use crate::operad::{FiniteOperad, Operad};
use crate::perm::Perm;

use super::z2::{FiniteZ2Carrier, Z2Carrier};

/// Edge labels `f(a, b)` for `a < b`; `f(b, a)` is `f(a, b)` barred.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct REdgeLabelling<L> {
    k: usize,
    labels: Vec<L>,
}

impl<L: Clone> REdgeLabelling<L> {
    pub fn new(k: usize, labels: Vec<L>) -> Result<Self> {
        if labels.len() != edge_count(k) {
            return Err(Error::ArityMismatch(format!(
                "{} labels for k={k}, expected {}",
                labels.len(),
                edge_count(k)
            )));
        }
        Ok(REdgeLabelling { k, labels })
    }

    pub fn empty(k: usize) -> Self {
        assert!(k <= 1, "only arities 0 and 1 have no edges");
        REdgeLabelling { k, labels: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    /// Label of the edge `a < b` (0-based).
    pub fn canonical(&self, a: usize, b: usize) -> &L {
        &self.labels[pair_index(self.k, a, b)]
    }

    /// `f(s, t)` for any ordered pair of distinct vertices.
    pub fn get<X: Z2Carrier<Label = L>>(&self, x: &X, s: usize, t: usize) -> L {
        if s < t {
            self.canonical(s, t).clone()
        } else {
            x.bar(self.canonical(t, s))
        }
    }
}

impl<L: fmt::Debug> fmt::Debug for REdgeLabelling<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({})[", self.k)?;
        for (i, ((a, b), l)) in pairs(self.k).zip(&self.labels).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "f({},{})={l:?}", a + 1, b + 1)?;
        }
        write!(f, "]")
    }
}

/// The operad `RX`.
#[derive(Debug, Clone)]
pub struct RConstruction<X> {
    pub x: X,
}

impl<X: Z2Carrier> RConstruction<X> {
    pub fn new(x: X) -> Self {
        RConstruction { x }
    }
}

impl<X: Z2Carrier> Operad for RConstruction<X> {
    type El = REdgeLabelling<X::Label>;

    fn arity(&self, f: &Self::El) -> usize {
        f.k
    }

    fn unit(&self) -> Self::El {
        REdgeLabelling::empty(1)
    }

    fn point(&self) -> Self::El {
        REdgeLabelling::empty(0)
    }

    /// Inner edges from the inners, edges between blocks `p < q` from the
    /// outer label `f(p, q)`.
    fn compose(&self, outer: &Self::El, inners: &[Self::El]) -> Result<Self::El> {
        if inners.len() != outer.k {
            return Err(Error::ArityMismatch(format!(
                "outer arity {} with {} inputs",
                outer.k,
                inners.len()
            )));
        }
        let sizes: Vec<usize> = inners.iter().map(|y| y.k).collect();
        let layout = block_layout(&sizes);
        let labels = pairs(layout.len())
            .map(|(u, v)| {
                let ((p, i), (q, j)) = (layout[u], layout[v]);
                if p == q {
                    inners[p].canonical(i, j).clone()
                } else {
                    outer.canonical(p, q).clone()
                }
            })
            .collect();
        Ok(REdgeLabelling {
            k: layout.len(),
            labels,
        })
    }

    /// Vertex `a` becomes `g(a)`; an edge whose endpoints swap order has
    /// its label barred.
    fn act(&self, f: &Self::El, g: &Perm) -> Self::El {
        assert_eq!(g.len(), f.k, "permutation size must match arity");
        let mut labels: Vec<Option<X::Label>> = vec![None; f.labels.len()];
        for ((a, b), l) in pairs(f.k).zip(&f.labels) {
            let (ga, gb) = (g.apply(a), g.apply(b));
            if ga < gb {
                labels[pair_index(f.k, ga, gb)] = Some(l.clone());
            } else {
                labels[pair_index(f.k, gb, ga)] = Some(self.x.bar(l));
            }
        }
        REdgeLabelling {
            k: f.k,
            labels: labels.into_iter().map(|l| l.expect("bijection")).collect(),
        }
    }

    fn degeneracy(&self, f: &Self::El, i: usize) -> Self::El {
        restrict(f, &(0..f.k).filter(|&v| v != i).collect::<Vec<_>>())
    }

    fn leq(&self, f: &Self::El, h: &Self::El) -> bool {
        f.k == h.k && f.labels.iter().zip(&h.labels).all(|(a, b)| self.x.leq(a, b))
    }

    fn is_poset_operad(&self) -> bool {
        self.x.is_poset()
    }
}

impl<X> FiniteOperad for RConstruction<X>
where
    X: FiniteZ2Carrier,
{
    fn carrier(&self, k: usize) -> Result<Vec<Self::El>> {
        let xs = self.x.elements()?;
        let e = edge_count(k);
        let total = (xs.len() as u64).checked_pow(e as u32).unwrap_or(u64::MAX);
        if total > crate::graphs::DEFAULT_ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded {
                what: format!("RX({k}) labellings"),
                needed: total,
                budget: crate::graphs::DEFAULT_ENUMERATION_BUDGET,
            });
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![0usize; e];
        loop {
            out.push(REdgeLabelling {
                k,
                labels: idx.iter().map(|&i| xs[i].clone()).collect(),
            });
            let mut pos = e;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < xs.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

fn restrict<L: Clone>(f: &REdgeLabelling<L>, keep: &[usize]) -> REdgeLabelling<L> {
    let k = keep.len();
    REdgeLabelling {
        k,
        labels: pairs(k).map(|(a, b)| f.canonical(keep[a], keep[b]).clone()).collect(),
    }
}

/// The preoperad unit `A → RUA`: the label of `{i, j}` degenerates every
/// other input of `x`.
pub fn r_unit_map<O: Operad>(op: &O, x: &O::El) -> REdgeLabelling<O::El> {
    let k = op.arity(x);
    let labels = pairs(k)
        .map(|(i, j)| {
            let mut y = x.clone();
            for v in (0..k).rev() {
                if v != i && v != j {
                    y = op.degeneracy(&y, v);
                }
            }
            y
        })
        .collect();
    REdgeLabelling { k, labels }
}

/// Both sides of the square comparing the unit map with composition.
#[derive(Debug, Clone, PartialEq)]
pub struct NonClosure<E> {
    /// Unit map applied after composing in `A`.
    pub lhs: REdgeLabelling<E>,
    /// Composition in `RUA` of the unit-map images.
    pub rhs: REdgeLabelling<E>,
    /// 1-based edges whose labels differ.
    pub differing_edges: Vec<(usize, usize)>,
}

impl<E> NonClosure<E> {
    pub fn commutes(&self) -> bool {
        self.differing_edges.is_empty()
    }
}

pub fn ru_nonclosure_check<O>(op: &O, outer: &O::El, inners: &[O::El]) -> Result<NonClosure<O::El>>
where
    O: Operad + Clone,
    O::El: Eq + Hash + Send + Sync,
{
    let lhs = r_unit_map(op, &op.compose(outer, inners)?);
    let ru = RConstruction::new(super::z2::UCarrier::new(op.clone()));
    let images: Vec<_> = inners.iter().map(|y| r_unit_map(op, y)).collect();
    let rhs = ru.compose(&r_unit_map(op, outer), &images)?;
    let differing_edges = pairs(lhs.k)
        .filter(|&(a, b)| lhs.canonical(a, b) != rhs.canonical(a, b))
        .map(|(a, b)| (a + 1, b + 1))
        .collect();
    Ok(NonClosure {
        lhs,
        rhs,
        differing_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::z2::FiniteZ2Set;
    use crate::operad::{verify_operad, VerifyOptions};

    const PLUS: usize = 0;
    const MINUS: usize = 1;

    fn s0() -> RConstruction<FiniteZ2Set> {
        RConstruction::new(FiniteZ2Set::s0())
    }

    #[test]
    fn composition_example() {
        let r = s0();
        let outer = REdgeLabelling::new(2, vec![PLUS]).unwrap();
        let inner = REdgeLabelling::new(2, vec![MINUS]).unwrap();
        let out = r.compose(&outer, &[inner, r.unit()]).unwrap();
        // f(1,2) = −, f(1,3) = f(2,3) = +
        assert_eq!(out.labels(), &[MINUS, PLUS, PLUS]);
        assert_eq!(r.compose(&r.unit(), std::slice::from_ref(&out)).unwrap(), out);
    }

    #[test]
    fn transposition_bars_the_label() {
        let r = s0();
        let x = REdgeLabelling::new(2, vec![PLUS]).unwrap();
        assert_eq!(r.act(&x, &Perm::transposition(2, 0, 1)).labels(), &[MINUS]);
        assert_eq!(r.act(&x, &Perm::identity(2)), x);
    }

    #[test]
    fn cyclic_fixed_point() {
        let r = s0();
        // f(1,2) = f(2,3) = x, f(1,3) = x̄, i.e. f(3,1) = x
        let f = REdgeLabelling::new(3, vec![PLUS, MINUS, PLUS]).unwrap();
        assert_eq!(r.act(&f, &Perm::cycle(3, &[1, 2, 3]).unwrap()), f);
        assert_eq!(f.get(&r.x, 2, 0), PLUS);
    }

    #[test]
    fn carrier_size() {
        let r = RConstruction::new(FiniteZ2Set::free(2));
        for k in 0..=4 {
            assert_eq!(r.carrier(k).unwrap().len(), 4usize.pow((k * k.saturating_sub(1) / 2) as u32));
        }
    }

    #[test]
    fn axioms_hold_for_s0() {
        let report = verify_operad(&s0(), VerifyOptions::exhaustive(3)).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
