//! Finite posets stored as full `≤` tables, plus the small amount of
//! equivariant structure (involutions, group actions) the operads need.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense bit matrix; row `i` holds `{ j : i ≤ j }`.
#[derive(Clone, PartialEq, Eq)]
struct BitTable {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitTable {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitTable {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn or_row_into(&mut self, dst: usize, src: usize) -> bool {
        let mut changed = false;
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            let d = &mut self.bits[dst * self.words + w];
            if *d | v != *d {
                *d |= v;
                changed = true;
            }
        }
        changed
    }

    fn iter_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.row(i).iter().enumerate().flat_map(move |(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| w * 64 + b)
                .filter(move |&j| j < n)
        })
    }
}

/// A finite partial order on `{0, …, size-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinPoset {
    size: usize,
    table: BitTable,
}

impl std::fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinPoset")
            .field("size", &self.size)
            .field("strict_pairs", &self.strict_pairs().len())
            .finish()
    }
}

impl FinPoset {
    /// Reflexive-transitive closure of the given pairs, then antisymmetry is
    /// checked.
    pub fn from_relation(size: usize, pairs: &[(usize, usize)]) -> Result<FinPoset> {
        let mut table = BitTable::new(size);
        for i in 0..size {
            table.set(i, i);
        }
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(Error::NotPartialOrder(format!("pair ({i},{j}) out of range")));
            }
            table.set(i, j);
        }
        // Warshall over bit rows
        for k in 0..size {
            for i in 0..size {
                if i != k && table.get(i, k) {
                    table.or_row_into(i, k);
                }
            }
        }
        let p = FinPoset { size, table };
        p.check_antisymmetric()?;
        Ok(p)
    }

    /// Tabulate an order given as a predicate. All three axioms are checked.
    pub fn from_leq_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FinPoset> {
        let mut table = BitTable::new(size);
        for i in 0..size {
            for j in 0..size {
                if leq(i, j) {
                    table.set(i, j);
                }
            }
        }
        let p = FinPoset { size, table };
        p.check_axioms()?;
        Ok(p)
    }

    /// Tabulate an order on an explicit list of elements.
    pub fn from_elements<T>(elements: &[T], leq: impl Fn(&T, &T) -> bool) -> Result<FinPoset> {
        FinPoset::from_leq_fn(elements.len(), |i, j| leq(&elements[i], &elements[j]))
    }

    pub fn antichain(size: usize) -> FinPoset {
        FinPoset::from_relation(size, &[]).expect("antichain is a poset")
    }

    pub fn chain(size: usize) -> FinPoset {
        let pairs: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
        FinPoset::from_relation(size, &pairs).expect("chain is a poset")
    }

    pub fn check_axioms(&self) -> Result<()> {
        for i in 0..self.size {
            if !self.table.get(i, i) {
                return Err(Error::NotPartialOrder(format!("not reflexive at {i}")));
            }
        }
        self.check_antisymmetric()?;
        for i in 0..self.size {
            for j in self.table.iter_row(i) {
                for w in 0..self.table.words {
                    let need = self.table.row(j)[w];
                    if self.table.row(i)[w] & need != need {
                        return Err(Error::NotPartialOrder(format!(
                            "not transitive through {i} <= {j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_antisymmetric(&self) -> Result<()> {
        for i in 0..self.size {
            for j in self.table.iter_row(i) {
                if j != i && self.table.get(j, i) {
                    return Err(Error::NotPartialOrder(format!(
                        "not antisymmetric: {i} <= {j} <= {i}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.table.get(i, j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.table.get(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Elements strictly above `i`, ascending by index.
    pub fn strict_up(&self, i: usize) -> Vec<usize> {
        self.table.iter_row(i).filter(|&j| j != i).collect()
    }

    pub fn strict_down(&self, i: usize) -> Vec<usize> {
        (0..self.size).filter(|&j| self.lt(j, i)).collect()
    }

    /// Covering relation `i ⋖ j`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            let up = self.strict_up(i);
            for &j in &up {
                if !up.iter().any(|&m| m != j && self.lt(m, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|i| self.strict_up(i).into_iter().map(move |j| (i, j)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&i| self.strict_up(i).is_empty()).collect()
    }

    /// The unique top element, if one exists.
    pub fn has_greatest_element(&self) -> Option<usize> {
        (0..self.size).find(|&t| (0..self.size).all(|i| self.leq(i, t)))
    }

    pub fn has_least_element(&self) -> Option<usize> {
        (0..self.size).find(|&b| (0..self.size).all(|i| self.leq(b, i)))
    }

    /// Induced order on the listed elements (in the listed order).
    pub fn subposet(&self, keep: &[usize]) -> FinPoset {
        let mut table = BitTable::new(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.leq(i, j) {
                    table.set(a, b);
                }
            }
        }
        FinPoset {
            size: keep.len(),
            table,
        }
    }

    /// Connected components of the comparability graph, each sorted, listed
    /// by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.size).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, j) in self.strict_pairs() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<usize, usize> = HashMap::new();
        for i in 0..self.size {
            let r = find(&mut parent, i);
            let g = *index.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(i);
        }
        groups
    }

    /// Ordinal sum: every element of `self` lies below every element of
    /// `other`. Elements of `other` are shifted by `self.size()`.
    pub fn ordinal_join(&self, other: &FinPoset) -> FinPoset {
        let n = self.size + other.size;
        let mut table = BitTable::new(n);
        for i in 0..self.size {
            for j in 0..self.size {
                if self.leq(i, j) {
                    table.set(i, j);
                }
            }
            for j in 0..other.size {
                table.set(i, self.size + j);
            }
        }
        for i in 0..other.size {
            for j in 0..other.size {
                if other.leq(i, j) {
                    table.set(self.size + i, self.size + j);
                }
            }
        }
        FinPoset { size: n, table }
    }

    /// An up beat point has a least strict upper bound; a down beat point has
    /// a greatest strict lower bound. Removing one does not change the
    /// homotopy type of the order complex.
    pub fn find_beat_point(&self) -> Option<usize> {
        (0..self.size).find(|&x| {
            let up = self.strict_up(x);
            let down = self.strict_down(x);
            let has_min = up.iter().any(|&m| up.iter().all(|&u| self.leq(m, u)));
            let has_max = down.iter().any(|&m| down.iter().all(|&d| self.leq(d, m)));
            has_min || has_max
        })
    }

    /// Repeatedly remove beat points; the result (the core) has an order
    /// complex homotopy equivalent to that of `self`. Returns the surviving
    /// original indices.
    pub fn core(&self) -> Vec<usize> {
        let mut alive: Vec<bool> = vec![true; self.size];
        let mut count = self.size;
        // up/down sets restricted to alive elements, recomputed lazily
        loop {
            let mut removed_any = false;
            for x in 0..self.size {
                if !alive[x] {
                    continue;
                }
                let up: Vec<usize> = self
                    .table
                    .iter_row(x)
                    .filter(|&j| j != x && alive[j])
                    .collect();
                let is_up_beat = up.iter().any(|&m| up.iter().all(|&u| self.leq(m, u)));
                let is_beat = is_up_beat || {
                    let down: Vec<usize> =
                        (0..self.size).filter(|&j| alive[j] && self.lt(j, x)).collect();
                    down.iter().any(|&m| down.iter().all(|&d| self.leq(d, m)))
                };
                if is_beat && count > 1 {
                    alive[x] = false;
                    count -= 1;
                    removed_any = true;
                }
            }
            if !removed_any {
                break;
            }
        }
        (0..self.size).filter(|&i| alive[i]).collect()
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            size: self.size,
            leq: self.strict_pairs().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<FinPoset> {
        let pairs: Vec<(usize, usize)> = json.leq.iter().map(|p| (p[0], p[1])).collect();
        FinPoset::from_relation(json.size, &pairs)
    }

    pub fn from_json_str(s: &str) -> Result<FinPoset> {
        let json: PosetJson = serde_json::from_str(s)?;
        FinPoset::from_json(&json)
    }
}

/// Wire form: `{"size": N, "leq": [[i,j],...]}` with reflexive pairs omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub size: usize,
    pub leq: Vec<[usize; 2]>,
}

/// A self-inverse relabelling of a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Involution {
    swap: Vec<usize>,
}

impl Involution {
    pub fn new(swap: Vec<usize>) -> Result<Involution> {
        let n = swap.len();
        for (i, &s) in swap.iter().enumerate() {
            if s >= n || swap[s] != i {
                return Err(Error::InvalidInvolution(format!("swap∘swap ≠ id at {i}")));
            }
        }
        Ok(Involution { swap })
    }

    pub fn identity(n: usize) -> Involution {
        Involution {
            swap: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.swap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swap.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.swap[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.swap
    }

    pub fn is_free(&self) -> bool {
        self.swap.iter().enumerate().all(|(i, &s)| i != s)
    }
}

/// A poset with an order-preserving involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Poset {
    pub poset: FinPoset,
    pub involution: Involution,
}

impl Z2Poset {
    pub fn new(poset: FinPoset, involution: Involution) -> Result<Z2Poset> {
        if poset.size() != involution.len() {
            return Err(Error::InvalidInvolution(format!(
                "carrier sizes differ: {} vs {}",
                poset.size(),
                involution.len()
            )));
        }
        check_order_preserving(&poset, involution.as_slice())?;
        Ok(Z2Poset { poset, involution })
    }

    /// Two incomparable points exchanged: the poset model of `S⁰`.
    pub fn s0() -> Z2Poset {
        Z2Poset::new(FinPoset::antichain(2), Involution::new(vec![1, 0]).unwrap()).unwrap()
    }

    pub fn empty() -> Z2Poset {
        Z2Poset::new(FinPoset::antichain(0), Involution::identity(0)).unwrap()
    }

    /// Ordinal join; the involution acts componentwise.
    pub fn ordinal_join(&self, other: &Z2Poset) -> Z2Poset {
        let shift = self.poset.size();
        let mut swap = self.involution.as_slice().to_vec();
        swap.extend(other.involution.as_slice().iter().map(|&s| s + shift));
        Z2Poset {
            poset: self.poset.ordinal_join(&other.poset),
            involution: Involution { swap },
        }
    }
}

/// Checks that an index map (a bijection of the carrier) preserves and
/// reflects the order.
pub fn check_order_preserving(poset: &FinPoset, map: &[usize]) -> Result<()> {
    for i in 0..poset.size() {
        for j in 0..poset.size() {
            if poset.leq(i, j) != poset.leq(map[i], map[j]) {
                return Err(Error::NotOrderPreserving(format!(
                    "{i} <= {j} is {} but their images give {}",
                    poset.leq(i, j),
                    poset.leq(map[i], map[j])
                )));
            }
        }
    }
    Ok(())
}

/// Express an action on explicit elements as an index map on the list.
pub fn induced_index_map<T: Eq + Hash>(
    elements: &[T],
    act: impl Fn(&T) -> T,
) -> Result<Vec<usize>> {
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    elements
        .iter()
        .enumerate()
        .map(|(i, x)| {
            index
                .get(&act(x))
                .copied()
                .ok_or_else(|| Error::InvalidElement(format!("image of element {i} left the carrier")))
        })
        .collect()
}

/// Every index fixed by the map. When a poset is supplied the map must be
/// an order automorphism.
pub fn action_fixed_points(poset: Option<&FinPoset>, map: &[usize]) -> Result<Vec<usize>> {
    if let Some(p) = poset {
        if p.size() != map.len() {
            return Err(Error::ArityMismatch(format!(
                "map on {} points for a poset of size {}",
                map.len(),
                p.size()
            )));
        }
        check_order_preserving(p, map)?;
    }
    Ok(map
        .iter()
        .enumerate()
        .filter(|(i, &m)| *i == m)
        .map(|(i, _)| i)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_antisymmetry() {
        let p = FinPoset::from_relation(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert!(FinPoset::from_relation(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn predicate_must_be_transitive() {
        // 0<1, 1<2 but not 0<2
        let r = FinPoset::from_leq_fn(3, |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2));
        assert!(matches!(r, Err(Error::NotPartialOrder(_))));
    }

    #[test]
    fn greatest_element() {
        assert_eq!(FinPoset::chain(3).has_greatest_element(), Some(2));
        assert_eq!(FinPoset::antichain(2).has_greatest_element(), None);
        assert_eq!(FinPoset::antichain(1).has_greatest_element(), Some(0));
    }

    #[test]
    fn json_roundtrip() {
        let p = FinPoset::from_relation(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let s = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(FinPoset::from_json_str(&s).unwrap(), p);
        assert!(FinPoset::from_json_str(r#"{"size":2,"leq":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn components_of_two_chains() {
        let p = FinPoset::from_relation(4, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(p.components(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn join_with_empty_is_identity() {
        let s0 = Z2Poset::s0();
        let j = s0.ordinal_join(&Z2Poset::empty());
        assert_eq!(j, s0);
        let j2 = Z2Poset::empty().ordinal_join(&s0);
        assert_eq!(j2, s0);
    }

    #[test]
    fn involution_must_be_self_inverse() {
        assert!(Involution::new(vec![1, 2, 0]).is_err());
        assert!(Involution::new(vec![1, 0, 2]).is_ok());
    }

    #[test]
    fn non_order_preserving_involution_rejected() {
        let chain = FinPoset::chain(2);
        assert!(matches!(
            Z2Poset::new(chain, Involution::new(vec![1, 0]).unwrap()),
            Err(Error::NotOrderPreserving(_))
        ));
    }

    #[test]
    fn fixed_points_of_identity_are_everything() {
        let p = FinPoset::chain(3);
        assert_eq!(action_fixed_points(Some(&p), &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn core_of_cone_is_point() {
        let p = FinPoset::from_relation(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(p.core().len(), 1);
        // a 4-cycle crown has no beat points
        let crown = FinPoset::from_relation(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(crown.core().len(), 4);
    }
}
