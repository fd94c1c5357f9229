//! Permutations of `{0, …, k-1}`.
//!
//! Every action in this crate relabels by pushing: acting with `g` sends the
//! item at position `i` to position `g(i)`. For graphs this means vertex `i`
//! is renamed `g(i)`, so `(g ∘ h)·x = g·(h·x)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(k: usize) -> Perm {
        Perm {
            images: (0..k).collect(),
        }
    }

    /// Build from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x >= k || seen[x] {
                return Err(Error::InvalidPerm(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Build from 1-based images, the way permutations are written by hand.
    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        if images.contains(&0) {
            return Err(Error::InvalidPerm("1-based images must be positive".into()));
        }
        Perm::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Cycle notation, 1-based: `cycle(3, &[1, 2, 3])` is `(1 2 3)`.
    pub fn cycle(k: usize, cycle: &[usize]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..k).collect();
        for (pos, &c) in cycle.iter().enumerate() {
            let next = cycle[(pos + 1) % cycle.len()];
            if c == 0 || c > k || next == 0 || next > k {
                return Err(Error::InvalidPerm(format!("cycle {cycle:?} out of range for k={k}")));
            }
            images[c - 1] = next - 1;
        }
        Perm::from_images(images)
    }

    pub fn transposition(k: usize, a: usize, b: usize) -> Perm {
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(a, b);
        Perm { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Push the entries of `items` along the permutation: `out[g(i)] = items[i]`.
    pub fn push<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(self.len(), items.len());
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, item) in items.iter().enumerate() {
            out[self.images[i]] = Some(item.clone());
        }
        out.into_iter().map(|x| x.expect("bijection")).collect()
    }

    /// Direct sum `h_1 ⊕ … ⊕ h_k` acting blockwise on consecutive blocks.
    pub fn block_sum(parts: &[Perm]) -> Perm {
        let mut images = Vec::with_capacity(parts.iter().map(Perm::len).sum());
        let mut offset = 0;
        for p in parts {
            images.extend(p.images.iter().map(|&x| x + offset));
            offset += p.len();
        }
        Perm { images }
    }

    /// The permutation of `Σ sizes` points that moves block `i` (of size
    /// `sizes[i]`) rigidly to block position `self(i)`.
    pub fn block_permutation(&self, sizes: &[usize]) -> Perm {
        assert_eq!(self.len(), sizes.len());
        let inv = self.inverse();
        let mut new_offset = vec![0; sizes.len()];
        let mut acc = 0;
        for pos in 0..sizes.len() {
            let block = inv.apply(pos);
            new_offset[block] = acc;
            acc += sizes[block];
        }
        let mut images = Vec::with_capacity(acc);
        for (block, &size) in sizes.iter().enumerate() {
            images.extend((0..size).map(|j| new_offset[block] + j));
        }
        Perm { images }
    }

    /// All permutations of `k` points in lexicographic order of their images.
    pub fn all(k: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            out.push(Perm {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).expect("exists");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one: Vec<usize> = self.images.iter().map(|x| x + 1).collect();
        write!(f, "Perm{one:?}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        assert!(Perm::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn cycle_notation() {
        let c = Perm::cycle(3, &[1, 2, 3]).unwrap();
        assert_eq!(c.images(), &[1, 2, 0]);
        assert_eq!(c.after(&c).after(&c), Perm::identity(3));
    }

    #[test]
    fn all_counts() {
        assert_eq!(Perm::all(0).len(), 1);
        assert_eq!(Perm::all(4).len(), 24);
        let mut all = Perm::all(4);
        all.dedup();
        assert_eq!(all.len(), 24);
    }

    #[test]
    fn push_moves_items() {
        let g = Perm::cycle(3, &[1, 2, 3]).unwrap();
        assert_eq!(g.push(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
    }

    #[test]
    fn block_permutation_swaps_blocks() {
        let swap = Perm::transposition(2, 0, 1);
        // blocks [0,1] and [2] -> block 1 first
        let b = swap.block_permutation(&[2, 1]);
        assert_eq!(b.push(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
    }

    #[test]
    fn composition_is_associative_and_inverse_works() {
        for g in Perm::all(4) {
            assert!(g.after(&g.inverse()).is_identity());
        }
        let all = Perm::all(3);
        for a in &all {
            for b in &all {
                for c in &all {
                    assert_eq!(a.after(b).after(c), a.after(&b.after(c)));
                }
            }
        }
    }
}
