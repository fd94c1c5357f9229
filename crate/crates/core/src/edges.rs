//! Indexing of the edges `{a, b}`, `a < b`, of the complete graph on `k`
//! vertices. Edge labels everywhere in the crate are stored in this order.

#[inline]
pub fn edge_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Position of the edge `{a, b}` (`a < b < k`).
#[inline]
pub fn pair_index(k: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < k);
    a * (2 * k - a - 1) / 2 + (b - a - 1)
}

/// All edges in storage order.
pub fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |a| (a + 1..k).map(move |b| (a, b)))
}

/// Block layout of a composite: for each output vertex, its block and its
/// position inside the block.
pub fn block_layout(sizes: &[usize]) -> Vec<(usize, usize)> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(block, &m)| (0..m).map(move |j| (block, j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_are_dense_and_ordered() {
        for k in 0..7 {
            let idx: Vec<usize> = pairs(k).map(|(a, b)| pair_index(k, a, b)).collect();
            assert_eq!(idx, (0..edge_count(k)).collect::<Vec<_>>());
        }
    }
}
