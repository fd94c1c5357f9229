//! Seeded random configurations: guillotine cuts of the unit cube on the
//! `1/64` grid, then each piece shrunk to a random grid sub-box. Disjoint by
//! construction.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{rat, CubeConfig, CubeN};

pub const GRID: i64 = 64;

type GridBox = Vec<(i64, i64)>;

fn to_cube(b: &GridBox) -> CubeN {
    CubeN::new(b.iter().map(|&(a, c)| (rat(a, GRID), rat(c, GRID))).collect()).expect("grid box")
}

/// A random element of `Cₙ(k)`; `k ≤ 64ⁿ`.
pub fn random_config<R: Rng>(n: usize, k: usize, rng: &mut R) -> CubeConfig {
    if k == 0 {
        return CubeConfig::new(n, Vec::new()).expect("empty config");
    }
    let mut boxes: Vec<GridBox> = vec![vec![(0, GRID); n]];
    while boxes.len() < k {
        let splittable: Vec<usize> = (0..boxes.len())
            .filter(|&i| boxes[i].iter().any(|&(a, b)| b - a >= 2))
            .collect();
        let &i = splittable.choose(rng).expect("grid has room for k boxes");
        let axes: Vec<usize> = (0..n).filter(|&j| boxes[i][j].1 - boxes[i][j].0 >= 2).collect();
        let &j = axes.choose(rng).expect("splittable axis");
        let (a, b) = boxes[i][j];
        let cut = rng.gen_range(a + 1..b);
        let mut upper = boxes[i].clone();
        boxes[i][j] = (a, cut);
        upper[j] = (cut, b);
        boxes.push(upper);
    }
    for b in &mut boxes {
        for iv in b.iter_mut() {
            let (a, c) = *iv;
            let lo = rng.gen_range(a..c);
            let hi = rng.gen_range(lo + 1..=c);
            *iv = (lo, hi);
        }
    }
    boxes.shuffle(rng);
    CubeConfig::new(n, boxes.iter().map(to_cube).collect()).expect("guillotine pieces are disjoint")
}

/// A random tuple in `Cₙ(1)ᵏ`, cubes independent (overlaps allowed).
pub fn random_tuple<R: Rng>(n: usize, k: usize, rng: &mut R) -> CubeConfig {
    let cubes = (0..k)
        .map(|_| {
            let b: GridBox = (0..n)
                .map(|_| {
                    let lo = rng.gen_range(0..GRID);
                    (lo, rng.gen_range(lo + 1..=GRID))
                })
                .collect();
            to_cube(&b)
        })
        .collect();
    CubeConfig::tuple(n, cubes).expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn configs_are_valid_and_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            for k in 0..=5 {
                let c = random_config(n, k, &mut rng);
                assert_eq!(c.k(), k);
                assert!(c.is_valid());
            }
        }
        let a = random_config(2, 4, &mut ChaCha8Rng::seed_from_u64(1));
        let b = random_config(2, 4, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
    }
}
