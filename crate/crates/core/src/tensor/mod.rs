//! Interchange of operad maps and generalized tensor products.
//!
//! Two maps `A → C`, `B → C` interchange when composing `α ∈ A(k)` with
//! `ℓ` copies of `β ∈ B(ℓ)` agrees with composing `β` with `k` copies of
//! `α`, after reindexing inputs from lexicographic to reverse
//! lexicographic order. [`gtensor`] models the product of two cube operads
//! inside a bigger one, [`thm4`] the quotient of `R₁A(1) × RX` by the
//! relation forgetting edge labels over `A(2)`, and [`cells`] the
//! color-splitting of cell indices.

pub mod cells;
pub mod gtensor;
pub mod thm4;

use std::fmt;

use serde::Serialize;

use crate::cubes::{rat, CubeConfig, CubeN, LittleCubes};
use crate::error::Result;
use crate::operad::Operad;
use crate::perm::Perm;

pub use cells::{recombine_colors, split_colors};
pub use gtensor::{GTensorCubes, GTensorCubesEl};
pub use thm4::{Thm4El, Thm4Operad};

/// The permutation of `{0, …, kℓ−1}` taking the lexicographic position
/// `iℓ + j` of `(i, j)` to its reverse lexicographic position `jk + i`.
#[derive(Clone, PartialEq, Eq)]
pub struct LexPerm {
    pub k: usize,
    pub l: usize,
    pub perm: Perm,
}

impl LexPerm {
    /// Position of `(i, j)` in lexicographic order.
    pub fn lex(&self, i: usize, j: usize) -> usize {
        i * self.l + j
    }

    /// Position of `(i, j)` in reverse lexicographic order.
    pub fn revlex(&self, i: usize, j: usize) -> usize {
        j * self.k + i
    }
}

impl fmt::Debug for LexPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau({}, {}) = {}", self.k, self.l, self.perm)
    }
}

pub fn tau_perm(k: usize, l: usize) -> LexPerm {
    let images = (0..k).flat_map(|i| (0..l).map(move |j| j * k + i)).collect();
    LexPerm {
        k,
        l,
        perm: Perm::from_images(images).expect("a bijection"),
    }
}

/// Both sides of the interchange square for `α ∈ C(k)`, `β ∈ C(ℓ)`.
/// `rhs` is `μ(β; α, …, α)` with inputs moved back to lexicographic order.
#[derive(Debug, Clone)]
pub struct Interchange<E> {
    pub lhs: E,
    pub rhs: E,
    pub equal: bool,
}

pub fn interchange_check<C: Operad>(c: &C, alpha: &C::El, beta: &C::El) -> Result<Interchange<C::El>> {
    let k = c.arity(alpha);
    let l = c.arity(beta);
    let lhs = c.compose(alpha, &vec![beta.clone(); k])?;
    let swapped = c.compose(beta, &vec![alpha.clone(); l])?;
    // input (j, i) of the swapped composite sits at j·k + i; push it to i·ℓ + j
    let rhs = c.act(&swapped, &tau_perm(l, k).perm);
    let equal = lhs == rhs;
    Ok(Interchange { lhs, rhs, equal })
}

/// `C₁ → C_{m+n}` spreading an interval along `axis`, full on the others.
pub fn axis_embed(cfg: &CubeConfig, n: usize, axis: usize) -> CubeConfig {
    assert_eq!(cfg.n(), 1, "expects a configuration of intervals");
    let cubes = cfg
        .cubes()
        .iter()
        .map(|c| {
            let mut iv = vec![(rat(0, 1), rat(1, 1)); n];
            iv[axis] = c.intervals()[0].clone();
            CubeN::new(iv).expect("valid interval")
        })
        .collect();
    CubeConfig::new(n, cubes).expect("disjoint along the axis")
}

/// Interchange of the `x`-split and `y`-split copies of `C₁` in `C₂`.
pub fn dunn_interchange(alpha: &CubeConfig, beta: &CubeConfig) -> Result<Interchange<CubeConfig>> {
    interchange_check(&LittleCubes::new(2), &axis_embed(alpha, 2, 0), &axis_embed(beta, 2, 1))
}

#[derive(Debug, Clone, Serialize)]
pub struct InterchangeFailure {
    pub alpha: String,
    pub beta: String,
    pub lhs: String,
    pub rhs: String,
}

/// Searches pairs `α, β ∈ C₂(2)` built from halves and quarters of the
/// square for one where interchange inside `C₂` fails; returns the first.
pub fn c2_interchange_failure() -> Result<Option<InterchangeFailure>> {
    let c2 = LittleCubes::new(2);
    let cube = |x: (i64, i64), y: (i64, i64)| CubeN::from_fractions(&[(x.0, x.1, 4), (y.0, y.1, 4)]).expect("grid cube");
    let pieces = [
        (cube((0, 2), (0, 4)), cube((2, 4), (0, 4))),
        (cube((0, 4), (0, 2)), cube((0, 4), (2, 4))),
        (cube((0, 1), (0, 1)), cube((3, 4), (3, 4))),
    ];
    let mut candidates = Vec::new();
    for (a, b) in &pieces {
        candidates.push(CubeConfig::new(2, vec![a.clone(), b.clone()])?);
        candidates.push(CubeConfig::new(2, vec![b.clone(), a.clone()])?);
    }
    for alpha in &candidates {
        for beta in &candidates {
            let r = interchange_check(&c2, alpha, beta)?;
            if !r.equal {
                return Ok(Some(InterchangeFailure {
                    alpha: alpha.to_json_string(),
                    beta: beta.to_json_string(),
                    lhs: r.lhs.to_json_string(),
                    rhs: r.rhs.to_json_string(),
                }));
            }
        }
    }
    Ok(None)
}
