//! Cell indices of the tensor models. A labelling with colors in
//! `1..=m+n` splits into the edges of color `≤ m` and the rest recolored
//! `c ↦ c − m`; the two halves index cells of the factors.

use crate::cubes::cells::cell_contains;
use crate::cubes::CubeConfig;
use crate::error::{Error, Result};
use crate::graphs::{Edge, PartialGraphLabel};

use super::gtensor::GTensorCubesEl;

/// `(λ₁, λ₂)` with `λ₁ ∈ K̂⁽ᵐ⁾(k)` and `λ₂ ∈ K̂⁽ⁿ⁻ᵐ⁾(k)`.
pub fn split_colors(lambda: &PartialGraphLabel, m: u8) -> Result<(PartialGraphLabel, PartialGraphLabel)> {
    if m > lambda.n() {
        return Err(Error::FiltrationMismatch(format!("cannot split colors 1..={} at {m}", lambda.n())));
    }
    let k = lambda.k();
    let low = lambda.edges().iter().map(|e| e.filter(|e| e.color <= m)).collect();
    let high = lambda
        .edges()
        .iter()
        .map(|e| {
            e.filter(|e| e.color > m).map(|e| Edge {
                forward: e.forward,
                color: e.color - m,
            })
        })
        .collect();
    Ok((
        PartialGraphLabel::from_edges(k, m, low)?,
        PartialGraphLabel::from_edges(k, lambda.n() - m, high)?,
    ))
}

/// Inverse of [`split_colors`]: the two labellings must use disjoint edges
/// and their union must be acyclic.
pub fn recombine_colors(low: &PartialGraphLabel, high: &PartialGraphLabel) -> Result<PartialGraphLabel> {
    if low.k() != high.k() {
        return Err(Error::ArityMismatch(format!("k={} vs k={}", low.k(), high.k())));
    }
    let m = low.n();
    let edges = low
        .edges()
        .iter()
        .zip(high.edges())
        .enumerate()
        .map(|(idx, (l, h))| match (l, h) {
            (Some(_), Some(_)) => Err(Error::InvalidElement(format!("edge slot {idx} labelled in both halves"))),
            (Some(e), None) => Ok(Some(*e)),
            (None, Some(e)) => Ok(Some(Edge {
                forward: e.forward,
                color: e.color + m,
            })),
            (None, None) => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    let out = PartialGraphLabel::from_edges(low.k(), m + high.n(), edges)?;
    if !out.validate() {
        return Err(Error::InvalidElement(format!("recombined labelling {out} has a cycle")));
    }
    Ok(out)
}

/// The cell of `λ ∈ K⁽ᵐ⁺ⁿ⁾(k)` in `C_m ⊗̃ C_n`: the `a` cubes lie in the
/// cell of `λ₁` and the `b` cubes in the cell of `λ₂`.
pub fn gtensor_cell_contains(lambda: &PartialGraphLabel, el: &GTensorCubesEl) -> Result<bool> {
    let m = u8::try_from(el.m).map_err(|_| Error::InvalidElement("dimension exceeds 255".into()))?;
    if lambda.n() as usize != el.m + el.n {
        return Err(Error::FiltrationMismatch(format!("colors 1..={} for C{} ⊗ C{}", lambda.n(), el.m, el.n)));
    }
    let (low, high) = split_colors(lambda, m)?;
    Ok(cell_contains(&low, &CubeConfig::tuple(el.m, el.a.clone())?)?
        && cell_contains(&high, &CubeConfig::tuple(el.n, el.b.clone())?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{k_enumerate, khat_enumerate};

    #[test]
    fn split_round_trips() {
        for lambda in khat_enumerate(3, 3).unwrap() {
            for m in 0..=3 {
                let (low, high) = split_colors(&lambda, m).unwrap();
                assert!(low.validate() && high.validate());
                assert_eq!(recombine_colors(&low, &high).unwrap(), lambda);
            }
        }
    }

    #[test]
    fn recombine_round_trips() {
        let lows = khat_enumerate(1, 3).unwrap();
        let highs = khat_enumerate(1, 3).unwrap();
        let mut ok = 0;
        for low in &lows {
            for high in &highs {
                if let Ok(g) = recombine_colors(low, high) {
                    assert_eq!(split_colors(&g, 1).unwrap(), (low.clone(), high.clone()));
                    ok += 1;
                }
            }
        }
        // compatible pairs are in bijection with K̂⁽²⁾(3)
        assert_eq!(ok, khat_enumerate(2, 3).unwrap().len());
    }

    #[test]
    fn clashes_rejected() {
        let a = PartialGraphLabel::from_arrows(3, 1, &[(1, 2, 1)]).unwrap();
        assert!(recombine_colors(&a, &a).is_err());
        let low = PartialGraphLabel::from_arrows(3, 1, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        let high = PartialGraphLabel::from_arrows(3, 1, &[(3, 1, 1)]).unwrap();
        assert!(recombine_colors(&low, &high).is_err());
    }

    #[test]
    fn factor_cells_sit_inside_cube_cells() {
        use crate::tensor::GTensorCubes;
        use rand::SeedableRng;
        let op = GTensorCubes::new(1, 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let labels = k_enumerate(2, 3).unwrap();
        for _ in 0..60 {
            let el = op.random(3, &mut rng);
            let cfg = el.product_embed().unwrap();
            let mut covered = false;
            for lambda in &labels {
                if gtensor_cell_contains(lambda, &el).unwrap() {
                    covered = true;
                    assert!(cell_contains(lambda, &cfg).unwrap(), "{lambda} {el:?}");
                }
            }
            assert!(covered, "{el:?}");
        }
    }
}
