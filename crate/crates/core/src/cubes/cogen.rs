//! A configuration of little cubes is determined by its cubes and its pairs:
//! the maps into `R₂T₂Cₙ` and back.

use crate::adjoint::{R2Element, R2Operad, Trunc2, TruncatedOperad};
use crate::edges::pairs;

use super::{disjoint_interiors, CubeConfig, LittleCubes};

pub type CubeR2 = R2Operad<TruncatedOperad<LittleCubes>>;
pub type CubeR2Element = R2Element<CubeConfig, CubeConfig>;

pub fn cube_r2(n: usize) -> CubeR2 {
    R2Operad::new(TruncatedOperad::new(LittleCubes::new(n)))
}

/// Vertex `i` gets the 1-configuration of cube `i`, edge `{i, j}` the pair
/// `(cube i, cube j)`.
pub fn decompose(cfg: &CubeConfig) -> CubeR2Element {
    R2Element {
        vertices: (0..cfg.k()).map(|i| cfg.select(&[i])).collect(),
        edges: pairs(cfg.k()).map(|(i, j)| cfg.select(&[i, j])).collect(),
    }
}

/// The configuration of vertex cubes, if `el` is a valid element whose edge
/// pairs all have disjoint interiors.
pub fn reconstruct(n: usize, el: &CubeR2Element) -> Option<CubeConfig> {
    let r2 = cube_r2(n);
    if !r2.validate(el) || el.vertices.iter().any(|v| v.k() != 1 || v.n() != n) {
        return None;
    }
    if !el.edges.iter().all(|e| disjoint_interiors(e.cube(0), e.cube(1))) {
        return None;
    }
    let cubes = el.vertices.iter().map(|v| v.cube(0).clone()).collect();
    CubeConfig::new(n, cubes).ok()
}

/// Endpoint cubes of an edge label.
pub fn edge_endpoints(n: usize, edge: &CubeConfig) -> (CubeConfig, CubeConfig) {
    TruncatedOperad::new(LittleCubes::new(n)).vertex_pair(edge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubes::CubeN;

    #[test]
    fn round_trip_and_rejection() {
        let a = CubeN::from_fractions(&[(0, 1, 2), (0, 1, 1)]).unwrap();
        let b = CubeN::from_fractions(&[(1, 2, 2), (0, 1, 1)]).unwrap();
        let cfg = CubeConfig::new(2, vec![a.clone(), b]).unwrap();
        let el = decompose(&cfg);
        assert!(cube_r2(2).validate(&el));
        assert_eq!(reconstruct(2, &el), Some(cfg));
        let overlapping = CubeConfig::tuple(2, vec![a.clone(), a]).unwrap();
        assert_eq!(reconstruct(2, &decompose(&overlapping)), None);
        let empty = CubeConfig::new(2, Vec::new()).unwrap();
        assert_eq!(reconstruct(2, &decompose(&empty)), Some(empty));
    }
}
