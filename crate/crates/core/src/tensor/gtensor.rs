//! `C_m ⊗̃ C_n`: tuples of pairs `(a_i, b_i) ∈ C_m(1) × C_n(1)` such that
//! every two indices are disjoint in their `a` cubes or their `b` cubes.
//! Composition is the atomic one on each factor. Product cubes
//! `a_i × b_i` identify it with `C_{m+n}`.

use std::fmt;

use rand::Rng;

use crate::adjoint::AtomicOperad;
use crate::cubes::random::{random_config, random_tuple};
use crate::cubes::{disjoint_interiors, CubeConfig, CubeMonoid, CubeN, LittleCubes};
use crate::error::{Error, Result};
use crate::operad::{sampled_checks, AxiomCheck, Operad};
use crate::perm::Perm;

/// Both label families are stored in full; validity is a separate predicate
/// so invalid elements can still be shown.
#[derive(Clone, PartialEq, Eq)]
pub struct GTensorCubesEl {
    pub m: usize,
    pub n: usize,
    pub a: Vec<CubeN>,
    pub b: Vec<CubeN>,
}

impl GTensorCubesEl {
    pub fn new(m: usize, n: usize, a: Vec<CubeN>, b: Vec<CubeN>) -> Result<GTensorCubesEl> {
        if a.len() != b.len() {
            return Err(Error::ArityMismatch(format!("{} a-labels and {} b-labels", a.len(), b.len())));
        }
        if a.iter().any(|c| c.dim() != m) || b.iter().any(|c| c.dim() != n) {
            return Err(Error::InvalidElement(format!("labels must lie in C{m}(1) and C{n}(1)")));
        }
        Ok(GTensorCubesEl { m, n, a, b })
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// First pair `(i, j)` overlapping in both factors.
    pub fn violation(&self) -> Option<(usize, usize)> {
        crate::edges::pairs(self.k())
            .find(|&(i, j)| !disjoint_interiors(&self.a[i], &self.a[j]) && !disjoint_interiors(&self.b[i], &self.b[j]))
    }

    pub fn validate(&self) -> bool {
        self.violation().is_none()
    }

    /// Cube `i` of the image is `a_i × b_i`.
    pub fn product_embed(&self) -> Result<CubeConfig> {
        if let Some((i, j)) = self.violation() {
            return Err(Error::Overlap(i + 1, j + 1));
        }
        let cubes = self.a.iter().zip(&self.b).map(|(a, b)| a.product(b)).collect();
        CubeConfig::new(self.m + self.n, cubes)
    }

    /// Splits an element of `C_{m+n}` by projecting onto the first `m` and
    /// the last `n` axes.
    pub fn split(cfg: &CubeConfig, m: usize) -> Result<GTensorCubesEl> {
        if m > cfg.n() {
            return Err(Error::InvalidElement(format!("cannot split C{} at {m}", cfg.n())));
        }
        let d = cfg.n();
        GTensorCubesEl::new(
            m,
            d - m,
            cfg.cubes().iter().map(|c| c.project(0..m)).collect(),
            cfg.cubes().iter().map(|c| c.project(m..d)).collect(),
        )
    }
}

impl fmt::Debug for GTensorCubesEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (a, b)) in self.a.iter().zip(&self.b).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a} | {b}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GTensorCubes {
    pub m: usize,
    pub n: usize,
}

impl GTensorCubes {
    pub fn new(m: usize, n: usize) -> Self {
        GTensorCubes { m, n }
    }

    fn factors(&self) -> (AtomicOperad<CubeMonoid>, AtomicOperad<CubeMonoid>) {
        (
            AtomicOperad::new(CubeMonoid { n: self.m }),
            AtomicOperad::new(CubeMonoid { n: self.n }),
        )
    }

    /// A valid element drawn one of three ways: a split cube configuration,
    /// disjoint `a` cubes over arbitrary `b` cubes, or the reverse.
    pub fn random<R: Rng>(&self, k: usize, rng: &mut R) -> GTensorCubesEl {
        let (m, n) = (self.m, self.n);
        match rng.gen_range(0..3) {
            0 => GTensorCubesEl::split(&random_config(m + n, k, rng), m).expect("split"),
            1 => {
                let a = random_config(m, k, rng).cubes().to_vec();
                let b = random_tuple(n, k, rng).cubes().to_vec();
                GTensorCubesEl::new(m, n, a, b).expect("dimensions")
            }
            _ => {
                let a = random_tuple(m, k, rng).cubes().to_vec();
                let b = random_config(n, k, rng).cubes().to_vec();
                GTensorCubesEl::new(m, n, a, b).expect("dimensions")
            }
        }
    }
}

impl Operad for GTensorCubes {
    type El = GTensorCubesEl;

    fn arity(&self, x: &GTensorCubesEl) -> usize {
        x.k()
    }

    fn unit(&self) -> GTensorCubesEl {
        GTensorCubesEl {
            m: self.m,
            n: self.n,
            a: vec![CubeN::full(self.m)],
            b: vec![CubeN::full(self.n)],
        }
    }

    fn point(&self) -> GTensorCubesEl {
        GTensorCubesEl {
            m: self.m,
            n: self.n,
            a: Vec::new(),
            b: Vec::new(),
        }
    }

    fn compose(&self, outer: &GTensorCubesEl, inners: &[GTensorCubesEl]) -> Result<GTensorCubesEl> {
        for x in std::iter::once(outer).chain(inners) {
            if (x.m, x.n) != (self.m, self.n) {
                return Err(Error::InvalidElement(format!("{x:?} is not in C{} ⊗ C{}", self.m, self.n)));
            }
            if let Some((i, j)) = x.violation() {
                return Err(Error::Overlap(i + 1, j + 1));
            }
        }
        let (fa, fb) = self.factors();
        let inner_a: Vec<Vec<CubeN>> = inners.iter().map(|y| y.a.clone()).collect();
        let inner_b: Vec<Vec<CubeN>> = inners.iter().map(|y| y.b.clone()).collect();
        Ok(GTensorCubesEl {
            m: self.m,
            n: self.n,
            a: fa.compose(&outer.a, &inner_a)?,
            b: fb.compose(&outer.b, &inner_b)?,
        })
    }

    fn act(&self, x: &GTensorCubesEl, g: &Perm) -> GTensorCubesEl {
        GTensorCubesEl {
            m: x.m,
            n: x.n,
            a: g.push(&x.a),
            b: g.push(&x.b),
        }
    }

    fn degeneracy(&self, x: &GTensorCubesEl, i: usize) -> GTensorCubesEl {
        let mut y = x.clone();
        y.a.remove(i);
        y.b.remove(i);
        y
    }
}

pub const GTENSOR_CHECKS: [&str; 5] = [
    "closure under composition",
    "product_embed preserves composition",
    "product_embed is injective",
    "split inverts product_embed",
    "cube configurations split",
];

/// Sampled properties of `C_m ⊗̃ C_n`; outer and inner arities are drawn
/// up to `max_k`.
pub fn gtensor_checks(m: usize, n: usize, max_k: usize, samples: u64, seed: u64) -> Vec<AxiomCheck> {
    let op = GTensorCubes::new(m, n);
    let cubes = LittleCubes::new(m + n);
    sampled_checks(&GTENSOR_CHECKS, samples, seed, |rng, rec| {
        let k = rng.gen_range(1..=max_k);
        let outer = op.random(k, rng);
        let inners: Vec<GTensorCubesEl> = (0..k)
            .map(|_| {
                let size = rng.gen_range(0..=max_k);
                op.random(size, rng)
            })
            .collect();
        let composed = op.compose(&outer, &inners);
        match &composed {
            Ok(c) => rec.record(0, c.validate(), || format!("{outer:?} ∘ {inners:?} = {c:?}")),
            Err(e) => rec.record(0, false, || format!("{outer:?} ∘ {inners:?}: {e}")),
        }
        if let Ok(c) = &composed {
            let embedded_inners: Result<Vec<CubeConfig>> = inners.iter().map(|y| y.product_embed()).collect();
            let lhs = c.product_embed();
            let rhs = outer
                .product_embed()
                .and_then(|o| cubes.compose(&o, &embedded_inners?));
            let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
            rec.record(1, ok, || format!("{outer:?} ∘ {inners:?}: {lhs:?} vs {rhs:?}"));
        }
        let other = op.random(k, rng);
        // a fresh draw, and a single-label perturbation that stays valid
        let mut near = outer.clone();
        near.a[0] = other.a[0].clone();
        for y in [other, near] {
            if y.validate() {
                let ok = match (outer.product_embed(), y.product_embed()) {
                    (Ok(p), Ok(q)) => (outer == y) == (p == q),
                    _ => false,
                };
                rec.record(2, ok, || format!("{outer:?} and {y:?}"));
            }
        }
        let back = outer.product_embed().and_then(|p| GTensorCubesEl::split(&p, m));
        rec.record(3, back.as_ref().ok() == Some(&outer), || format!("{outer:?} ↦ {back:?}"));
        let cfg = random_config(m + n, k, rng);
        let s = GTensorCubesEl::split(&cfg, m);
        let ok = matches!(&s, Ok(s) if s.validate() && s.product_embed().ok().as_ref() == Some(&cfg));
        rec.record(4, ok, || format!("{cfg:?} ↦ {s:?}"));
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubes::rat;

    fn iv(a: i64, b: i64, d: i64) -> CubeN {
        CubeN::from_fractions(&[(a, b, d)]).unwrap()
    }

    #[test]
    fn validation_examples() {
        let halves = vec![iv(0, 1, 2), iv(1, 2, 2)];
        let same = vec![iv(0, 1, 1), iv(0, 1, 1)];
        assert!(GTensorCubesEl::new(1, 1, halves.clone(), same.clone()).unwrap().validate());
        assert!(GTensorCubesEl::new(1, 1, same.clone(), halves).unwrap().validate());
        let bad = GTensorCubesEl::new(1, 1, same.clone(), same).unwrap();
        assert_eq!(bad.violation(), Some((0, 1)));
        assert!(bad.product_embed().is_err());
        assert!(GTensorCubes::new(1, 2).unit().validate());
        assert!(GTensorCubes::new(1, 2).point().validate());
    }

    #[test]
    fn side_by_side_squares() {
        let el = GTensorCubesEl::new(1, 1, vec![iv(0, 1, 2), iv(1, 2, 2)], vec![iv(0, 1, 1), iv(0, 1, 1)]).unwrap();
        let cfg = el.product_embed().unwrap();
        let expected = CubeConfig::new(
            2,
            vec![
                CubeN::new(vec![(rat(0, 1), rat(1, 2)), (rat(0, 1), rat(1, 1))]).unwrap(),
                CubeN::new(vec![(rat(1, 2), rat(1, 1)), (rat(0, 1), rat(1, 1))]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(cfg, expected);
        assert_eq!(GTensorCubesEl::split(&cfg, 1).unwrap(), el);
    }

    #[test]
    fn units_compose_trivially() {
        let op = GTensorCubes::new(1, 1);
        let el = GTensorCubesEl::new(1, 1, vec![iv(0, 1, 2), iv(1, 2, 2)], vec![iv(0, 1, 3), iv(1, 3, 3)]).unwrap();
        assert_eq!(op.compose(&el, &[op.unit(), op.unit()]).unwrap(), el);
        assert_eq!(op.compose(&op.unit(), std::slice::from_ref(&el)).unwrap(), el);
    }

    #[test]
    fn sampled_properties_hold() {
        for (m, n) in [(1, 1), (1, 2)] {
            for c in gtensor_checks(m, n, 3, 300, 11) {
                assert!(c.passed, "{c:?}");
                assert!(c.cases > 0, "{c:?}");
            }
        }
    }
}
