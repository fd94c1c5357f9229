//! The configuration preoperad `F(Rⁿ, −)`: tuples of distinct points, with
//! deletion of points, relabelling, and the unit map into `R(F(Rⁿ, 2))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjoint::{RConstruction, REdgeLabelling, Z2Carrier};
use crate::edges::pairs;
use crate::error::{Error, Result};
use crate::operad::{AxiomCheck, CheckMode, Operad};
use crate::perm::Perm;

use super::{format_rat, rat, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointConfig {
    n: usize,
    points: Vec<Vec<Rat>>,
}

impl PointConfig {
    pub fn new(n: usize, points: Vec<Vec<Rat>>) -> Result<PointConfig> {
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidElement(format!("points must have {n} coordinates")));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::InvalidElement(format!("points {} and {} coincide", i + 1, j + 1)));
                }
            }
        }
        Ok(PointConfig { n, points })
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    pub fn is_valid(&self) -> bool {
        PointConfig::new(self.n, self.points.clone()).is_ok()
    }

    pub fn delete(&self, i: usize) -> PointConfig {
        let mut points = self.points.clone();
        points.remove(i);
        PointConfig { n: self.n, points }
    }

    pub fn act(&self, g: &Perm) -> PointConfig {
        PointConfig {
            n: self.n,
            points: g.push(&self.points),
        }
    }

    fn select(&self, i: usize, j: usize) -> PointConfig {
        PointConfig {
            n: self.n,
            points: vec![self.points[i].clone(), self.points[j].clone()],
        }
    }

    /// Edge `{i, j}` is labelled by the pair `(p_i, p_j)`.
    pub fn unit_map(&self) -> REdgeLabelling<PointConfig> {
        REdgeLabelling::new(self.k(), pairs(self.k()).map(|(i, j)| self.select(i, j)).collect())
            .expect("edge count")
    }
}

impl std::fmt::Debug for PointConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|p| format!("({})", p.iter().map(format_rat).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "F{}[{}]", self.n, pts.join(", "))
    }
}

/// `F(Rⁿ, 2)` with the swap of the two points.
#[derive(Debug, Clone, Copy)]
pub struct PointPairs;

impl Z2Carrier for PointPairs {
    type Label = PointConfig;

    fn bar(&self, x: &PointConfig) -> PointConfig {
        x.act(&Perm::transposition(2, 0, 1))
    }
}

pub fn random_points<R: Rng>(n: usize, k: usize, rng: &mut R) -> PointConfig {
    loop {
        let points = (0..k)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(0..=64), 64)).collect())
            .collect();
        if let Ok(p) = PointConfig::new(n, points) {
            return p;
        }
    }
}

/// Sampled checks: distinctness survives deletion and relabelling, and the
/// unit map commutes with both.
pub fn config_preoperad_check(n: usize, k: usize, samples: u64, seed: u64) -> Vec<AxiomCheck> {
    let r = RConstruction::new(PointPairs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = Perm::all(k);
    let mut checks: Vec<AxiomCheck> = ["valid", "degeneracy", "action", "unit map equivariance", "unit map degeneracy"]
        .iter()
        .map(|name| AxiomCheck {
            name: name.to_string(),
            mode: CheckMode::Sampled { samples, seed },
            cases: 0,
            passed: true,
            witness: None,
        })
        .collect();
    let mut record = |idx: usize, ok: bool, witness: &dyn Fn() -> String| {
        let c = &mut checks[idx];
        c.cases += 1;
        if !ok && c.passed {
            c.passed = false;
            c.witness = Some(witness());
        }
    };
    for _ in 0..samples {
        let p = random_points(n, k, &mut rng);
        record(0, p.is_valid(), &|| format!("{p:?}"));
        let g = &perms[rng.gen_range(0..perms.len())];
        let gp = p.act(g);
        record(2, gp.is_valid(), &|| format!("{g}·{p:?}"));
        record(3, gp.unit_map() == r.act(&p.unit_map(), g), &|| format!("{g} on {p:?}"));
        if k > 0 {
            let i = rng.gen_range(0..k);
            let d = p.delete(i);
            record(1, d.is_valid() && d.k() + 1 == k, &|| format!("delete {} from {p:?}", i + 1));
            record(4, d.unit_map() == r.degeneracy(&p.unit_map(), i), &|| {
                format!("delete {} from {p:?}", i + 1)
            });
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_points_required() {
        let p = vec![rat(1, 2), rat(0, 1)];
        assert!(PointConfig::new(2, vec![p.clone(), p.clone()]).is_err());
        let q = vec![rat(1, 3), rat(0, 1)];
        let cfg = PointConfig::new(2, vec![p.clone(), q.clone(), vec![rat(0, 1), rat(0, 1)]]).unwrap();
        let d = cfg.delete(2);
        assert_eq!(d.points(), &[p.clone(), q.clone()]);
        assert_eq!(d.unit_map().labels()[0].points(), &[p, q]);
    }

    #[test]
    fn sampled_checks_pass() {
        for c in config_preoperad_check(2, 4, 200, 3) {
            assert!(c.passed, "{c:?}");
        }
    }
}
