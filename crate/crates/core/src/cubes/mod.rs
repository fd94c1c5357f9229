//! The little n-cubes operad over exact rationals.

pub mod cells;
pub mod cogen;
pub mod points;
pub mod random;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::adjoint::Monoid;
use crate::error::{Error, Result};
use crate::operad::Operad;
use crate::perm::Perm;

pub use cells::{cell_contains, min_cell, min_edge_labels, separation_axes, Separation};
pub use cogen::{decompose, reconstruct, CubeR2, CubeR2Element};
pub use points::{config_preoperad_check, PointConfig, PointPairs};
pub use random::random_config;

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An axis-aligned subcube `∏ [a_j, b_j]` of the unit cube, `a_j < b_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubeN {
    intervals: Vec<(Rat, Rat)>,
}

impl CubeN {
    pub fn new(intervals: Vec<(Rat, Rat)>) -> Result<CubeN> {
        for (j, (a, b)) in intervals.iter().enumerate() {
            if !(a < b && *a >= Rat::zero() && *b <= Rat::one()) {
                return Err(Error::InvalidElement(format!(
                    "axis {}: [{}, {}] is not a proper subinterval of [0, 1]",
                    j + 1,
                    format_rat(a),
                    format_rat(b)
                )));
            }
        }
        Ok(CubeN { intervals })
    }

    /// From `(num_a, num_b, den)` triples per axis.
    pub fn from_fractions(axes: &[(i64, i64, i64)]) -> Result<CubeN> {
        CubeN::new(axes.iter().map(|&(a, b, d)| (rat(a, d), rat(b, d))).collect())
    }

    pub fn full(n: usize) -> CubeN {
        CubeN {
            intervals: vec![(Rat::zero(), Rat::one()); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(Rat, Rat)] {
        &self.intervals
    }

    pub fn lo(&self, axis: usize) -> &Rat {
        &self.intervals[axis].0
    }

    pub fn hi(&self, axis: usize) -> &Rat {
        &self.intervals[axis].1
    }

    /// Image of `inner` under the affine map of `self`:
    /// per axis `x ↦ a + (b − a)x`.
    pub fn apply(&self, inner: &CubeN) -> CubeN {
        assert_eq!(self.dim(), inner.dim(), "cube dimensions differ");
        CubeN {
            intervals: self
                .intervals
                .iter()
                .zip(&inner.intervals)
                .map(|((a, b), (c, d))| {
                    let w = b - a;
                    (a + &w * c, a + &w * d)
                })
                .collect(),
        }
    }

    /// Product cube in dimension `m + n`.
    pub fn product(&self, other: &CubeN) -> CubeN {
        let mut intervals = self.intervals.clone();
        intervals.extend(other.intervals.iter().cloned());
        CubeN { intervals }
    }

    /// Projection onto the axes `range`.
    pub fn project(&self, range: std::ops::Range<usize>) -> CubeN {
        CubeN {
            intervals: self.intervals[range].to_vec(),
        }
    }

    pub fn to_json(&self) -> CubeJson {
        CubeJson {
            n: self.dim(),
            intervals: self.intervals.iter().map(|(a, b)| [format_rat(a), format_rat(b)]).collect(),
        }
    }

    pub fn from_json(j: &CubeJson) -> Result<CubeN> {
        if j.intervals.len() != j.n {
            return Err(Error::Parse(format!("n={} but {} intervals", j.n, j.intervals.len())));
        }
        CubeN::new(
            j.intervals
                .iter()
                .map(|[a, b]| Ok((parse_rat(a)?, parse_rat(b)?)))
                .collect::<Result<_>>()?,
        )
    }
}

impl fmt::Display for CubeN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (a, b)) in self.intervals.iter().enumerate() {
            if j > 0 {
                write!(f, "×")?;
            }
            write!(f, "[{},{}]", format_rat(a), format_rat(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CubeN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The interiors are disjoint iff some axis separates the intervals.
pub fn disjoint_interiors(c1: &CubeN, c2: &CubeN) -> bool {
    c1.intervals
        .iter()
        .zip(&c2.intervals)
        .any(|((a1, b1), (a2, b2))| b1 <= a2 || b2 <= a1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeJson {
    pub n: usize,
    pub intervals: Vec<[String; 2]>,
}

/// A `k`-tuple of subcubes of `[0,1]ⁿ`; an element of `Cₙ(k)` when the
/// interiors are pairwise disjoint.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubeConfig {
    n: usize,
    cubes: Vec<CubeN>,
}

impl CubeConfig {
    /// A tuple in `Cₙ(1)ᵏ`; disjointness is not required.
    pub fn tuple(n: usize, cubes: Vec<CubeN>) -> Result<CubeConfig> {
        if let Some(c) = cubes.iter().find(|c| c.dim() != n) {
            return Err(Error::InvalidElement(format!("cube {c} is not {n}-dimensional")));
        }
        Ok(CubeConfig { n, cubes })
    }

    /// An element of `Cₙ(k)`.
    pub fn new(n: usize, cubes: Vec<CubeN>) -> Result<CubeConfig> {
        let c = CubeConfig::tuple(n, cubes)?;
        c.check_disjoint()?;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.cubes.len()
    }

    pub fn cubes(&self) -> &[CubeN] {
        &self.cubes
    }

    pub fn cube(&self, i: usize) -> &CubeN {
        &self.cubes[i]
    }

    pub fn check_disjoint(&self) -> Result<()> {
        for i in 0..self.k() {
            for j in i + 1..self.k() {
                if !disjoint_interiors(&self.cubes[i], &self.cubes[j]) {
                    return Err(Error::Overlap(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check_disjoint().is_ok()
    }

    /// The sub-tuple on the given (0-based) indices, in that order.
    pub fn select(&self, idx: &[usize]) -> CubeConfig {
        CubeConfig {
            n: self.n,
            cubes: idx.iter().map(|&i| self.cubes[i].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> Vec<CubeJson> {
        self.cubes.iter().map(CubeN::to_json).collect()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("cube JSON serializes")
    }

    /// Parses a JSON array of cubes. `n` is taken from the cubes; an empty
    /// array needs it supplied.
    pub fn from_json_str(s: &str, n_if_empty: usize) -> Result<CubeConfig> {
        let js: Vec<CubeJson> = serde_json::from_str(s)?;
        let n = js.first().map_or(n_if_empty, |j| j.n);
        CubeConfig::tuple(n, js.iter().map(CubeN::from_json).collect::<Result<_>>()?)
    }
}

impl fmt::Debug for CubeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}(", self.n)?;
        for (i, c) in self.cubes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Cₙ` as an operad.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LittleCubes {
    pub n: usize,
}

impl LittleCubes {
    pub fn new(n: usize) -> Self {
        LittleCubes { n }
    }
}

impl Operad for LittleCubes {
    type El = CubeConfig;

    fn arity(&self, x: &CubeConfig) -> usize {
        x.k()
    }

    fn unit(&self) -> CubeConfig {
        CubeConfig {
            n: self.n,
            cubes: vec![CubeN::full(self.n)],
        }
    }

    fn point(&self) -> CubeConfig {
        CubeConfig {
            n: self.n,
            cubes: Vec::new(),
        }
    }

    /// Each inner configuration is placed inside its outer cube.
    fn compose(&self, outer: &CubeConfig, inners: &[CubeConfig]) -> Result<CubeConfig> {
        if outer.k() != inners.len() {
            return Err(Error::ArityMismatch(format!(
                "outer arity {} with {} inputs",
                outer.k(),
                inners.len()
            )));
        }
        for c in std::iter::once(outer).chain(inners) {
            if c.n != self.n {
                return Err(Error::InvalidElement(format!("{c:?} is not in C{}", self.n)));
            }
            c.check_disjoint()?;
        }
        let cubes = outer
            .cubes
            .iter()
            .zip(inners)
            .flat_map(|(o, inner)| inner.cubes.iter().map(move |c| o.apply(c)))
            .collect();
        Ok(CubeConfig { n: self.n, cubes })
    }

    fn act(&self, x: &CubeConfig, g: &Perm) -> CubeConfig {
        CubeConfig {
            n: x.n,
            cubes: g.push(&x.cubes),
        }
    }

    fn degeneracy(&self, x: &CubeConfig, i: usize) -> CubeConfig {
        let mut cubes = x.cubes.clone();
        cubes.remove(i);
        CubeConfig { n: x.n, cubes }
    }
}

/// `Cₙ(1)` under composition of affine maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeMonoid {
    pub n: usize,
}

impl Monoid for CubeMonoid {
    type M = CubeN;

    fn one(&self) -> CubeN {
        CubeN::full(self.n)
    }

    fn mul(&self, a: &CubeN, b: &CubeN) -> CubeN {
        a.apply(b)
    }
}

/// The tuple `α = (right half, left half)`, `β = (bottom, top)`,
/// `γ = (top)` in `C₂` whose composite `μ(α; β, γ)` is three quarter
/// squares. Its unit-map images in `RUC₂` compose differently.
pub fn counterexample_tuple() -> (CubeConfig, Vec<CubeConfig>) {
    let half = |axis: usize, upper: bool| {
        let mut iv = vec![(rat(0, 1), rat(1, 1)); 2];
        iv[axis] = if upper { (rat(1, 2), rat(1, 1)) } else { (rat(0, 1), rat(1, 2)) };
        CubeN { intervals: iv }
    };
    let alpha = CubeConfig {
        n: 2,
        cubes: vec![half(0, true), half(0, false)],
    };
    let beta = CubeConfig {
        n: 2,
        cubes: vec![half(1, false), half(1, true)],
    };
    let gamma = CubeConfig {
        n: 2,
        cubes: vec![half(1, true)],
    };
    (alpha, vec![beta, gamma])
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn half(axis: usize, upper: bool) -> CubeN {
        let mut iv = vec![(rat(0, 1), rat(1, 1)); 2];
        iv[axis] = if upper { (rat(1, 2), rat(1, 1)) } else { (rat(0, 1), rat(1, 2)) };
        CubeN::new(iv).unwrap()
    }

    #[test]
    fn rationals_parse_and_print() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(format_rat(&rat(2, 4)), "1/2");
        assert_eq!(format_rat(&rat(3, 3)), "1");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn cube_invariants() {
        assert!(CubeN::from_fractions(&[(1, 1, 2)]).is_err());
        assert!(CubeN::from_fractions(&[(0, 3, 2)]).is_err());
        assert!(CubeN::from_fractions(&[(0, 1, 2)]).is_ok());
    }

    #[test]
    fn disjointness() {
        let right = half(0, true);
        let left = half(0, false);
        assert!(!disjoint_interiors(&right, &right));
        assert!(disjoint_interiors(&right, &left));
        let a = CubeN::from_fractions(&[(0, 1, 2), (0, 1, 2)]).unwrap();
        let b = CubeN::from_fractions(&[(1, 2, 2), (1, 2, 2)]).unwrap();
        assert!(disjoint_interiors(&a, &b));
    }

    #[test]
    fn counterexample_composition() {
        let c2 = LittleCubes::new(2);
        let (alpha, inners) = counterexample_tuple();
        assert_eq!(alpha.cubes(), &[half(0, true), half(0, false)]);
        let out = c2.compose(&alpha, &inners).unwrap();
        let expected = vec![
            CubeN::from_fractions(&[(1, 2, 2), (0, 1, 2)]).unwrap(),
            CubeN::from_fractions(&[(1, 2, 2), (1, 2, 2)]).unwrap(),
            CubeN::from_fractions(&[(0, 1, 2), (1, 2, 2)]).unwrap(),
        ];
        assert_eq!(out.cubes(), expected.as_slice());
        assert!(out.is_valid());
    }

    #[test]
    fn json_round_trip() {
        let c = half(0, true);
        let s = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(s, r#"{"n":2,"intervals":[["1/2","1"],["0","1"]]}"#);
        let cfg = CubeConfig::new(2, vec![c.clone(), half(0, false)]).unwrap();
        assert_eq!(CubeConfig::from_json_str(&cfg.to_json_string(), 2).unwrap(), cfg);
    }

    #[test]
    fn compose_rejects_overlaps() {
        let c2 = LittleCubes::new(2);
        let bad = CubeConfig::tuple(2, vec![half(0, true), half(0, true)]).unwrap();
        assert_eq!(c2.compose(&c2.unit(), &[bad]), Err(Error::Overlap(1, 2)));
    }
}
