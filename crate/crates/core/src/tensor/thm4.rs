//! `A ⊗̃ RX` for a cube operad `A = C_m` and a Z/2-set `X`.
//!
//! An element is a complete graph with vertices labelled in `C_m(1)` and
//! edges labelled in `X`, modulo changing the label of any edge whose two
//! vertex cubes have disjoint interiors (the pair then lies in `C_m(2)`).
//! The normal form stores no label on such edges and a label on all others.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::adjoint::{FiniteZ2Set, Monoid, REdgeLabelling, Z2Carrier};
use crate::cubes::random::{random_config, random_tuple};
use crate::cubes::{disjoint_interiors, CubeConfig, CubeMonoid, CubeN};
use crate::edges::{block_layout, edge_count, pair_index, pairs};
use crate::error::{Error, Result};
use crate::graphs::PartialGraphLabel;
use crate::operad::{sampled_checks, AxiomCheck, Operad};
use crate::perm::Perm;

use super::cells::split_colors;
use super::{interchange_check, tau_perm, Interchange};

/// Edge labels are stored for `a < b` as the label of `a → b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Thm4El {
    pub m: usize,
    pub vertices: Vec<CubeN>,
    pub edges: Vec<Option<usize>>,
}

impl Thm4El {
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Drops the labels on edges over `C_m(2)`. Missing labels elsewhere
    /// are an error: the class would not be determined.
    pub fn normalize(m: usize, vertices: Vec<CubeN>, edges: Vec<Option<usize>>) -> Result<Thm4El> {
        let k = vertices.len();
        if edges.len() != edge_count(k) {
            return Err(Error::ArityMismatch(format!("{} edge labels for k={k}", edges.len())));
        }
        if let Some(c) = vertices.iter().find(|c| c.dim() != m) {
            return Err(Error::InvalidElement(format!("vertex {c} is not in C{m}(1)")));
        }
        let edges = pairs(k)
            .zip(edges)
            .map(|((a, b), l)| {
                if disjoint_interiors(&vertices[a], &vertices[b]) {
                    Ok(None)
                } else {
                    l.map(Some)
                        .ok_or_else(|| Error::InvalidElement(format!("edge {{{}, {}}} needs a label", a + 1, b + 1)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Thm4El { m, vertices, edges })
    }

    pub fn is_normal(&self) -> bool {
        pairs(self.k())
            .zip(&self.edges)
            .all(|((a, b), l)| l.is_some() != disjoint_interiors(&self.vertices[a], &self.vertices[b]))
    }

    pub fn label(&self, a: usize, b: usize) -> Option<usize> {
        self.edges[pair_index(self.k(), a, b)]
    }
}

impl fmt::Debug for Thm4El {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {v}", i + 1)?;
        }
        for ((a, b), l) in pairs(self.k()).zip(&self.edges) {
            if let Some(l) = l {
                write!(f, "; {}{}: {l}", a + 1, b + 1)?;
            }
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm4Operad {
    pub m: usize,
    pub x: FiniteZ2Set,
}

impl Thm4Operad {
    pub fn new(m: usize, x: FiniteZ2Set) -> Self {
        Thm4Operad { m, x }
    }

    fn check(&self, el: &Thm4El) -> Result<()> {
        if el.m != self.m || el.vertices.iter().any(|v| v.dim() != self.m) {
            return Err(Error::InvalidElement(format!("{el:?} has vertices outside C{}(1)", self.m)));
        }
        if el.edges.iter().flatten().any(|&l| l >= self.x.len()) {
            return Err(Error::InvalidElement(format!("{el:?} has a label outside X")));
        }
        if !el.is_normal() {
            return Err(Error::InvalidElement(format!("{el:?} is not in normal form")));
        }
        Ok(())
    }

    /// Composition of representatives in `R₁C_m(1) × RX`: vertices
    /// `m_p · x_u`, edges inside block `p` from `inners[p]`, edges between
    /// blocks `p, q` from the outer edge.
    fn raw_compose(&self, outer: &Thm4El, inners: &[Thm4El]) -> (Vec<CubeN>, Vec<Option<usize>>) {
        let monoid = CubeMonoid { n: self.m };
        let sizes: Vec<usize> = inners.iter().map(Thm4El::k).collect();
        let layout = block_layout(&sizes);
        let vertices = layout
            .iter()
            .map(|&(p, u)| monoid.mul(&outer.vertices[p], &inners[p].vertices[u]))
            .collect();
        let edges = pairs(layout.len())
            .map(|(s, t)| {
                let ((p, u), (q, v)) = (layout[s], layout[t]);
                if p == q {
                    inners[p].label(u, v)
                } else {
                    outer.label(p, q)
                }
            })
            .collect();
        (vertices, edges)
    }

    fn check_composable(&self, outer: &Thm4El, inners: &[Thm4El]) -> Result<()> {
        if outer.k() != inners.len() {
            return Err(Error::ArityMismatch(format!("outer arity {} with {} inputs", outer.k(), inners.len())));
        }
        for el in std::iter::once(outer).chain(inners) {
            self.check(el)?;
        }
        Ok(())
    }

    /// Composes after replacing every absent label by a random element of
    /// `X`, i.e. on an arbitrary representative of each class.
    pub fn compose_representatives<R: Rng>(&self, outer: &Thm4El, inners: &[Thm4El], rng: &mut R) -> Result<Thm4El> {
        self.check_composable(outer, inners)?;
        let mut fill = |el: &Thm4El| -> Thm4El {
            let edges = el
                .edges
                .iter()
                .map(|l| Some(l.unwrap_or_else(|| rng.gen_range(0..self.x.len()))))
                .collect();
            Thm4El { edges, ..el.clone() }
        };
        let outer = fill(outer);
        let inners: Vec<Thm4El> = inners.iter().map(&mut fill).collect();
        let (vertices, edges) = self.raw_compose(&outer, &inners);
        Thm4El::normalize(self.m, vertices, edges)
    }

    /// The inclusion of `C_m`: vertex `i` is cube `i`, no edge labels.
    pub fn include_cubes(&self, cfg: &CubeConfig) -> Result<Thm4El> {
        if cfg.n() != self.m {
            return Err(Error::InvalidElement(format!("{cfg:?} is not in C{}", self.m)));
        }
        cfg.check_disjoint()?;
        Thm4El::normalize(self.m, cfg.cubes().to_vec(), vec![None; edge_count(cfg.k())])
    }

    /// The inclusion of `RX`: every vertex is the unit cube.
    pub fn include_labels(&self, f: &REdgeLabelling<usize>) -> Result<Thm4El> {
        if f.labels().iter().any(|&l| l >= self.x.len()) {
            return Err(Error::InvalidElement(format!("{f:?} has a label outside X")));
        }
        Thm4El::normalize(
            self.m,
            vec![CubeN::full(self.m); f.k()],
            f.labels().iter().map(|&l| Some(l)).collect(),
        )
    }

    pub fn random_labels<R: Rng>(&self, k: usize, rng: &mut R) -> REdgeLabelling<usize> {
        let labels = (0..edge_count(k)).map(|_| rng.gen_range(0..self.x.len())).collect();
        REdgeLabelling::new(k, labels).expect("edge count")
    }

    /// A random element: vertex cubes either a configuration or an
    /// arbitrary tuple, labels drawn on the overlapping edges.
    pub fn random<R: Rng>(&self, k: usize, rng: &mut R) -> Thm4El {
        let vertices = if rng.gen_bool(0.5) {
            random_config(self.m, k, rng).cubes().to_vec()
        } else {
            random_tuple(self.m, k, rng).cubes().to_vec()
        };
        let edges = (0..edge_count(k)).map(|_| Some(rng.gen_range(0..self.x.len()))).collect();
        Thm4El::normalize(self.m, vertices, edges).expect("all labels present")
    }
}

impl Operad for Thm4Operad {
    type El = Thm4El;

    fn arity(&self, x: &Thm4El) -> usize {
        x.k()
    }

    fn unit(&self) -> Thm4El {
        Thm4El {
            m: self.m,
            vertices: vec![CubeN::full(self.m)],
            edges: Vec::new(),
        }
    }

    fn point(&self) -> Thm4El {
        Thm4El {
            m: self.m,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Absent labels stay absent: every edge they would reach joins two
    /// cubes inside disjoint cubes, so normalizing drops it anyway.
    fn compose(&self, outer: &Thm4El, inners: &[Thm4El]) -> Result<Thm4El> {
        self.check_composable(outer, inners)?;
        let (vertices, edges) = self.raw_compose(outer, inners);
        Thm4El::normalize(self.m, vertices, edges)
    }

    fn act(&self, x: &Thm4El, g: &Perm) -> Thm4El {
        let k = x.k();
        let mut edges = vec![None; edge_count(k)];
        for ((a, b), l) in pairs(k).zip(&x.edges) {
            let (ga, gb) = (g.apply(a), g.apply(b));
            edges[pair_index(k, ga.min(gb), ga.max(gb))] = if ga < gb { *l } else { l.map(|l| self.x.bar(&l)) };
        }
        Thm4El {
            m: x.m,
            vertices: g.push(&x.vertices),
            edges,
        }
    }

    fn degeneracy(&self, x: &Thm4El, i: usize) -> Thm4El {
        let keep: Vec<usize> = (0..x.k()).filter(|&v| v != i).collect();
        Thm4El {
            m: x.m,
            vertices: keep.iter().map(|&v| x.vertices[v].clone()).collect(),
            edges: pairs(keep.len()).map(|(a, b)| x.label(keep[a], keep[b])).collect(),
        }
    }
}

/// Both sides of the interchange square for the two inclusions, and the
/// explicit labelling both should equal: vertex `(i, j)` carries `α_i`,
/// edge `(i, j₁)(i, j₂)` carries `β(j₁, j₂)`, other edges nothing.
#[derive(Debug, Clone)]
pub struct Thm4Chase {
    pub interchange: Interchange<Thm4El>,
    pub expected: Thm4El,
}

impl Thm4Chase {
    pub fn holds(&self) -> bool {
        self.interchange.equal && self.interchange.lhs == self.expected
    }
}

pub fn thm4_chase(op: &Thm4Operad, alpha: &CubeConfig, beta: &REdgeLabelling<usize>) -> Result<Thm4Chase> {
    let a = op.include_cubes(alpha)?;
    let b = op.include_labels(beta)?;
    let interchange = interchange_check(op, &a, &b)?;
    let (k, l) = (alpha.k(), beta.k());
    let t = tau_perm(k, l);
    let mut vertices = vec![CubeN::full(op.m); k * l];
    let mut edges = vec![None; edge_count(k * l)];
    for i in 0..k {
        for j in 0..l {
            vertices[t.lex(i, j)] = alpha.cube(i).clone();
        }
        for (j1, j2) in pairs(l) {
            edges[pair_index(k * l, t.lex(i, j1), t.lex(i, j2))] = Some(*beta.canonical(j1, j2));
        }
    }
    let expected = Thm4El::normalize(op.m, vertices, edges)?;
    Ok(Thm4Chase { interchange, expected })
}

pub const THM4_CHECKS: [&str; 5] = [
    "normal form closure",
    "representative independence",
    "unit",
    "equivariance",
    "interchange chase",
];

/// Sampled properties of `C_m ⊗̃ RX`; each case also composes
/// `representatives` random representatives.
pub fn thm4_checks(
    m: usize,
    x: &FiniteZ2Set,
    max_k: usize,
    representatives: usize,
    samples: u64,
    seed: u64,
) -> Vec<AxiomCheck> {
    let op = Thm4Operad::new(m, x.clone());
    sampled_checks(&THM4_CHECKS, samples, seed, |rng, rec| {
        let k = rng.gen_range(1..=max_k);
        let outer = op.random(k, rng);
        let inners: Vec<Thm4El> = (0..k).map(|_| op.random(rng.gen_range(0..=max_k), rng)).collect();
        let composed = op.compose(&outer, &inners);
        let ok = matches!(&composed, Ok(c) if c.is_normal());
        rec.record(0, ok, || format!("{outer:?} ∘ {inners:?} = {composed:?}"));
        if let Ok(c) = &composed {
            for _ in 0..representatives {
                let other = op.compose_representatives(&outer, &inners, rng);
                rec.record(1, other.as_ref().ok() == Some(c), || {
                    format!("{outer:?} ∘ {inners:?}: {c:?} vs {other:?}")
                });
            }
        }
        let unit_ok = op.compose(&outer, &vec![op.unit(); k]).ok().as_ref() == Some(&outer)
            && op.compose(&op.unit(), std::slice::from_ref(&outer)).ok().as_ref() == Some(&outer);
        rec.record(2, unit_ok, || format!("{outer:?}"));
        let perms = Perm::all(k);
        let g = &perms[rng.gen_range(0..perms.len())];
        let sizes: Vec<usize> = inners.iter().map(Thm4El::k).collect();
        let lhs = op.compose(&op.act(&outer, g), &g.push(&inners));
        let rhs = composed.as_ref().map(|c| op.act(c, &g.block_permutation(&sizes)));
        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
        rec.record(3, ok, || format!("{g} on {outer:?} ∘ {inners:?}"));
        let alpha = random_config(m, rng.gen_range(0..=max_k), rng);
        let beta = op.random_labels(rng.gen_range(0..=max_k), rng);
        let chase = thm4_chase(&op, &alpha, &beta);
        let ok = matches!(&chase, Ok(c) if c.holds());
        rec.record(4, ok, || format!("α = {alpha:?}, β = {beta:?}: {chase:?}"));
    })
}

/// `K⁽ⁿ⁾(2)` as a Z/2-set: `2(c−1)` is `1 → 2` of color `c`, `2(c−1)+1`
/// its reverse. For `n = 1` this is `S⁰`.
pub fn color_pairs(n: u8) -> FiniteZ2Set {
    let names = (1..=n).flat_map(|c| [format!("{c}+"), format!("{c}-")]).collect();
    let swap = (0..2 * n as usize).map(|i| i ^ 1).collect();
    FiniteZ2Set::new(names, swap).expect("free involution")
}

/// `(forward, color)` of a [`color_pairs`] label on the edge `a → b`.
pub fn color_pair_label(l: usize) -> (bool, u8) {
    (l % 2 == 0, (l / 2 + 1) as u8)
}

/// The cell of `λ ∈ K⁽ᵐ⁺ⁿ⁾(k)` in `C_m ⊗̃ R_{K⁽ⁿ⁾}X`, `X` = [`color_pairs`]:
/// the vertex cubes lie in the cell of `λ₁`, and every stored label of an
/// edge carrying color `c > m` in `λ` is below `(c − m, orientation)`.
pub fn thm4_cell_contains(lambda: &PartialGraphLabel, el: &Thm4El) -> Result<bool> {
    let m = u8::try_from(el.m).map_err(|_| Error::InvalidElement("dimension exceeds 255".into()))?;
    let (low, high) = split_colors(lambda, m)?;
    if !crate::cubes::cells::cell_contains(&low, &CubeConfig::tuple(el.m, el.vertices.clone())?)? {
        return Ok(false);
    }
    for (a, b) in pairs(el.k()) {
        let (Some((forward, color)), Some(l)) = (high.arrow(a, b), el.label(a, b)) else {
            continue;
        };
        let (l_forward, l_color) = color_pair_label(l);
        if !(l_color < color || (l_color == color && l_forward == forward)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn acyclic_orientation_count(k: usize, graph: &[(usize, usize)]) -> u64 {
    (0u64..1 << graph.len())
        .filter(|mask| {
            let mut g = PartialGraphLabel::top(k, 1);
            for (bit, &(a, b)) in graph.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    g.set(a, b, Some(1));
                } else {
                    g.set(b, a, Some(1));
                }
            }
            g.is_acyclic()
        })
        .count() as u64
}

/// With `X = S⁰` and `A = C₁`: over a fixed vertex tuple, the classes of
/// (vertex tuple, linear order) are the acyclic orientations of the graph
/// of overlapping intervals. Counted on both sides for sampled tuples.
pub fn s0_identification_check(k: usize, samples: u64, seed: u64) -> AxiomCheck {
    let orders = Perm::all(k);
    let checks = sampled_checks(&["S0 classes are acyclic orientations"], samples, seed, |rng, rec| {
        let vertices = random_tuple(1, k, rng).cubes().to_vec();
        let overlap: Vec<(usize, usize)> = pairs(k)
            .filter(|&(a, b)| !disjoint_interiors(&vertices[a], &vertices[b]))
            .collect();
        let mut classes = HashSet::new();
        let mut acyclic = true;
        for g in &orders {
            // position g(v) in the order: "+" on a < b when a comes first
            let labels = pairs(k).map(|(a, b)| Some(if g.apply(a) < g.apply(b) { 0 } else { 1 })).collect();
            let el = Thm4El::normalize(1, vertices.clone(), labels).expect("total labels");
            let mut orient = PartialGraphLabel::top(k, 1);
            for (a, b) in pairs(k) {
                if let Some(l) = el.label(a, b) {
                    let (s, t) = if l == 0 { (a, b) } else { (b, a) };
                    orient.set(s, t, Some(1));
                }
            }
            acyclic &= orient.is_acyclic();
            classes.insert(el);
        }
        let expected = acyclic_orientation_count(k, &overlap);
        rec.record(0, acyclic && classes.len() as u64 == expected, || {
            format!("{vertices:?}: {} classes, {expected} acyclic orientations", classes.len())
        });
    });
    checks.into_iter().next().expect("one check")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn iv(a: i64, b: i64, d: i64) -> CubeN {
        CubeN::from_fractions(&[(a, b, d)]).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let halves = vec![iv(0, 1, 2), iv(1, 2, 2)];
        let el = Thm4El::normalize(1, halves, vec![Some(0)]).unwrap();
        assert_eq!(el.edges, vec![None]);
        let full = vec![iv(0, 1, 1); 3];
        let el = Thm4El::normalize(1, full, vec![Some(0), Some(1), Some(0)]).unwrap();
        assert_eq!(el.edges, vec![Some(0), Some(1), Some(0)]);
        assert!(Thm4El::normalize(1, vec![iv(0, 1, 1)], vec![]).unwrap().edges.is_empty());
        assert!(Thm4El::normalize(1, vec![iv(0, 1, 1); 2], vec![None]).is_err());
    }

    #[test]
    fn units_and_inclusions() {
        let op = Thm4Operad::new(1, FiniteZ2Set::s0());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let el = op.random(3, &mut rng);
        assert_eq!(op.compose(&el, &vec![op.unit(); 3]).unwrap(), el);
        assert_eq!(op.compose(&op.unit(), std::slice::from_ref(&el)).unwrap(), el);
        let cfg = random_config(1, 3, &mut rng);
        assert!(op.include_cubes(&cfg).unwrap().edges.iter().all(Option::is_none));
        let f = op.random_labels(3, &mut rng);
        let g = op.include_labels(&f).unwrap();
        assert_eq!(g.edges, f.labels().iter().map(|&l| Some(l)).collect::<Vec<_>>());
    }

    #[test]
    fn chase_matches_vertex_rule() {
        let op = Thm4Operad::new(1, FiniteZ2Set::free(2));
        let alpha = CubeConfig::new(1, vec![iv(1, 2, 2), iv(0, 1, 3)]).unwrap();
        let beta = REdgeLabelling::new(3, vec![0, 3, 2]).unwrap();
        let chase = thm4_chase(&op, &alpha, &beta).unwrap();
        assert!(chase.holds(), "{chase:?}");
        // vertex (2, 3) is sixth in lexicographic order and carries α_2
        assert_eq!(chase.expected.vertices[5], *alpha.cube(1));
        assert_eq!(chase.expected.label(0, 1), Some(0));
        assert_eq!(chase.expected.label(0, 3), None);
    }

    #[test]
    fn sampled_properties_hold() {
        for x in [FiniteZ2Set::s0(), FiniteZ2Set::free(2)] {
            for c in thm4_checks(1, &x, 3, 3, 200, 7) {
                assert!(c.passed, "{c:?}");
            }
        }
        for c in thm4_checks(2, &FiniteZ2Set::s0(), 3, 2, 100, 8) {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn s0_classes_count() {
        for k in 1..=4 {
            let c = s0_identification_check(k, 50, 9);
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn cell_of_linear_order() {
        let x = color_pairs(1);
        assert_eq!(x.name(0), "1+");
        // two overlapping vertices, edge labelled 1 → 2 in X: lies in the
        // cell of 1 →² 2 and not in that of 2 →² 1
        let el = Thm4El::normalize(1, vec![iv(0, 1, 1), iv(0, 1, 2)], vec![Some(0)]).unwrap();
        let up = PartialGraphLabel::from_arrows(2, 2, &[(1, 2, 2)]).unwrap();
        let down = PartialGraphLabel::from_arrows(2, 2, &[(2, 1, 2)]).unwrap();
        assert!(thm4_cell_contains(&up, &el).unwrap());
        assert!(!thm4_cell_contains(&down, &el).unwrap());
        // color 1 needs the vertex cubes separated
        let low = PartialGraphLabel::from_arrows(2, 2, &[(1, 2, 1)]).unwrap();
        assert!(!thm4_cell_contains(&low, &el).unwrap());
    }
}
