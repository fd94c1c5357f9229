//! Cells of `Cₙ(k)` indexed by `K̂⁽ⁿ⁾(k)`: an arrow `s → t` of color `i`
//! asks for the cubes `s, t` to be separated by a hyperplane normal to an
//! axis `j < i`, or to axis `i` with `s` on the negative side.

use crate::error::{Error, Result};
use crate::graphs::PartialGraphLabel;

use super::{CubeConfig, CubeN};

/// An axis (1-based) normal to a separating hyperplane, and which of the
/// two cubes (0 or 1) lies on its negative side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Separation {
    pub axis: usize,
    pub negative: usize,
}

pub fn separation_axes(c1: &CubeN, c2: &CubeN) -> Vec<Separation> {
    (0..c1.dim())
        .filter_map(|j| {
            if c1.hi(j) <= c2.lo(j) {
                Some(Separation { axis: j + 1, negative: 0 })
            } else if c2.hi(j) <= c1.lo(j) {
                Some(Separation { axis: j + 1, negative: 1 })
            } else {
                None
            }
        })
        .collect()
}

/// Whether the tuple `cfg` lies in the cell of `lambda`.
pub fn cell_contains(lambda: &PartialGraphLabel, cfg: &CubeConfig) -> Result<bool> {
    if lambda.k() != cfg.k() {
        return Err(Error::ArityMismatch(format!("cell of arity {} vs {} cubes", lambda.k(), cfg.k())));
    }
    for s in 0..cfg.k() {
        for t in s + 1..cfg.k() {
            let Some((forward, color)) = lambda.arrow(s, t) else {
                continue;
            };
            let source = if forward { 0 } else { 1 };
            let color = color as usize;
            let ok = separation_axes(cfg.cube(s), cfg.cube(t))
                .iter()
                .any(|sep| sep.axis < color || (sep.axis == color && sep.negative == source));
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The least total labelling whose cell contains `cfg`.
///
/// The edgewise least labels (color the smallest separating axis, arrow
/// from the negative side) are below every containing label, so when they
/// are acyclic they form the answer. They can be cyclic (three cubes
/// separated pairwise on different axes in a rotating pattern); then the
/// containing total labellings are searched edge by edge for a least one,
/// and `NoLeastCell` is returned if there is none.
pub fn min_cell(cfg: &CubeConfig) -> Result<PartialGraphLabel> {
    let g = min_edge_labels(cfg)?;
    if g.is_acyclic() {
        return Ok(g);
    }
    let containing = containing_total_cells(cfg, crate::graphs::DEFAULT_ENUMERATION_BUDGET)?;
    containing
        .iter()
        .find(|l| containing.iter().all(|m| l.leq(m).unwrap_or(false)))
        .cloned()
        .ok_or_else(|| {
            Error::NoLeastCell(format!(
                "edgewise minimum {g} is cyclic and {} containing cells have no least element, for {cfg:?}",
                containing.len()
            ))
        })
}

/// Every total labelling whose cell contains `cfg`.
pub fn containing_total_cells(cfg: &CubeConfig, budget: u64) -> Result<Vec<PartialGraphLabel>> {
    let n = u8::try_from(cfg.n()).map_err(|_| Error::InvalidElement("dimension exceeds 255".into()))?;
    let k = cfg.k();
    let edge_list: Vec<(usize, usize)> = crate::edges::pairs(k).collect();
    // per edge, the labels (source, target, color) compatible with cfg
    let options: Vec<Vec<(usize, usize, u8)>> = edge_list
        .iter()
        .map(|&(s, t)| {
            let seps = separation_axes(cfg.cube(s), cfg.cube(t));
            let mut v = Vec::new();
            for color in 1..=n {
                for (from, to, src) in [(s, t, 0), (t, s, 1)] {
                    if seps
                        .iter()
                        .any(|sep| sep.axis < color as usize || (sep.axis == color as usize && sep.negative == src))
                    {
                        v.push((from, to, color));
                    }
                }
            }
            v
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = PartialGraphLabel::top(k, n);
    fn rec(
        idx: usize,
        options: &[Vec<(usize, usize, u8)>],
        cur: &mut PartialGraphLabel,
        out: &mut Vec<PartialGraphLabel>,
        budget: u64,
    ) -> Result<()> {
        if !cur.is_acyclic() {
            return Ok(());
        }
        if idx == options.len() {
            if out.len() as u64 >= budget {
                return Err(Error::BudgetExceeded {
                    what: "containing cells".into(),
                    needed: budget + 1,
                    budget,
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for &(from, to, color) in &options[idx] {
            cur.set(from, to, Some(color));
            rec(idx + 1, options, cur, out, budget)?;
        }
        if let Some(&(from, to, _)) = options[idx].first() {
            cur.set(from, to, None);
        }
        Ok(())
    }
    rec(0, &options, &mut cur, &mut out, budget)?;
    Ok(out)
}

/// The edgewise least labels, whether or not they form a cycle.
pub fn min_edge_labels(cfg: &CubeConfig) -> Result<PartialGraphLabel> {
    cfg.check_disjoint()?;
    let n = u8::try_from(cfg.n()).map_err(|_| Error::InvalidElement("dimension exceeds 255".into()))?;
    let mut g = PartialGraphLabel::top(cfg.k(), n);
    for s in 0..cfg.k() {
        for t in s + 1..cfg.k() {
            let sep = separation_axes(cfg.cube(s), cfg.cube(t))[0];
            let (from, to) = if sep.negative == 0 { (s, t) } else { (t, s) };
            g.set(from, to, Some(sep.axis as u8));
        }
    }
    Ok(g)
}
