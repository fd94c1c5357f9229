//! Integer homology of chain complexes via Smith normal form.
//!
//! Boundary matrices are reduced in two phases. A sparse phase pivots on unit
//! entries (each contributes an invariant factor 1) using checked `i64`
//! arithmetic, restarting in `BigInt` if anything overflows. Whatever has no
//! unit pivot left is handed to a dense `BigInt` Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Column-major sparse integer matrix; each column sorted by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn from_columns(rows: usize, mut columns: Vec<Vec<(u32, i64)>>) -> SparseMatrix {
        for c in &mut columns {
            c.retain(|e| e.1 != 0);
            c.sort_unstable_by_key(|e| e.0);
        }
        SparseMatrix { rows, columns }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> SparseMatrix {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|j| {
                (0..rows)
                    .filter(|&i| dense[i][j] != 0)
                    .map(|i| (i as u32, dense[i][j]))
                    .collect()
            })
            .collect();
        SparseMatrix { rows, columns }
    }

    pub fn zeros(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `self · other`, exact. `None` on `i64` overflow.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols(), other.rows());
        let mut out = Vec::with_capacity(other.cols());
        for col in &other.columns {
            let mut acc: std::collections::BTreeMap<u32, i64> = Default::default();
            for &(k, v) in col {
                for &(i, w) in &self.columns[k as usize] {
                    let e = acc.entry(i).or_insert(0);
                    *e = e.checked_add(v.checked_mul(w)?)?;
                }
            }
            out.push(acc.into_iter().filter(|e| e.1 != 0).collect());
        }
        Some(SparseMatrix {
            rows: self.rows,
            columns: out,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// Integer chain complex: `boundaries[d-1]` is `∂_d : C_d → C_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexZ {
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplexZ {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<ChainComplexZ> {
        if !ranks.is_empty() && boundaries.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch {
                degree: boundaries.len(),
                detail: format!("{} chain groups but {} boundary maps", ranks.len(), boundaries.len()),
            });
        }
        for (i, b) in boundaries.iter().enumerate() {
            let d = i + 1;
            if b.rows() != ranks[d - 1] || b.cols() != ranks[d] {
                return Err(Error::DimensionMismatch {
                    degree: d,
                    detail: format!(
                        "∂_{d} is {}x{} but C_{} has rank {} and C_{d} has rank {}",
                        b.rows(),
                        b.cols(),
                        d - 1,
                        ranks[d - 1],
                        ranks[d]
                    ),
                });
            }
        }
        Ok(ChainComplexZ { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, d: usize) -> Option<&SparseMatrix> {
        d.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// Verifies `∂_d ∘ ∂_{d+1} = 0` everywhere.
    pub fn check_boundary_squared(&self) -> Result<()> {
        for i in 1..self.boundaries.len() {
            let prod = self.boundaries[i - 1].mul(&self.boundaries[i]);
            if !prod.is_some_and(|m| m.is_zero()) {
                return Err(Error::NonzeroBoundarySquare(i));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// Betti numbers and torsion coefficients, one entry per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// Betti numbers of reduced homology (degree 0 lowered by one for a
    /// nonempty space).
    pub fn reduced_betti(&self) -> Vec<usize> {
        let mut b = self.betti.clone();
        if let Some(b0) = b.first_mut() {
            *b0 = b0.saturating_sub(1);
        }
        while b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    /// Homology of a point: reduced homology vanishes entirely.
    pub fn is_acyclic(&self) -> bool {
        self.betti.first() == Some(&1) && self.reduced_betti().is_empty() && self.is_torsion_free()
    }

    /// Homology of the `d`-sphere (`d ≥ 0`; `S⁰` is two points).
    pub fn is_sphere(&self, d: usize) -> bool {
        let mut expect = vec![0; d + 1];
        if d == 0 {
            expect[0] = 2;
        } else {
            expect[0] = 1;
            expect[d] = 1;
        }
        self.betti == expect && self.is_torsion_free()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Vec<Value>> = self
            .torsion
            .iter()
            .map(|t| t.iter().map(bigint_json).collect())
            .collect();
        json!({ "betti": self.betti, "torsion": torsion })
    }

    pub fn from_json(v: &Value) -> Result<HomologyResult> {
        let betti = v["betti"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing betti".into()))?
            .iter()
            .map(|b| b.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse("bad betti".into())))
            .collect::<Result<Vec<_>>>()?;
        let torsion = v["torsion"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing torsion".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("bad torsion row".into()))?
                    .iter()
                    .map(|t| match t {
                        Value::Number(n) => n
                            .as_u64()
                            .map(BigInt::from)
                            .ok_or_else(|| Error::Parse("bad torsion".into())),
                        Value::String(s) => s.parse().map_err(|_| Error::Parse("bad torsion".into())),
                        _ => Err(Error::Parse("bad torsion".into())),
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HomologyResult { betti, torsion })
    }
}

fn bigint_json(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Rank and the invariant factors greater than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithSummary {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Integer homology of a chain complex.
pub fn homology(c: &ChainComplexZ) -> Result<HomologyResult> {
    c.check_boundary_squared()?;
    let summaries: Vec<SmithSummary> = c.boundaries.par_iter().map(smith_summary).collect();
    let top = c.ranks.len();
    let mut betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for d in 0..top {
        let rank_out = if d >= 1 { summaries[d - 1].rank } else { 0 };
        let rank_in = summaries.get(d).map_or(0, |s| s.rank);
        betti.push(c.ranks[d] - rank_out - rank_in);
        torsion.push(summaries.get(d).map_or_else(Vec::new, |s| s.torsion.clone()));
    }
    while betti.len() > 1 && betti.last() == Some(&0) && torsion.last().is_some_and(Vec::is_empty) {
        betti.pop();
        torsion.pop();
    }
    if betti == [0] && torsion.iter().all(Vec::is_empty) && c.ranks.iter().all(|&r| r == 0) {
        betti.clear();
        torsion.clear();
    }
    Ok(HomologyResult { betti, torsion })
}

trait Coef: Clone + std::fmt::Debug + Send {
    fn from_i64(v: i64) -> Self;
    fn vanishes(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `a - f·b` where `f = c / p` for a unit `p`.
    fn sub_scaled(a: &Self, c: &Self, p: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coef for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_scaled(a: &Self, c: &Self, p: &Self, b: &Self) -> Option<Self> {
        let f = c.checked_mul(*p)?;
        a.checked_sub(f.checked_mul(*b)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_scaled(a: &Self, c: &Self, p: &Self, b: &Self) -> Option<Self> {
        Some(a - c * p * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Rank and torsion of a single integer matrix.
pub fn smith_summary(m: &SparseMatrix) -> SmithSummary {
    match sparse_phase::<i64>(m) {
        Some(s) => s,
        None => sparse_phase::<BigInt>(m).expect("BigInt arithmetic cannot overflow"),
    }
}

fn sparse_phase<T: Coef>(m: &SparseMatrix) -> Option<SmithSummary> {
    let mut cols: Vec<Vec<(u32, T)>> = m
        .columns
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, T::from_i64(v))).collect())
        .collect();
    let ncols = cols.len();
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &(r, _) in c {
            row_cols[r as usize].push(j as u32);
        }
    }
    let mut col_alive = vec![true; ncols];
    let mut row_alive = vec![true; m.rows];
    let mut rank = 0usize;
    let mut scratch: Vec<(u32, T)> = Vec::new();

    loop {
        let mut progressed = false;
        let mut order: Vec<usize> = (0..ncols).filter(|&j| col_alive[j] && !cols[j].is_empty()).collect();
        order.sort_by_key(|&j| (cols[j].len(), j));
        for j in order {
            if !col_alive[j] || cols[j].is_empty() {
                continue;
            }
            // unit entry whose row touches the fewest live columns
            let mut best: Option<(usize, u32)> = None;
            for (idx, (r, v)) in cols[j].iter().enumerate() {
                if v.is_unit() {
                    let rc = &mut row_cols[*r as usize];
                    rc.retain(|&c| col_alive[c as usize] && cols[c as usize].binary_search_by_key(r, |e| e.0).is_ok());
                    let cost = rc.len();
                    if best.is_none_or(|(bi, _)| cost < row_cols[cols[j][bi].0 as usize].len()) {
                        best = Some((idx, *r));
                    }
                }
            }
            let Some((pidx, prow)) = best else { continue };
            let pivot_val = cols[j][pidx].1.clone();
            let pivot_col = std::mem::take(&mut cols[j]);
            col_alive[j] = false;
            row_alive[prow as usize] = false;
            let others: Vec<u32> = row_cols[prow as usize].clone();
            for &c2 in &others {
                let c2 = c2 as usize;
                if c2 == j || !col_alive[c2] {
                    continue;
                }
                let Ok(pos) = cols[c2].binary_search_by_key(&prow, |e| e.0) else { continue };
                let coeff = cols[c2][pos].1.clone();
                // c2 <- c2 - (coeff / pivot) * pivot_col, merged by row
                scratch.clear();
                let a = &cols[c2];
                let (mut ia, mut ib) = (0, 0);
                while ia < a.len() || ib < pivot_col.len() {
                    let ra = a.get(ia).map_or(u32::MAX, |e| e.0);
                    let rb = pivot_col.get(ib).map_or(u32::MAX, |e| e.0);
                    if ra < rb {
                        scratch.push(a[ia].clone());
                        ia += 1;
                    } else if rb < ra {
                        let v = T::sub_scaled(&T::from_i64(0), &coeff, &pivot_val, &pivot_col[ib].1)?;
                        if !v.vanishes() {
                            scratch.push((rb, v));
                            row_cols[rb as usize].push(c2 as u32);
                        }
                        ib += 1;
                    } else {
                        let v = T::sub_scaled(&a[ia].1, &coeff, &pivot_val, &pivot_col[ib].1)?;
                        if !v.vanishes() {
                            scratch.push((ra, v));
                        }
                        ia += 1;
                        ib += 1;
                    }
                }
                std::mem::swap(&mut cols[c2], &mut scratch);
            }
            row_cols[prow as usize].clear();
            rank += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    // residual dense phase over live columns and rows
    let live_cols: Vec<usize> = (0..ncols).filter(|&j| col_alive[j] && !cols[j].is_empty()).collect();
    if live_cols.is_empty() {
        return Some(SmithSummary {
            rank,
            torsion: Vec::new(),
        });
    }
    let mut live_rows: Vec<u32> = live_cols
        .iter()
        .flat_map(|&j| cols[j].iter().map(|e| e.0))
        .filter(|&r| row_alive[r as usize])
        .collect();
    live_rows.sort_unstable();
    live_rows.dedup();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (cj, &j) in live_cols.iter().enumerate() {
        for (r, v) in &cols[j] {
            if let Ok(ri) = live_rows.binary_search(r) {
                dense[ri][cj] = v.to_big();
            }
        }
    }
    let factors = smith_diagonal(dense);
    rank += factors.len();
    let torsion = factors.into_iter().filter(|f| !f.is_one()).collect();
    Some(SmithSummary { rank, torsion })
}

/// Nonzero invariant factors (ascending, each dividing the next) of a dense
/// integer matrix.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of minimal nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    for j in t..cols {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    for i in t..rows {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // the pivot must divide the rest of the block
                let mut offender = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&a[i][j] % &p).is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    normalize_divisibility(diag)
}

fn normalize_divisibility(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_is_normalized() {
        let a = vec![big(&[2, 0]), big(&[0, 3])];
        assert_eq!(smith_diagonal(a), big(&[1, 6]));
    }

    #[test]
    fn smith_of_known_matrix() {
        // classic example with invariant factors 2, 6, 12
        let a = vec![big(&[2, 4, 4]), big(&[-6, 6, 12]), big(&[10, -4, -16])];
        assert_eq!(smith_diagonal(a), big(&[2, 6, 12]));
    }

    #[test]
    fn sparse_and_dense_agree() {
        let dense = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![1, 0, 0]];
        let s = smith_summary(&SparseMatrix::from_dense(&dense));
        let d = smith_diagonal(dense.iter().map(|r| big(r)).collect());
        assert_eq!(s.rank, d.len());
        assert_eq!(s.torsion, d.into_iter().filter(|x| !x.is_one()).collect::<Vec<_>>());
    }

    #[test]
    fn point_has_betti_one() {
        let c = ChainComplexZ::new(vec![1], vec![]).unwrap();
        let h = homology(&c).unwrap();
        assert_eq!(h.betti, vec![1]);
        assert!(h.is_acyclic());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = ChainComplexZ::new(vec![2, 1], vec![SparseMatrix::zeros(3, 1)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { degree: 1, .. }));
    }

    #[test]
    fn nonzero_square_rejected() {
        let d1 = SparseMatrix::from_dense(&[vec![1]]);
        let d2 = SparseMatrix::from_dense(&[vec![1]]);
        let c = ChainComplexZ::new(vec![1, 1, 1], vec![d1, d2]).unwrap();
        assert!(matches!(homology(&c), Err(Error::NonzeroBoundarySquare(1))));
    }

    #[test]
    fn projective_plane_torsion() {
        // minimal 6-vertex triangulation of RP^2
        let facets: Vec<Vec<u32>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 5, 1],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 1],
            vec![4, 5, 2],
            vec![5, 1, 3],
        ];
        let c = crate::complex::SimplicialComplex::from_facets(6, &facets).unwrap();
        let h = homology(&c.chain_complex()).unwrap();
        assert_eq!(h.betti, vec![1, 0]);
        assert_eq!(h.torsion, vec![vec![], vec![BigInt::from(2)]]);
        assert_eq!(h.euler_characteristic(), c.euler_characteristic());
    }

    #[test]
    fn json_roundtrip() {
        let h = HomologyResult {
            betti: vec![1, 0],
            torsion: vec![vec![BigInt::from(2)], vec![]],
        };
        assert_eq!(HomologyResult::from_json(&h.to_json()).unwrap(), h);
        assert_eq!(h.to_json().to_string(), r#"{"betti":[1,0],"torsion":[[2],[]]}"#);
    }
}
