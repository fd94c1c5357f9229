//! Monoids and the atomic operad `R₁M`, with `R₁M(k) = Mᵏ` and composition
//! by left multiplication of each block.

use std::fmt::Debug;
use std::hash::Hash;
use std::io::Read;

use crate::error::{Error, Result};
use crate::operad::{FiniteOperad, Operad};
use crate::perm::Perm;

pub trait Monoid {
    type M: Clone + Eq + Hash + Debug + Send + Sync;

    fn one(&self) -> Self::M;

    fn mul(&self, a: &Self::M, b: &Self::M) -> Self::M;

    fn pow(&self, a: &Self::M, e: usize) -> Self::M {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }
}

/// A finite monoid given by its Cayley table. Elements are indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    one: usize,
}

impl FiniteMonoid {
    /// Checks closure, associativity and finds the two-sided unit.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteMonoid> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotMonoid("empty carrier".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::NotMonoid(format!("table is not {n}×{n}")));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::NotMonoid("table entry out of range".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotMonoid(format!(
                            "({0}{1}){2} ≠ {0}({1}{2})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let one = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotMonoid("no two-sided unit".into()))?;
        Ok(FiniteMonoid { names, table, one })
    }

    /// `Z/n` written multiplicatively: `1, a, a², …`.
    pub fn cyclic(n: usize) -> FiniteMonoid {
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteMonoid::new(names, table).expect("cyclic group")
    }

    /// `{1, a}` with `a·a = a`.
    pub fn idempotent() -> FiniteMonoid {
        FiniteMonoid::new(vec!["1".into(), "a".into()], vec![vec![0, 1], vec![1, 1]]).expect("monoid")
    }

    /// Reads a Cayley table: a header row of element names, then one row per
    /// element. A row may start with its own name, in which case the header
    /// starts with an empty corner cell.
    pub fn from_csv<R: Read>(reader: R) -> Result<FiniteMonoid> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let rows: Vec<Vec<String>> = rdr
            .records()
            .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<_, _>>()?;
        let (header, body) = rows.split_first().ok_or_else(|| Error::Parse("empty CSV".into()))?;
        let labelled = header.first().is_some_and(|c| c.is_empty());
        let names: Vec<String> = if labelled { header[1..].to_vec() } else { header.clone() };
        let n = names.len();
        if body.len() != n {
            return Err(Error::Parse(format!("{n} names but {} rows", body.len())));
        }
        let index = |s: &str| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::Parse(format!("unknown element {s:?}")))
        };
        let mut table = vec![Vec::new(); n];
        for (i, row) in body.iter().enumerate() {
            let (row_index, cells) = if labelled {
                let (label, rest) = row.split_first().ok_or_else(|| Error::Parse("empty row".into()))?;
                (index(label)?, rest)
            } else {
                (i, row.as_slice())
            };
            if cells.len() != n {
                return Err(Error::Parse(format!("row {} has {} entries, expected {n}", i + 1, cells.len())));
            }
            table[row_index] = cells.iter().map(|c| index(c)).collect::<Result<_>>()?;
        }
        FiniteMonoid::new(names, table)
    }

    pub fn from_csv_str(s: &str) -> Result<FiniteMonoid> {
        FiniteMonoid::from_csv(s.as_bytes())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push(',');
        out.push_str(&self.names.join(","));
        out.push('\n');
        for (i, row) in self.table.iter().enumerate() {
            out.push_str(&self.names[i]);
            for &v in row {
                out.push(',');
                out.push_str(&self.names[v]);
            }
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }
}

impl Monoid for FiniteMonoid {
    type M = usize;

    fn one(&self) -> usize {
        self.one
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
}

/// `R₁M`. Elements are `k`-tuples of monoid elements.
#[derive(Debug, Clone)]
pub struct AtomicOperad<M> {
    pub monoid: M,
}

impl<M: Monoid> AtomicOperad<M> {
    pub fn new(monoid: M) -> Self {
        AtomicOperad { monoid }
    }
}

impl<M: Monoid> Operad for AtomicOperad<M> {
    type El = Vec<M::M>;

    fn arity(&self, x: &Vec<M::M>) -> usize {
        x.len()
    }

    fn unit(&self) -> Vec<M::M> {
        vec![self.monoid.one()]
    }

    fn point(&self) -> Vec<M::M> {
        Vec::new()
    }

    /// `(m_1 x_11, …, m_1 x_1i₁, m_2 x_21, …)`.
    fn compose(&self, outer: &Vec<M::M>, inners: &[Vec<M::M>]) -> Result<Vec<M::M>> {
        if outer.len() != inners.len() {
            return Err(Error::ArityMismatch(format!(
                "outer arity {} with {} inputs",
                outer.len(),
                inners.len()
            )));
        }
        Ok(outer
            .iter()
            .zip(inners)
            .flat_map(|(m, xs)| xs.iter().map(move |x| self.monoid.mul(m, x)))
            .collect())
    }

    fn act(&self, x: &Vec<M::M>, g: &Perm) -> Vec<M::M> {
        g.push(x)
    }

    fn degeneracy(&self, x: &Vec<M::M>, i: usize) -> Vec<M::M> {
        let mut y = x.clone();
        y.remove(i);
        y
    }
}

impl FiniteOperad for AtomicOperad<FiniteMonoid> {
    fn carrier(&self, k: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.monoid.len();
        let total = (n as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        if total > crate::graphs::DEFAULT_ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded {
                what: format!("R1M({k}) tuples"),
                needed: total,
                budget: crate::graphs::DEFAULT_ENUMERATION_BUDGET,
            });
        }
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..n).map(move |m| {
                        let mut t = t.clone();
                        t.push(m);
                        t
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{verify_operad, VerifyOptions};

    #[test]
    fn cayley_tables() {
        let z3 = FiniteMonoid::cyclic(3);
        assert_eq!(z3.mul(&1, &2), 0);
        assert_eq!(z3.pow(&1, 3), 0);
        let e = FiniteMonoid::idempotent();
        assert_eq!(e.mul(&1, &1), 1);
        assert!(FiniteMonoid::new(vec!["x".into(), "y".into()], vec![vec![1, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let m = FiniteMonoid::idempotent();
        assert_eq!(FiniteMonoid::from_csv_str(&m.to_csv()).unwrap(), m);
        let bare = "1,a\n1,a\na,a\n";
        assert_eq!(FiniteMonoid::from_csv_str(bare).unwrap(), m);
        assert!(FiniteMonoid::from_csv_str("1,a\n1,a\n").is_err());
    }

    #[test]
    fn block_left_multiplication() {
        let r1 = AtomicOperad::new(FiniteMonoid::cyclic(2));
        // (a; (a, 1)) = (1, a)
        assert_eq!(r1.compose(&vec![1], &[vec![1, 0]]).unwrap(), vec![0, 1]);
        let ones = vec![0, 0];
        assert_eq!(r1.compose(&ones, &[vec![1], vec![0, 1]]).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn axioms_hold() {
        for m in [FiniteMonoid::cyclic(2), FiniteMonoid::cyclic(3), FiniteMonoid::idempotent()] {
            let report = verify_operad(&AtomicOperad::new(m), VerifyOptions::exhaustive(3)).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }
}
