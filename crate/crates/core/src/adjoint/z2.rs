//! Sets (and posets) with an involution `x ↦ x̄`.

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operad::{FiniteOperad, Operad};
use crate::perm::Perm;
use crate::poset::{check_order_preserving, FinPoset, Involution};

pub trait Z2Carrier {
    type Label: Clone + Eq + Hash + Debug + Send + Sync;

    fn bar(&self, x: &Self::Label) -> Self::Label;

    fn leq(&self, x: &Self::Label, y: &Self::Label) -> bool {
        x == y
    }

    fn is_poset(&self) -> bool {
        false
    }
}

pub trait FiniteZ2Carrier: Z2Carrier {
    fn elements(&self) -> Result<Vec<Self::Label>>;
}

/// A finite Z/2-set, optionally ordered. Labels are indices into `names`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteZ2Set {
    names: Vec<String>,
    swap: Involution,
    order: Option<FinPoset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2SetJson {
    pub elements: Vec<String>,
    pub swap: Vec<usize>,
}

impl FiniteZ2Set {
    pub fn new(names: Vec<String>, swap: Vec<usize>) -> Result<FiniteZ2Set> {
        if names.len() != swap.len() {
            return Err(Error::InvalidInvolution(format!(
                "{} elements but {} swap entries",
                names.len(),
                swap.len()
            )));
        }
        Ok(FiniteZ2Set {
            names,
            swap: Involution::new(swap)?,
            order: None,
        })
    }

    /// Attach a partial order; the involution must preserve it.
    pub fn with_order(mut self, order: FinPoset) -> Result<FiniteZ2Set> {
        if order.size() != self.names.len() {
            return Err(Error::InvalidElement("order size differs from carrier size".into()));
        }
        check_order_preserving(&order, self.swap.as_slice())?;
        self.order = Some(order);
        Ok(self)
    }

    /// `S⁰ = {+, −}` with the swap.
    pub fn s0() -> FiniteZ2Set {
        FiniteZ2Set::new(vec!["+".into(), "-".into()], vec![1, 0]).expect("valid")
    }

    /// `2m` points forming `m` free orbits `{2i, 2i+1}`.
    pub fn free(m: usize) -> FiniteZ2Set {
        let names = (0..2 * m).map(|i| format!("x{}{}", i / 2, if i % 2 == 0 { "" } else { "'" })).collect();
        FiniteZ2Set::new(names, (0..2 * m).map(|i| i ^ 1).collect()).expect("valid")
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
        self.names.iter().position(|n| n == name)
    }

    pub fn is_free(&self) -> bool {
        self.swap.is_free()
    }

    pub fn to_json(&self) -> Z2SetJson {
        Z2SetJson {
            elements: self.names.clone(),
            swap: self.swap.as_slice().to_vec(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<FiniteZ2Set> {
        let j: Z2SetJson = serde_json::from_str(s)?;
        FiniteZ2Set::new(j.elements, j.swap)
    }
}

impl Z2Carrier for FiniteZ2Set {
    type Label = usize;

    fn bar(&self, x: &usize) -> usize {
        self.swap.apply(*x)
    }

    fn leq(&self, x: &usize, y: &usize) -> bool {
        match &self.order {
            Some(p) => p.leq(*x, *y),
            None => x == y,
        }
    }

    fn is_poset(&self) -> bool {
        self.order.is_some()
    }
}

impl FiniteZ2Carrier for FiniteZ2Set {
    fn elements(&self) -> Result<Vec<usize>> {
        Ok((0..self.len()).collect())
    }
}

/// `UA = A(2)` with the transposition as involution.
#[derive(Debug, Clone)]
pub struct UCarrier<O> {
    pub operad: O,
}

impl<O: Operad> UCarrier<O> {
    pub fn new(operad: O) -> Self {
        UCarrier { operad }
    }
}

impl<O> Z2Carrier for UCarrier<O>
where
    O: Operad,
    O::El: Eq + Hash + Send + Sync,
{
    type Label = O::El;

    fn bar(&self, x: &O::El) -> O::El {
        self.operad.act(x, &Perm::transposition(2, 0, 1))
    }

    fn leq(&self, x: &O::El, y: &O::El) -> bool {
        self.operad.leq(x, y)
    }

    fn is_poset(&self) -> bool {
        self.operad.is_poset_operad()
    }
}

impl<O> FiniteZ2Carrier for UCarrier<O>
where
    O: FiniteOperad,
    O::El: Eq + Hash + Send + Sync,
{
    fn elements(&self) -> Result<Vec<O::El>> {
        self.operad.carrier(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = FiniteZ2Set::s0();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(text, r#"{"elements":["+","-"],"swap":[1,0]}"#);
        assert_eq!(FiniteZ2Set::from_json_str(&text).unwrap(), s);
        assert!(FiniteZ2Set::from_json_str(r#"{"elements":["a","b"],"swap":[1,1]}"#).is_err());
    }

    #[test]
    fn freeness() {
        assert!(FiniteZ2Set::s0().is_free());
        assert!(FiniteZ2Set::free(2).is_free());
        assert!(!FiniteZ2Set::new(vec!["p".into()], vec![0]).unwrap().is_free());
    }

    #[test]
    fn order_must_be_preserved() {
        let s = FiniteZ2Set::s0();
        let chain = FinPoset::chain(2);
        assert!(s.with_order(chain).is_err());
    }
}
