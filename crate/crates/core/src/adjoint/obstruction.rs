//! Finite `A(1)` forces a Σ₂-fixed point in `A(2)` whenever the endpoint
//! map `A(2) → A(1) × A(1)` is injective. The witness is built from the
//! first repetition `aᵐ = aᵐ⁺ʳ` among the powers of the first endpoint
//! label `a` of a given `c`.

use std::collections::HashMap;
use std::fmt::Debug;

use crate::error::{Error, Result};

use super::monoid::{AtomicOperad, FiniteMonoid, Monoid};
use super::trunc2::{FiniteTrunc2, Trunc2, TruncatedOperad};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessWitness<A1, A2> {
    pub c: A2,
    pub a: A1,
    pub m: usize,
    pub r: usize,
    /// `aᵐ · c · (aʳ⁻¹ · second(c), 1)`.
    pub c_prime: A2,
    pub c_prime_swapped: A2,
    pub endpoints: (A1, A1),
    pub endpoints_swapped: (A1, A1),
    /// Whether `c′` is itself fixed by the transposition.
    pub fixed: bool,
}

impl<A1: PartialEq, A2> FinitenessWitness<A1, A2> {
    /// `c′` and `c′τ` have the same endpoint labels.
    pub fn endpoints_agree(&self) -> bool {
        self.endpoints == self.endpoints_swapped
    }
}

/// Smallest `m, r ≥ 1` with `aᵐ = aᵐ⁺ʳ`, searching at most `bound` powers.
pub fn first_repeat<M: Monoid>(monoid: &M, a: &M::M, bound: usize) -> Result<(usize, usize)> {
    let mut seen: HashMap<M::M, usize> = HashMap::new();
    let mut p = a.clone();
    for e in 1..=bound {
        if let Some(&m) = seen.get(&p) {
            return Ok((m, e - m));
        }
        seen.insert(p.clone(), e);
        p = monoid.mul(&p, a);
    }
    Err(Error::BudgetExceeded {
        what: "powers searched for a repetition".into(),
        needed: bound as u64 + 1,
        budget: bound as u64,
    })
}

struct A1Monoid<'a, T>(&'a T);

impl<T: Trunc2> Monoid for A1Monoid<'_, T> {
    type M = T::A1;

    fn one(&self) -> T::A1 {
        self.0.one()
    }

    fn mul(&self, a: &T::A1, b: &T::A1) -> T::A1 {
        self.0.mul(a, b)
    }
}

/// Builds `c′ = aᵐ · c · (aʳ⁻¹ · second(c), 1)` where `a = first(c)`. Its
/// endpoint labels are `(aᵐ⁺ʳ second(c), aᵐ second(c))`, which coincide.
/// `bound` caps the power search; `|A(1)| + 1` always suffices.
pub fn finiteness_obstruction_witness<T: Trunc2>(
    t: &T,
    c: &T::A2,
    bound: usize,
) -> Result<FinitenessWitness<T::A1, T::A2>> {
    let monoid = A1Monoid(t);
    let (a, second) = t.vertex_pair(c);
    let (m, r) = first_repeat(&monoid, &a, bound)?;
    let shifted = t.mul(&monoid.pow(&a, r - 1), &second);
    let c_prime = t.left(&monoid.pow(&a, m), &t.right(c, &shifted, &t.one()));
    let c_prime_swapped = t.swap(&c_prime);
    let endpoints = t.vertex_pair(&c_prime);
    let endpoints_swapped = t.vertex_pair(&c_prime_swapped);
    Ok(FinitenessWitness {
        c: c.clone(),
        a,
        m,
        r,
        fixed: c_prime == c_prime_swapped,
        c_prime,
        c_prime_swapped,
        endpoints,
        endpoints_swapped,
    })
}

/// Whether `A(2) → A(1) × A(1)` is injective.
pub fn endpoints_injective<T: FiniteTrunc2>(t: &T) -> Result<bool> {
    let a2 = t.a2_elements()?;
    let images: std::collections::HashSet<_> = a2.iter().map(|c| t.vertex_pair(c)).collect();
    Ok(images.len() == a2.len())
}

/// `T₂R₁M`: `A(2) = M²` with coordinatewise actions; the endpoint map is
/// the identity.
pub fn free_square(monoid: FiniteMonoid) -> TruncatedOperad<AtomicOperad<FiniteMonoid>> {
    TruncatedOperad::new(AtomicOperad::new(monoid))
}

/// `A(2) = M² × {0, 1}`, the transposition also flips the bit. Σ₂ acts
/// freely, so the endpoint map cannot be injective.
#[derive(Debug, Clone)]
pub struct DoubledSquare {
    pub monoid: FiniteMonoid,
}

impl Trunc2 for DoubledSquare {
    type A1 = usize;
    type A2 = (usize, usize, bool);

    fn one(&self) -> usize {
        self.monoid.one()
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.monoid.mul(a, b)
    }

    fn left(&self, a: &usize, c: &Self::A2) -> Self::A2 {
        (self.monoid.mul(a, &c.0), self.monoid.mul(a, &c.1), c.2)
    }

    fn right(&self, c: &Self::A2, a: &usize, b: &usize) -> Self::A2 {
        (self.monoid.mul(&c.0, a), self.monoid.mul(&c.1, b), c.2)
    }

    fn swap(&self, c: &Self::A2) -> Self::A2 {
        (c.1, c.0, !c.2)
    }

    fn vertex_pair(&self, c: &Self::A2) -> (usize, usize) {
        (c.0, c.1)
    }
}

impl FiniteTrunc2 for DoubledSquare {
    fn a1_elements(&self) -> Result<Vec<usize>> {
        Ok(self.monoid.elements().collect())
    }

    fn a2_elements(&self) -> Result<Vec<Self::A2>> {
        let n = self.monoid.len();
        Ok((0..n)
            .flat_map(|x| (0..n).flat_map(move |y| [false, true].map(|b| (x, y, b))))
            .collect())
    }
}

/// Runs the witness construction on every `c ∈ A(2)`.
pub fn obstruction_scan<T>(t: &T) -> Result<Vec<FinitenessWitness<T::A1, T::A2>>>
where
    T: FiniteTrunc2,
    T::A1: Debug,
{
    let bound = t.a1_elements()?.len() + 1;
    t.a2_elements()?
        .iter()
        .map(|c| finiteness_obstruction_witness(t, c, bound))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_example() {
        let t = free_square(FiniteMonoid::idempotent());
        let w = finiteness_obstruction_witness(&t, &vec![1, 0], 3).unwrap();
        assert_eq!((w.m, w.r), (1, 1));
        assert_eq!(w.c_prime, vec![1, 1]);
        assert!(w.fixed);
        assert!(w.endpoints_agree());
        assert!(endpoints_injective(&t).unwrap());
    }

    #[test]
    fn group_repeats_at_its_order() {
        let z3 = FiniteMonoid::cyclic(3);
        assert_eq!(first_repeat(&z3, &1, 4).unwrap(), (1, 3));
        assert_eq!(first_repeat(&z3, &0, 4).unwrap(), (1, 1));
        assert!(first_repeat(&z3, &1, 3).is_err());
    }

    #[test]
    fn injective_instances_have_fixed_points() {
        for m in [FiniteMonoid::idempotent(), FiniteMonoid::cyclic(2), FiniteMonoid::cyclic(3)] {
            let t = free_square(m);
            for w in obstruction_scan(&t).unwrap() {
                assert!(w.endpoints_agree() && w.fixed, "{w:?}");
            }
        }
    }

    #[test]
    fn non_injective_instance_agrees_on_endpoints_only() {
        let t = DoubledSquare {
            monoid: FiniteMonoid::idempotent(),
        };
        assert!(!endpoints_injective(&t).unwrap());
        for w in obstruction_scan(&t).unwrap() {
            assert!(w.endpoints_agree());
            assert!(!w.fixed);
        }
    }
}
