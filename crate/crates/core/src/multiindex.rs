//! Multiindex arithmetic, enumeration, and product-rule coefficients.
//!
//! A multiindex is an exponent vector `(a_1, ..., a_d)` of nonnegative
//! integers; its order is the component sum. The partial order `g <= a` holds
//! componentwise, and `g < a` requires in addition strict inequality in at
//! least one component. Multiindices index both derivatives `D^a` and the
//! slots of the coefficient tensors, so the enumeration order fixed here is
//! the global tensor layout used everywhere else.

use crate::error::{HomogError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exponent vector indexing derivatives and tensor slots.
///
/// Serialized as a plain integer array, e.g. `[2,0]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "multiindex needs dimension >= 1");
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![0; dim])
    }

    /// Unit multiindex with a single 1 in position `axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut e = vec![0; dim];
        e[axis] = 1;
        Self::new(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The order `|a| = a_1 + ... + a_d`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    /// Componentwise partial order `self <= other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Strict order: `self <= other` with strict inequality somewhere.
    pub fn lt(&self, other: &MultiIndex) -> bool {
        self.le(other) && self.0.iter().zip(&other.0).any(|(a, b)| a < b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiIndex)
    }

    /// All multiindices of the given order in a fixed deterministic order:
    /// descending lexicographic in the components, so for `order 2, dim 2`
    /// the result is `(2,0), (1,1), (0,2)`.
    ///
    /// The count is `C(order + dim - 1, dim - 1)`.
    pub fn enumerate(order: u32, dim: usize) -> Vec<MultiIndex> {
        assert!(dim >= 1, "dimension must be positive");
        let mut out = Vec::new();
        let mut current = vec![0u32; dim];
        fill(&mut out, &mut current, 0, order);
        out
    }
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, axis: usize, remaining: u32) {
    if axis + 1 == current.len() {
        current[axis] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for first in (0..=remaining).rev() {
        current[axis] = first;
        fill(out, current, axis + 1, remaining - first);
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Coefficient `c_{a,g}` of the product differentiation formula
/// `D^a(wv) = sum_{g <= a} c_{a,g} D^g w D^{a-g} v`,
/// equal to the product of componentwise binomials `binom(a_i, g_i)`.
///
/// Rejects `g` not componentwise below `a`.
pub fn leibniz_coefficient(alpha: &MultiIndex, gamma: &MultiIndex) -> Result<u64> {
    if !gamma.le(alpha) {
        return Err(HomogError::MultiIndex(format!(
            "gamma {gamma} is not componentwise <= alpha {alpha}"
        )));
    }
    Ok(alpha
        .exponents()
        .iter()
        .zip(gamma.exponents())
        .map(|(&a, &g)| binomial(a, g))
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn enumerate_order_two_dim_two() {
        let list = MultiIndex::enumerate(2, 2);
        let expect: Vec<MultiIndex> = [[2, 0], [1, 1], [0, 2]]
            .iter()
            .map(|e| MultiIndex::new(e.to_vec()))
            .collect();
        assert_eq!(list, expect);
    }

    #[test]
    fn enumerate_order_zero() {
        let list = MultiIndex::enumerate(0, 3);
        assert_eq!(list, vec![MultiIndex::zero(3)]);
    }

    #[test]
    fn enumerate_count_order_three_dim_two() {
        assert_eq!(MultiIndex::enumerate(3, 2).len(), 4);
    }

    #[test]
    fn leibniz_extreme_coefficients_are_one() {
        let alpha = MultiIndex::new(vec![3, 1, 2]);
        assert_eq!(leibniz_coefficient(&alpha, &MultiIndex::zero(3)).unwrap(), 1);
        assert_eq!(leibniz_coefficient(&alpha, &alpha).unwrap(), 1);
    }

    /// Independent oracle: distribute each elementary derivative to one of the
    /// two factors and count the assignments that send exactly `gamma` to the
    /// first factor.
    fn leibniz_by_enumeration(alpha: &MultiIndex, gamma: &MultiIndex) -> u64 {
        let units: Vec<usize> = alpha
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(axis, &e)| std::iter::repeat(axis).take(e as usize))
            .collect();
        let total = units.len();
        let mut count = 0u64;
        for mask in 0u64..(1u64 << total) {
            let mut first = vec![0u32; alpha.dim()];
            for (bit, &axis) in units.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    first[axis] += 1;
                }
            }
            if first == gamma.exponents() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn leibniz_matches_symbolic_expansion() {
        let cases = [
            (vec![2, 1], vec![1, 0], 2),
            (vec![2, 0], vec![1, 0], 2),
            (vec![3, 2], vec![2, 1], 6),
        ];
        for (a, g, expect) in cases {
            let alpha = MultiIndex::new(a);
            let gamma = MultiIndex::new(g);
            assert_eq!(leibniz_coefficient(&alpha, &gamma).unwrap(), expect);
            assert_eq!(leibniz_by_enumeration(&alpha, &gamma), expect);
        }
    }

    #[test]
    fn leibniz_rejects_incomparable() {
        let alpha = MultiIndex::new(vec![2, 0]);
        let gamma = MultiIndex::new(vec![0, 1]);
        assert!(leibniz_coefficient(&alpha, &gamma).is_err());
    }

    #[test]
    fn partial_order_convention() {
        let a = MultiIndex::new(vec![2, 1]);
        let b = MultiIndex::new(vec![2, 1]);
        assert!(a.le(&b));
        assert!(!a.lt(&b));
        let c = MultiIndex::new(vec![1, 1]);
        assert!(c.lt(&a));
        let d = MultiIndex::new(vec![3, 0]);
        assert!(!d.le(&a) && !a.le(&d));
    }

    #[test]
    fn serializes_as_integer_array() {
        let a = MultiIndex::new(vec![2, 0]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[2,0]");
        let back: MultiIndex = serde_json::from_str("[2,0]").unwrap();
        assert_eq!(back, a);
    }

    proptest! {
        #[test]
        fn enumeration_is_deterministic_with_stars_and_bars_count(order in 0u32..5, dim in 1usize..4) {
            let a = MultiIndex::enumerate(order, dim);
            let b = MultiIndex::enumerate(order, dim);
            prop_assert_eq!(&a, &b);
            let expect = binomial(order + dim as u32 - 1, dim as u32 - 1);
            prop_assert_eq!(a.len() as u64, expect);
            for m in &a {
                prop_assert_eq!(m.order(), order);
            }
        }

        #[test]
        fn leibniz_symmetry_and_binomial_sum(exps in proptest::collection::vec(0u32..4, 1..4)) {
            let alpha = MultiIndex::new(exps);
            let mut total = 0u64;
            for order in 0..=alpha.order() {
                for gamma in MultiIndex::enumerate(order, alpha.dim()) {
                    if gamma.le(&alpha) {
                        let c = leibniz_coefficient(&alpha, &gamma).unwrap();
                        let mirror = alpha.checked_sub(&gamma).unwrap();
                        prop_assert_eq!(c, leibniz_coefficient(&alpha, &mirror).unwrap());
                        total += c;
                    }
                }
            }
            prop_assert_eq!(total, 1u64 << alpha.order());
        }
    }
}
