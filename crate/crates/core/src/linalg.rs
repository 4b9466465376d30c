//! Sparse row echelon forms over a coefficient field, used for freeness and
//! coinvariant-space certificates.

use std::collections::BTreeMap;

use crate::coeff::Coeff;

/// A sparse vector indexed by any ordered key.
pub type SparseVec<T, K> = BTreeMap<T, K>;

/// Incremental echelon basis: each stored vector has a distinct leading key
/// with coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon<T: Ord + Clone, K: Coeff> {
    pivots: BTreeMap<T, SparseVec<T, K>>,
}

impl<T: Ord + Clone, K: Coeff> Default for Echelon<T, K> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }
}

impl<T: Ord + Clone, K: Coeff> Echelon<T, K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis; returns what is left.
    pub fn reduce(&self, mut v: SparseVec<T, K>) -> SparseVec<T, K> {
        let mut done: SparseVec<T, K> = BTreeMap::new();
        while let Some((key, c)) = v.pop_last() {
            match self.pivots.get(&key) {
                Some(row) => {
                    for (k, d) in row.iter().rev().skip(1) {
                        let e = v.get(k).cloned().unwrap_or_else(K::zero).sub(&c.mul(d));
                        if e.is_zero() {
                            v.remove(k);
                        } else {
                            v.insert(k.clone(), e);
                        }
                    }
                }
                None => {
                    done.insert(key, c);
                }
            }
        }
        done
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<T, K>) -> bool {
        let mut r = self.reduce(v);
        let Some((key, lead)) = r.last_key_value().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot is invertible");
        for c in r.values_mut() {
            *c = c.mul(&inv);
        }
        self.pivots.insert(key, r);
        true
    }

    pub fn contains(&self, v: SparseVec<T, K>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of the span of `vectors`.
pub fn rank<T: Ord + Clone, K: Coeff>(vectors: impl IntoIterator<Item = SparseVec<T, K>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32, Rational> {
        entries.iter().map(|&(k, c)| (k, Rational::from_i64(c))).collect()
    }

    #[test]
    fn dependent_vectors_do_not_raise_rank() {
        let vs = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (1, 3), (2, 1)])];
        assert_eq!(rank(vs), 2);
    }

    #[test]
    fn identity_has_full_rank() {
        assert_eq!(rank((0..5).map(|i| v(&[(i, 1)]))), 5);
    }

    #[test]
    fn reduce_leaves_component_outside_span() {
        let mut e = Echelon::new();
        e.insert(v(&[(0, 1), (1, 1)]));
        let r = e.reduce(v(&[(1, 2), (2, 1)]));
        assert_eq!(r, v(&[(0, -2), (2, 1)]));
    }
}
