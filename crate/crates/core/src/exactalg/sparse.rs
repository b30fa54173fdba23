//! Incremental sparse elimination with provenance tracking.
//!
//! Columns are arbitrary ordered keys (term-indexed spaces have no natural
//! integer layout). Each stored row remembers which inserted generators it
//! came from, so a successful membership query yields the combination of
//! generators that reproduces the target.

use std::collections::BTreeMap;

use super::scalar::Field;

pub type SparseVec<K, F> = BTreeMap<K, F>;

/// Coefficients on inserted generators, keyed by insertion index.
pub type Certificate<F> = BTreeMap<usize, F>;

#[derive(Clone, Debug)]
struct Row<K, F> {
    entries: SparseVec<K, F>,
    origin: Certificate<F>,
}

/// Semi-echelon form: each row's pivot is its smallest key, pivot
/// coefficient one, and no two rows share a pivot.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K, F> {
    rows: Vec<Row<K, F>>,
    pivot_of: BTreeMap<K, usize>,
    generators: usize,
}

impl<K: Ord + Clone, F: Field> Default for SparseEchelon<K, F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone, F: Field> SparseEchelon<K, F> {
    pub fn new() -> Self {
        SparseEchelon {
            rows: Vec::new(),
            pivot_of: BTreeMap::new(),
            generators: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of generators inserted so far (independent or not).
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Adds a generator; returns its index. Dependent generators are
    /// recorded but do not increase the rank.
    pub fn insert(&mut self, v: SparseVec<K, F>) -> usize {
        let id = self.generators;
        self.generators += 1;
        let mut origin = Certificate::new();
        origin.insert(id, F::one());
        let (rest, origin) = self.reduce(v, origin);
        if let Some((pivot, lead)) = rest.iter().next() {
            let pivot = pivot.clone();
            let inv = lead.inv().expect("nonzero lead");
            let entries = rest.into_iter().map(|(k, c)| (k, c * &inv)).collect();
            let origin = origin.into_iter().map(|(k, c)| (k, c * &inv)).collect();
            self.pivot_of.insert(pivot, self.rows.len());
            self.rows.push(Row { entries, origin });
        }
        id
    }

    /// If `target` lies in the span of the generators, returns coefficients
    /// `c` with `target = Σ c[i] · generator[i]`.
    pub fn solve(&self, target: &SparseVec<K, F>) -> Option<Certificate<F>> {
        let (rest, used) = self.reduce(target.clone(), Certificate::new());
        if !rest.is_empty() {
            return None;
        }
        // reduce() accumulated target - Σ c·rows, stored negated.
        Some(used.into_iter().map(|(k, c)| (k, -c)).collect())
    }

    /// Subtracts pivot rows from `v`, accumulating `origin -= c * row.origin`.
    fn reduce(
        &self,
        mut v: SparseVec<K, F>,
        mut origin: Certificate<F>,
    ) -> (SparseVec<K, F>, Certificate<F>) {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.pivot_of.contains_key(*k)).cloned(),
                Some(c) => v
                    .range((
                        std::ops::Bound::Excluded(c.clone()),
                        std::ops::Bound::Unbounded,
                    ))
                    .map(|(k, _)| k)
                    .find(|k| self.pivot_of.contains_key(*k))
                    .cloned(),
            };
            let Some(key) = next else { break };
            let row = &self.rows[self.pivot_of[&key]];
            let c = v[&key].clone();
            for (k, e) in &row.entries {
                let updated = v.remove(k).unwrap_or_else(F::zero) - &(c.clone() * e);
                if !updated.is_zero() {
                    v.insert(k.clone(), updated);
                }
            }
            for (g, e) in &row.origin {
                let updated = origin.remove(g).unwrap_or_else(F::zero) - &(c.clone() * e);
                if !updated.is_zero() {
                    origin.insert(*g, updated);
                }
            }
            cursor = Some(key);
        }
        (v, origin)
    }
}
