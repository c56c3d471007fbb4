use std::collections::{BTreeMap, BTreeSet};

use crate::qfield::CoeffField;

/// A linear combination of cochain unknowns.
///
/// `touched` records every key that received a structurally nonzero term,
/// even if the terms later cancelled. Window membership is decided on
/// `touched`, so whether an equation is instantiated never depends on an
/// accidental cancellation at a particular sample.
#[derive(Clone, Debug, PartialEq)]
pub struct LinForm<K: Ord, T> {
    pub terms: BTreeMap<K, T>,
    pub touched: BTreeSet<K>,
}

impl<K: Ord + Copy, T: Clone> Default for LinForm<K, T> {
    fn default() -> Self {
        LinForm { terms: BTreeMap::new(), touched: BTreeSet::new() }
    }
}

impl<K: Ord + Copy, T: Clone + PartialEq> LinForm<K, T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add<F: CoeffField<Elem = T>>(&mut self, f: &F, key: K, c: T, negate: bool) {
        if f.is_zero(&c) {
            return;
        }
        self.touched.insert(key);
        let c = f.sign(&c, negate);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = f.add(v, &c);
                if f.is_zero(v) {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval<F: CoeffField<Elem = T>>(&self, f: &F, value: impl Fn(&K) -> T) -> T {
        let mut acc = f.zero();
        for (k, c) in &self.terms {
            let v = value(k);
            if !f.is_zero(&v) {
                acc = f.add(&acc, &f.mul(c, &v));
            }
        }
        acc
    }

    pub fn all_touched(&self, pred: impl Fn(&K) -> bool) -> bool {
        self.touched.iter().all(pred)
    }

    /// Drop keys assumed to vanish.
    pub fn without(&self, drop: impl Fn(&K) -> bool) -> Self {
        LinForm {
            terms: self.terms.iter().filter(|(k, _)| !drop(k)).map(|(k, v)| (*k, v.clone())).collect(),
            touched: self.touched.iter().filter(|k| !drop(k)).copied().collect(),
        }
    }
}
