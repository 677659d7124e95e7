//! Finite distributions with exact weights.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Atoms with positive mass; zero-mass atoms are never stored, so equality
/// of two distributions is equality of their maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution<K: Ord> {
    atoms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Distribution<K> {
    fn default() -> Self {
        Distribution { atoms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Distribution<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: K, mass: &Rational) {
        if mass.is_zero() {
            return;
        }
        let slot = self.atoms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += mass;
        if slot.is_zero() {
            self.atoms.remove(&key);
        }
    }

    pub fn atoms(&self) -> &BTreeMap<K, Rational> {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.atoms.values().sum()
    }

    pub fn probability(&self, key: &K) -> Rational {
        self.atoms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn event_probability(&self, event: impl Fn(&K) -> bool) -> Rational {
        self.atoms.iter().filter(|(k, _)| event(k)).map(|(_, v)| v).sum()
    }

    /// Push-forward along `f`.
    pub fn marginal<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> Distribution<L> {
        let mut out = Distribution::new();
        for (k, v) in &self.atoms {
            out.add(f(k), v);
        }
        out
    }

    /// Restriction to `event`, renormalized.
    pub fn condition(&self, event: impl Fn(&K) -> bool) -> Result<Distribution<K>> {
        let mass = self.event_probability(&event);
        if mass.is_zero() {
            return Err(Error::ZeroProbability);
        }
        Ok(Distribution {
            atoms: self.atoms.iter().filter(|(k, _)| event(k)).map(|(k, v)| (k.clone(), v / &mass)).collect(),
        })
    }

    /// `Σ_k |P(k) − Q(k)|`.
    pub fn l1_distance(&self, other: &Distribution<K>) -> Rational {
        let mut total = Rational::zero();
        for (k, v) in &self.atoms {
            total += &(v - &other.probability(k)).abs();
        }
        for (k, v) in &other.atoms {
            if !self.atoms.contains_key(k) {
                total += v;
            }
        }
        total
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Distribution<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut d = Distribution::new();
        for (k, v) in iter {
            d.add(k, &v);
        }
        d
    }
}

/// The product of per-player marginals, keyed by the tuple of their keys.
pub fn product_of<K: Ord + Clone>(factors: &[Distribution<K>]) -> Distribution<Vec<K>> {
    let mut acc: Distribution<Vec<K>> = std::iter::once((Vec::new(), Rational::one())).collect();
    for f in factors {
        let mut next = Distribution::new();
        for (prefix, p) in acc.atoms() {
            for (k, q) in f.atoms() {
                let mut key = prefix.clone();
                key.push(k.clone());
                next.add(key, &(p * q));
            }
        }
        acc = next;
    }
    acc
}
