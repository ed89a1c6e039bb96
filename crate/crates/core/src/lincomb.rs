//! Sparse rational linear combinations of basis labels.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{fmt_rational, ExactRational};

/// A finite formal sum `Σ cᵢ·labelᵢ` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, ExactRational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(label: K) -> Self {
        Self::term(label, ExactRational::one())
    }

    pub fn term(label: K, coeff: ExactRational) -> Self {
        let mut out = Self::zero();
        out.add_term(label, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &K) -> ExactRational {
        self.terms.get(label).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &ExactRational)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.terms.keys()
    }

    /// Largest label in the underlying order.
    pub fn leading(&self) -> Option<(&K, &ExactRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, label: K, coeff: ExactRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(label) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor · other`
    pub fn add_scaled(&mut self, other: &LinComb<K>, factor: &ExactRational) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scaled(&self, factor: &ExactRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * factor)).collect() }
    }

    pub fn neg(&self) -> Self {
        LinComb { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-ExactRational::one());
        out
    }

    pub fn add(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Apply a linear map given on basis labels.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabel terms; labels mapped to the same target are summed.
    pub fn map_labels<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, ExactRational> {
        self.terms
    }

    /// Render with a custom label printer, e.g. `2·L_{-1} - 1/3·T_{-1}`.
    pub fn display_with(&self, mut label: impl FnMut(&K) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in &self.terms {
            let l = label(k);
            if c.is_one() {
                parts.push(l);
            } else if (-c).is_one() {
                parts.push(format!("-{l}"));
            } else {
                parts.push(format!("{}·{l}", fmt_rational(c)));
            }
        }
        parts.join(" + ")
    }
}

impl<K: Ord + Clone> FromIterator<(K, ExactRational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, ExactRational)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|k| format!("{k:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn cancellation_drops_terms() {
        let mut v = LinComb::term("a", q(2));
        v.add_term("b", qf(1, 2));
        v.add_term("a", q(-2));
        assert_eq!(v.len(), 1);
        assert_eq!(v.coeff(&"a"), q(0));
        assert_eq!(v.coeff(&"b"), qf(1, 2));
        assert!(v.sub(&v).is_zero());
        assert!(LinComb::term("z", q(0)).is_zero());
    }
}
