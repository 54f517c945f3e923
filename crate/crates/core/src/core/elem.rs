use std::collections::BTreeMap;

/// Index of an element within the carrier of its owning band.
///
/// Id 0 is always the zero element; the multiplicative unit is id 1
/// except in the trivial band, where it coincides with 0. Ids are only
/// meaningful relative to the band that issued them. Carriers are
/// canonically ordered: 0 first, then the unit, then construction order,
/// and every enumeration in the crate iterates in this order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(pub u32);

impl ElementId {
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A formal sum: a finite multiset of nonzero band elements.
///
/// These are the elements of the ambient semiring `B⁺`. The zero element
/// never appears as a term; the empty sum is the semiring zero.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FormalSum {
    terms: BTreeMap<ElementId, u32>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn singleton(a: ElementId) -> Self {
        let mut s = FormalSum::default();
        s.push(a, 1);
        s
    }

    /// Builds a sum from (element, multiplicity) pairs, dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (ElementId, u32)>>(iter: I) -> Self {
        let mut s = FormalSum::default();
        for (a, k) in iter {
            s.push(a, k);
        }
        s
    }

    pub fn push(&mut self, a: ElementId, k: u32) {
        if a.is_zero() || k == 0 {
            return;
        }
        *self.terms.entry(a).or_insert(0) += k;
    }

    /// Total multiplicity of the sum.
    pub fn degree(&self) -> u32 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, a: ElementId) -> u32 {
        self.terms.get(&a).copied().unwrap_or(0)
    }

    pub fn contains(&self, a: ElementId) -> bool {
        self.terms.contains_key(&a)
    }

    /// Iterates over (element, multiplicity) pairs in carrier order.
    pub fn iter(&self) -> impl Iterator<Item = (ElementId, u32)> + '_ {
        self.terms.iter().map(|(&a, &k)| (a, k))
    }

    /// Iterates over terms with multiplicity expanded.
    pub fn iter_expanded(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.terms
            .iter()
            .flat_map(|(&a, &k)| std::iter::repeat(a).take(k as usize))
    }

    /// Distinct elements appearing in the sum.
    pub fn support(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.terms.keys().copied()
    }

    /// Multiset union.
    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut s = self.clone();
        for (a, k) in other.iter() {
            s.push(a, k);
        }
        s
    }

    /// Removes one copy of `a`; returns None if `a` does not occur.
    pub fn remove_one(&self, a: ElementId) -> Option<FormalSum> {
        let k = *self.terms.get(&a)?;
        let mut s = self.clone();
        if k == 1 {
            s.terms.remove(&a);
        } else {
            s.terms.insert(a, k - 1);
        }
        Some(s)
    }
}

impl FromIterator<ElementId> for FormalSum {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = FormalSum::default();
        for a in iter {
            s.push(a, 1);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_dropped() {
        let s = FormalSum::from_terms([(ElementId(0), 3), (ElementId(2), 2)]);
        assert_eq!(s.degree(), 2);
        assert!(!s.contains(ElementId(0)));
    }

    #[test]
    fn add_is_multiset_union() {
        let a = FormalSum::from_terms([(ElementId(1), 1), (ElementId(2), 1)]);
        let b = FormalSum::from_terms([(ElementId(2), 2)]);
        let c = a.add(&b);
        assert_eq!(c.multiplicity(ElementId(2)), 3);
        assert_eq!(c.degree(), 4);
    }

    #[test]
    fn remove_one_handles_multiplicity() {
        let s = FormalSum::from_terms([(ElementId(1), 2)]);
        let t = s.remove_one(ElementId(1)).unwrap();
        assert_eq!(t.degree(), 1);
        assert!(t.remove_one(ElementId(2)).is_none());
    }
}
