use std::fmt;

use serde::{Deserialize, Serialize};

/// An additively closed subcategory, given by the inventory indices of its
/// indecomposables. The index list is kept sorted and free of duplicates, so
/// equality of values is equality of subcategories. The empty list is the zero
/// subcategory.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subcat {
    members: Vec<usize>,
}

impl Subcat {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Subcat { members }
    }

    pub fn zero() -> Self {
        Subcat::default()
    }

    /// Every member of an inventory of the given size.
    pub fn all(len: usize) -> Self {
        Subcat { members: (0..len).collect() }
    }

    /// The subset selected by the bits of `mask`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        Subcat { members: (0..len).filter(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |acc, &i| acc | 1 << i)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &Subcat) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    pub fn union(&self, other: &Subcat) -> Subcat {
        Subcat::new(self.members.iter().chain(&other.members).copied())
    }

    pub fn with(&self, i: usize) -> Subcat {
        Subcat::new(self.members.iter().copied().chain([i]))
    }

    pub fn intersection(&self, other: &Subcat) -> Subcat {
        Subcat { members: self.members.iter().copied().filter(|&i| other.contains(i)).collect() }
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &Subcat) -> Subcat {
        Subcat { members: self.members.iter().copied().filter(|&i| !other.contains(i)).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

impl FromIterator<usize> for Subcat {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subcat::new(iter)
    }
}

impl fmt::Display for Subcat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Subcat::new([3, 1, 3, 0]).members(), &[0, 1, 3]);
        assert_eq!(Subcat::new([2, 1]), Subcat::new([1, 2]));
        assert!(Subcat::zero().is_empty());
        assert_eq!(Subcat::from_mask(0b101, 3).members(), &[0, 2]);
        assert_eq!(Subcat::new([0, 2]).to_string(), "{0,2}");
    }

    proptest! {
        #[test]
        fn mask_round_trip(mask in 0u64..(1 << 12)) {
            let s = Subcat::from_mask(mask, 12);
            prop_assert_eq!(s.mask(), mask);
        }

        #[test]
        fn set_operations(a in 0u64..256, b in 0u64..256) {
            let (x, y) = (Subcat::from_mask(a, 8), Subcat::from_mask(b, 8));
            prop_assert_eq!(x.union(&y).mask(), a | b);
            prop_assert_eq!(x.intersection(&y).mask(), a & b);
            prop_assert_eq!(x.difference(&y).mask(), a & !b);
            prop_assert_eq!(x.is_subset(&y), a & !b == 0);
        }
    }
}
