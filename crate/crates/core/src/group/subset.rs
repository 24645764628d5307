//! Subsets of a group's element indices.

use std::collections::BTreeSet;
use std::fmt;

/// A set of element indices of some ambient group. Iteration order is
/// ascending, so every derived computation is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Subset {
    members: BTreeSet<usize>,
}

impl Subset {
    pub fn empty() -> Self {
        Subset::default()
    }

    pub fn singleton(i: usize) -> Self {
        let mut members = BTreeSet::new();
        members.insert(i);
        Subset { members }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        self.members.insert(i)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subset {
            members: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
        }
        write!(f, "}}")
    }
}
