//! Named monoids that documents may reference instead of spelling out a table.
//!
//! Built-in names (identity is always index 0):
//!
//! | name | table                                   |
//! |------|-----------------------------------------|
//! | `T`  | `[[0]]` (trivial)                       |
//! | `M`  | `[[0,1],[1,1]]` (idempotent, `1+1 = 1`) |
//! | `G`  | `[[0,1],[1,0]]` (group, `1+1 = 0`)      |
//! | `Z3` | addition mod 3                          |
//! | `Z4` | addition mod 4                          |

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monoid::{cyclic_group, Monoid, MonoidTable};

pub const BUILTIN_NAMES: [&str; 5] = ["T", "M", "G", "Z3", "Z4"];

/// The two-element idempotent monoid.
pub fn idempotent_two() -> Monoid {
    Arc::new(MonoidTable::from_flat_unchecked(2, vec![0, 1, 1, 1]))
}

/// The two-element group.
pub fn group_two() -> Monoid {
    cyclic_group(2)
}

pub fn builtin(name: &str) -> Option<Monoid> {
    match name {
        "T" => Some(MonoidTable::trivial()),
        "M" => Some(idempotent_two()),
        "G" => Some(group_two()),
        "Z3" => Some(cyclic_group(3)),
        "Z4" => Some(cyclic_group(4)),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct Registry {
    entries: BTreeMap<String, Monoid>,
}

impl Default for Registry {
    fn default() -> Self {
        let entries = BUILTIN_NAMES.iter().map(|&n| (n.to_string(), builtin(n).expect("builtin"))).collect();
        Registry { entries }
    }
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds or replaces a named monoid.
    pub fn insert(&mut self, name: impl Into<String>, monoid: Monoid) {
        self.entries.insert(name.into(), monoid);
    }

    pub fn get(&self, name: &str) -> Result<Monoid> {
        self.entries.get(name).cloned().ok_or_else(|| Error::UnknownMonoid(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    /// Name whose table equals `m` exactly, built-ins first.
    pub fn name_of(&self, m: &MonoidTable) -> Option<&str> {
        BUILTIN_NAMES
            .iter()
            .copied()
            .find(|n| self.entries.get(*n).is_some_and(|e| **e == *m))
            .or_else(|| self.entries.iter().find(|(_, e)| ***e == *m).map(|(n, _)| n.as_str()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}
