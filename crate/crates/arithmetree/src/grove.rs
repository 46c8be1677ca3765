//! Groves: degree-homogeneous sets of distinct names, plus the absorbing
//! empty sentinel (printed `0`).

use crate::error::{Error, Result};
use crate::name::{format_vector, Name};
use serde_json::Value;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A grove is a non-empty set of distinct names of one degree. `Empty` is
/// the separate absorbing element of the grove arithmetic; it is not a
/// grove of names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grove {
    Empty,
    Names(BTreeSet<Name>),
}

impl Grove {
    pub fn empty() -> Grove {
        Grove::Empty
    }

    pub fn singleton(name: Name) -> Grove {
        let mut set = BTreeSet::new();
        set.insert(name);
        Grove::Names(set)
    }

    /// The degree-0 grove `{(0)}`, the unit of grove addition.
    pub fn unit() -> Grove {
        Grove::singleton(Name::leaf())
    }

    /// Builds a grove from names, which must be non-empty and of one degree.
    pub fn from_names<I: IntoIterator<Item = Name>>(names: I) -> Result<Grove> {
        let set: BTreeSet<Name> = names.into_iter().collect();
        match set.iter().map(Name::degree).collect::<BTreeSet<_>>().len() {
            0 => Err(Error::MalformedGrove("a grove is non-empty".into())),
            1 => Ok(Grove::Names(set)),
            _ => Err(Error::MalformedGrove(
                "a grove is degree-homogeneous".into(),
            )),
        }
    }

    /// The total grove of a degree: every name of degree `n`.
    pub fn total(n: usize) -> Grove {
        Grove::Names(crate::name::enumerate_names(n).into_iter().collect())
    }

    pub fn is_empty_sentinel(&self) -> bool {
        matches!(self, Grove::Empty)
    }

    /// Degree of the names; `None` for the empty sentinel.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Grove::Empty => None,
            Grove::Names(set) => set.iter().next().map(Name::degree),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Grove::Empty => 0,
            Grove::Names(set) => set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, name: &Name) -> bool {
        match self {
            Grove::Empty => false,
            Grove::Names(set) => set.contains(name),
        }
    }

    /// Iterates the names in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Name> {
        match self {
            Grove::Empty => None.into_iter().flatten(),
            Grove::Names(set) => Some(set.iter()).into_iter().flatten(),
        }
    }

    /// The single name of a one-element grove.
    pub fn as_single(&self) -> Option<&Name> {
        match self {
            Grove::Names(set) if set.len() == 1 => set.iter().next(),
            _ => None,
        }
    }

    /// Set union. The empty sentinel is neutral; degrees must agree.
    pub fn union(&self, other: &Grove) -> Result<Grove> {
        match (self, other) {
            (Grove::Empty, g) | (g, Grove::Empty) => Ok(g.clone()),
            (Grove::Names(a), Grove::Names(b)) => {
                let da = self.degree().expect("non-empty");
                let db = other.degree().expect("non-empty");
                if da != db {
                    return Err(Error::DegreeMismatch(da, db));
                }
                Ok(Grove::Names(a.union(b).cloned().collect()))
            }
        }
    }

    /// JSON form: a sorted array of coordinate arrays; `Empty` is `null`.
    pub fn to_json(&self) -> Value {
        match self {
            Grove::Empty => Value::Null,
            Grove::Names(set) => Value::Array(
                set.iter()
                    .map(|n| Value::Array(n.coords().iter().map(|&c| Value::from(c)).collect()))
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for Grove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grove::Empty => write!(f, "0"),
            Grove::Names(set) => {
                let parts: Vec<String> = set.iter().map(|n| format_vector(n.coords())).collect();
                write!(f, "{}", parts.join("+"))
            }
        }
    }
}

impl FromStr for Grove {
    type Err = Error;

    fn from_str(s: &str) -> Result<Grove> {
        let s = s.trim();
        if s == "0" {
            return Ok(Grove::Empty);
        }
        let names: Result<Vec<Name>> = s.split('+').map(|p| p.trim().parse()).collect();
        Grove::from_names(names?)
    }
}
