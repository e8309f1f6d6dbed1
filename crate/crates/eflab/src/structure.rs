//! Explicit finite relational structures.
//!
//! A [`FiniteStructure`] is a universe `0..n` with named relations and,
//! optionally, an *ideal*: a distinguished family of elements interpreting
//! the unary predicate `S`. The ideal convention assumes powerset coding:
//! the universe has size `2^g` and element `i` is the bitmask of a subset of
//! a `g`-element ground set. The ideal family must be downward closed under
//! ⊑ (submasks) and proper (the top element is excluded). Closure under
//! pairwise join is *not* required: the finite shadows of the ideals of
//! interest (all subsets of size < t) are not join-closed for t ≥ 2, and
//! the model checker only needs `S` as a predicate.
//!
//! The text file format is JSON-shaped:
//!
//! ```json
//! {"universe": 4, "relations": {"lt": [[0,1],[0,2]]}, "ideal": [[],[0],[1]]}
//! ```
//!
//! where ideal entries are subsets of the ground set listed as sorted index
//! arrays.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// `None` when the relation is empty and its arity cannot be inferred.
    pub arity: Option<usize>,
    pub tuples: BTreeSet<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    universe: usize,
    relations: BTreeMap<String, Relation>,
    /// Elements satisfying `S`, as powerset-coded bitmasks.
    ideal: Option<BTreeSet<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("tuple {tuple:?} of relation '{relation}' is out of the universe 0..{universe}")]
    TupleOutOfRange { relation: String, tuple: Vec<usize>, universe: usize },
    #[error("relation '{relation}' mixes tuple lengths {a} and {b}")]
    RaggedRelation { relation: String, a: usize, b: usize },
    #[error("ideal requires a power-of-two universe, got {0}")]
    NotPowersetCoded(usize),
    #[error("ideal entry {0:?} is outside the ground set")]
    IdealEntryOutOfRange(Vec<usize>),
    #[error("ideal is not downward closed: contains {mask} but not its subset {sub}")]
    IdealNotDownwardClosed { mask: usize, sub: usize },
    #[error("ideal is improper: contains the top element")]
    IdealImproper,
    #[error("bad structure file: {0}")]
    BadFile(String),
}

impl FiniteStructure {
    pub fn new(universe: usize) -> Self {
        FiniteStructure { universe, relations: BTreeMap::new(), ideal: None }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.relations.iter().map(|(n, r)| (n.as_str(), r))
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn ideal(&self) -> Option<&BTreeSet<usize>> {
        self.ideal.as_ref()
    }

    pub fn has_ideal(&self) -> bool {
        self.ideal.is_some()
    }

    pub fn in_ideal(&self, element: usize) -> bool {
        self.ideal.as_ref().is_some_and(|i| i.contains(&element))
    }

    pub fn holds(&self, name: &str, tuple: &[usize]) -> bool {
        self.relations.get(name).is_some_and(|r| r.tuples.contains(tuple))
    }

    pub fn add_relation(
        &mut self,
        name: &str,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<(), StructureError> {
        let mut arity = None;
        let mut set = BTreeSet::new();
        for t in tuples {
            match arity {
                None => arity = Some(t.len()),
                Some(a) if a != t.len() => {
                    return Err(StructureError::RaggedRelation {
                        relation: name.to_string(),
                        a,
                        b: t.len(),
                    })
                }
                _ => {}
            }
            if t.iter().any(|&x| x >= self.universe) {
                return Err(StructureError::TupleOutOfRange {
                    relation: name.to_string(),
                    tuple: t,
                    universe: self.universe,
                });
            }
            set.insert(t);
        }
        self.relations.insert(name.to_string(), Relation { arity, tuples: set });
        Ok(())
    }

    /// Ground-set size when the universe is powerset coded.
    pub fn ground_size(&self) -> Option<usize> {
        if self.universe.is_power_of_two() {
            Some(self.universe.trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// Install the ideal as a set of powerset-coded masks, checking downward
    /// closure and properness.
    pub fn set_ideal(&mut self, masks: BTreeSet<usize>) -> Result<(), StructureError> {
        let Some(_g) = self.ground_size() else {
            return Err(StructureError::NotPowersetCoded(self.universe));
        };
        let top = self.universe - 1;
        if masks.contains(&top) && self.universe > 1 {
            return Err(StructureError::IdealImproper);
        }
        for &m in &masks {
            // enumerate submasks of m
            let mut sub = m;
            loop {
                if !masks.contains(&sub) {
                    return Err(StructureError::IdealNotDownwardClosed { mask: m, sub });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        self.ideal = Some(masks);
        Ok(())
    }

    /// Linear order `0 < 1 < … < n-1` over the relation name `lt`.
    pub fn linear_order(n: usize) -> Self {
        let mut s = FiniteStructure::new(n);
        let tuples: BTreeSet<Vec<usize>> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])).collect();
        s.relations.insert("lt".to_string(), Relation { arity: Some(2), tuples });
        s
    }

    /// The powerset algebra on `ground` atoms: universe `2^ground`, elements
    /// are bitmask-coded subsets, `sub` is inclusion. With `threshold =
    /// Some(t)` the ideal is the family of subsets of size < t.
    pub fn powerset_algebra(ground: usize, threshold: Option<u32>) -> Self {
        assert!(ground <= 16, "powerset algebra ground too large");
        let n = 1usize << ground;
        let mut s = FiniteStructure::new(n);
        let tuples: BTreeSet<Vec<usize>> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| i & j == i).map(move |j| vec![i, j]))
            .collect();
        s.relations.insert("sub".to_string(), Relation { arity: Some(2), tuples });
        if let Some(t) = threshold {
            let masks: BTreeSet<usize> =
                (0..n).filter(|m| (m.count_ones()) < t).collect();
            s.set_ideal(masks).expect("threshold family is downward closed and proper");
        }
        s
    }

    /// Same relation names with matching arities and the same ideal
    /// presence. Empty relations (unknown arity) match any arity.
    pub fn signature_matches(&self, other: &FiniteStructure) -> bool {
        if self.has_ideal() != other.has_ideal() {
            return false;
        }
        let names: BTreeSet<&String> =
            self.relations.keys().chain(other.relations.keys()).collect();
        names.into_iter().all(|n| match (self.relations.get(n), other.relations.get(n)) {
            (Some(a), Some(b)) => match (a.arity, b.arity) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            },
            _ => false,
        })
    }

    pub fn to_json(&self) -> String {
        let file = StructureFile {
            universe: self.universe,
            relations: self
                .relations
                .iter()
                .map(|(n, r)| (n.clone(), r.tuples.iter().cloned().collect()))
                .collect(),
            ideal: self.ideal.as_ref().map(|masks| {
                let g = self.ground_size().expect("ideal implies powerset coding");
                masks.iter().map(|&m| mask_to_sorted_indices(m, g)).collect()
            }),
        };
        serde_json::to_string(&file).expect("structure serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, StructureError> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| StructureError::BadFile(e.to_string()))?;
        let mut s = FiniteStructure::new(file.universe);
        for (name, tuples) in file.relations {
            s.add_relation(&name, tuples)?;
        }
        if let Some(entries) = file.ideal {
            let g = s
                .ground_size()
                .ok_or(StructureError::NotPowersetCoded(file.universe))?;
            let mut masks = BTreeSet::new();
            for e in entries {
                if e.iter().any(|&i| i >= g) {
                    return Err(StructureError::IdealEntryOutOfRange(e));
                }
                masks.insert(e.iter().fold(0usize, |m, &i| m | (1 << i)));
            }
            s.set_ideal(masks)?;
        }
        Ok(s)
    }
}

pub fn mask_to_sorted_indices(mask: usize, ground: usize) -> Vec<usize> {
    (0..ground).filter(|i| mask & (1 << i) != 0).collect()
}

#[derive(Serialize, Deserialize)]
struct StructureFile {
    universe: usize,
    #[serde(default)]
    relations: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ideal: Option<Vec<Vec<usize>>>,
}
