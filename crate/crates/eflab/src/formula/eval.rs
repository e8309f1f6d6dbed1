//! Finite model checking for the four languages.
//!
//! Three kinds of models:
//!
//! * [`Model::Order`] — a finite structure with a binary relation `lt`;
//!   interprets `Lord` and `Lmon`. Set variables range over all subsets or,
//!   with [`SetRange::Cofinal`], over the cofinal subsets only.
//! * [`Model::Algebra`] — a powerset algebra with relation `sub` and an
//!   optional ideal; interprets `LbS`.
//! * [`Model::TwoSorted`] — urelements `0..ground` together with all subsets
//!   of the ground set (bitmask coded, so the two sorts live in disjoint
//!   index spaces); interprets `L1S`.
//!
//! [`eval_cached`] is the same checker with per-subformula memoization keyed
//! on the values of free variables; it turns the repeated guard formulas
//! produced by the translations from exponential to linear cost.

use std::collections::{BTreeSet, HashMap};

use crate::formula::{Formula, Sort, Var};
use crate::structure::FiniteStructure;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SetRange {
    FullPowerset,
    Cofinal,
}

/// Urelements `0..ground` plus all ground subsets; `ideal` holds the masks
/// satisfying `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSortedStructure {
    pub ground: usize,
    pub ideal: BTreeSet<u64>,
}

impl TwoSortedStructure {
    /// Ideal = subsets of size < `threshold`.
    pub fn with_threshold(ground: usize, threshold: u32) -> Self {
        assert!(ground <= 16);
        let ideal = (0u64..(1 << ground)).filter(|m| m.count_ones() < threshold).collect();
        TwoSortedStructure { ground, ideal }
    }
}

pub enum Model<'a> {
    Order { structure: &'a FiniteStructure, set_range: SetRange },
    Algebra { structure: &'a FiniteStructure },
    TwoSorted { structure: &'a TwoSortedStructure },
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum EvalError {
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("signature mismatch: {0}")]
    Signature(String),
    #[error("universe too large for set quantification ({0} elements)")]
    UniverseTooLarge(usize),
    #[error("structure is not a linear order: {0}")]
    NotLinear(String),
}

/// Variable assignment. Individual variables hold universe elements (or, on
/// the two-sorted model, ground-subset masks), urelement variables hold
/// ground elements, set variables hold subset masks.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    vals: HashMap<Var, u64>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn ind(mut self, index: u32, value: u64) -> Self {
        self.vals.insert(Var::ind(index), value);
        self
    }

    pub fn ur(mut self, index: u32, value: usize) -> Self {
        self.vals.insert(Var::ur(index), value as u64);
        self
    }

    pub fn set(mut self, index: u32, mask: u64) -> Self {
        self.vals.insert(Var::set(index), mask);
        self
    }

    fn get(&self, v: Var) -> Result<u64, EvalError> {
        self.vals.get(&v).copied().ok_or_else(|| EvalError::Unbound(v.to_string()))
    }

    fn insert(&mut self, v: Var, value: u64) -> Option<u64> {
        self.vals.insert(v, value)
    }

    fn restore(&mut self, v: Var, old: Option<u64>) {
        match old {
            Some(x) => {
                self.vals.insert(v, x);
            }
            None => {
                self.vals.remove(&v);
            }
        }
    }
}

/// The cofinal subsets of a finite linear order: on a finite order the
/// unbounded sets are exactly those containing the maximum. Returned as
/// bitmasks over the universe.
pub fn cof_sets(m: &FiniteStructure) -> Result<Vec<u64>, EvalError> {
    let n = m.universe();
    if n == 0 {
        return Ok(vec![0]);
    }
    if n > 20 {
        return Err(EvalError::UniverseTooLarge(n));
    }
    if m.relation("lt").is_none() {
        return Err(EvalError::Signature("expected a linear order with relation 'lt'".into()));
    }
    for i in 0..n {
        if m.holds("lt", &[i, i]) {
            return Err(EvalError::NotLinear(format!("lt({i},{i}) holds")));
        }
        for j in 0..n {
            if i != j && m.holds("lt", &[i, j]) == m.holds("lt", &[j, i]) {
                return Err(EvalError::NotLinear(format!("{i} and {j} are not comparable exactly one way")));
            }
            for k in 0..n {
                if m.holds("lt", &[i, j]) && m.holds("lt", &[j, k]) && !m.holds("lt", &[i, k]) {
                    return Err(EvalError::NotLinear(format!("lt not transitive at {i},{j},{k}")));
                }
            }
        }
    }
    let max = (0..n)
        .find(|&x| (0..n).all(|y| !m.holds("lt", &[x, y])))
        .expect("finite linear order has a maximum");
    Ok((0..(1u64 << n)).filter(|mask| mask & (1 << max) != 0).collect())
}

fn ind_range(model: &Model) -> Result<Vec<u64>, EvalError> {
    match model {
        Model::Order { structure, .. } => Ok((0..structure.universe() as u64).collect()),
        Model::Algebra { structure } => Ok((0..structure.universe() as u64).collect()),
        Model::TwoSorted { structure } => {
            if structure.ground > 20 {
                return Err(EvalError::UniverseTooLarge(structure.ground));
            }
            Ok((0..(1u64 << structure.ground)).collect())
        }
    }
}

fn ur_range(model: &Model) -> Result<Vec<u64>, EvalError> {
    match model {
        Model::TwoSorted { structure } => Ok((0..structure.ground as u64).collect()),
        _ => Err(EvalError::Signature("urelement quantifier outside the two-sorted model".into())),
    }
}

fn set_range(model: &Model) -> Result<Vec<u64>, EvalError> {
    match model {
        Model::Order { structure, set_range } => {
            let n = structure.universe();
            if n > 20 {
                return Err(EvalError::UniverseTooLarge(n));
            }
            match set_range {
                SetRange::FullPowerset => Ok((0..(1u64 << n)).collect()),
                SetRange::Cofinal => cof_sets(structure),
            }
        }
        _ => Err(EvalError::Signature("set quantifier outside the order model".into())),
    }
}

fn eval_atom(f: &Formula, model: &Model, asg: &Assignment) -> Result<bool, EvalError> {
    use Formula::*;
    match (f, model) {
        (Less(a, b), Model::Order { structure, .. }) => {
            if structure.relation("lt").is_none() {
                return Err(EvalError::Signature("no 'lt' relation".into()));
            }
            Ok(structure.holds("lt", &[asg.get(*a)? as usize, asg.get(*b)? as usize]))
        }
        (Eq(a, b), _) => Ok(asg.get(*a)? == asg.get(*b)?),
        (Subeq(a, b), Model::Algebra { structure }) => {
            if structure.relation("sub").is_none() {
                return Err(EvalError::Signature("no 'sub' relation".into()));
            }
            Ok(structure.holds("sub", &[asg.get(*a)? as usize, asg.get(*b)? as usize]))
        }
        (S(a), Model::Algebra { structure }) => {
            if !structure.has_ideal() {
                return Err(EvalError::Signature("algebra carries no ideal for S".into()));
            }
            Ok(structure.in_ideal(asg.get(*a)? as usize))
        }
        (S(a), Model::TwoSorted { structure }) => Ok(structure.ideal.contains(&asg.get(*a)?)),
        (UrEq(a, b), Model::TwoSorted { .. }) => Ok(asg.get(*a)? == asg.get(*b)?),
        (UrIn(a, b), Model::TwoSorted { .. }) => {
            Ok(asg.get(*b)? & (1 << asg.get(*a)?) != 0)
        }
        (In(a, b), Model::Order { .. }) => Ok(asg.get(*b)? & (1 << asg.get(*a)?) != 0),
        _ => Err(EvalError::Signature(format!("atom {f} has no interpretation in this model"))),
    }
}

struct Cache {
    ids: HashMap<usize, usize>,
    free: Vec<Vec<Var>>,
    memo: HashMap<(usize, Vec<u64>), bool>,
}

fn node_key(f: &Formula) -> usize {
    f as *const Formula as usize
}

fn index_nodes(f: &Formula, cache: &mut Cache) -> Vec<Var> {
    use Formula::*;
    let mut fv: Vec<Var> = match f {
        Less(..) | Eq(..) | Subeq(..) | S(_) | UrEq(..) | UrIn(..) | In(..) => f.atom_vars(),
        Not(a) => index_nodes(a, cache),
        And(a, b) | Or(a, b) | Implies(a, b) => {
            let mut v = index_nodes(a, cache);
            v.extend(index_nodes(b, cache));
            v
        }
        Exists(v, a) | Forall(v, a) => {
            let mut fv = index_nodes(a, cache);
            fv.retain(|x| x != v);
            fv
        }
    };
    fv.sort();
    fv.dedup();
    let id = cache.free.len();
    cache.ids.insert(node_key(f), id);
    cache.free.push(fv.clone());
    fv
}

fn eval_rec(
    f: &Formula,
    model: &Model,
    asg: &mut Assignment,
    cache: &mut Option<Cache>,
) -> Result<bool, EvalError> {
    use Formula::*;
    let memo_key = if let Some(c) = cache {
        let id = *c.ids.get(&node_key(f)).expect("node indexed");
        let mut key = Vec::with_capacity(c.free[id].len());
        for v in &c.free[id] {
            key.push(asg.get(*v)?);
        }
        if let Some(&b) = c.memo.get(&(id, key.clone())) {
            return Ok(b);
        }
        Some((id, key))
    } else {
        None
    };
    let result = match f {
        Less(..) | Eq(..) | Subeq(..) | S(_) | UrEq(..) | UrIn(..) | In(..) => {
            eval_atom(f, model, asg)?
        }
        Not(a) => !eval_rec(a, model, asg, cache)?,
        And(a, b) => eval_rec(a, model, asg, cache)? && eval_rec(b, model, asg, cache)?,
        Or(a, b) => eval_rec(a, model, asg, cache)? || eval_rec(b, model, asg, cache)?,
        Implies(a, b) => !eval_rec(a, model, asg, cache)? || eval_rec(b, model, asg, cache)?,
        Exists(v, a) | Forall(v, a) => {
            let universal = matches!(f, Forall(..));
            let range = match v.sort {
                Sort::Ind => ind_range(model)?,
                Sort::Ur => ur_range(model)?,
                Sort::Set => set_range(model)?,
            };
            let mut out = universal;
            for value in range {
                let old = asg.insert(*v, value);
                let r = eval_rec(a, model, asg, cache);
                asg.restore(*v, old);
                if r? != universal {
                    out = !universal;
                    break;
                }
            }
            out
        }
    };
    if let (Some(c), Some(key)) = (cache, memo_key) {
        c.memo.insert(key, result);
    }
    Ok(result)
}

/// Truth of `f` in `model` under `assignment`, by structural recursion.
pub fn eval(f: &Formula, model: &Model, assignment: &Assignment) -> Result<bool, EvalError> {
    let mut asg = assignment.clone();
    eval_rec(f, model, &mut asg, &mut None)
}

/// As [`eval`], memoizing each subformula on the values of its free
/// variables.
pub fn eval_cached(f: &Formula, model: &Model, assignment: &Assignment) -> Result<bool, EvalError> {
    let mut cache = Cache { ids: HashMap::new(), free: Vec::new(), memo: HashMap::new() };
    index_nodes(f, &mut cache);
    let mut asg = assignment.clone();
    eval_rec(f, model, &mut asg, &mut Some(cache))
}
