//! Finite laboratory for total preorders, their segment ideals, and the
//! cut-and-zip surgery.
//!
//! Everything here is an explicit finite shadow of class-sized
//! constructions, with two conventions making the theory non-degenerate at
//! this scale:
//!
//! * Segments are *strict* (`{y : y ≼ x and not x ≼ y}`): the non-strict
//!   segment of a top-class element is the whole ground set, so the
//!   non-strict segment family of a finite preorder is never a proper
//!   ideal and is reported as `Improper`.
//! * Witness searches range over total preorders with at least two
//!   equivalence classes. A one-class preorder bounds nothing strictly,
//!   which is the degenerate face of the "no last element" convention the
//!   infinite theory assumes; admitting it would make the empty ideal an
//!   access ideal for every ground set.
//!
//! A finite family that is downward closed, union closed and proper is
//! necessarily the family of all subsets of its largest member, so ideals
//! here are principal. The searches are still exhaustive and report
//! certificates.

use serde::{Deserialize, Serialize};

use crate::structure::mask_to_sorted_indices;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreorderSpec {
    size: usize,
    rel: Vec<bool>, // row-major: rel[x * size + y] means x ≼ y
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum PreorderError {
    #[error("relation is not a total preorder: {0}")]
    NotTotalPreorder(String),
    #[error("ideal family violates the ideal axioms: {0}")]
    NotAnIdeal(String),
    #[error("surgery instance is invalid: {0}")]
    BadInstance(String),
    #[error("ground size {size} exceeds the search budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("bad file: {0}")]
    BadFile(String),
}

impl PreorderSpec {
    pub fn new(size: usize, rel: Vec<bool>) -> Result<Self, PreorderError> {
        if rel.len() != size * size {
            return Err(PreorderError::NotTotalPreorder(format!(
                "matrix has {} entries for size {size}",
                rel.len()
            )));
        }
        let p = PreorderSpec { size, rel };
        for x in 0..size {
            if !p.le(x, x) {
                return Err(PreorderError::NotTotalPreorder(format!("not reflexive at {x}")));
            }
            for y in 0..size {
                if !p.le(x, y) && !p.le(y, x) {
                    return Err(PreorderError::NotTotalPreorder(format!(
                        "not total at {x}, {y}"
                    )));
                }
                for z in 0..size {
                    if p.le(x, y) && p.le(y, z) && !p.le(x, z) {
                        return Err(PreorderError::NotTotalPreorder(format!(
                            "not transitive at {x}, {y}, {z}"
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    /// Build from an ordered partition: earlier blocks strictly below
    /// later ones, elements within a block equivalent.
    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Self {
        let mut level = vec![usize::MAX; size];
        for (i, block) in blocks.iter().enumerate() {
            for &x in block {
                level[x] = i;
            }
        }
        assert!(level.iter().all(|&l| l != usize::MAX), "blocks must cover the ground set");
        let mut rel = vec![false; size * size];
        for x in 0..size {
            for y in 0..size {
                rel[x * size + y] = level[x] <= level[y];
            }
        }
        PreorderSpec { size, rel }
    }

    pub fn linear(n: usize) -> Self {
        let blocks: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        Self::from_blocks(n, &blocks)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.rel[x * self.size + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && !self.le(y, x)
    }

    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    /// Elements with everything below-or-equivalent to them.
    pub fn top_class(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| (0..self.size).all(|y| self.le(y, x))).collect()
    }

    pub fn class_count(&self) -> usize {
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.size {
            if !reps.iter().any(|&r| self.equivalent(r, x)) {
                reps.push(x);
            }
        }
        reps.len()
    }

    /// Strict initial segment of `x` as a bitmask.
    pub fn strict_segment(&self, x: usize) -> u32 {
        (0..self.size).filter(|&y| self.lt(y, x)).fold(0, |m, y| m | (1 << y))
    }

    /// Non-strict initial segment of `x` as a bitmask.
    pub fn segment(&self, x: usize) -> u32 {
        (0..self.size).filter(|&y| self.le(y, x)).fold(0, |m, y| m | (1 << y))
    }

    /// Meets the top class, the finite reading of "unbounded".
    pub fn is_cofinal(&self, set: u32) -> bool {
        self.top_class().iter().any(|&x| set & (1 << x) != 0)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<bool>> =
            (0..self.size).map(|x| (0..self.size).map(|y| self.le(x, y)).collect()).collect();
        serde_json::to_string(&PreorderFile { size: self.size, rel: rows }).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self, PreorderError> {
        let f: PreorderFile =
            serde_json::from_str(text).map_err(|e| PreorderError::BadFile(e.to_string()))?;
        let mut rel = Vec::with_capacity(f.size * f.size);
        for row in &f.rel {
            if row.len() != f.size {
                return Err(PreorderError::BadFile("ragged relation matrix".into()));
            }
            rel.extend(row.iter().copied());
        }
        if f.rel.len() != f.size {
            return Err(PreorderError::BadFile("wrong number of rows".into()));
        }
        Self::new(f.size, rel)
    }
}

#[derive(Serialize, Deserialize)]
struct PreorderFile {
    size: usize,
    rel: Vec<Vec<bool>>,
}

/// Explicit family of subsets (bitmasks) satisfying the ideal axioms:
/// downward closed, closed under pairwise union, proper.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealFamily {
    ground_size: usize,
    members: Vec<u32>, // sorted
}

impl IdealFamily {
    pub fn new(ground_size: usize, mut members: Vec<u32>) -> Result<Self, PreorderError> {
        assert!(ground_size <= 16);
        members.sort_unstable();
        members.dedup();
        let full: u32 = if ground_size == 32 { u32::MAX } else { (1 << ground_size) - 1 };
        let contains = |m: u32, members: &[u32]| members.binary_search(&m).is_ok();
        if members.is_empty() {
            return Err(PreorderError::NotAnIdeal("a nonempty ideal contains the empty set".into()));
        }
        for &m in &members {
            if m & !full != 0 {
                return Err(PreorderError::NotAnIdeal(format!("member {m:#b} leaves the ground set")));
            }
            let mut sub = m;
            loop {
                if !contains(sub, &members) {
                    return Err(PreorderError::NotAnIdeal(format!(
                        "not downward closed: {m:#b} in, {sub:#b} out"
                    )));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        for &a in &members {
            for &b in &members {
                if !contains(a | b, &members) {
                    return Err(PreorderError::NotAnIdeal(format!(
                        "not union closed: {a:#b} and {b:#b} in, union out"
                    )));
                }
            }
        }
        if contains(full, &members) && ground_size > 0 {
            return Err(PreorderError::NotAnIdeal("improper: contains the ground set".into()));
        }
        Ok(IdealFamily { ground_size, members })
    }

    /// All subsets of `max`.
    pub fn principal(ground_size: usize, max: u32) -> Result<Self, PreorderError> {
        let mut members = Vec::new();
        let mut sub = max;
        loop {
            members.push(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & max;
        }
        Self::new(ground_size, members)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, set: u32) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    /// The largest member; a finite ideal is exactly its subsets.
    pub fn max_member(&self) -> u32 {
        self.members.iter().fold(0, |a, &b| a | b)
    }

    pub fn is_proper_subfamily_of(&self, other: &IdealFamily) -> bool {
        self.ground_size == other.ground_size
            && self.members.iter().all(|m| other.contains(*m))
            && self.members.len() < other.members.len()
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&m| mask_to_sorted_indices(m as usize, self.ground_size))
            .collect();
        serde_json::to_string(&IdealFile { ground: self.ground_size, members: entries }).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self, PreorderError> {
        let f: IdealFile =
            serde_json::from_str(text).map_err(|e| PreorderError::BadFile(e.to_string()))?;
        let members = f
            .members
            .iter()
            .map(|entry| entry.iter().fold(0u32, |m, &i| m | (1 << i)))
            .collect();
        Self::new(f.ground, members)
    }
}

#[derive(Serialize, Deserialize)]
struct IdealFile {
    ground: usize,
    members: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SegResult {
    Ideal(IdealFamily),
    /// The family contains the ground set (always the case for non-strict
    /// segments of a finite total preorder).
    Improper,
}

/// The family of subsets bounded by some initial segment. Strict segments
/// use `y ≺ x`; non-strict use `y ≼ x`, which on finite domains always
/// yields an improper family.
pub fn seg_ideal(p: &PreorderSpec, strict: bool) -> SegResult {
    let full: u32 = if p.size() == 0 { 0 } else { (1 << p.size()) - 1 };
    let max_seg = (0..p.size())
        .map(|x| if strict { p.strict_segment(x) } else { p.segment(x) })
        .fold(0u32, |a, b| a | b);
    if max_seg == full && p.size() > 0 {
        return SegResult::Improper;
    }
    SegResult::Ideal(
        IdealFamily::principal(p.size(), max_seg).expect("principal family of a proper set"),
    )
}

/// Total preorders on `0..n` with at least `min_classes` equivalence
/// classes, enumerated by class count then lexicographically on the
/// class-assignment vector.
pub fn enumerate_total_preorders(n: usize, min_classes: usize) -> Vec<PreorderSpec> {
    let mut out = Vec::new();
    for k in min_classes.max(1)..=n {
        let mut assign = vec![0usize; n];
        loop {
            if is_surjective(&assign, k) {
                let blocks: Vec<Vec<usize>> = (0..k)
                    .map(|c| (0..n).filter(|&x| assign[x] == c).collect())
                    .collect();
                out.push(PreorderSpec::from_blocks(n, &blocks));
            }
            // next assignment vector over 0..k, lexicographic
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                assign[i] += 1;
                if assign[i] < k {
                    break;
                }
                assign[i] = 0;
            }
            if i == 0 && assign[0] == 0 {
                break;
            }
        }
    }
    out
}

fn is_surjective(assign: &[usize], k: usize) -> bool {
    (0..k).all(|c| assign.contains(&c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AccessResult {
    Witness(PreorderSpec),
    No { candidates_checked: usize },
}

/// Search for a preordering whose strict segments all lie inside the
/// ideal. Exhaustive over total preorders with ≥ 2 classes; ground size
/// capped at 6.
pub fn is_access_ideal(ideal: &IdealFamily) -> Result<AccessResult, PreorderError> {
    let n = ideal.ground_size();
    if n > 6 {
        return Err(PreorderError::BudgetExceeded { size: n, budget: 6 });
    }
    let mut checked = 0;
    for p in enumerate_total_preorders(n, 2) {
        checked += 1;
        // Seg(p) ⊆ ideal iff the largest strict segment is a member
        let max_seg = (0..n).map(|x| p.strict_segment(x)).fold(0u32, |a, b| a | b);
        if ideal.contains(max_seg) {
            return Ok(AccessResult::Witness(p));
        }
    }
    Ok(AccessResult::No { candidates_checked: checked })
}

#[derive(Clone, Debug)]
pub enum MinimalResult {
    Minimal {
        witness: PreorderSpec,
        sub_ideals_refuted: usize,
    },
    NotMinimal {
        blocking_sub_ideal: IdealFamily,
        witness: PreorderSpec,
    },
    NotAccess {
        candidates_checked: usize,
    },
}

/// Decide minimality by exhausting every proper sub-ideal. Ground size
/// capped at 5.
pub fn is_minimal_access(ideal: &IdealFamily) -> Result<MinimalResult, PreorderError> {
    let n = ideal.ground_size();
    if n > 5 {
        return Err(PreorderError::BudgetExceeded { size: n, budget: 5 });
    }
    let witness = match is_access_ideal(ideal)? {
        AccessResult::Witness(w) => w,
        AccessResult::No { candidates_checked } => {
            return Ok(MinimalResult::NotAccess { candidates_checked })
        }
    };
    // every sub-ideal is principal on a subset of the maximum member
    let max = ideal.max_member();
    let mut refuted = 0;
    let mut sub = max;
    loop {
        sub = sub.wrapping_sub(1) & max;
        if sub == max {
            break; // wrapped around
        }
        let candidate = IdealFamily::principal(n, sub)?;
        match is_access_ideal(&candidate)? {
            AccessResult::Witness(w) => {
                return Ok(MinimalResult::NotMinimal { blocking_sub_ideal: candidate, witness: w });
            }
            AccessResult::No { .. } => refuted += 1,
        }
        if sub == 0 {
            break;
        }
    }
    Ok(MinimalResult::Minimal { witness, sub_ideals_refuted: refuted })
}

// ---------------------------------------------------------------------------
// Surgery
// ---------------------------------------------------------------------------

/// The cut-and-zip construction: remove `b` from the initial segment of
/// `x0` and glue it element-by-element onto the cofinal part of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryInstance {
    pub base: PreorderSpec,
    pub x0: usize,
    pub a: u32,
    pub b: u32,
    /// Pairs `(y, z)` with `y ∈ a ∩ Y` (the final segment) and `z ∈ b`.
    pub zip: Vec<(usize, usize)>,
}

impl SurgeryInstance {
    /// Validate: `a` cofinal, `b` inside the initial segment of `x0`, and
    /// `zip` a bijection between `a ∩ Y` and `b`.
    pub fn validate(&self) -> Result<(), PreorderError> {
        let n = self.base.size();
        let full: u32 = if n == 0 { 0 } else { (1 << n) - 1 };
        if self.x0 >= n {
            return Err(PreorderError::BadInstance(format!("x0 = {} out of range", self.x0)));
        }
        if self.a & !full != 0 || self.b & !full != 0 {
            return Err(PreorderError::BadInstance("a or b leaves the ground set".into()));
        }
        if !self.base.is_cofinal(self.a) {
            return Err(PreorderError::BadInstance("a is not cofinal in the base".into()));
        }
        let x_seg = self.base.segment(self.x0);
        if self.b & !x_seg != 0 {
            return Err(PreorderError::BadInstance(
                "b must be a subset of the initial segment of x0".into(),
            ));
        }
        let y_part = full & !x_seg;
        let a_star = self.a & y_part;
        if (self.b.count_ones()) != a_star.count_ones() {
            return Err(PreorderError::BadInstance(format!(
                "|b| = {} but |a ∩ Y| = {}",
                self.b.count_ones(),
                a_star.count_ones()
            )));
        }
        let mut seen_y = 0u32;
        let mut seen_z = 0u32;
        for &(y, z) in &self.zip {
            if y >= n || z >= n {
                return Err(PreorderError::BadInstance("zip pair out of range".into()));
            }
            if a_star & (1 << y) == 0 {
                return Err(PreorderError::BadInstance(format!("zip source {y} is not in a ∩ Y")));
            }
            if self.b & (1 << z) == 0 {
                return Err(PreorderError::BadInstance(format!("zip target {z} is not in b")));
            }
            if seen_y & (1 << y) != 0 || seen_z & (1 << z) != 0 {
                return Err(PreorderError::BadInstance("zip is not a bijection".into()));
            }
            seen_y |= 1 << y;
            seen_z |= 1 << z;
        }
        if seen_y != a_star || seen_z != self.b {
            return Err(PreorderError::BadInstance("zip does not cover a ∩ Y and b".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let n = self.base.size();
        serde_json::to_string(&SurgeryFile {
            base: serde_json::from_str(&self.base.to_json()).unwrap(),
            x0: self.x0,
            a: mask_to_sorted_indices(self.a as usize, n),
            b: mask_to_sorted_indices(self.b as usize, n),
            zip: self.zip.iter().map(|&(y, z)| vec![y, z]).collect(),
        })
        .unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self, PreorderError> {
        let f: SurgeryFile =
            serde_json::from_str(text).map_err(|e| PreorderError::BadFile(e.to_string()))?;
        let base = PreorderSpec::from_json(&serde_json::to_string(&f.base).unwrap())?;
        let to_mask = |v: &[usize]| v.iter().fold(0u32, |m, &i| m | (1 << i));
        let mut zip = Vec::new();
        for pair in &f.zip {
            if pair.len() != 2 {
                return Err(PreorderError::BadFile("zip entries are [y, z] pairs".into()));
            }
            zip.push((pair[0], pair[1]));
        }
        let inst =
            SurgeryInstance { base, x0: f.x0, a: to_mask(&f.a), b: to_mask(&f.b), zip };
        inst.validate()?;
        Ok(inst)
    }
}

#[derive(Serialize, Deserialize)]
struct SurgeryFile {
    base: PreorderFile,
    x0: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    zip: Vec<Vec<usize>>,
}

/// Apply the surgery: restrict the base preorder to the complement of `b`,
/// add both orientations of every zip pair, and take the
/// reflexive-transitive closure.
pub fn surgery(inst: &SurgeryInstance) -> Result<PreorderSpec, PreorderError> {
    inst.validate()?;
    let n = inst.base.size();
    let mut rel = vec![false; n * n];
    for x in 0..n {
        rel[x * n + x] = true;
        for y in 0..n {
            let x_in_b = inst.b & (1 << x) != 0;
            let y_in_b = inst.b & (1 << y) != 0;
            if !x_in_b && !y_in_b && inst.base.le(x, y) {
                rel[x * n + y] = true;
            }
        }
    }
    for &(y, z) in &inst.zip {
        rel[y * n + z] = true;
        rel[z * n + y] = true;
    }
    // transitive closure
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
    PreorderSpec::new(n, rel)
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub holds: bool,
    pub witness: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurgeryReport {
    pub assertions: Vec<Assertion>,
}

impl SurgeryReport {
    pub fn all_hold(&self) -> bool {
        self.assertions.iter().all(|a| a.holds)
    }
}

/// Check the two mechanical steps the surgery is used for: the new segment
/// ideal sits inside the old one extended by subsets of the cut segment,
/// and `b` is cofinal afterwards, hence outside the new segment ideal.
pub fn verify_surgery_claims(inst: &SurgeryInstance, p1: &PreorderSpec) -> SurgeryReport {
    let n = inst.base.size();
    let full: u32 = if n == 0 { 0 } else { (1 << n) - 1 };
    let new_max_seg = (0..n).map(|x| p1.strict_segment(x)).fold(0u32, |a, b| a | b);
    let old_max_seg = (0..n).map(|x| inst.base.strict_segment(x)).fold(0u32, |a, b| a | b);
    let extended = old_max_seg | inst.base.segment(inst.x0);
    let inclusion = new_max_seg & !extended == 0;

    let b_cofinal = p1.is_cofinal(inst.b) && inst.b != 0;
    let b_not_in_seg = inst.b & !new_max_seg != 0;
    let vacuous = inst.b == 0;

    let idx = |m: u32| mask_to_sorted_indices(m as usize & full as usize, n);
    SurgeryReport {
        assertions: vec![
            Assertion {
                name: "segment ideal contained in the extended old one".into(),
                holds: inclusion,
                witness: serde_json::json!({
                    "new_max_segment": idx(new_max_seg),
                    "old_max_segment": idx(old_max_seg),
                    "extension": idx(inst.base.segment(inst.x0)),
                }),
            },
            Assertion {
                name: "b cofinal afterwards, hence not in the new segment ideal".into(),
                holds: vacuous || (b_cofinal && b_not_in_seg),
                witness: serde_json::json!({
                    "b": idx(inst.b),
                    "new_top_class": p1.top_class(),
                    "vacuous": vacuous,
                }),
            },
        ],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CofinalityResult {
    pub value: usize,
    pub note: String,
}

/// Least size of a well-ordered cofinal subset. Degenerate on finite
/// preorders: any top-class element alone is cofinal.
pub fn cofinality(p: &PreorderSpec) -> CofinalityResult {
    if p.size() == 0 {
        return CofinalityResult { value: 0, note: "empty preorder".into() };
    }
    CofinalityResult {
        value: 1,
        note: "finite preorders are degenerate here: a single top-class element is cofinal"
            .into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seg_ideal_linear_strict() {
        let l3 = PreorderSpec::linear(3);
        match seg_ideal(&l3, true) {
            SegResult::Ideal(i) => {
                // subsets of {0, 1}
                assert_eq!(i.max_member(), 0b011);
                assert_eq!(i.members().len(), 4);
            }
            SegResult::Improper => panic!("strict segments are proper"),
        }
        assert_eq!(seg_ideal(&l3, false), SegResult::Improper);
    }

    #[test]
    fn seg_ideal_two_blocks() {
        let p = PreorderSpec::from_blocks(4, &[vec![0, 1], vec![2, 3]]);
        match seg_ideal(&p, true) {
            SegResult::Ideal(i) => assert_eq!(i.max_member(), 0b0011),
            _ => panic!(),
        }
    }

    #[test]
    fn ideal_axioms_enforced() {
        // {∅, {0}, {1}} is not union closed on ground 2 with union {0,1} missing
        assert!(IdealFamily::new(2, vec![0b00, 0b01, 0b10]).is_err());
        // improper
        assert!(IdealFamily::new(2, vec![0b00, 0b01, 0b10, 0b11]).is_err());
        // not downward closed
        assert!(IdealFamily::new(2, vec![0b01]).is_err());
        assert!(IdealFamily::new(2, vec![0b00, 0b01]).is_ok());
    }

    #[test]
    fn access_examples() {
        // all subsets of size < n on ground n: principal on (n-1) elements?
        // No: that family is not union-closed for n ≥ 3, so use the
        // principal ideal of a single missing point instead.
        let i = IdealFamily::principal(3, 0b011).unwrap();
        match is_access_ideal(&i).unwrap() {
            AccessResult::Witness(w) => {
                let max_seg = (0..3).map(|x| w.strict_segment(x)).fold(0, |a, b| a | b);
                assert!(i.contains(max_seg));
            }
            AccessResult::No { .. } => panic!("witness exists: 0,1 below 2"),
        }
        // the empty ideal accesses nothing on ground ≥ 2
        let empty = IdealFamily::new(2, vec![0]).unwrap();
        assert!(matches!(is_access_ideal(&empty).unwrap(), AccessResult::No { .. }));
    }

    #[test]
    fn minimality_on_small_grounds() {
        // {∅, {0}} on ground 2: minimal (its only sub-ideal {∅} is not access)
        let i = IdealFamily::principal(2, 0b01).unwrap();
        match is_minimal_access(&i).unwrap() {
            MinimalResult::Minimal { witness, .. } => {
                let seg = match seg_ideal(&witness, true) {
                    SegResult::Ideal(s) => s,
                    _ => panic!(),
                };
                // minimality forces exactness: the ideal's members are
                // precisely the strictly bounded sets of the witness
                assert_eq!(seg.members(), i.members());
            }
            other => panic!("expected minimal, got {other:?}"),
        }
        // subsets of a pair on ground 3 are not minimal: a singleton
        // sub-ideal is still an access ideal
        let j = IdealFamily::principal(3, 0b011).unwrap();
        assert!(matches!(is_minimal_access(&j).unwrap(), MinimalResult::NotMinimal { .. }));
        // the empty ideal is not even access
        let e = IdealFamily::new(3, vec![0]).unwrap();
        assert!(matches!(is_minimal_access(&e).unwrap(), MinimalResult::NotAccess { .. }));
    }

    #[test]
    fn surgery_l6_example() {
        // base 0<1<2<3<4<5, x0 = 3, a = {2,5}, b = {1}, zip 5 ↔ 1
        let inst = SurgeryInstance {
            base: PreorderSpec::linear(6),
            x0: 3,
            a: 0b100100,
            b: 0b000010,
            zip: vec![(5, 1)],
        };
        let p1 = surgery(&inst).unwrap();
        assert!(p1.equivalent(1, 5), "1 and 5 are zipped together");
        assert!(p1.lt(0, 2), "the rest keeps its order");
        assert!(p1.lt(4, 1), "b is cut off its old place and sits on top");
        let report = verify_surgery_claims(&inst, &p1);
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn surgery_rejects_bounded_a() {
        let inst = SurgeryInstance {
            base: PreorderSpec::linear(6),
            x0: 3,
            a: 0b000100, // a = {2} is inside the initial segment of 3
            b: 0,
            zip: vec![],
        };
        assert!(matches!(surgery(&inst), Err(PreorderError::BadInstance(_))));
    }

    #[test]
    fn identity_surgery() {
        // x0 in the top class: Y is empty, b empty, nothing moves
        let base = PreorderSpec::linear(4);
        let inst = SurgeryInstance { base: base.clone(), x0: 3, a: 0b1000, b: 0, zip: vec![] };
        let p1 = surgery(&inst).unwrap();
        assert_eq!(p1, base);
    }

    #[test]
    fn enumerate_preorders_counts() {
        // ordered Bell numbers 1, 3, 13, 75 minus the single-class preorder
        assert_eq!(enumerate_total_preorders(1, 1).len(), 1);
        assert_eq!(enumerate_total_preorders(2, 1).len(), 3);
        assert_eq!(enumerate_total_preorders(3, 1).len(), 13);
        assert_eq!(enumerate_total_preorders(4, 1).len(), 75);
        assert_eq!(enumerate_total_preorders(3, 2).len(), 12);
    }

    #[test]
    fn cofinality_is_degenerate() {
        assert_eq!(cofinality(&PreorderSpec::linear(5)).value, 1);
        assert_eq!(cofinality(&PreorderSpec::from_blocks(4, &[vec![0, 1], vec![2, 3]])).value, 1);
    }

    #[test]
    fn json_round_trips() {
        let p = PreorderSpec::from_blocks(3, &[vec![0, 2], vec![1]]);
        assert_eq!(PreorderSpec::from_json(&p.to_json()).unwrap(), p);
        let i = IdealFamily::principal(3, 0b101).unwrap();
        assert_eq!(IdealFamily::from_json(&i.to_json()).unwrap(), i);
        let inst = SurgeryInstance {
            base: PreorderSpec::linear(6),
            x0: 3,
            a: 0b100100,
            b: 0b000010,
            zip: vec![(5, 1)],
        };
        assert_eq!(SurgeryInstance::from_json(&inst.to_json()).unwrap(), inst);
    }
}
