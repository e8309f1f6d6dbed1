//! Symbolic Ehrenfeucht–Fraïssé arena for powerset-style Boolean algebras
//! carrying an ideal of small elements.
//!
//! Each side of the board is a partition of its ground element into atoms,
//! and every atom carries only a *size label*: exactly-finite `Fin(n)`,
//! infinite-but-small `InfSmall` (inside the ideal), or `Large` (outside
//! it). A Spoiler move names, per atom, how the chosen element cuts it; the
//! built-in Duplicator mirrors the cut on the other side, matching finite
//! cardinalities exactly and answering large cuts with large cuts. The
//! board invariant is condition (*): an atom is small on one side exactly
//! when its partner is small on the other, with equal sizes when both are
//! finite.
//!
//! One configuration is special: when a side's ideal is exactly the finite
//! sets (`inf_small_inhabited = false`, the λ = ℵ₀ reading), Duplicator
//! must answer an infinite-small demand with a finite set. The horizon rule
//! answers `Fin(2^r)` with `r` rounds remaining, which survives any
//! extraction attack of length `r`; in unbounded play the same rule with a
//! fixed cap can be exhausted, and the engine reports that as a detectable
//! strategy breakdown rather than a crash.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::structure::FiniteStructure;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SizeLabel {
    Fin(u64),
    InfSmall,
    Large,
}

impl SizeLabel {
    pub fn in_ideal(self) -> bool {
        !matches!(self, SizeLabel::Large)
    }

    pub fn is_fin(self) -> bool {
        matches!(self, SizeLabel::Fin(_))
    }
}

impl fmt::Display for SizeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeLabel::Fin(n) => write!(f, "Fin:{n}"),
            SizeLabel::InfSmall => write!(f, "InfSmall"),
            SizeLabel::Large => write!(f, "Large"),
        }
    }
}

impl std::str::FromStr for SizeLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "InfSmall" => Ok(SizeLabel::InfSmall),
            "Large" => Ok(SizeLabel::Large),
            _ => {
                let n = s
                    .strip_prefix("Fin:")
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| format!("bad size label '{s}'"))?;
                if n == 0 {
                    return Err("Fin sizes start at 1".into());
                }
                Ok(SizeLabel::Fin(n))
            }
        }
    }
}

impl Serialize for SizeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SizeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One side of the arena. `inf_small_inhabited` says whether the ideal
/// contains infinite sets (true for `[κ]^{<λ}` with λ > ℵ₀ and for the
/// class side, false for λ = ℵ₀ where the ideal is exactly the finite
/// sets).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub inf_small_inhabited: bool,
}

impl AlgebraSpec {
    pub fn p_kappa() -> Self {
        AlgebraSpec { name: "P(kappa)".into(), inf_small_inhabited: true }
    }

    pub fn class_side() -> Self {
        AlgebraSpec { name: "C(V)".into(), inf_small_inhabited: true }
    }

    pub fn aleph0_side() -> Self {
        AlgebraSpec { name: "P(kappa) with lambda=aleph0".into(), inf_small_inhabited: false }
    }

    pub fn from_json(text: &str) -> Result<Self, SizedBooleanError> {
        serde_json::from_str(text).map_err(|e| SizedBooleanError::BadSpec(e.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Per-atom description of how the chosen element meets that atom: either
/// it does not cut it properly, or it splits it into a part inside the
/// element and a co-part outside, both nonempty.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum AtomMove {
    Keep,
    Split(SizeLabel, SizeLabel),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpoilerMove {
    pub side: Side,
    pub splits: Vec<AtomMove>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AtomPair {
    pub left: SizeLabel,
    pub right: SizeLabel,
}

impl AtomPair {
    fn get(&self, side: Side) -> SizeLabel {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Horizon {
    Bounded { remaining: u32 },
    Unbounded { cap: u32 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionState {
    pub atoms: Vec<AtomPair>,
    pub round: u32,
    pub horizon: Horizon,
    pub history: Vec<SpoilerMove>,
    pub specs: (AlgebraSpec, AlgebraSpec),
    /// False for all-finite boards, where the ground elements themselves
    /// are finite and no `Large` pair is required.
    pub infinite_ground: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum SizedBooleanError {
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("strategy breakdown at round {round}: {reason}")]
    Breakdown { round: u32, reason: String, transcript: Transcript },
    #[error("concretization needs all-finite labels, found {0}")]
    NonFiniteLabel(SizeLabel),
    #[error("state fails its invariants: {0}")]
    InvalidState(String),
    #[error("bad algebra spec: {0}")]
    BadSpec(String),
}

impl PartitionState {
    /// The default board: one `(Large, Large)` pair, the two ground
    /// elements.
    pub fn initial(left: AlgebraSpec, right: AlgebraSpec, rounds: u32) -> Self {
        PartitionState {
            atoms: vec![AtomPair { left: SizeLabel::Large, right: SizeLabel::Large }],
            round: 0,
            horizon: Horizon::Bounded { remaining: rounds },
            history: Vec::new(),
            specs: (left, right),
            infinite_ground: true,
        }
    }

    pub fn initial_unbounded(left: AlgebraSpec, right: AlgebraSpec, cap: u32) -> Self {
        let mut s = Self::initial(left, right, 0);
        s.horizon = Horizon::Unbounded { cap };
        s
    }

    /// An all-finite board over grounds of size `n`: games played here stay
    /// finite and can be concretized to explicit powerset algebras.
    pub fn initial_finite(left: AlgebraSpec, right: AlgebraSpec, n: u64, rounds: u32) -> Self {
        PartitionState {
            atoms: vec![AtomPair { left: SizeLabel::Fin(n), right: SizeLabel::Fin(n) }],
            round: 0,
            horizon: Horizon::Bounded { remaining: rounds },
            history: Vec::new(),
            specs: (left, right),
            infinite_ground: false,
        }
    }

    fn spec_of(&self, side: Side) -> &AlgebraSpec {
        match side {
            Side::Left => &self.specs.0,
            Side::Right => &self.specs.1,
        }
    }

    /// Size the horizon rule hands out: 2^r with r the rounds still to be
    /// played after the current one (or the configured cap).
    fn horizon_fin(&self) -> u64 {
        let r = match self.horizon {
            Horizon::Bounded { remaining } => remaining.saturating_sub(1),
            Horizon::Unbounded { cap } => cap,
        };
        1u64 << r.min(62)
    }
}

/// The set of legal ways to cut an atom with the given label, on a side
/// with the given spec. Infinite label families are represented
/// symbolically; use [`SplitSet::contains`] or enumerate with a cap on the
/// finite pieces.
#[derive(Clone, Copy, Debug)]
pub struct SplitSet {
    parent: SizeLabel,
    inf_small: bool,
}

pub fn legal_splits(label: SizeLabel, spec: &AlgebraSpec) -> SplitSet {
    SplitSet { parent: label, inf_small: spec.inf_small_inhabited }
}

impl SplitSet {
    pub fn contains(&self, parts: (SizeLabel, SizeLabel)) -> bool {
        use SizeLabel::*;
        let fin_ok = |l: SizeLabel| matches!(l, Fin(n) if n >= 1);
        match self.parent {
            Fin(n) => {
                matches!((parts.0, parts.1), (Fin(i), Fin(j)) if i >= 1 && j >= 1 && i + j == n)
            }
            InfSmall => {
                if !self.inf_small {
                    return false; // the label cannot even exist on this side
                }
                matches!(
                    (parts.0, parts.1),
                    (Fin(_), InfSmall) | (InfSmall, Fin(_)) | (InfSmall, InfSmall)
                ) && (fin_ok(parts.0) || parts.0 == InfSmall)
                    && (fin_ok(parts.1) || parts.1 == InfSmall)
            }
            Large => match (parts.0, parts.1) {
                (Large, Large) => true,
                // two pieces below the ideal threshold cannot union to Large
                (Fin(i), Large) | (Large, Fin(i)) => i >= 1,
                (InfSmall, Large) | (Large, InfSmall) => self.inf_small,
                _ => false,
            },
        }
    }

    /// All legal splits with finite pieces of size ≤ `fin_cap`.
    pub fn enumerate(&self, fin_cap: u64) -> Vec<(SizeLabel, SizeLabel)> {
        use SizeLabel::*;
        let mut out = Vec::new();
        match self.parent {
            Fin(n) => {
                for i in 1..n {
                    out.push((Fin(i), Fin(n - i)));
                }
            }
            InfSmall => {
                if self.inf_small {
                    for i in 1..=fin_cap {
                        out.push((Fin(i), InfSmall));
                        out.push((InfSmall, Fin(i)));
                    }
                    out.push((InfSmall, InfSmall));
                }
            }
            Large => {
                out.push((Large, Large));
                for i in 1..=fin_cap {
                    out.push((Fin(i), Large));
                    out.push((Large, Fin(i)));
                }
                if self.inf_small {
                    out.push((InfSmall, Large));
                    out.push((Large, InfSmall));
                }
            }
        }
        out
    }
}

/// Condition (*) and the exact-cardinality bookkeeping. True iff every
/// pair is small on one side exactly when small on the other, finite
/// labels match exactly (a `Fin`-vs-`InfSmall` pair is tolerated only when
/// the finite side's ideal has no infinite members, i.e. the horizon rule
/// produced it), labels are inhabited on their side, and a `(Large,
/// Large)` ground pair is present whenever the board models infinite
/// grounds.
pub fn verify_state(state: &PartitionState) -> bool {
    state_violation(state).is_none()
}

pub fn state_violation(state: &PartitionState) -> Option<String> {
    use SizeLabel::*;
    for (i, pair) in state.atoms.iter().enumerate() {
        if pair.left.in_ideal() != pair.right.in_ideal() {
            return Some(format!("atom {i}: condition (*) fails on ({}, {})", pair.left, pair.right));
        }
        if pair.left == InfSmall && !state.specs.0.inf_small_inhabited {
            return Some(format!("atom {i}: InfSmall label on a side whose ideal is the finite sets"));
        }
        if pair.right == InfSmall && !state.specs.1.inf_small_inhabited {
            return Some(format!("atom {i}: InfSmall label on a side whose ideal is the finite sets"));
        }
        match (pair.left, pair.right) {
            (Fin(a), Fin(b)) if a != b => {
                return Some(format!("atom {i}: exact cardinality rule fails, Fin:{a} vs Fin:{b}"));
            }
            (Fin(n), _) | (_, Fin(n)) if n == 0 => {
                return Some(format!("atom {i}: empty part"));
            }
            (Fin(_), InfSmall) if state.specs.0.inf_small_inhabited => {
                return Some(format!("atom {i}: Fin vs InfSmall outside the horizon configuration"));
            }
            (InfSmall, Fin(_)) if state.specs.1.inf_small_inhabited => {
                return Some(format!("atom {i}: InfSmall vs Fin outside the horizon configuration"));
            }
            _ => {}
        }
    }
    if state.infinite_ground
        && !state.atoms.iter().any(|p| p.left == Large && p.right == Large)
    {
        return Some("no (Large, Large) pair: the ground elements are never in the ideals".into());
    }
    None
}

fn respond_one(
    q: SizeLabel,
    parts: (SizeLabel, SizeLabel),
    responder_inf_small: bool,
    fin_budget: u64,
) -> Result<(SizeLabel, SizeLabel), String> {
    use SizeLabel::*;
    match (parts.0, parts.1) {
        (Large, Large) => match q {
            Large => Ok((Large, Large)),
            _ => Err("large-large cut of an atom whose partner is small".into()),
        },
        (small, Large) | (Large, small) if small != Large => {
            if q != Large {
                return Err("large cut of an atom whose partner is small".into());
            }
            let answer = match small {
                Fin(n) => Fin(n),
                InfSmall => {
                    if responder_inf_small {
                        InfSmall
                    } else {
                        Fin(fin_budget)
                    }
                }
                Large => unreachable!(),
            };
            Ok(if parts.0 == Large { (Large, answer) } else { (answer, Large) })
        }
        (p1, p2) => {
            // both parts small, so the parent and its partner are small
            match q {
                Large => Err("small-small cut of an atom whose partner is Large".into()),
                InfSmall => Ok(match (p1, p2) {
                    (Fin(a), _) => (Fin(a), InfSmall),
                    (InfSmall, Fin(b)) => (InfSmall, Fin(b)),
                    _ => (InfSmall, InfSmall),
                }),
                Fin(m) => match (p1, p2) {
                    (Fin(a), Fin(b)) => {
                        if a + b == m {
                            Ok((Fin(a), Fin(b)))
                        } else {
                            Err(format!("cannot match Fin:{a}+Fin:{b} inside Fin:{m}"))
                        }
                    }
                    (Fin(a), InfSmall) => {
                        if m > a {
                            Ok((Fin(a), Fin(m - a)))
                        } else {
                            Err(format!("finite budget Fin:{m} exhausted by a Fin:{a} demand"))
                        }
                    }
                    (InfSmall, Fin(b)) => {
                        if m > b {
                            Ok((Fin(m - b), Fin(b)))
                        } else {
                            Err(format!("finite budget Fin:{m} exhausted by a Fin:{b} demand"))
                        }
                    }
                    (InfSmall, InfSmall) => {
                        if m >= 2 {
                            let k = fin_budget.min(m - 1).max(1);
                            Ok((Fin(k), Fin(m - k)))
                        } else {
                            Err(format!("cannot cut Fin:{m} into two infinite demands"))
                        }
                    }
                    _ => unreachable!("both parts are small"),
                },
            }
        }
    }
}

/// Play one round: validate the Spoiler move, compute Duplicator's
/// response (the exact-cardinality matching strategy with the horizon
/// rule), and return the response together with the successor state.
pub fn duplicator_respond(
    state: &PartitionState,
    mv: &SpoilerMove,
) -> Result<(Vec<AtomMove>, PartitionState), SizedBooleanError> {
    if mv.splits.len() != state.atoms.len() {
        return Err(SizedBooleanError::IllegalMove(format!(
            "move describes {} atoms, the board has {}",
            mv.splits.len(),
            state.atoms.len()
        )));
    }
    let mover_spec = state.spec_of(mv.side);
    for (i, m) in mv.splits.iter().enumerate() {
        if let AtomMove::Split(a, b) = m {
            let label = state.atoms[i].get(mv.side);
            if !legal_splits(label, mover_spec).contains((*a, *b)) {
                return Err(SizedBooleanError::IllegalMove(format!(
                    "atom {i}: ({a}, {b}) is not a legal cut of {label}"
                )));
            }
        }
    }

    let budget = state.horizon_fin();
    let responder_spec = state.spec_of(mv.side.other());
    let mut response = Vec::with_capacity(mv.splits.len());
    let mut new_atoms = Vec::with_capacity(state.atoms.len() + 2);
    for (i, m) in mv.splits.iter().enumerate() {
        let pair = state.atoms[i];
        match m {
            AtomMove::Keep => {
                response.push(AtomMove::Keep);
                new_atoms.push(pair);
            }
            AtomMove::Split(a, b) => {
                let q = pair.get(mv.side.other());
                let (qa, qb) =
                    respond_one(q, (*a, *b), responder_spec.inf_small_inhabited, budget)
                        .map_err(|reason| SizedBooleanError::Breakdown {
                            round: state.round + 1,
                            reason: format!("atom {i}: {reason}"),
                            transcript: Transcript { records: Vec::new() },
                        })?;
                response.push(AtomMove::Split(qa, qb));
                let (part, copart) = match mv.side {
                    Side::Left => (
                        AtomPair { left: *a, right: qa },
                        AtomPair { left: *b, right: qb },
                    ),
                    Side::Right => (
                        AtomPair { left: qa, right: *a },
                        AtomPair { left: qb, right: *b },
                    ),
                };
                new_atoms.push(part);
                new_atoms.push(copart);
            }
        }
    }

    let mut next = state.clone();
    next.atoms = new_atoms;
    next.round += 1;
    if let Horizon::Bounded { remaining } = next.horizon {
        next.horizon = Horizon::Bounded { remaining: remaining.saturating_sub(1) };
    }
    next.history.push(mv.clone());
    Ok((response, next))
}

// ---------------------------------------------------------------------------
// Adversarial harness
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub enum Adversary {
    /// Seeded random splitter cutting at most `max_splits` atoms per move.
    Random { max_splits: usize },
    /// Creates an `InfSmall` atom on the right side, then keeps extracting
    /// singletons from it: the attack behind the horizon rule.
    SingletonExtraction,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RoundRecord {
    pub round: u32,
    pub mv: SpoilerMove,
    pub response: Vec<AtomMove>,
    pub atoms: Vec<AtomPair>,
    pub verified: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Transcript {
    pub records: Vec<RoundRecord>,
}

impl Transcript {
    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("round serializes"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn random_move(state: &PartitionState, rng: &mut ChaCha8Rng, max_splits: usize) -> SpoilerMove {
    use SizeLabel::*;
    let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
    let splittable: Vec<usize> = (0..state.atoms.len())
        .filter(|&i| !matches!(state.atoms[i].get(side), Fin(1)))
        .collect();
    let mut splits = vec![AtomMove::Keep; state.atoms.len()];
    if splittable.is_empty() {
        return SpoilerMove { side, splits };
    }
    let count = rng.gen_range(1..=max_splits.min(splittable.len()));
    let mut chosen = splittable;
    for _ in 0..chosen.len().saturating_sub(count) {
        let drop = rng.gen_range(0..chosen.len());
        chosen.swap_remove(drop);
    }
    let spec = state.spec_of(side);
    for i in chosen {
        let label = state.atoms[i].get(side);
        let options = legal_splits(label, spec).enumerate(4);
        if options.is_empty() {
            continue;
        }
        let pick = options[rng.gen_range(0..options.len())];
        splits[i] = AtomMove::Split(pick.0, pick.1);
    }
    SpoilerMove { side, splits }
}

fn extraction_move(state: &PartitionState) -> SpoilerMove {
    use SizeLabel::*;
    let mut splits = vec![AtomMove::Keep; state.atoms.len()];
    if let Some(i) = (0..state.atoms.len()).find(|&i| state.atoms[i].right == InfSmall) {
        splits[i] = AtomMove::Split(Fin(1), InfSmall);
        return SpoilerMove { side: Side::Right, splits };
    }
    if let Some(i) = (0..state.atoms.len()).find(|&i| state.atoms[i].right == Large) {
        splits[i] = AtomMove::Split(InfSmall, Large);
        return SpoilerMove { side: Side::Right, splits };
    }
    SpoilerMove { side: Side::Right, splits }
}

/// Drive the built-in strategy against an adversary for `steps` rounds,
/// recording every state and its verification result. A strategy
/// breakdown is returned as an error carrying the transcript collected so
/// far.
pub fn run_adversarial(
    initial: PartitionState,
    steps: u32,
    adversary: Adversary,
    seed: u64,
) -> Result<Transcript, SizedBooleanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = initial;
    let mut transcript = Transcript::default();
    for _ in 0..steps {
        let mv = match adversary {
            Adversary::Random { max_splits } => random_move(&state, &mut rng, max_splits),
            Adversary::SingletonExtraction => extraction_move(&state),
        };
        match duplicator_respond(&state, &mv) {
            Ok((response, next)) => {
                transcript.records.push(RoundRecord {
                    round: next.round,
                    mv,
                    response,
                    atoms: next.atoms.clone(),
                    verified: verify_state(&next),
                });
                state = next;
            }
            Err(SizedBooleanError::Breakdown { round, reason, .. }) => {
                return Err(SizedBooleanError::Breakdown { round, reason, transcript });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(transcript)
}

// ---------------------------------------------------------------------------
// Concretization
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Concretization {
    pub left: FiniteStructure,
    pub right: FiniteStructure,
    /// The generated-subalgebra map: one pair of powerset-coded elements
    /// per subset of the board's atoms.
    pub pairs: Vec<(usize, usize)>,
}

/// Turn an all-finite board into two explicit powerset algebras whose atom
/// blocks have exactly the labelled cardinalities, together with the
/// subalgebra pairing induced by the symbolic map. With a threshold the
/// algebras carry the ideal of subsets of size < t, so size lies would
/// break the `S` predicate under `game::is_partial_embedding`.
pub fn concretize(
    state: &PartitionState,
    threshold: Option<u32>,
) -> Result<Concretization, SizedBooleanError> {
    if let Some(v) = state_violation(state) {
        return Err(SizedBooleanError::InvalidState(v));
    }
    let mut left_sizes = Vec::new();
    let mut right_sizes = Vec::new();
    for pair in &state.atoms {
        match (pair.left, pair.right) {
            (SizeLabel::Fin(a), SizeLabel::Fin(b)) => {
                left_sizes.push(a as usize);
                right_sizes.push(b as usize);
            }
            (SizeLabel::Fin(_), other) | (other, _) => {
                return Err(SizedBooleanError::NonFiniteLabel(other));
            }
        }
    }
    let left_ground: usize = left_sizes.iter().sum();
    let right_ground: usize = right_sizes.iter().sum();
    assert!(left_ground <= 16 && right_ground <= 16, "board too large to concretize");

    let block_masks = |sizes: &[usize]| -> Vec<usize> {
        let mut masks = Vec::with_capacity(sizes.len());
        let mut next = 0usize;
        for &s in sizes {
            masks.push(((1usize << s) - 1) << next);
            next += s;
        }
        masks
    };
    let left_blocks = block_masks(&left_sizes);
    let right_blocks = block_masks(&right_sizes);

    let k = state.atoms.len();
    let mut pairs = Vec::with_capacity(1 << k);
    for subset in 0..(1usize << k) {
        let mut l = 0usize;
        let mut r = 0usize;
        for (i, (lb, rb)) in left_blocks.iter().zip(&right_blocks).enumerate() {
            if subset & (1 << i) != 0 {
                l |= lb;
                r |= rb;
            }
        }
        pairs.push((l, r));
    }
    Ok(Concretization {
        left: FiniteStructure::powerset_algebra(left_ground, threshold),
        right: FiniteStructure::powerset_algebra(right_ground, threshold),
        pairs,
    })
}
