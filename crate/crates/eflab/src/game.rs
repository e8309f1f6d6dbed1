//! Brute-force Ehrenfeucht–Fraïssé games on finite structures.
//!
//! Spoiler (player I) picks an element from either structure each round,
//! Duplicator (player II) answers on the other side, and Duplicator wins a
//! play iff the accumulated pairing is a partial embedding. [`who_wins`]
//! settles the n-round game exactly by memoized minimax and is the oracle
//! the rest of the crate is checked against.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::structure::FiniteStructure;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    M,
    N,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::M => Side::N,
            Side::N => Side::M,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpoilerMove {
    pub side: Side,
    pub element: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GameOutcome {
    DuplicatorWins,
    /// Carries a first winning Spoiler move (lowest element index, side M
    /// before N) for reproducibility.
    SpoilerWins(SpoilerMove),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RankResult {
    Rank(usize),
    Indistinguishable,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum GameError {
    #[error("node budget of {budget} positions exceeded (structures too large for brute force)")]
    BudgetExceeded { budget: usize },
    #[error("structures do not share a signature")]
    SignatureMismatch,
    #[error("illegal move: {0}")]
    IllegalMove(String),
}

#[derive(Clone, Copy, Debug)]
pub struct GameConfig {
    pub node_budget: usize,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig { node_budget: 10_000_000 }
    }
}

/// Is the pairing the graph of a partial embedding? Checks injectivity and
/// functionality both ways, preservation and reflection of every relation,
/// and of the ideal predicate when present.
pub fn is_partial_embedding(
    m: &FiniteStructure,
    n: &FiniteStructure,
    pairs: &[(usize, usize)],
) -> bool {
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if a >= m.universe() || b >= n.universe() {
            return false;
        }
        for &(a2, b2) in &pairs[i + 1..] {
            if (a == a2) != (b == b2) {
                return false;
            }
        }
        if (m.has_ideal() || n.has_ideal()) && m.in_ideal(a) != n.in_ideal(b) {
            return false;
        }
    }
    relations_preserved(m, n, pairs, None)
}

/// Incremental embedding check: `pairs` is already a partial embedding; is
/// it still one after adding `p`?
fn extends_embedding(
    m: &FiniteStructure,
    n: &FiniteStructure,
    pairs: &[(usize, usize)],
    p: (usize, usize),
) -> bool {
    for &(a, b) in pairs {
        if (a == p.0) != (b == p.1) {
            return false;
        }
    }
    if (m.has_ideal() || n.has_ideal()) && m.in_ideal(p.0) != n.in_ideal(p.1) {
        return false;
    }
    let all: Vec<(usize, usize)> = pairs.iter().copied().chain(std::iter::once(p)).collect();
    relations_preserved(m, n, &all, Some(all.len() - 1))
}

/// Check `R(a₁,…,a_k) ⟺ R(f(a₁),…,f(a_k))` for every relation and every
/// tuple over the paired elements. With `require`, only tuples mentioning
/// that pair index are checked (the rest are assumed already verified).
fn relations_preserved(
    m: &FiniteStructure,
    n: &FiniteStructure,
    pairs: &[(usize, usize)],
    require: Option<usize>,
) -> bool {
    for (name, rel) in m.relations() {
        let Some(arity) = rel.arity.or_else(|| n.relation(name).and_then(|r| r.arity)) else {
            continue; // empty on both sides: vacuously preserved
        };
        if arity == 0 {
            if m.holds(name, &[]) != n.holds(name, &[]) {
                return false;
            }
            continue;
        }
        if pairs.is_empty() {
            continue;
        }
        let mut idx = vec![0usize; arity];
        'tuples: loop {
            if require.is_none_or(|ri| idx.contains(&ri)) {
                let mt: Vec<usize> = idx.iter().map(|&k| pairs[k].0).collect();
                let nt: Vec<usize> = idx.iter().map(|&k| pairs[k].1).collect();
                if m.holds(name, &mt) != n.holds(name, &nt) {
                    return false;
                }
            }
            let mut j = 0;
            while j < arity {
                idx[j] += 1;
                if idx[j] < pairs.len() {
                    continue 'tuples;
                }
                idx[j] = 0;
                j += 1;
            }
            break;
        }
    }
    true
}

struct Search<'a> {
    m: &'a FiniteStructure,
    n: &'a FiniteStructure,
    memo: HashMap<(Vec<(usize, usize)>, usize), bool>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn duplicator_wins(
        &mut self,
        pairs: &mut Vec<(usize, usize)>,
        rounds: usize,
    ) -> Result<bool, GameError> {
        if rounds == 0 {
            return Ok(true);
        }
        let mut key: Vec<(usize, usize)> = pairs.clone();
        key.sort_unstable();
        key.dedup();
        if let Some(&w) = self.memo.get(&(key.clone(), rounds)) {
            return Ok(w);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GameError::BudgetExceeded { budget: self.budget });
        }
        let result = self.first_winning_spoiler_move(pairs, rounds)?.is_none();
        self.memo.insert((key, rounds), result);
        Ok(result)
    }

    /// Spoiler moves in canonical order (element index ascending, M before
    /// N); returns the first one Duplicator cannot answer.
    fn first_winning_spoiler_move(
        &mut self,
        pairs: &mut Vec<(usize, usize)>,
        rounds: usize,
    ) -> Result<Option<SpoilerMove>, GameError> {
        let max = self.m.universe().max(self.n.universe());
        for element in 0..max {
            for side in [Side::M, Side::N] {
                let us = if side == Side::M { self.m.universe() } else { self.n.universe() };
                if element >= us {
                    continue;
                }
                if !self.duplicator_can_answer(pairs, side, element, rounds)? {
                    return Ok(Some(SpoilerMove { side, element }));
                }
            }
        }
        Ok(None)
    }

    fn duplicator_can_answer(
        &mut self,
        pairs: &mut Vec<(usize, usize)>,
        side: Side,
        element: usize,
        rounds: usize,
    ) -> Result<bool, GameError> {
        let other = if side == Side::M { self.n.universe() } else { self.m.universe() };
        for r in 0..other {
            let p = if side == Side::M { (element, r) } else { (r, element) };
            if extends_embedding(self.m, self.n, pairs, p) {
                pairs.push(p);
                let w = self.duplicator_wins(pairs, rounds - 1);
                pairs.pop();
                if w? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

pub fn who_wins_with(
    m: &FiniteStructure,
    n: &FiniteStructure,
    rounds: usize,
    config: &GameConfig,
) -> Result<GameOutcome, GameError> {
    if !m.signature_matches(n) {
        return Err(GameError::SignatureMismatch);
    }
    let mut s = Search { m, n, memo: HashMap::new(), nodes: 0, budget: config.node_budget };
    if rounds == 0 {
        return Ok(GameOutcome::DuplicatorWins);
    }
    match s.first_winning_spoiler_move(&mut Vec::new(), rounds)? {
        Some(mv) => Ok(GameOutcome::SpoilerWins(mv)),
        None => Ok(GameOutcome::DuplicatorWins),
    }
}

/// Exact minimax winner of the `rounds`-round game.
pub fn who_wins(
    m: &FiniteStructure,
    n: &FiniteStructure,
    rounds: usize,
) -> Result<GameOutcome, GameError> {
    who_wins_with(m, n, rounds, &GameConfig::default())
}

/// Least `r ≤ max_rounds` at which Spoiler wins, if any.
pub fn ef_rank_distinguishing(
    m: &FiniteStructure,
    n: &FiniteStructure,
    max_rounds: usize,
) -> Result<RankResult, GameError> {
    for r in 0..=max_rounds {
        if let GameOutcome::SpoilerWins(_) = who_wins(m, n, r)? {
            return Ok(RankResult::Rank(r));
        }
    }
    Ok(RankResult::Indistinguishable)
}

// ---------------------------------------------------------------------------
// Interactive stepping
// ---------------------------------------------------------------------------

/// One completed round: which side Spoiler chose and the two matched
/// elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlayedPair {
    pub m_element: usize,
    pub n_element: usize,
    pub spoiler_side: Side,
}

/// State of a stepped game. `pending` holds Spoiler's choice awaiting a
/// Duplicator answer.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Play {
    pub pairs: Vec<PlayedPair>,
    pub pending: Option<SpoilerMove>,
    pub rounds_remaining: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PlayStatus {
    InProgress,
    DuplicatorWon,
    SpoilerWon,
}

impl Play {
    pub fn new(rounds: usize) -> Self {
        Play { pairs: Vec::new(), pending: None, rounds_remaining: rounds }
    }

    /// A play with no terminal round, extended lazily move by move. The
    /// exact solver only handles finite round counts; unbounded claims are
    /// exercised through the symbolic arena instead.
    pub fn unbounded() -> Self {
        Self::new(usize::MAX)
    }

    pub fn raw_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|p| (p.m_element, p.n_element)).collect()
    }

    pub fn status(&self, m: &FiniteStructure, n: &FiniteStructure) -> PlayStatus {
        if !is_partial_embedding(m, n, &self.raw_pairs()) {
            return PlayStatus::SpoilerWon;
        }
        if self.rounds_remaining == 0 && self.pending.is_none() {
            return PlayStatus::DuplicatorWon;
        }
        PlayStatus::InProgress
    }
}

/// Apply Spoiler's element choice.
pub fn step_spoiler(
    m: &FiniteStructure,
    n: &FiniteStructure,
    play: &Play,
    mv: SpoilerMove,
) -> Result<Play, GameError> {
    if play.pending.is_some() {
        return Err(GameError::IllegalMove("it is Duplicator's turn".into()));
    }
    if play.rounds_remaining == 0 {
        return Err(GameError::IllegalMove("no rounds remaining".into()));
    }
    let us = if mv.side == Side::M { m.universe() } else { n.universe() };
    if mv.element >= us {
        return Err(GameError::IllegalMove(format!(
            "element {} outside universe 0..{us}",
            mv.element
        )));
    }
    let mut next = play.clone();
    next.pending = Some(mv);
    Ok(next)
}

/// Apply Duplicator's answer on the opposite side.
pub fn step_duplicator(
    m: &FiniteStructure,
    n: &FiniteStructure,
    play: &Play,
    element: usize,
) -> Result<Play, GameError> {
    let Some(mv) = play.pending else {
        return Err(GameError::IllegalMove("it is Spoiler's turn".into()));
    };
    let us = if mv.side == Side::M { n.universe() } else { m.universe() };
    if element >= us {
        return Err(GameError::IllegalMove(format!(
            "element {element} outside universe 0..{us}"
        )));
    }
    let pair = match mv.side {
        Side::M => PlayedPair { m_element: mv.element, n_element: element, spoiler_side: Side::M },
        Side::N => PlayedPair { m_element: element, n_element: mv.element, spoiler_side: Side::N },
    };
    let mut next = play.clone();
    next.pending = None;
    next.pairs.push(pair);
    next.rounds_remaining -= 1;
    Ok(next)
}

/// Minimax answer for Duplicator: prefer the lowest-index element that
/// still wins the remaining game; fall back to the lowest-index element
/// that keeps the pairing an embedding, then to element 0.
pub fn auto_respond(
    m: &FiniteStructure,
    n: &FiniteStructure,
    play: &Play,
) -> Result<(usize, Play), GameError> {
    let Some(mv) = play.pending else {
        return Err(GameError::IllegalMove("no pending Spoiler move".into()));
    };
    let other = if mv.side == Side::M { n.universe() } else { m.universe() };
    let base = play.raw_pairs();
    let rounds_after = play.rounds_remaining - 1;
    let mut fallback = None;
    let mut search = Search {
        m,
        n,
        memo: HashMap::new(),
        nodes: 0,
        budget: GameConfig::default().node_budget,
    };
    for r in 0..other {
        let p = if mv.side == Side::M { (mv.element, r) } else { (r, mv.element) };
        if extends_embedding(m, n, &base, p) {
            if fallback.is_none() {
                fallback = Some(r);
            }
            let mut pairs: Vec<(usize, usize)> =
                base.iter().copied().chain(std::iter::once(p)).collect();
            if search.duplicator_wins(&mut pairs, rounds_after)? {
                let next = step_duplicator(m, n, play, r)?;
                return Ok((r, next));
            }
        }
    }
    let r = fallback.unwrap_or(0);
    let next = step_duplicator(m, n, play, r)?;
    Ok((r, next))
}

/// Transcript line format: one JSON object per chosen element.
#[derive(Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub round: usize,
    pub side: Side,
    pub player: String,
    pub element: usize,
}

pub fn transcript_line(round: usize, side: Side, player_i: bool, element: usize) -> String {
    let side = match side {
        Side::M => "M",
        Side::N => "N",
    };
    let player = if player_i { "I" } else { "II" };
    format!("{{\"round\": {round}, \"side\": \"{side}\", \"player\": \"{player}\", \"element\": {element}}}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(n: usize) -> FiniteStructure {
        FiniteStructure::linear_order(n)
    }

    #[test]
    fn embedding_examples() {
        let l3 = lin(3);
        assert!(is_partial_embedding(&l3, &l3, &[(0, 0), (2, 2)]));
        assert!(!is_partial_embedding(&l3, &l3, &[(0, 1), (1, 0)]));
        // duplicate mapping is inconsistent
        assert!(!is_partial_embedding(&l3, &l3, &[(0, 0), (0, 1)]));
        assert!(is_partial_embedding(&l3, &l3, &[(1, 1), (1, 1)]));
    }

    #[test]
    fn embedding_respects_ideal() {
        let p = FiniteStructure::powerset_algebra(2, Some(2));
        // S holds of {0} but fails of {0,1}
        assert!(!is_partial_embedding(&p, &p, &[(0b01, 0b11)]));
        assert!(is_partial_embedding(&p, &p, &[(0b01, 0b10)]));
    }

    #[test]
    fn who_wins_examples() {
        assert_eq!(who_wins(&lin(3), &lin(4), 2).unwrap(), GameOutcome::DuplicatorWins);
        assert!(matches!(who_wins(&lin(3), &lin(4), 3).unwrap(), GameOutcome::SpoilerWins(_)));
        for n in 0..=3 {
            for size in 1..=4 {
                assert_eq!(
                    who_wins(&lin(size), &lin(size), n).unwrap(),
                    GameOutcome::DuplicatorWins,
                    "identity game lin:{size} rounds {n}"
                );
            }
            // identity games on structures with an ideal predicate too
            let p = FiniteStructure::powerset_algebra(2, Some(2));
            assert_eq!(
                who_wins(&p, &p, n).unwrap(),
                GameOutcome::DuplicatorWins,
                "identity game on a powerset algebra, rounds {n}"
            );
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ef_rank_distinguishing(&lin(3), &lin(4), 5).unwrap(), RankResult::Rank(3));
        assert_eq!(
            ef_rank_distinguishing(&lin(2), &lin(2), 5).unwrap(),
            RankResult::Indistinguishable
        );
        // size-1 vs size-2: Spoiler needs both elements of the larger order
        assert_eq!(ef_rank_distinguishing(&lin(1), &lin(2), 5).unwrap(), RankResult::Rank(2));
    }

    #[test]
    fn symmetry_and_monotonicity() {
        for (a, b) in [(1, 2), (2, 3), (3, 4), (2, 4)] {
            for r in 0..=3 {
                let ab = who_wins(&lin(a), &lin(b), r).unwrap();
                let ba = who_wins(&lin(b), &lin(a), r).unwrap();
                assert_eq!(
                    matches!(ab, GameOutcome::DuplicatorWins),
                    matches!(ba, GameOutcome::DuplicatorWins),
                    "symmetry {a},{b},{r}"
                );
            }
            // monotonicity: duplicator win at r implies win at every r' < r
            let mut last_dup = true;
            for r in 0..=4 {
                let dup = matches!(
                    who_wins(&lin(a), &lin(b), r).unwrap(),
                    GameOutcome::DuplicatorWins
                );
                if !last_dup {
                    assert!(!dup, "once lost, stays lost: {a},{b},{r}");
                }
                last_dup = dup;
            }
        }
    }

    #[test]
    fn witness_is_deterministic() {
        let a = who_wins(&lin(3), &lin(4), 3).unwrap();
        let b = who_wins(&lin(3), &lin(4), 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = GameConfig { node_budget: 5 };
        let r = who_wins_with(&lin(4), &lin(4), 4, &cfg);
        assert!(matches!(r, Err(GameError::BudgetExceeded { .. })));
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let p = FiniteStructure::powerset_algebra(2, Some(1));
        assert!(matches!(
            who_wins(&lin(3), &p, 1),
            Err(GameError::SignatureMismatch)
        ));
    }

    #[test]
    fn stepping_a_game() {
        let m = lin(4);
        let n = lin(3);
        let play = Play::new(2);
        let play = step_spoiler(&m, &n, &play, SpoilerMove { side: Side::M, element: 2 }).unwrap();
        assert!(play.pending.is_some());
        let (_, play) = auto_respond(&m, &n, &play).unwrap();
        assert_eq!(play.status(&m, &n), PlayStatus::InProgress);
        assert!(is_partial_embedding(&m, &n, &play.raw_pairs()));
        let play = step_spoiler(&m, &n, &play, SpoilerMove { side: Side::N, element: 0 }).unwrap();
        let (_, play) = auto_respond(&m, &n, &play).unwrap();
        assert!(matches!(play.status(&m, &n), PlayStatus::DuplicatorWon | PlayStatus::SpoilerWon));
        assert_eq!(play.rounds_remaining, 0);
    }

    #[test]
    fn illegal_moves_are_reported() {
        let m = lin(2);
        let n = lin(2);
        let play = Play::new(1);
        assert!(matches!(
            step_spoiler(&m, &n, &play, SpoilerMove { side: Side::M, element: 9 }),
            Err(GameError::IllegalMove(_))
        ));
        assert!(matches!(step_duplicator(&m, &n, &play, 0), Err(GameError::IllegalMove(_))));
    }
}
