//! Exhaustive, duplicate-free enumeration of sentences, used as the oracle
//! feed for the game-correspondence and translation tests.
//!
//! Variables follow a canonical de-Bruijn-level discipline: the binder
//! entered with `k` variables of its sort already in scope binds index `k`.
//! Every structurally distinct formula within the bounds is produced
//! exactly once, in a deterministic order.

use std::collections::HashMap;

use super::{Formula, LanguageTag, Sort, Var};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Ctx {
    ind: u32,
    ur: u32,
    set: u32,
}

#[derive(Clone, Debug)]
pub struct Enumerator {
    pub tag: LanguageTag,
    pub max_rank: usize,
    pub max_size: usize,
    /// Free set variables `X0..X{n-1}` available to atoms (for enumerating
    /// open formulas such as positivity candidates).
    pub free_set_vars: u32,
    pub allow_set_quantifiers: bool,
}

impl Enumerator {
    pub fn new(tag: LanguageTag, max_rank: usize, max_size: usize) -> Self {
        Enumerator {
            tag,
            max_rank,
            max_size,
            free_set_vars: 0,
            allow_set_quantifiers: tag == LanguageTag::Lmon,
        }
    }

    pub fn with_free_set_vars(mut self, n: u32) -> Self {
        self.free_set_vars = n;
        self
    }

    pub fn without_set_quantifiers(mut self) -> Self {
        self.allow_set_quantifiers = false;
        self
    }

    /// All formulas within the bounds whose individual and urelement
    /// variables are bound (free set variables per `free_set_vars`).
    pub fn sentences(&self) -> Vec<Formula> {
        let mut memo = HashMap::new();
        let ctx = Ctx { ind: 0, ur: 0, set: self.free_set_vars };
        let mut out = Vec::new();
        for size in 2..=self.max_size {
            out.extend(self.of_size(size, self.max_rank, ctx, &mut memo).iter().cloned());
        }
        out
    }

    fn of_size(
        &self,
        size: usize,
        rank_budget: usize,
        ctx: Ctx,
        memo: &mut HashMap<(usize, usize, Ctx), Vec<Formula>>,
    ) -> Vec<Formula> {
        if let Some(v) = memo.get(&(size, rank_budget, ctx)) {
            return v.clone();
        }
        let mut out = Vec::new();
        self.atoms(size, ctx, &mut out);
        if size >= 3 {
            for a in self.of_size(size - 1, rank_budget, ctx, memo) {
                out.push(Formula::not(a));
            }
        }
        if size >= 5 {
            for left_size in 2..=(size - 3) {
                let right_size = size - 1 - left_size;
                let lefts = self.of_size(left_size, rank_budget, ctx, memo);
                let rights = self.of_size(right_size, rank_budget, ctx, memo);
                for a in &lefts {
                    for b in &rights {
                        out.push(Formula::and(a.clone(), b.clone()));
                        out.push(Formula::or(a.clone(), b.clone()));
                        out.push(Formula::implies(a.clone(), b.clone()));
                    }
                }
            }
        }
        if size >= 3 && rank_budget >= 1 {
            for sort in self.quantifiable_sorts() {
                let (v, inner) = match sort {
                    Sort::Ind => (Var::ind(ctx.ind), Ctx { ind: ctx.ind + 1, ..ctx }),
                    Sort::Ur => (Var::ur(ctx.ur), Ctx { ur: ctx.ur + 1, ..ctx }),
                    Sort::Set => (Var::set(ctx.set), Ctx { set: ctx.set + 1, ..ctx }),
                };
                for a in self.of_size(size - 1, rank_budget - 1, inner, memo) {
                    out.push(Formula::exists(v, a.clone()));
                    out.push(Formula::forall(v, a));
                }
            }
        }
        memo.insert((size, rank_budget, ctx), out.clone());
        out
    }

    fn quantifiable_sorts(&self) -> Vec<Sort> {
        match self.tag {
            LanguageTag::Lord | LanguageTag::LbS => vec![Sort::Ind],
            LanguageTag::L1S => vec![Sort::Ind, Sort::Ur],
            LanguageTag::Lmon => {
                if self.allow_set_quantifiers {
                    vec![Sort::Ind, Sort::Set]
                } else {
                    vec![Sort::Ind]
                }
            }
        }
    }

    fn atoms(&self, size: usize, ctx: Ctx, out: &mut Vec<Formula>) {
        use LanguageTag::*;
        if size == 2 && matches!(self.tag, LbS | L1S) {
            for a in 0..ctx.ind {
                out.push(Formula::S(Var::ind(a)));
            }
        }
        if size != 3 {
            return;
        }
        match self.tag {
            Lord | Lmon => {
                for a in 0..ctx.ind {
                    for b in 0..ctx.ind {
                        out.push(Formula::Less(Var::ind(a), Var::ind(b)));
                    }
                }
                for a in 0..ctx.ind {
                    for b in 0..ctx.ind {
                        out.push(Formula::Eq(Var::ind(a), Var::ind(b)));
                    }
                }
                if self.tag == Lmon {
                    for a in 0..ctx.ind {
                        for b in 0..ctx.set {
                            out.push(Formula::In(Var::ind(a), Var::set(b)));
                        }
                    }
                }
            }
            LbS => {
                for a in 0..ctx.ind {
                    for b in 0..ctx.ind {
                        out.push(Formula::Subeq(Var::ind(a), Var::ind(b)));
                    }
                }
                for a in 0..ctx.ind {
                    for b in 0..ctx.ind {
                        out.push(Formula::Eq(Var::ind(a), Var::ind(b)));
                    }
                }
            }
            L1S => {
                for a in 0..ctx.ur {
                    for b in 0..ctx.ur {
                        out.push(Formula::UrEq(Var::ur(a), Var::ur(b)));
                    }
                }
                for a in 0..ctx.ur {
                    for b in 0..ctx.ind {
                        out.push(Formula::UrIn(Var::ur(a), Var::ind(b)));
                    }
                }
                for a in 0..ctx.ind {
                    for b in 0..ctx.ind {
                        out.push(Formula::Eq(Var::ind(a), Var::ind(b)));
                    }
                }
            }
        }
    }
}

/// Closed sentences of `tag` with quantifier rank ≤ `max_rank` and AST size
/// ≤ `max_size`.
pub fn enumerate_sentences(tag: LanguageTag, max_rank: usize, max_size: usize) -> Vec<Formula> {
    Enumerator::new(tag, max_rank, max_size).sentences()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use std::collections::HashSet;

    #[test]
    fn includes_rank_one_basics() {
        let all = enumerate_sentences(LanguageTag::Lord, 1, 4);
        let want1 = parse("A x0. x0 < x0", LanguageTag::Lord).unwrap();
        let want2 = parse("E x0. x0 < x0", LanguageTag::Lord).unwrap();
        assert!(all.contains(&want1));
        assert!(all.contains(&want2));
        // frozen count: {A,E} x {x0<x0, x0=x0}
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn deterministic_and_duplicate_free() {
        let a = enumerate_sentences(LanguageTag::Lord, 2, 6);
        let b = enumerate_sentences(LanguageTag::Lord, 2, 6);
        assert_eq!(a, b);
        let set: HashSet<&Formula> = a.iter().collect();
        assert_eq!(set.len(), a.len(), "no structural duplicates");
    }

    #[test]
    fn every_sentence_parses_back(){
        for f in enumerate_sentences(LanguageTag::L1S, 2, 6) {
            let printed = f.to_string();
            let back = parse(&printed, LanguageTag::L1S).unwrap();
            assert_eq!(back, f, "{printed}");
        }
    }

    #[test]
    fn ranks_and_sizes_respected() {
        for f in enumerate_sentences(LanguageTag::Lmon, 2, 7) {
            assert!(f.quantifier_rank() <= 2);
            assert!(f.size() <= 7);
            assert!(f.free_vars().is_empty());
        }
    }

    #[test]
    fn free_set_variables_appear() {
        let open = Enumerator::new(LanguageTag::Lmon, 2, 5)
            .with_free_set_vars(1)
            .without_set_quantifiers()
            .sentences();
        assert!(open.iter().any(|f| f.free_vars() == vec![Var::set(0)]));
        assert!(open.iter().all(|f| f.is_normal()));
    }
}
