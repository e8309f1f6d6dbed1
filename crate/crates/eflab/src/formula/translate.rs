//! The two interpretations between the membership language `L1S` and the
//! algebra language `LbS`.
//!
//! `translate_plus` sends a two-sorted formula to an algebra formula:
//! urelement variables `p_i` land on even individual indices, set variables
//! `x_j` on odd ones, membership `p in x` becomes "`p` is an atom below
//! `x`", and urelement quantifiers are relativized to atoms. The `Atom`
//! predicate is inlined at translation time so outputs stay in pure `LbS`:
//!
//! ```text
//! Atom(y) :=  ~Zero(y) & A z. (z <= y -> Zero(z) | z = y)
//! Zero(v) :=  A w. v <= w
//! ```
//!
//! `translate_prime` goes the other way, unfolding `x <= y` to
//! `A p. (p in x -> p in y)` and keeping `=` and `S` fixed.

use super::{check_language, Formula, FormulaError, LanguageTag, Sort, Var};

/// The inlined `LbS` formula saying `y` is an atom: nonzero, and every
/// element below it is zero or `y` itself. `z` and `w` must be fresh.
pub fn atom_macro(y: Var, z: Var, w: Var) -> Formula {
    let zero_of = |v: Var| Formula::forall(w, Formula::Subeq(v, w));
    Formula::and(
        Formula::not(zero_of(y)),
        Formula::forall(
            z,
            Formula::implies(
                Formula::Subeq(z, y),
                Formula::or(zero_of(z), Formula::Eq(z, y)),
            ),
        ),
    )
}

fn plus_var(v: Var) -> Var {
    match v.sort {
        Sort::Ur => Var::ind(2 * v.index),
        Sort::Ind => Var::ind(2 * v.index + 1),
        Sort::Set => v,
    }
}

/// Interpret an `L1S` formula in `LbS`.
pub fn translate_plus(f: &Formula) -> Result<Formula, FormulaError> {
    check_language(f, LanguageTag::L1S)?;
    let mut vars = Vec::new();
    f.all_vars(&mut vars);
    let max_target = vars.iter().map(|v| plus_var(*v).index).max().map_or(0, |m| m + 1);
    let z = Var::ind(max_target);
    let w = Var::ind(max_target + 1);
    Ok(tr_plus(f, z, w))
}

fn tr_plus(f: &Formula, z: Var, w: Var) -> Formula {
    use Formula::*;
    match f {
        UrEq(p, q) => Eq(plus_var(*p), plus_var(*q)),
        UrIn(p, x) => Formula::and(
            atom_macro(plus_var(*p), z, w),
            Subeq(plus_var(*p), plus_var(*x)),
        ),
        S(x) => S(plus_var(*x)),
        Eq(a, b) => Eq(plus_var(*a), plus_var(*b)),
        Not(a) => Formula::not(tr_plus(a, z, w)),
        And(a, b) => Formula::and(tr_plus(a, z, w), tr_plus(b, z, w)),
        Or(a, b) => Formula::or(tr_plus(a, z, w), tr_plus(b, z, w)),
        Implies(a, b) => Formula::implies(tr_plus(a, z, w), tr_plus(b, z, w)),
        Exists(v, a) if v.sort == Sort::Ur => {
            let y = plus_var(*v);
            Formula::exists(y, Formula::and(atom_macro(y, z, w), tr_plus(a, z, w)))
        }
        Forall(v, a) if v.sort == Sort::Ur => {
            let y = plus_var(*v);
            Formula::forall(y, Formula::implies(atom_macro(y, z, w), tr_plus(a, z, w)))
        }
        Exists(v, a) => Formula::exists(plus_var(*v), tr_plus(a, z, w)),
        Forall(v, a) => Formula::forall(plus_var(*v), tr_plus(a, z, w)),
        Less(..) | Subeq(..) | In(..) => unreachable!("not L1S atoms"),
    }
}

/// Interpret an `LbS` formula in `L1S`.
pub fn translate_prime(f: &Formula) -> Result<Formula, FormulaError> {
    check_language(f, LanguageTag::LbS)?;
    // LbS has no urelement variables, so p0 is free to bind
    let p = Var::ur(0);
    Ok(tr_prime(f, p))
}

fn tr_prime(f: &Formula, p: Var) -> Formula {
    use Formula::*;
    match f {
        Subeq(x, y) => Formula::forall(
            p,
            Formula::implies(UrIn(p, *x), UrIn(p, *y)),
        ),
        Eq(a, b) => Eq(*a, *b),
        S(x) => S(*x),
        Not(a) => Formula::not(tr_prime(a, p)),
        And(a, b) => Formula::and(tr_prime(a, p), tr_prime(b, p)),
        Or(a, b) => Formula::or(tr_prime(a, p), tr_prime(b, p)),
        Implies(a, b) => Formula::implies(tr_prime(a, p), tr_prime(b, p)),
        Exists(v, a) => Formula::exists(*v, tr_prime(a, p)),
        Forall(v, a) => Formula::forall(*v, tr_prime(a, p)),
        Less(..) | UrEq(..) | UrIn(..) | In(..) => unreachable!("not LbS atoms"),
    }
}
