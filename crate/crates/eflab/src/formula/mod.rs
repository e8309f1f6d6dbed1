//! Four formula languages over a shared sorted AST, with parsing,
//! classification, translation and finite model checking.
//!
//! * `Lord` — first-order orders: atoms `x<y`, `x=y`.
//! * `LbS`  — Boolean algebras with an ideal predicate: `x<=y` (⊑), `x=y`,
//!   `S(x)`.
//! * `L1S`  — a two-sorted membership language with urelement variables:
//!   `p=q`, `p in x`, `S(x)`.
//! * `Lmon` — monadic second-order orders: `x<y`, `x=y`, `x in X`.
//!
//! Variables are sort-tagged with numeric indices and print as `x0, x1, …`
//! (individual), `p0, p1, …` (urelement) and `X0, X1, …` (set). The
//! language tag is always supplied out of band, never inferred.

mod enumerate;
mod eval;
mod parse;
mod positive;
mod translate;

pub use enumerate::{enumerate_sentences, Enumerator};
pub use eval::{
    cof_sets, eval, eval_cached, Assignment, EvalError, Model, SetRange, TwoSortedStructure,
};
pub use parse::parse;
pub use positive::{is_moschovakis_shape, is_positive, moschovakis_prenex};
pub use translate::{atom_macro, translate_plus, translate_prime};

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sort {
    Ind,
    Ur,
    Set,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var {
    pub sort: Sort,
    pub index: u32,
}

impl Var {
    pub fn ind(index: u32) -> Var {
        Var { sort: Sort::Ind, index }
    }
    pub fn ur(index: u32) -> Var {
        Var { sort: Sort::Ur, index }
    }
    pub fn set(index: u32) -> Var {
        Var { sort: Sort::Set, index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.sort {
            Sort::Ind => "x",
            Sort::Ur => "p",
            Sort::Set => "X",
        };
        write!(f, "{prefix}{}", self.index)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LanguageTag {
    Lord,
    LbS,
    L1S,
    Lmon,
}

impl LanguageTag {
    pub fn parse_name(s: &str) -> Option<LanguageTag> {
        match s {
            "lord" => Some(LanguageTag::Lord),
            "lbs" => Some(LanguageTag::LbS),
            "l1s" => Some(LanguageTag::L1S),
            "lmon" => Some(LanguageTag::Lmon),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Less(Var, Var),
    Eq(Var, Var),
    Subeq(Var, Var),
    S(Var),
    UrEq(Var, Var),
    UrIn(Var, Var),
    In(Var, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum FormulaError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("sort error: {0}")]
    Sort(String),
    #[error("formula is not in {tag:?}: {msg}")]
    WrongLanguage { tag: LanguageTag, msg: String },
    #[error("formula is not positive")]
    NotPositive,
    #[error("unsupported fragment: {0}")]
    UnsupportedFragment(String),
    #[error("prenex output failed finite-model validation (this is a bug): {0}")]
    ValidationFailed(String),
}

use Formula::*;

impl Formula {
    #[allow(clippy::should_implement_trait)] // constructor named alongside and/or/implies
    pub fn not(a: Formula) -> Formula {
        Not(Box::new(a))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Implies(Box::new(a), Box::new(b))
    }
    pub fn exists(v: Var, a: Formula) -> Formula {
        Exists(v, Box::new(a))
    }
    pub fn forall(v: Var, a: Formula) -> Formula {
        Forall(v, Box::new(a))
    }

    /// AST size: connectives and quantifiers count 1, an atom counts 1 plus
    /// its variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Less(..) | Eq(..) | Subeq(..) | UrEq(..) | UrIn(..) | In(..) => 3,
            S(_) => 2,
            Not(a) => 1 + a.size(),
            And(a, b) | Or(a, b) | Implies(a, b) => 1 + a.size() + b.size(),
            Exists(_, a) | Forall(_, a) => 1 + a.size(),
        }
    }

    /// Maximum quantifier nesting depth (all sorts count).
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Less(..) | Eq(..) | Subeq(..) | S(_) | UrEq(..) | UrIn(..) | In(..) => 0,
            Not(a) => a.quantifier_rank(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.quantifier_rank().max(b.quantifier_rank()),
            Exists(_, a) | Forall(_, a) => 1 + a.quantifier_rank(),
        }
    }

    /// No quantified set variables anywhere (free set variables are fine).
    pub fn is_normal(&self) -> bool {
        match self {
            Less(..) | Eq(..) | Subeq(..) | S(_) | UrEq(..) | UrIn(..) | In(..) => true,
            Not(a) => a.is_normal(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.is_normal() && b.is_normal(),
            Exists(v, a) | Forall(v, a) => v.sort != Sort::Set && a.is_normal(),
        }
    }

    pub fn atom_vars(&self) -> Vec<Var> {
        match self {
            Less(a, b) | Eq(a, b) | Subeq(a, b) | UrEq(a, b) | UrIn(a, b) | In(a, b) => {
                vec![*a, *b]
            }
            S(a) => vec![*a],
            _ => vec![],
        }
    }

    /// Every variable occurrence, binders included.
    pub fn all_vars(&self, out: &mut Vec<Var>) {
        match self {
            Less(..) | Eq(..) | Subeq(..) | S(_) | UrEq(..) | UrIn(..) | In(..) => {
                out.extend(self.atom_vars())
            }
            Not(a) => a.all_vars(out),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                a.all_vars(out);
                b.all_vars(out);
            }
            Exists(v, a) | Forall(v, a) => {
                out.push(*v);
                a.all_vars(out);
            }
        }
    }

    pub fn free_vars(&self) -> Vec<Var> {
        fn go(f: &Formula, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
            match f {
                Less(..) | Eq(..) | Subeq(..) | S(_) | UrEq(..) | UrIn(..) | In(..) => {
                    for v in f.atom_vars() {
                        if !bound.contains(&v) && !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
                Not(a) => go(a, bound, out),
                And(a, b) | Or(a, b) | Implies(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Exists(v, a) | Forall(v, a) => {
                    bound.push(*v);
                    go(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Does any membership atom `x in X` occur?
    pub fn mentions_in_atom(&self) -> bool {
        match self {
            In(..) => true,
            Less(..) | Eq(..) | Subeq(..) | S(_) | UrEq(..) | UrIn(..) => false,
            Not(a) | Exists(_, a) | Forall(_, a) => a.mentions_in_atom(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.mentions_in_atom() || b.mentions_in_atom(),
        }
    }

    /// Rename every variable occurrence (binders included) through `map`.
    /// The map must be injective to be capture-free.
    pub fn map_vars(&self, map: &impl Fn(Var) -> Var) -> Formula {
        match self {
            Less(a, b) => Less(map(*a), map(*b)),
            Eq(a, b) => Eq(map(*a), map(*b)),
            Subeq(a, b) => Subeq(map(*a), map(*b)),
            S(a) => S(map(*a)),
            UrEq(a, b) => UrEq(map(*a), map(*b)),
            UrIn(a, b) => UrIn(map(*a), map(*b)),
            In(a, b) => In(map(*a), map(*b)),
            Not(a) => Formula::not(a.map_vars(map)),
            And(a, b) => Formula::and(a.map_vars(map), b.map_vars(map)),
            Or(a, b) => Formula::or(a.map_vars(map), b.map_vars(map)),
            Implies(a, b) => Formula::implies(a.map_vars(map), b.map_vars(map)),
            Exists(v, a) => Formula::exists(map(*v), a.map_vars(map)),
            Forall(v, a) => Formula::forall(map(*v), a.map_vars(map)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormulaClass {
    Normal,
    Pi11,
    Sigma11,
    Other,
}

/// Classify by set-quantifier shape: `Normal` has none, Π¹₁ is a block of
/// universal set quantifiers over a normal matrix, Σ¹₁ dually, everything
/// else is `Other`.
pub fn classify(f: &Formula) -> FormulaClass {
    if f.is_normal() {
        return FormulaClass::Normal;
    }
    let mut g = f;
    let mut universal = 0usize;
    while let Forall(v, body) = g {
        if v.sort != Sort::Set {
            break;
        }
        universal += 1;
        g = body;
    }
    if universal > 0 && g.is_normal() {
        return FormulaClass::Pi11;
    }
    let mut g = f;
    let mut existential = 0usize;
    while let Exists(v, body) = g {
        if v.sort != Sort::Set {
            break;
        }
        existential += 1;
        g = body;
    }
    if existential > 0 && g.is_normal() {
        return FormulaClass::Sigma11;
    }
    FormulaClass::Other
}

/// Check that every atom belongs to `tag`'s atom set with the right
/// variable sorts, and that quantified sorts are admissible.
pub fn check_language(f: &Formula, tag: LanguageTag) -> Result<(), FormulaError> {
    use LanguageTag::*;
    match f {
        Less(a, b) => atom_check(f, tag, matches!(tag, Lord | Lmon), &[(*a, Sort::Ind), (*b, Sort::Ind)]),
        // equality of individuals is available everywhere; in L1S it is set
        // equality, which the prime translation maps to itself
        Eq(a, b) => atom_check(f, tag, true, &[(*a, Sort::Ind), (*b, Sort::Ind)]),
        Subeq(a, b) => atom_check(f, tag, tag == LbS, &[(*a, Sort::Ind), (*b, Sort::Ind)]),
        S(a) => atom_check(f, tag, matches!(tag, LbS | L1S), &[(*a, Sort::Ind)]),
        UrEq(a, b) => atom_check(f, tag, tag == L1S, &[(*a, Sort::Ur), (*b, Sort::Ur)]),
        UrIn(a, b) => atom_check(f, tag, tag == L1S, &[(*a, Sort::Ur), (*b, Sort::Ind)]),
        In(a, b) => atom_check(f, tag, tag == Lmon, &[(*a, Sort::Ind), (*b, Sort::Set)]),
        Not(a) => check_language(a, tag),
        And(a, b) | Or(a, b) | Implies(a, b) => {
            check_language(a, tag)?;
            check_language(b, tag)
        }
        Exists(v, a) | Forall(v, a) => {
            let allowed = match tag {
                Lord | LbS => v.sort == Sort::Ind,
                L1S => matches!(v.sort, Sort::Ind | Sort::Ur),
                Lmon => matches!(v.sort, Sort::Ind | Sort::Set),
            };
            if !allowed {
                return Err(FormulaError::WrongLanguage {
                    tag,
                    msg: format!("quantifier over {v} not allowed"),
                });
            }
            check_language(a, tag)
        }
    }
}

fn atom_check(
    f: &Formula,
    tag: LanguageTag,
    in_language: bool,
    sorts: &[(Var, Sort)],
) -> Result<(), FormulaError> {
    if !in_language {
        return Err(FormulaError::WrongLanguage { tag, msg: format!("atom {f} not in language") });
    }
    for (v, s) in sorts {
        if v.sort != *s {
            return Err(FormulaError::Sort(format!("{f}: variable {v} has the wrong sort")));
        }
    }
    Ok(())
}

// precedence: -> is 0, | is 1, & is 2, ~ is 3, atoms 4; quantifiers extend
// maximally to the right and get parentheses in any tighter position.
fn write_prec(f: &Formula, min: u8, out: &mut String) {
    fn parens(needs: bool, out: &mut String, inner: impl FnOnce(&mut String)) {
        if needs {
            out.push('(');
            inner(out);
            out.push(')');
        } else {
            inner(out);
        }
    }
    match f {
        Less(a, b) => out.push_str(&format!("{a} < {b}")),
        Eq(a, b) | UrEq(a, b) => out.push_str(&format!("{a} = {b}")),
        Subeq(a, b) => out.push_str(&format!("{a} <= {b}")),
        S(a) => out.push_str(&format!("S({a})")),
        UrIn(a, b) | In(a, b) => out.push_str(&format!("{a} in {b}")),
        Not(a) => {
            out.push('~');
            write_prec(a, 4, out);
        }
        And(a, b) => parens(min > 2, out, |o| {
            write_prec(a, 2, o);
            o.push_str(" & ");
            write_prec(b, 3, o);
        }),
        Or(a, b) => parens(min > 1, out, |o| {
            write_prec(a, 1, o);
            o.push_str(" | ");
            write_prec(b, 2, o);
        }),
        Implies(a, b) => parens(min > 0, out, |o| {
            write_prec(a, 1, o);
            o.push_str(" -> ");
            write_prec(b, 0, o);
        }),
        Exists(v, a) => parens(min > 0, out, |o| {
            o.push_str(&format!("E {v}. "));
            write_prec(a, 0, o);
        }),
        Forall(v, a) => parens(min > 0, out, |o| {
            o.push_str(&format!("A {v}. "));
            write_prec(a, 0, o);
        }),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_prec(self, 0, &mut s);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_and_rank() {
        let f = parse("A x0. E x1. x0 < x1", LanguageTag::Lord).unwrap();
        assert_eq!(f.size(), 5);
        assert_eq!(f.quantifier_rank(), 2);
        let g = parse("E x0. x0 < x0", LanguageTag::Lord).unwrap();
        assert_eq!(g.quantifier_rank(), 1);
        assert_eq!(classify(&g), FormulaClass::Normal);
    }

    #[test]
    fn classify_examples() {
        let pi = parse("A X0. A x0. x0 in X0 | ~(x0 in X0)", LanguageTag::Lmon).unwrap();
        assert_eq!(classify(&pi), FormulaClass::Pi11);
        let sigma = parse("E X0. A x0. x0 in X0", LanguageTag::Lmon).unwrap();
        assert_eq!(classify(&sigma), FormulaClass::Sigma11);
        let mixed = parse("A X0. E X1. A x0. x0 in X0 | x0 in X1", LanguageTag::Lmon).unwrap();
        assert_eq!(classify(&mixed), FormulaClass::Other);
        let normal = parse("E x0. x0 < x0", LanguageTag::Lmon).unwrap();
        assert_eq!(classify(&normal), FormulaClass::Normal);
    }

    #[test]
    fn language_checks() {
        assert!(parse("x0 <= x1", LanguageTag::Lord).is_err());
        assert!(parse("x0 < x1", LanguageTag::LbS).is_err());
        assert!(parse("p0 in x0", LanguageTag::Lmon).is_err());
        assert!(parse("x0 in X0", LanguageTag::L1S).is_err());
        assert!(parse("A X0. x0 in X0", LanguageTag::Lord).is_err());
        assert!(parse("A p0. p0 = p0", LanguageTag::LbS).is_err());
    }

    #[test]
    fn free_vars_and_normality() {
        let f = parse("A x0. x0 in X0", LanguageTag::Lmon).unwrap();
        assert_eq!(f.free_vars(), vec![Var::set(0)]);
        assert!(f.is_normal());
        let g = parse("A X0. x0 in X0", LanguageTag::Lmon).unwrap();
        assert!(!g.is_normal());
        assert_eq!(g.free_vars(), vec![Var::ind(0)]);
    }
}
