//! Interpreting the two-sorted membership language in the algebra
//! language and back.
//!
//! `translate_plus` sends urelements to atoms of the algebra (membership
//! becomes "is an atom below", quantifiers are relativized, and the Atom
//! predicate is inlined); `translate_prime` unfolds inclusion through
//! membership. On matching finite structures both directions preserve
//! truth — here checked on a ground set of 3 urelements with the ideal of
//! subsets of size < 2.
//!
//! Run with: cargo run --example formula_translation

use eflab::formula::{
    eval, parse, translate_plus, translate_prime, Assignment, LanguageTag, Model,
    TwoSortedStructure,
};
use eflab::structure::FiniteStructure;

fn main() {
    let two = TwoSortedStructure::with_threshold(3, 2);
    let algebra = FiniteStructure::powerset_algebra(3, Some(2));

    println!("plus direction (membership language -> algebra language):\n");
    for text in [
        "p0 = p1",
        "p0 in x0",
        "S(x1)",
        "A p0. E x0. p0 in x0 & S(x0)",
        "E x0. S(x0) & A p0. p0 in x0",
        "A x0. A x1. (A p0. p0 in x0 -> p0 in x1) | (E p1. p1 in x0)",
    ] {
        let phi = parse(text, LanguageTag::L1S).unwrap();
        let plus = translate_plus(&phi).unwrap();
        println!("  {text}");
        println!("    +--> {plus}");
        if phi.free_vars().is_empty() {
            let lhs = eval(&phi, &Model::TwoSorted { structure: &two }, &Assignment::new())
                .unwrap();
            let rhs =
                eval(&plus, &Model::Algebra { structure: &algebra }, &Assignment::new()).unwrap();
            println!("    truth on ground 3, threshold 2: {lhs} on both sides");
            assert_eq!(lhs, rhs);
        }
        println!();
    }

    println!("prime direction (algebra language -> membership language):\n");
    for text in [
        "x0 <= x1",
        "S(x0)",
        "x0 = x1",
        "A x0. S(x0) -> E x1. x0 <= x1 & ~S(x1)",
    ] {
        let psi = parse(text, LanguageTag::LbS).unwrap();
        let prime = translate_prime(&psi).unwrap();
        println!("  {text}");
        println!("    '--> {prime}");
        if psi.free_vars().is_empty() {
            let lhs =
                eval(&psi, &Model::Algebra { structure: &algebra }, &Assignment::new()).unwrap();
            let rhs = eval(&prime, &Model::TwoSorted { structure: &two }, &Assignment::new())
                .unwrap();
            assert_eq!(lhs, rhs);
            println!("    truth agrees: {lhs}");
        }
        println!();
    }
}
