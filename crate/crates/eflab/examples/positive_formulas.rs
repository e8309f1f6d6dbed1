//! Positive formulas: polarity, monotonicity, the guarded prenex form,
//! and cofinal set ranges.
//!
//! A normal monadic formula is positive in X when every membership atom
//! occurs positively; such formulas are monotone in X, and each one is
//! equivalent (for X a proper subset) to a guarded prenex form
//! `(Q w1)...(Q wn)(A u)(theta -> u in X)` with theta quantifier-free in
//! the order language.
//!
//! Run with: cargo run --example positive_formulas

use eflab::formula::{
    cof_sets, eval, is_positive, moschovakis_prenex, parse, Assignment, FormulaError,
    LanguageTag, Model, SetRange,
};
use eflab::structure::FiniteStructure;

fn main() {
    println!("polarity decides positivity:\n");
    for text in [
        "A x0. x0 in X0",
        "~(x0 in X0)",
        "E x0. A x1. ~(x1 < x0) | x1 in X0",
        "x0 < x1 -> x0 in X0",
        "x0 in X0 -> x0 < x1",
        "~~(x0 in X0)",
    ] {
        let f = parse(text, LanguageTag::Lmon).unwrap();
        println!("  positive={:5}  {text}", is_positive(&f));
    }

    println!("\nmonotonicity of a positive formula on L4 (X grows left to right):");
    let f = parse("E x0. A x1. x1 < x0 -> x1 in X0", LanguageTag::Lmon).unwrap();
    let l4 = FiniteStructure::linear_order(4);
    let model = Model::Order { structure: &l4, set_range: SetRange::FullPowerset };
    let chain = [0b0000u64, 0b0001, 0b0011, 0b0111, 0b1111];
    let mut last = false;
    for x in chain {
        let v = eval(&f, &model, &Assignment::new().set(0, x)).unwrap();
        println!("  X = {x:04b}: {v}");
        assert!(!last || v, "a positive formula never turns false when X grows");
        last = v;
    }

    println!("\nguarded prenex forms:");
    for text in [
        "A x0. x0 in X0",
        "E x0. A x1. x1 < x0 -> x1 in X0",
        "(A x0. x0 in X0) & (E x1. x1 in X0)",
        "x0 in X0",
    ] {
        let f = parse(text, LanguageTag::Lmon).unwrap();
        let p = moschovakis_prenex(&f).unwrap();
        println!("  {text}");
        println!("    ~~> {p}");
    }
    let double = parse("(A x0. x0 in X0) | (A x1. x1 in X0)", LanguageTag::Lmon).unwrap();
    match moschovakis_prenex(&double) {
        Err(FormulaError::UnsupportedFragment(msg)) => {
            println!("  rejected outside the fragment: {msg}")
        }
        other => panic!("expected a fragment rejection, got {other:?}"),
    }

    println!("\ncofinal subsets of L4 (the sets containing the maximum):");
    let cof = cof_sets(&l4).unwrap();
    println!("  {} of 16 subsets are cofinal", cof.len());
    let sentence = parse("A X0. E x0. x0 in X0", LanguageTag::Lmon).unwrap();
    let over_all = eval(
        &sentence,
        &Model::Order { structure: &l4, set_range: SetRange::FullPowerset },
        &Assignment::new(),
    )
    .unwrap();
    let over_cof = eval(
        &sentence,
        &Model::Order { structure: &l4, set_range: SetRange::Cofinal },
        &Assignment::new(),
    )
    .unwrap();
    println!("  'every set is inhabited' over all subsets: {over_all}; over cofinal ones: {over_cof}");
}
