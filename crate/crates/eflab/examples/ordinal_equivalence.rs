//! Deciding first-order equivalence of well-orders.
//!
//! Two well-orders satisfy the same first-order sentences of the order
//! language exactly when their order types are congruent modulo ω^ω. This
//! example parses ordinal notations, runs the arithmetic, and applies the
//! decision procedure — including to the symbolic values `Card(i)` and
//! `On`, where the fixed-point identity ω^ω·κ = κ makes every uncountable
//! cardinal equivalent to the class of all ordinals.
//!
//! Run with: cargo run --example ordinal_equivalence

use eflab::ordinal::{
    add, compare, congruent_mod_omega_omega, decompose_mod_omega_omega, elementarily_equivalent,
    mul, parse_ordinal,
};

fn main() {
    let pairs = [
        ("w^w*2+5", "w^w*9+5"),
        ("w^w*2+5", "w^w*9+4"),
        ("5", "w^w+5"),
        ("w^w", "w^w*2"),
        ("Card(1)", "Card(2)"),
        ("Card(1)", "On"),
        ("Card(2)+17", "On+17"),
        ("3", "4"),
    ];
    println!("congruence modulo w^w decides elementary equivalence:\n");
    for (a, b) in pairs {
        let (oa, ob) = (parse_ordinal(a).unwrap(), parse_ordinal(b).unwrap());
        match congruent_mod_omega_omega(&oa, &ob) {
            Some(w) => println!(
                "  {a:12} == {b:12}   (xi = {}, eta = {}, shared delta = {})",
                w.xi, w.eta, w.delta
            ),
            None => println!("  {a:12} =/= {b:12}"),
        }
        assert_eq!(
            elementarily_equivalent(&oa, &ob),
            congruent_mod_omega_omega(&oa, &ob).is_some()
        );
    }

    println!("\nthe arithmetic behind it:");
    let examples = [
        ("1+w", "addition absorbs finite prefixes"),
        ("w+1", "but not finite suffixes"),
        ("w^(w+1)+w*3", "hereditary normal forms"),
        ("w^w*0+7", "coefficients normalize away"),
    ];
    for (text, note) in examples {
        println!("  {text:14} parses to {:<12} ({note})", parse_ordinal(text).unwrap());
    }

    let a = parse_ordinal("w^(w+2)*3+w^2*4").unwrap();
    let (q, r) = decompose_mod_omega_omega(&a);
    println!("\ndecomposition: {a} = w^w*({q}) + {r}");
    let back = add(&mul(&parse_ordinal("w^w").unwrap(), &q).unwrap(), &r).unwrap();
    assert_eq!(back, a);
    println!("reconstruction through mul and add gives {back} again");

    let kappa = parse_ordinal("Card(1)").unwrap();
    let omega_omega = parse_ordinal("w^w").unwrap();
    println!(
        "\nfixed point: w^w * Card(1) = {}",
        mul(&omega_omega, &kappa).unwrap()
    );
    println!(
        "comparisons: w^w*9 vs Card(1): {:?}, Card(1) vs On: {:?}",
        compare(&parse_ordinal("w^w*9").unwrap(), &kappa),
        compare(&kappa, &parse_ordinal("On").unwrap()),
    );
    println!(
        "refusals are explicit: Card(1)*w -> {}",
        mul(&kappa, &parse_ordinal("w").unwrap()).unwrap_err()
    );
}
