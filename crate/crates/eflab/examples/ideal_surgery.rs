//! Segment ideals of total preorders, access and minimality decisions, and
//! the cut-and-zip surgery.
//!
//! The laboratory works with strict segments (the non-strict family of a
//! finite preorder always contains the whole ground set). An ideal is an
//! access ideal when some preordering bounds everything into it; it is
//! minimal when no proper sub-ideal does. The surgery removes a set `b`
//! from an initial segment and zips it onto the cofinal part of `a`,
//! making `b` cofinal — and hence no longer bounded — afterwards.
//!
//! Run with: cargo run --example ideal_surgery

use eflab::preorder::{
    cofinality, is_access_ideal, is_minimal_access, seg_ideal, surgery, verify_surgery_claims,
    AccessResult, IdealFamily, MinimalResult, PreorderSpec, SegResult, SurgeryInstance,
};

fn show_family(i: &IdealFamily) -> String {
    i.members()
        .iter()
        .map(|&m| {
            let elems: Vec<String> =
                (0..i.ground_size()).filter(|b| m & (1 << b) != 0).map(|b| b.to_string()).collect();
            format!("{{{}}}", elems.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() {
    let l3 = PreorderSpec::linear(3);
    match seg_ideal(&l3, true) {
        SegResult::Ideal(i) => println!("strict segment ideal of L3: {}", show_family(&i)),
        SegResult::Improper => unreachable!(),
    }
    assert_eq!(seg_ideal(&l3, false), SegResult::Improper);
    println!("non-strict segments of a finite preorder are improper (reported, not crashed)");

    println!("\naccess and minimality on ground 3:");
    for max in [0b000u32, 0b001, 0b011] {
        let ideal = IdealFamily::principal(3, max).unwrap();
        let access = matches!(is_access_ideal(&ideal).unwrap(), AccessResult::Witness(_));
        let minimal = matches!(is_minimal_access(&ideal).unwrap(), MinimalResult::Minimal { .. });
        println!("  {:24} access={access:5} minimal={minimal}", show_family(&ideal));
    }
    if let MinimalResult::NotMinimal { blocking_sub_ideal, .. } =
        is_minimal_access(&IdealFamily::principal(3, 0b011).unwrap()).unwrap()
    {
        println!(
            "  subsets of {{0,1}} are blocked by the smaller access ideal {}",
            show_family(&blocking_sub_ideal)
        );
    }

    // the six-element example: cut {1} out of the initial segment of 3 and
    // zip it onto the cofinal element 5
    println!("\nsurgery on L6 with x0 = 3, a = {{2,5}}, b = {{1}}, zip 5 <-> 1:");
    let inst = SurgeryInstance {
        base: PreorderSpec::linear(6),
        x0: 3,
        a: 0b100100,
        b: 0b000010,
        zip: vec![(5, 1)],
    };
    let p1 = surgery(&inst).unwrap();
    for (x, y) in [(1, 5), (5, 1)] {
        assert!(p1.le(x, y));
    }
    println!("  result: 0 < 2 < 3 < 4 < {{1, 5}}  (1 now equivalent to 5)");
    println!("  top class afterwards: {:?}", p1.top_class());
    let report = verify_surgery_claims(&inst, &p1);
    for a in &report.assertions {
        println!("  {}: {}", a.name, if a.holds { "holds" } else { "FAILS" });
    }
    assert!(report.all_hold());

    let c = cofinality(&p1);
    println!("\ncofinality of the surgered preorder: {} ({})", c.value, c.note);
}
