//! Property tests for the algebraic plumbing: formal-sum laws, closure
//! monotonicity, and the presentation-language round trip.

use proptest::prelude::*;

use bandkit::cli::{parse_presentation, serialize_presentation};
use bandkit::core::standard::f1pm;
use bandkit::core::{ElementId, FormalSum, Mode};
use bandkit::ideals::null_ideal_generated;

fn arb_sum() -> impl Strategy<Value = FormalSum> {
    prop::collection::vec((1u32..5, 1u32..4), 0..6)
        .prop_map(|terms| FormalSum::from_terms(terms.into_iter().map(|(a, k)| (ElementId(a), k))))
}

proptest! {
    #[test]
    fn formal_sum_addition_is_commutative_and_monotone(a in arb_sum(), b in arb_sum()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).degree(), a.degree() + b.degree());
        for (t, k) in a.iter() {
            prop_assert!(a.add(&b).multiplicity(t) >= k);
        }
    }

    #[test]
    fn formal_sum_addition_is_associative(a in arb_sum(), b in arb_sum(), c in arb_sum()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn closure_membership_is_monotone_in_the_bound(
        gens in prop::collection::vec(
            prop::collection::vec((prop::bool::ANY, 0u32..3), 1..4),
            1..3,
        ),
        query in prop::collection::vec((prop::bool::ANY, 0u32..3), 1..4),
    ) {
        // interpret over F1pm: (sign, k) stands for ±1 repeated k+1 times
        let b = f1pm();
        let one = b.one();
        let m1 = b.neg(one);
        let mk = |terms: &[(bool, u32)]| {
            FormalSum::from_terms(terms.iter().map(|&(neg, k)| {
                (if neg { m1 } else { one }, k + 1)
            }))
        };
        let gen_sums: Vec<FormalSum> = gens.iter().map(|g| mk(g)).collect();
        let q = mk(&query);
        let small = null_ideal_generated(&b, gen_sums.clone(), Mode::Null, 4);
        let large = null_ideal_generated(&b, gen_sums, Mode::Null, 6);
        if small.member(&q, 4).is_in() {
            prop_assert!(large.member(&q, 6).is_in());
        }
    }

    #[test]
    fn presentation_roundtrip_on_generated_band_blocks(
        gens in prop::collection::vec("[a-d]", 1..3),
        sums in prop::collection::vec(
            prop::collection::vec((prop::bool::ANY, prop::collection::vec(0usize..3, 0..3)), 1..4),
            1..3,
        ),
        fusion in prop::bool::ANY,
    ) {
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        let sums_text: Vec<String> = sums
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .enumerate()
                    .map(|(i, (neg, vars))| {
                        let mono = if vars.is_empty() {
                            "1".to_string()
                        } else {
                            vars.iter()
                                .map(|v| gens[v % gens.len()].clone())
                                .collect::<Vec<_>>()
                                .join("*")
                        };
                        match (i, neg) {
                            (0, false) => mono,
                            (0, true) => format!("-{mono}"),
                            (_, false) => format!(" + {mono}"),
                            (_, true) => format!(" - {mono}"),
                        }
                    })
                    .collect()
            })
            .collect();
        let src = format!(
            "band X {{ gens: {}; null: {}; mode: {} }}",
            gens.join(", "),
            sums_text.join(", "),
            if fusion { "fusion" } else { "null" },
        );
        let ast = parse_presentation(&src).unwrap();
        let printed = serialize_presentation(&ast);
        prop_assert_eq!(parse_presentation(&printed).unwrap(), ast);
    }
}
