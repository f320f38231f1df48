use proptest::prelude::*;

use qlab::formats::{format_initial_condition, parse_bfile, parse_initial_condition, write_bfile};
use qlab::{
    abc_profile, behavior_tree, EngineError, evaluate, specialize, symbolic_extend, BigInt, Convention,
    InitialCondition, NConstraint, NodeKind, SequenceStatus,
};

fn small_ic() -> impl Strategy<Value = (Vec<i64>, bool)> {
    (prop::collection::vec(-6i64..12, 2..8), any::<bool>())
}

proptest! {
    #[test]
    fn shorter_runs_are_prefixes((terms, z) in small_ic(), m in 8usize..200, extra in 1usize..300) {
        let ic = InitialCondition::new(terms, z).unwrap();
        let short = evaluate::<BigInt>(&ic, m).unwrap();
        let long = evaluate::<BigInt>(&ic, m + extra).unwrap();
        prop_assert!(long.terms().starts_with(short.terms()));
        if short.status() != SequenceStatus::Alive {
            prop_assert_eq!(short.terms(), long.terms());
            prop_assert_eq!(short.status(), long.status());
        }
    }

    #[test]
    fn conventions_agree_until_plain_stops((terms, _) in small_ic(), max in 8usize..400) {
        let plain = evaluate::<BigInt>(&InitialCondition::new(terms.clone(), false).unwrap(), max).unwrap();
        let zero = evaluate::<BigInt>(&InitialCondition::new(terms, true).unwrap(), max).unwrap();
        prop_assert!(zero.terms().starts_with(plain.terms()));
        if let SequenceStatus::Ended { at_index } = zero.status() {
            prop_assert!(plain.len() < at_index);
        }
    }

    #[test]
    fn widths_agree((terms, z) in small_ic(), max in 8usize..2000) {
        let ic = InitialCondition::new(terms, z).unwrap();
        let exact = evaluate::<BigInt>(&ic, max).unwrap();
        match evaluate::<i64>(&ic, max) {
            Ok(fast) => prop_assert_eq!(fast.to_exact(), exact),
            Err(EngineError::Overflow { index }) => prop_assert!(index <= exact.len() + 1),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn bfile_round_trip((terms, z) in small_ic(), max in 8usize..500) {
        let seq = evaluate::<BigInt>(&InitialCondition::new(terms, z).unwrap(), max).unwrap();
        let mut buf = Vec::new();
        write_bfile(&mut buf, seq.terms(), 1, Some(seq.status())).unwrap();
        let back = parse_bfile(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(back.values.as_slice(), seq.terms());
        prop_assert_eq!(back.first_index, 1);
        let status = match seq.status() {
            SequenceStatus::Alive => None,
            s => Some(s),
        };
        prop_assert_eq!(back.status, status);
    }

    #[test]
    fn ic_text_round_trip((terms, z) in small_ic()) {
        let ic = InitialCondition::new(terms, z).unwrap();
        prop_assert_eq!(parse_initial_condition(&format_initial_condition(&ic)).unwrap(), ic);
    }

    #[test]
    fn profiles_stay_integral(n in 1i64..1_000_000_000) {
        prop_assert!(abc_profile(n, 6).is_ok());
    }
}

#[test]
fn symbolic_terms_match_brute_force() {
    for (convention, lo, offsets) in [(Convention::Plain, 14, 28), (Convention::ZeroExtended, 35, 34)] {
        let p = symbolic_extend(convention, NConstraint::at_least(lo), offsets).unwrap();
        let zero = convention == Convention::ZeroExtended;
        for n in lo as usize..3000 {
            let ic = if zero {
                InitialCondition::zero_extended_identity(n)
            } else {
                InitialCondition::identity(n)
            };
            let q = evaluate::<i64>(&ic, n + offsets).unwrap();
            assert_eq!(specialize(&p, n as i64).unwrap(), q.terms()[n..], "N={n}");
        }
    }
}

#[test]
fn bounded_symbolic_run_matches_each_n() {
    let p = symbolic_extend(Convention::Plain, NConstraint::between(14, 20), 40).unwrap();
    for n in 14..=20usize {
        let q = evaluate::<i64>(&InitialCondition::identity(n), n + 100).unwrap();
        assert_eq!(specialize(&p, n as i64).unwrap(), q.terms()[n..], "N={n}");
        assert_eq!(q.status(), SequenceStatus::Died { at_index: n + 33 });
    }
}

#[test]
fn tree_walk_agrees_with_profile() {
    let tree = behavior_tree(6).unwrap();
    for n in 0..20_000i64 {
        let node = tree.traverse(&BigInt::from(n));
        let p = abc_profile(n, 6).unwrap();
        match node.kind {
            NodeKind::Leaf { class } => {
                assert_eq!(Some(class), p.classification, "N={n}");
                assert_eq!(p.j(), Some(node.digits.len()), "N={n}");
            }
            _ => assert_eq!(p.classification, None, "N={n}"),
        }
    }
}
