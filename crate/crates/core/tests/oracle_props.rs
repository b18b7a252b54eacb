//! Randomized agreement between the library and the table oracle on
//! domains too large to scan exhaustively.

mod common;

use common::Tab;
use proptest::prelude::*;

use cubal::collapse::Collapse;
use cubal::corpus::{delta_swap_mutants, Instance};
use cubal::gcover::is_gcover;
use cubal::io::{cubic_from_json, cubic_to_json, Document};
use cubal::special::is_special;

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 400, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn gcover_decision_matches_oracle(mask in 0u32..(1 << 27)) {
        let inst = Instance::interval(3).unwrap();
        let tab = Tab::from_alg(&inst.alg);
        let c = Collapse::new(&inst.alg).unwrap();
        let mut s = members(mask, 27);
        if !s.contains(&inst.alg.top()) {
            s.push(inst.alg.top());
            s.sort_unstable();
        }
        prop_assert_eq!(is_gcover(&c, &s).is_ok(), tab.is_gcover(&s));
    }

    #[test]
    fn upward_closures_of_random_seeds_agree(seed in 0usize..27, other in 0usize..27) {
        // Up-sets of one or two elements, closed under ∨, are frequent
        // candidates for both g-covers and special subalgebras.
        let inst = Instance::signed(3).unwrap();
        let l = &inst.alg;
        let tab = Tab::from_alg(l);
        let c = Collapse::new(l).unwrap();
        let mut s: Vec<usize> = l.up_set(seed).ones().chain(l.up_set(other).ones()).collect();
        s.sort_unstable();
        s.dedup();
        prop_assert_eq!(is_gcover(&c, &s).is_ok(), tab.is_gcover(&s));
        if is_gcover(&c, &s).is_ok() {
            prop_assert!(is_special(l, &s));
        }
    }

    #[test]
    fn mutants_break_an_axiom_and_round_trip(seed in any::<u64>()) {
        let base = Instance::interval(2).unwrap();
        let m = delta_swap_mutants(&base, seed, 1).unwrap().remove(0);
        prop_assert!(Tab::from_alg(&m.alg).axiom_failure().is_some());
        let text = Document::Cubic(cubic_to_json(&m.alg)).to_json();
        let back = match Document::parse(&text).unwrap() {
            Document::Cubic(j) => cubic_from_json(&j).unwrap(),
            _ => unreachable!(),
        };
        prop_assert_eq!(back, m.alg);
    }
}
