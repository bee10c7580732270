//! Property tests for the combination rules: commutativity, associativity
//! of ⊕/⊓/⊔, mass conservation, the disjunctive belief-product identity and
//! the binary Yager/Dubois coincidence.

use proptest::prelude::*;
use ranset_core::combine::{self, CombinationRule};
use ranset_core::frame::Frame;
use ranset_core::sampling;
use ranset_core::Rng;

const RULES: [CombinationRule; 5] = [
    CombinationRule::Dempster,
    CombinationRule::Conjunctive,
    CombinationRule::Disjunctive,
    CombinationRule::Yager,
    CombinationRule::DuboisPrade,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn all_rules_commute_and_conserve_mass(seed in 0u64..1_000_000, n in 2usize..=4) {
        let mut rng = Rng::seed_from(seed);
        let frame = Frame::of_size(n).unwrap();
        let m1 = sampling::random_full_support(&frame, &mut rng);
        let m2 = sampling::random_full_support(&frame, &mut rng);
        for rule in RULES {
            let ab = combine::combine(rule, &m1, &m2).unwrap();
            let ba = combine::combine(rule, &m2, &m1).unwrap();
            prop_assert!(ab.sup_diff(&ba) <= 1e-12, "{rule:?} not commutative");
            prop_assert!((ab.total_mass() - 1.0).abs() <= 1e-12, "{rule:?} loses mass");
        }
    }

    #[test]
    fn dempster_conjunctive_disjunctive_associate(seed in 0u64..1_000_000, n in 2usize..=4) {
        let mut rng = Rng::seed_from(seed);
        let frame = Frame::of_size(n).unwrap();
        let m1 = sampling::random_full_support(&frame, &mut rng);
        let m2 = sampling::random_full_support(&frame, &mut rng);
        let m3 = sampling::random_full_support(&frame, &mut rng);
        for rule in [
            CombinationRule::Dempster,
            CombinationRule::Conjunctive,
            CombinationRule::Disjunctive,
        ] {
            let left = combine::combine(rule, &combine::combine(rule, &m1, &m2).unwrap(), &m3)
                .unwrap();
            let right = combine::combine(rule, &m1, &combine::combine(rule, &m2, &m3).unwrap())
                .unwrap();
            prop_assert!(left.sup_diff(&right) <= 1e-12, "{rule:?} not associative");
        }
    }

    /// Disjunctive combination multiplies belief values on every subset.
    #[test]
    fn disjunctive_belief_product_identity(seed in 0u64..1_000_000) {
        let mut rng = Rng::seed_from(seed);
        let frame = Frame::of_size(3).unwrap();
        let m1 = sampling::random_full_support(&frame, &mut rng);
        let m2 = sampling::random_full_support(&frame, &mut rng);
        let combined = combine::disjunctive(&m1, &m2).unwrap();
        let bel = combined.belief().unwrap();
        let bel1 = m1.belief().unwrap();
        let bel2 = m2.belief().unwrap();
        for a in frame.subsets() {
            prop_assert!((bel.value(a) - bel1.value(a) * bel2.value(a)).abs() <= 1e-12);
        }
    }

    /// On binary frames Yager's and Dubois's rules coincide exactly.
    #[test]
    fn yager_equals_dubois_on_binary(seed in 0u64..1_000_000) {
        let mut rng = Rng::seed_from(seed);
        let frame = Frame::binary();
        let m1 = sampling::random_full_support(&frame, &mut rng);
        let m2 = sampling::random_full_support(&frame, &mut rng);
        let y = combine::yager(&m1, &m2).unwrap();
        let d = combine::dubois_prade(&m1, &m2).unwrap();
        prop_assert_eq!(y.sup_diff(&d), 0.0);
    }

    /// Dempster conditioning equals combination with the categorical BPA.
    #[test]
    fn conditioning_matches_explicit_dempster_sum(seed in 0u64..1_000_000) {
        let mut rng = Rng::seed_from(seed);
        let frame = Frame::of_size(3).unwrap();
        let m = sampling::random_full_support(&frame, &mut rng);
        let event = frame.mask_of_labels(["e0", "e1"]).unwrap();
        let conditioned = combine::condition(&m, event).unwrap();
        let categorical =
            ranset_core::MassFunction::categorical(frame.clone(), event).unwrap();
        let explicit = combine::dempster(&m, &categorical).unwrap();
        prop_assert!(conditioned.sup_diff(&explicit) == 0.0);
    }
}
