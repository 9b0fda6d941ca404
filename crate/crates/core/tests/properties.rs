//! Property-based invariants for the coordinate transforms and matching
//! parity.

use proptest::prelude::*;

use pfassoc::combinatorics::{all_edges, matchings, swap, Edge};
use pfassoc::coords::{
    inverse_separation, is_fp_positive, is_fp_positive_fourpoint, separation_vector, WeightVector,
};
use pfassoc::rational::Rat;
use pfassoc::Basis;

fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

prop_compose! {
    fn arb_vector(basis: Basis)(n in 4usize..=10)(
        n in Just(n),
        coeffs in prop::collection::vec((-40i64..=40, 1i64..=8), n * (n - 1) / 2),
    ) -> WeightVector {
        let entries = all_edges(n)
            .into_iter()
            .zip(coeffs)
            .map(|(e, (p, q))| (e, rat(p, q)));
        WeightVector::from_entries(n, basis, entries).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transforms_are_mutually_inverse(w in arb_vector(Basis::W)) {
        let v = separation_vector(&w).unwrap();
        prop_assert_eq!(inverse_separation(&v).unwrap(), w.clone());
        // and the other way around
        let v0 = WeightVector::from_entries(
            w.n(),
            Basis::V,
            w.iter().map(|(e, r)| (*e, r.clone())),
        ).unwrap();
        let w0 = inverse_separation(&v0).unwrap();
        prop_assert_eq!(separation_vector(&w0).unwrap(), v0);
    }

    #[test]
    fn fp_descriptions_agree(v in arb_vector(Basis::V)) {
        prop_assert_eq!(is_fp_positive(&v), is_fp_positive_fourpoint(&v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn swap_changes_parity_iff_a_crossing_moves(
        pick in prop::collection::vec(0usize..1000, 3),
    ) {
        // a fixed ground set large enough for varied swaps
        let u: Vec<usize> = vec![1, 2, 4, 5, 7, 8, 9, 11];
        let all = matchings(&u).unwrap();
        let m = &all[pick[0] % all.len()];
        let pairs = m.pairs();
        let a = pick[1] % pairs.len();
        let mut b = pick[2] % pairs.len();
        if a == b {
            b = (b + 1) % pairs.len();
        }
        for variant in [1usize, 2] {
            let s = swap(m, &pairs[a], &pairs[b], variant).unwrap();
            let inserted: Vec<Edge> = s
                .pairs()
                .iter()
                .filter(|x| !m.contains_pair(x))
                .copied()
                .collect();
            let moved_crossing =
                pairs[a].crosses(&pairs[b]) != inserted[0].crosses(&inserted[1]);
            prop_assert_eq!(s.parity() != m.parity(), moved_crossing);
        }
    }
}
