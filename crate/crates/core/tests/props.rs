//! Property tests over random tournaments.

use proptest::prelude::*;

use tourney_core::canon::{are_isomorphic, canonical_form};
use tourney_core::tournament::{avg_cycles_per_edge, binomial, Tournament};

fn arb_tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |bits| Tournament::from_upper_triangle_bits(n, &bits).unwrap())
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn tournament_with_perm(max_n: usize) -> impl Strategy<Value = (Tournament, Vec<usize>)> {
    arb_tournament(max_n).prop_flat_map(|t| {
        let n = t.n();
        (Just(t), arb_perm(n))
    })
}

proptest! {
    #[test]
    fn canonical_form_is_relabel_invariant((t, perm) in tournament_with_perm(9)) {
        prop_assert_eq!(canonical_form(&t.relabel(&perm)), canonical_form(&t));
    }

    #[test]
    fn triples_partition_into_tt3_and_cycles(t in arb_tournament(12)) {
        let n = t.n() as u64;
        prop_assert_eq!(t.count_tt3() + t.count_3cycles(), binomial(n, 3));
    }

    #[test]
    fn reversal_preserves_max_transitive(t in arb_tournament(10)) {
        prop_assert_eq!(t.reverse().max_transitive(), t.max_transitive());
    }

    #[test]
    fn min_cycle_edge_meets_average_bound(t in arb_tournament(12)) {
        if t.n() >= 3 {
            let (u, v) = t.min_cycle_edge();
            let d = t.block_decomposition(u, v).unwrap().d.len() as u64;
            prop_assert!(d <= avg_cycles_per_edge(t.n() as u64).floor());
        }
    }

    #[test]
    fn blocks_partition_the_rest(t in arb_tournament(10)) {
        let (u, v) = t.min_cycle_edge();
        let b = t.block_decomposition(u, v).unwrap();
        prop_assert_eq!(b.a.len() + b.b.len() + b.c.len() + b.d.len(), t.n() - 2);
        let all = b.a.0 | b.b.0 | b.c.0 | b.d.0 | 1 << u | 1 << v;
        prop_assert_eq!(all, tourney_core::VertexSet::full(t.n()).0);
        prop_assert_eq!(b.a.0 & b.b.0 | b.a.0 & b.c.0 | b.a.0 & b.d.0
            | b.b.0 & b.c.0 | b.b.0 & b.d.0 | b.c.0 & b.d.0, 0);
    }

    #[test]
    fn matrix_text_round_trips(t in arb_tournament(12)) {
        prop_assert_eq!(Tournament::from_matrix_text(&t.to_matrix_text()).unwrap(), t);
    }

    #[test]
    fn upper_triangle_round_trips(t in arb_tournament(16)) {
        let bits = t.upper_triangle_bits();
        prop_assert_eq!(Tournament::from_upper_triangle_bits(t.n(), &bits).unwrap(), t);
    }

    #[test]
    fn reverse_is_isomorphism_invariant((t, perm) in tournament_with_perm(8)) {
        prop_assert!(are_isomorphic(&t.reverse(), &t.relabel(&perm).reverse()));
    }
}
