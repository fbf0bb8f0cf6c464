//! Property tests over randomly structured games and key vectors.

use proptest::collection::vec;
use proptest::prelude::*;
use srg_core::game::{Srg, VertexKind};
use srg_core::ledger::{ComparisonLedger, Key};
use srg_core::order::{partial_perfect_quicksort, select_median, sort_keys, C_SEL};

/// Strategy for a small validated game: up to 5 player vertices, up to 4
/// terminals, out-degrees 1..=3.
fn arb_game() -> impl Strategy<Value = Srg> {
    (1usize..=5, 1usize..=4)
        .prop_flat_map(|(non_term, n_term)| {
            let total = non_term + n_term;
            (
                vec(any::<bool>(), non_term),
                vec(-5i64..=5, n_term),
                vec(vec(0..total, 1..=3), non_term),
            )
        })
        .prop_map(|(owners, payoffs, targets)| {
            let mut kinds: Vec<VertexKind> = owners
                .iter()
                .map(|&is_max| if is_max { VertexKind::Max } else { VertexKind::Min })
                .collect();
            kinds.extend(payoffs.iter().map(|&p| VertexKind::Terminal(p as f64)));
            let mut arcs = Vec::new();
            for (v, outs) in targets.iter().enumerate() {
                for &h in outs {
                    arcs.push((v, h));
                }
            }
            Srg::new(kinds, arcs, Some(0)).validate().expect("constructed games are valid")
        })
}

fn arb_keys() -> impl Strategy<Value = Vec<Key>> {
    vec(-1000i64..=1000, 1..200).prop_map(|vals| {
        vals.into_iter()
            .enumerate()
            .map(|(i, v)| Key::new(v as f64, i))
            .collect()
    })
}

proptest! {
    #[test]
    fn merge_into_terminal_conserves_arcs(g in arb_game()) {
        let non_terms: Vec<usize> = g.vertex_ids().filter(|&v| !g.is_terminal(v)).collect();
        let terms: Vec<usize> = g.terminal_ids().collect();
        if let (Some(&v), Some(&t)) = (non_terms.first(), terms.first()) {
            let out_v = g.out_degrees()[v];
            let merged = g.merge_into_terminal(v, t).unwrap();
            prop_assert_eq!(merged.num_vertices(), g.num_vertices() - 1);
            prop_assert_eq!(merged.num_arcs(), g.num_arcs() - out_v);
            // arcs formerly entering v now enter t, nothing else moved
            let into_v = g.arcs().iter().filter(|a| a.head == v && a.tail != v).count();
            let into_t_before = g.arcs().iter().filter(|a| a.head == t && a.tail != v).count();
            let into_t_after = merged.arcs().iter().filter(|a| a.head == t).count();
            prop_assert_eq!(into_t_after, into_t_before + into_v);
        }
    }

    #[test]
    fn negate_is_an_involution(g in arb_game()) {
        let back = g.negate().negate();
        prop_assert_eq!(back.arcs(), g.arcs());
        prop_assert_eq!(back, g);
    }

    #[test]
    fn validate_is_idempotent(g in arb_game()) {
        let again = g.validate().unwrap();
        prop_assert_eq!(again, g);
    }

    #[test]
    fn median_partition_agrees_with_full_sort(items in arb_keys()) {
        let ledger = ComparisonLedger::new();
        let (pivot, lower, upper) = select_median(&items, &ledger).unwrap();
        let mut sorted = items.clone();
        sorted.sort_by(|a, b| a.raw_cmp(b));
        prop_assert_eq!(pivot.id, sorted[(items.len() - 1) / 2].id);
        prop_assert_eq!(lower.len(), (items.len() + 1) / 2);
        for k in &lower {
            prop_assert!(k.raw_cmp(&pivot).is_le());
        }
        for k in &upper {
            prop_assert!(k.raw_cmp(&pivot).is_gt());
        }
        prop_assert!(ledger.count() <= C_SEL * items.len() as u64);
    }

    #[test]
    fn quicksort_groups_partition_and_order(items in arb_keys(), depth in 1u32..=5) {
        let ledger = ComparisonLedger::new();
        let groups = partial_perfect_quicksort(&items, depth, &ledger).unwrap();
        let bound = items.len().div_ceil(1 << depth);
        let mut ids = Vec::new();
        for g in &groups {
            prop_assert!(g.len() <= bound);
            ids.extend(g.iter().map(|k| k.id));
        }
        ids.sort_unstable();
        prop_assert_eq!(ids, (0..items.len()).collect::<Vec<_>>());
        for w in groups.windows(2) {
            let hi = w[0].iter().max_by(|a, b| a.raw_cmp(b)).unwrap();
            let lo = w[1].iter().min_by(|a, b| a.raw_cmp(b)).unwrap();
            prop_assert!(hi.raw_cmp(lo).is_lt());
        }
        prop_assert!(ledger.count() <= C_SEL * items.len() as u64 * depth as u64);
    }

    #[test]
    fn merge_sort_sorts(items in arb_keys()) {
        let ledger = ComparisonLedger::new();
        let sorted = sort_keys(&items, &ledger);
        let mut want = items.clone();
        want.sort_by(|a, b| a.raw_cmp(b));
        prop_assert_eq!(sorted, want);
        let n = items.len() as u64;
        if n > 1 {
            let ceil_lg = 64 - (n - 1).leading_zeros() as u64;
            prop_assert!(ledger.count() <= n * ceil_lg);
        } else {
            prop_assert_eq!(ledger.count(), 0);
        }
    }
}
