use std::path::Path;

use mlgraphlet::oracle::{count_exact, count_naive};
use mlgraphlet::{classify_triple, GraphBuilder, Layer, NodeId, TwoLayerGraph};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = TwoLayerGraph> {
    (3usize..14).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), prop::collection::vec(0u8..4, pairs)).prop_map(|(n, codes)| {
            let mut b = GraphBuilder::new(n);
            let mut k = 0;
            for u in 0..n as NodeId {
                for v in u + 1..n as NodeId {
                    if codes[k] & 1 != 0 {
                        b.edge(u, v, Layer::Blue).unwrap();
                    }
                    if codes[k] & 2 != 0 {
                        b.edge(u, v, Layer::Red).unwrap();
                    }
                    k += 1;
                }
            }
            b.build().unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mlx_round_trip(g in arb_graph()) {
        let back = TwoLayerGraph::parse_mlx(&g.to_mlx(), Path::new("mem")).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn classification_ignores_order(g in arb_graph(), pick in any::<[u32; 3]>()) {
        let n = g.num_identities() as u32;
        let x = pick[0] % n;
        let y = (x + 1 + pick[1] % (n - 1)) % n;
        let z = (0..n).cycle().skip((pick[2] % n) as usize).find(|&w| w != x && w != y).unwrap();
        let first = classify_triple(&g, x, y, z);
        prop_assert_eq!(first, classify_triple(&g, z, x, y));
        prop_assert_eq!(first, classify_triple(&g, y, z, x));
        prop_assert_eq!(first, classify_triple(&g, y, x, z));
    }

    #[test]
    fn degree_sums_are_twice_edges(g in arb_graph()) {
        let n = g.num_identities() as NodeId;
        let blue: usize = (0..n).map(|u| g.blue_degree(u)).sum();
        let red: usize = (0..n).map(|u| g.red_degree(u)).sum();
        prop_assert_eq!(blue, 2 * g.num_blue_edges());
        prop_assert_eq!(red, 2 * g.num_red_edges());
    }

    #[test]
    fn edge_neighbor_counts_match_enumeration(g in arb_graph()) {
        for layer in [Layer::Blue, Layer::Red] {
            let edges: Vec<_> = g.edges(layer).collect();
            for e in &edges {
                let enumerated = edges.iter().filter(|f| e.shared_endpoint(f).is_some() && *f != e).count();
                let counted = match layer {
                    Layer::Blue => g.edge_blue_neighbor_count(e.u, e.v),
                    Layer::Red => g.edge_red_neighbor_count(e.u, e.v),
                };
                prop_assert_eq!(counted.unwrap(), enumerated);
            }
        }
    }

    #[test]
    fn exact_counts_match_naive(g in arb_graph()) {
        let truth = count_exact(&g);
        prop_assert_eq!(&truth, &count_naive(&g));
        let sum: f64 = truth.concentrations.iter().sum();
        prop_assert!(truth.total == 0 || (sum - 1.0).abs() < 1e-12);
    }
}
