use lapen::connectivity::connectivity_report;
use lapen::spectral::{algebraic_connectivity, laplacian_spectrum};
use lapen::{construct, laplacian_energy, min_energy_value, Graph};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=12).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn arb_nm() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=25).prop_flat_map(|n| (Just(n), n - 1..=n * (n - 1) / 2))
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let back = Graph::read_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn energy_is_a_lower_bound(g in arb_graph()) {
        let min = min_energy_value(g.n(), g.m()).unwrap();
        prop_assert!(laplacian_energy(&g).0 >= min.0);
    }

    #[test]
    fn constructed_graphs_survive_serialisation((n, m) in arb_nm()) {
        let g = construct(n, m).unwrap();
        let back = Graph::read_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(laplacian_energy(&back), min_energy_value(n, m).unwrap());
        prop_assert!(back.is_connected());
        let spectrum = laplacian_spectrum(&back);
        let trace: f64 = spectrum.iter().sum();
        prop_assert!((trace - 2.0 * m as f64).abs() < 1e-8);
        prop_assert!(algebraic_connectivity(&back) > 0.0);
    }

    #[test]
    fn connectivity_is_ordered(g in arb_graph().prop_filter("n >= 2", |g| g.n() >= 2)) {
        let c = connectivity_report(&g).unwrap();
        prop_assert!(c.vertex_connectivity <= c.edge_connectivity);
        prop_assert!(c.edge_connectivity <= c.min_degree);
    }
}
