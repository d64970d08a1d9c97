use proptest::prelude::*;

use ::cclosed::cliques::{cclosed as engine, cliques_pivot, CClosedOptions, Mode};
use cclosed::closure::{a_bound, c_closure, codegree_stats, is_valid_ordering, weak_closure};
use cclosed::graph::parse_edge_list;
use cclosed::wedges::{co_neighborhood_of, enumerate_wedges, triangle_count};
use cclosed::{Graph, Vertex, VertexSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n as Vertex {
                for v in u + 1..n as Vertex {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn graph_and_subset(max_n: usize) -> impl Strategy<Value = (Graph, Vec<Vertex>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::sample::subsequence((0..n as Vertex).collect::<Vec<_>>(), 0..=n))
    })
}

fn unguarded(g: &Graph, mode: Mode) -> CClosedOptions {
    CClosedOptions {
        mode,
        max_subcall: g.n(),
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trip(g in graph_strategy(20)) {
        let back = parse_edge_list(&g.to_edge_list_string()).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.m(), g.m());
        // ids may be renumbered on parse; labels are preserved
        let mut a: Vec<_> = back.edges().map(|(u, v)| {
            let (x, y) = (back.label(u), back.label(v));
            (x.min(y), x.max(y))
        }).collect();
        a.sort_unstable();
        prop_assert_eq!(a, g.edges().map(|(u, v)| (u as u64, v as u64)).collect::<Vec<_>>());
    }

    #[test]
    fn induced_subgraph_keeps_exactly_the_inner_edges((g, s) in graph_and_subset(16)) {
        let set = VertexSet::from_unsorted(s.clone());
        let h = g.induced_subgraph(&set).unwrap();
        prop_assert_eq!(h.n(), s.len());
        for (i, &a) in s.iter().enumerate() {
            for (j, &b) in s.iter().enumerate() {
                if i != j {
                    prop_assert_eq!(h.is_adjacent(i as Vertex, j as Vertex), g.is_adjacent(a, b));
                }
            }
        }
    }

    #[test]
    fn common_neighbours_are_symmetric_and_exclude_the_pair(g in graph_strategy(16)) {
        for u in g.vertices() {
            for v in g.vertices().filter(|&v| v != u) {
                let a = g.common_neighbors(u, v).unwrap();
                prop_assert_eq!(&a, &g.common_neighbors(v, u).unwrap());
                prop_assert!(!a.contains(u) && !a.contains(v));
                prop_assert!(a.iter().all(|w| g.is_adjacent(u, w) && g.is_adjacent(v, w)));
            }
        }
    }

    #[test]
    fn closure_is_hereditary((g, s) in graph_and_subset(14)) {
        let h = g.induced_subgraph(&VertexSet::from_unsorted(s)).unwrap();
        prop_assert!(c_closure(&h).0 <= c_closure(&g).0);
        prop_assert!(weak_closure(&h).weak_c_closure <= weak_closure(&g).weak_c_closure);
    }

    #[test]
    fn weak_closure_is_at_most_closure_and_its_ordering_is_valid(g in graph_strategy(16)) {
        let (c, witness) = c_closure(&g);
        let r = weak_closure(&g);
        prop_assert!(r.weak_c_closure <= c);
        prop_assert_eq!(r.c_closure, c);
        prop_assert!(is_valid_ordering(&g, r.weak_c_closure, &r.ordering).unwrap());
        match witness {
            Some(w) => {
                prop_assert!(!g.is_adjacent(w.u, w.v));
                prop_assert_eq!(w.codegree + 1, c);
            }
            None => prop_assert_eq!(c, 1),
        }
    }

    #[test]
    fn wedge_count_follows_the_triangle_identity(g in graph_strategy(18)) {
        let idx = enumerate_wedges(&g);
        let binom: u64 = g.vertices().map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        }).sum();
        prop_assert_eq!(idx.wedge_count() as u64, binom - 3 * triangle_count(&g));
        for u in g.vertices() {
            for v in g.vertices().filter(|&v| v != u && !g.is_adjacent(u, v)) {
                prop_assert_eq!(co_neighborhood_of(&idx, &g, u, v).unwrap(), g.common_neighbors(u, v).unwrap());
            }
        }
    }

    #[test]
    fn histogram_counts_every_non_adjacent_pair(g in graph_strategy(16)) {
        let n = g.n() as u64;
        let total: u64 = codegree_stats(&g).p.iter().sum();
        prop_assert_eq!(total, n * n.saturating_sub(1) / 2 - g.m() as u64);
    }

    #[test]
    fn exact_mode_equals_the_oracle_under_any_ordering(
        (g, order) in graph_strategy(14).prop_flat_map(|g| {
            let ids: Vec<Vertex> = g.vertices().collect();
            (Just(g), Just(ids).prop_shuffle())
        })
    ) {
        let oracle = cliques_pivot(&g).to_clique_set();
        let exact = engine::run(&g, &order, &unguarded(&g, Mode::Exact)).unwrap().forest.to_clique_set();
        prop_assert_eq!(&exact, &oracle);
        let sup = engine::run(&g, &order, &unguarded(&g, Mode::Superset)).unwrap().forest;
        prop_assert!(oracle.is_subset_of(&sup.to_clique_set()));
        // every path of the superset forest is a clique
        for p in sup.paths() {
            for (i, &a) in p.iter().enumerate() {
                prop_assert!(p[i + 1..].iter().all(|&b| g.is_adjacent(a, b)));
            }
        }
    }

    #[test]
    fn a_bound_is_nonnegative_and_bounds_the_count(g in graph_strategy(14)) {
        let a = a_bound(&g).value;
        prop_assert!(a >= 0.0);
        let count = cliques_pivot(&g).leaf_count() as f64;
        let components = ::cclosed::graph::connected_components(&g) as f64;
        prop_assert!(count <= (g.n() as f64 * a).max(components) * (1.0 + 1e-9));
    }
}
