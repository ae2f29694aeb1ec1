use proptest::prelude::*;

use graph_hypergroups::convolution::{
    check_finite_well_defined, convolution_table, lazy_table_with_radius,
};
use graph_hypergroups::generators::{
    integer_line, isomorphic, linked_triangle, prism, regular_tree, FamilySpec,
};
use graph_hypergroups::graph::{
    ball, bfs_distances, metrics, FiniteGraph, Graph, Vertex, UNREACHED,
};
use graph_hypergroups::oracles::{
    closed_form, linked_triangle_intersection_number, tree_intersection_number, Family,
};
use graph_hypergroups::rational::one;
use graph_hypergroups::scheme::intersection_numbers;

/// Connected graph: a random spanning tree plus extra edges.
fn connected_graph() -> impl Strategy<Value = FiniteGraph> {
    (2usize..12).prop_flat_map(|n| {
        let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
        let extra = proptest::collection::vec((0..n, 0..n), 0..n * 2);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .into_iter()
                .enumerate()
                .map(|(i, p)| (p, i + 1))
                .collect();
            for (a, b) in extra {
                let e = (a.min(b), a.max(b));
                if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
                    edges.push(e);
                }
            }
            FiniteGraph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn distances_form_a_metric(g in connected_graph()) {
        let d = g.distance_matrix();
        let n = g.order();
        for x in 0..n {
            prop_assert_eq!(d[x][x], 0);
            for y in 0..n {
                prop_assert!(d[x][y] != UNREACHED);
                prop_assert_eq!(d[x][y], d[y][x]);
                prop_assert_eq!(d[x][y] == 1, g.has_edge(x, y));
                for z in 0..n {
                    prop_assert!(d[x][z] <= d[x][y] + d[y][z]);
                }
            }
        }
        let m = metrics(&g);
        prop_assert!(m.radius <= m.diameter && m.diameter <= 2 * m.radius);
    }

    #[test]
    fn rows_are_probability_measures(g in connected_graph()) {
        let wd = check_finite_well_defined(&g);
        prop_assume!(wd.well_defined);
        let graph = Graph::Finite(g.clone());
        for v in 0..g.order() {
            let t = convolution_table(&graph, &Vertex::Id(v), None).unwrap();
            for (&(i, j), row) in t.rows() {
                prop_assert_eq!(row.mass(), one());
                prop_assert_eq!(row.audit(i, j), None);
            }
        }
    }

    #[test]
    fn non_self_centered_graphs_are_refused(g in connected_graph()) {
        let m = metrics(&g);
        let wd = check_finite_well_defined(&g);
        prop_assert_eq!(wd.well_defined, m.self_centered);
        if let Some(w) = wd.witness {
            prop_assert!(m.eccentricities[w] < m.diameter);
            let refused = convolution_table(&Graph::Finite(g), &Vertex::Id(0), None);
            prop_assert!(refused.is_err());
        }
    }
}

#[test]
fn prism4_is_the_cube() {
    let cube = FamilySpec::Platonic(8).build_finite().unwrap();
    assert!(isomorphic(&prism(4).unwrap(), &cube));
    assert!(!isomorphic(
        &prism(5).unwrap(),
        &FamilySpec::Petersen.build_finite().unwrap()
    ));
}

#[test]
fn path_tree_matches_the_integer_line() {
    let tree = regular_tree(2);
    let line = integer_line().unwrap();
    for l in 0..=5 {
        let a = lazy_table_with_radius(&tree, tree.base(), l, 2 * l).unwrap();
        let b = lazy_table_with_radius(&line, line.base(), l, 2 * l).unwrap();
        let ra: Vec<_> = a.level_rows().collect();
        let rb: Vec<_> = b.level_rows().collect();
        assert_eq!(ra, rb, "L={l}");
    }
}

#[test]
fn linked_triangle_cycles() {
    // Every vertex lies on exactly two triangles and has degree four.
    let g = linked_triangle();
    let b = ball(&g, g.base(), 6).unwrap();
    for v in (0..b.len()).filter(|&v| b.distances[v] <= 4) {
        let nb = &b.adjacency[v];
        assert_eq!(nb.len(), 4, "{}", b.keys[v]);
        let mut triangles = 0;
        for (x, &a) in nb.iter().enumerate() {
            for &c in &nb[x + 1..] {
                if b.adjacency[a].contains(&c) {
                    triangles += 1;
                }
            }
        }
        assert_eq!(triangles, 2, "{}", b.keys[v]);
    }
    // Levels double.
    assert_eq!(b.level_sizes(), vec![1, 4, 8, 16, 32, 64, 128]);
}

#[test]
fn tree_intersection_numbers_match_closed_form() {
    for n in 2..=4usize {
        let g = Graph::Lazy(regular_tree(n));
        let p = intersection_numbers(&g, &g.default_base(), Some(4)).unwrap();
        for i in 0..=4 {
            for j in 0..=4 {
                for k in 0..=8 {
                    assert_eq!(
                        p.get(i, j, k),
                        tree_intersection_number(n as u64, i, j, k),
                        "n={n} p_{{{i},{j}}}^{k}"
                    );
                }
            }
        }
    }
}

#[test]
fn linked_triangle_intersection_numbers_match_closed_form() {
    let g = Graph::Lazy(linked_triangle());
    let p = intersection_numbers(&g, &g.default_base(), Some(4)).unwrap();
    let mut checked = 0;
    for i in 0..=4 {
        for j in 0..=4 {
            for k in 0..=8 {
                assert_eq!(
                    p.get(i, j, k),
                    linked_triangle_intersection_number(i, j, k),
                    "p_{{{i},{j}}}^{k}"
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 5 * 5 * 9);
}

#[test]
fn oracle_tables_are_symmetric() {
    let families = [
        Family::Tree { n: 3 },
        Family::LinkedTriangle,
        Family::Ladder,
        Family::StronglyRegular {
            n: 10,
            k: 3,
            lambda: 0,
            mu: 1,
        },
        Family::Heptagon(graph_hypergroups::oracles::VertexClass::Blank),
    ];
    for f in &families {
        let s = f.diameter().unwrap_or(5);
        for i in 0..=s {
            for j in 0..=s {
                assert_eq!(
                    closed_form(f, i, j).unwrap(),
                    closed_form(f, j, i).unwrap(),
                    "{f} {i},{j}"
                );
            }
        }
    }
}

#[test]
fn bfs_matches_distance_matrix() {
    let g = FamilySpec::Platonic(20).build_finite().unwrap();
    let d = g.distance_matrix();
    for v in 0..g.order() {
        assert_eq!(bfs_distances(&g, v), d[v]);
    }
}
