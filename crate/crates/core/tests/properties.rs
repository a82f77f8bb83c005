use proptest::prelude::*;

use dist2::distance::{clique_number, distance_k_graph, find_triangle};
use dist2::families::{build_family_gp, build_family_gpp, closed_form_gp, closed_form_gpp, FamilyParams};
use dist2::structure::{find_induced_c6_variant, find_induced_claw, two_clique_cover, Pattern};
use dist2::{canonical_form, Graph, VertexSet};

/// Graph with up to `max_n` vertices from a random edge mask.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p)).unwrap()
        })
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_filter("connected", |g| g.is_connected())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Floyd-Warshall distances, `usize::MAX` for unreachable.
fn apsp(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut d = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if g.has_edge(i, j) {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != usize::MAX && d[k][j] != usize::MAX && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn pairs_at(g: &Graph, k: usize) -> usize {
    let d = apsp(g);
    (0..g.n()).flat_map(|i| (i + 1..g.n()).map(move |j| (i, j))).filter(|&(i, j)| d[i][j] == k).count()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Does some 6-subset induce a copy of `pattern`? Tries every ordering.
fn has_induced(g: &Graph, pattern: Pattern) -> bool {
    let k = pattern.order();
    let pg = pattern.graph();
    let perms = permutations(k);
    let n = g.n();
    let mut stack = vec![(0usize, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        if chosen.len() == k {
            let hit = perms.iter().any(|p| {
                (0..k).all(|a| (a + 1..k).all(|b| g.has_edge(chosen[p[a]], chosen[p[b]]) == pg.has_edge(a, b)))
            });
            if hit {
                return true;
            }
            continue;
        }
        for v in start..n {
            let mut c = chosen.clone();
            c.push(v);
            stack.push((v + 1, c));
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels(g in graph(8).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let (g, p) = g;
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&p)));
    }

    #[test]
    fn distance_graphs_partition_pairs(g in connected_graph(10)) {
        let n = g.n();
        let total: usize = (1..n.max(2)).map(|k| distance_k_graph(&g, k).unwrap().pair_count()).sum();
        prop_assert_eq!(total, n * (n - 1) / 2);
        for k in 1..4 {
            prop_assert_eq!(distance_k_graph(&g, k).unwrap().pair_count(), pairs_at(&g, k));
        }
    }

    #[test]
    fn triangle_search_matches_clique_number(g in graph(10)) {
        prop_assert_eq!(find_triangle(&g).is_some(), clique_number(&g) >= 3);
        if let Some((a, b, c)) = find_triangle(&g) {
            prop_assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c));
        }
    }

    #[test]
    fn pattern_finders_match_brute_force(g in graph(8)) {
        prop_assert_eq!(find_induced_claw(&g).is_some(), has_induced(&g, Pattern::Claw));
        for p in Pattern::C6_VARIANTS {
            let found = find_induced_c6_variant(&g, p);
            prop_assert_eq!(found.is_some(), has_induced(&g, p), "{:?}", p);
            if let Some(w) = found {
                let pg = p.graph();
                for a in 0..6 {
                    for b in a + 1..6 {
                        prop_assert_eq!(g.has_edge(w.vertices[a], w.vertices[b]), pg.has_edge(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn two_clique_cover_matches_partitions(g in graph(9), v in 0usize..9) {
        let v = v % g.n();
        let nbrs = g.neighbors(v).to_vec();
        let exists = (0u64..1 << nbrs.len()).any(|mask| {
            let a: VertexSet = nbrs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
            g.is_clique(a) && g.is_clique(g.neighbors(v) - a)
        });
        let cover = two_clique_cover(&g, v);
        prop_assert_eq!(cover.is_some(), exists);
        if let Some(c) = cover {
            prop_assert!(g.is_clique(c.a) && g.is_clique(c.b));
            prop_assert_eq!(c.a | c.b, g.neighbors(v));
            prop_assert!((c.a & c.b).is_empty());
        }
    }
}

#[test]
fn family_closed_forms_match_distance_count() {
    for n in 5..=20 {
        for x in 1..n - 3 {
            let p = FamilyParams::new(x, n - 3 - x).unwrap();
            let gpp = build_family_gpp(p).unwrap();
            assert_eq!(pairs_at(&gpp, 2), closed_form_gpp(p), "G'' {x},{}", n - 3 - x);
            let gp = build_family_gp(p).unwrap();
            assert_eq!(pairs_at(&gp, 2), closed_form_gp(p), "G' {x},{}", n - 3 - x);
        }
    }
}
