//! Library results against direct brute-force definitions.

use hypercolor::chains::{
    count_chains, count_ordered_chains, exists_good_order, greedy_color, is_chain,
    ordered_chain_probability,
};
use hypercolor::exact::{ratio, to_rational};
use hypercolor::generate::{random_small, Family};
use hypercolor::inducibility::{aux_graph, blowup, count_induced_paths, pg_bound_exact, Graph};
use hypercolor::{chromatic_number, is_proper, CountMode, GreedyOutcome, Hypergraph, LinearOrder};
use itertools::Itertools;
use proptest::prelude::*;

fn brute_chromatic(h: &Hypergraph) -> usize {
    let v = h.num_vertices();
    if h.num_edges() == 0 {
        return 1;
    }
    for k in 1..=v {
        let proper = (0..v)
            .map(|_| 0..k)
            .multi_cartesian_product()
            .any(|c| h.edges().iter().all(|e| !e.iter().all(|&x| c[x] == c[e[0]])));
        if proper || v == 0 {
            return k;
        }
    }
    unreachable!()
}

fn meet(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

fn brute_is_chain(h: &Hypergraph, seq: &[usize]) -> bool {
    seq.iter().all_unique()
        && (0..seq.len()).all(|i| {
            (i + 1..seq.len()).all(|j| {
                let m = meet(h.edge(seq[i]), h.edge(seq[j]));
                if j == i + 1 {
                    m == 1
                } else {
                    m == 0
                }
            })
        })
}

/// (sequences, distinct edge sets)
fn brute_chains(h: &Hypergraph, r: usize) -> (u64, u64) {
    let seqs: Vec<Vec<usize>> = (0..h.num_edges())
        .permutations(r)
        .filter(|s| brute_is_chain(h, s))
        .collect();
    let sets = seqs
        .iter()
        .map(|s| s.iter().copied().sorted().collect_vec())
        .unique()
        .count();
    (seqs.len() as u64, sets as u64)
}

fn brute_is_ordered(h: &Hypergraph, seq: &[usize], order: &LinearOrder) -> bool {
    seq.iter().tuple_combinations().all(|(&a, &b)| {
        h.edge(a)
            .iter()
            .all(|&u| h.edge(b).iter().all(|&w| order.rank(u) <= order.rank(w)))
    })
}

fn brute_ordered_count(h: &Hypergraph, r: usize, order: &LinearOrder) -> u64 {
    (0..h.num_edges())
        .permutations(r)
        .filter(|s| brute_is_chain(h, s) && brute_is_ordered(h, s, order))
        .count() as u64
}

fn brute_induced_paths(g: &Graph, r: usize) -> u64 {
    (0..g.num_vertices())
        .combinations(r)
        .filter(|set| {
            let deg = |u: usize| set.iter().filter(|&&w| w != u && g.adjacent(u, w)).count();
            let edges: usize = set.iter().map(|&u| deg(u)).sum::<usize>() / 2;
            if edges != r - 1 || set.iter().any(|&u| deg(u) > 2 || deg(u) == 0) {
                return false;
            }
            // r - 1 edges, no isolated vertex, max degree 2: a path iff connected
            let mut seen = vec![set[0]];
            let mut i = 0;
            while i < seen.len() {
                let u = seen[i];
                for &w in set {
                    if g.adjacent(u, w) && !seen.contains(&w) {
                        seen.push(w);
                    }
                }
                i += 1;
            }
            seen.len() == r
        })
        .count() as u64
}

/// Level k replaces each vertex of C_{r+1} by a copy of level k - 1.
fn recursive_blowup(r: usize, k: usize) -> Vec<Vec<bool>> {
    let c = r + 1;
    if k == 0 {
        return vec![vec![false]];
    }
    let inner = recursive_blowup(r, k - 1);
    let s = inner.len();
    let mut adj = vec![vec![false; s * c]; s * c];
    for x in 0..s * c {
        for y in 0..s * c {
            let (px, py) = (x / s, y / s);
            adj[x][y] = if px == py {
                inner[x % s][y % s]
            } else {
                (px + 1) % c == py || (py + 1) % c == px
            };
        }
    }
    adj
}

fn hypergraph_strategy() -> impl Strategy<Value = Hypergraph> {
    (3usize..=7).prop_flat_map(|v| {
        let all: Vec<Vec<usize>> = (0..v).combinations(3).collect();
        let n = all.len();
        proptest::sample::subsequence(all, 0..=n.min(8)).prop_map(move |edges| Hypergraph::new(v, 3, edges).unwrap())
    })
}

fn order_strategy(v: usize) -> impl Strategy<Value = LinearOrder> {
    Just((0..v).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|p| LinearOrder::from_permutation(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn text_round_trip(h in hypergraph_strategy()) {
        let back = Hypergraph::parse(&h.to_text()).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(back.to_text(), h.to_text());
    }

    #[test]
    fn chromatic_matches_brute_force(h in hypergraph_strategy()) {
        prop_assert_eq!(chromatic_number(&h).unwrap(), brute_chromatic(&h));
    }

    #[test]
    fn chain_counts_match_brute_force(h in hypergraph_strategy(), r in 2usize..=4) {
        let (seqs, sets) = brute_chains(&h, r);
        prop_assert_eq!(count_chains(&h, r, CountMode::Sequences).unwrap(), seqs);
        prop_assert_eq!(count_chains(&h, r, CountMode::Sets).unwrap(), sets);
        prop_assert_eq!(seqs, 2 * sets);
    }

    #[test]
    fn is_chain_matches_definition(h in hypergraph_strategy(), picks in proptest::collection::vec(0usize..64, 1..=4)) {
        prop_assume!(h.num_edges() > 0);
        let seq: Vec<usize> = picks.iter().map(|p| p % h.num_edges()).collect();
        prop_assert_eq!(is_chain(&h, &seq).unwrap(), brute_is_chain(&h, &seq));
    }

    #[test]
    fn ordered_counts_match_brute_force(
        (h, order) in hypergraph_strategy().prop_flat_map(|h| { let v = h.num_vertices(); (Just(h), order_strategy(v)) }),
        r in 2usize..=3,
    ) {
        prop_assert_eq!(count_ordered_chains(&h, r, &order).unwrap(), brute_ordered_count(&h, r, &order));
    }

    #[test]
    fn greedy_is_sound_and_fails_only_on_ordered_chains(
        (h, order) in hypergraph_strategy().prop_flat_map(|h| { let v = h.num_vertices(); (Just(h), order_strategy(v)) }),
        r in 2u32..=3,
    ) {
        match greedy_color(&h, &order, r).unwrap() {
            GreedyOutcome::Colored(c) => {
                prop_assert!(is_proper(&h, &c).unwrap());
                prop_assert!(c.palette() == r);
            }
            GreedyOutcome::Stuck { .. } => {
                prop_assert!(brute_ordered_count(&h, r as usize, &order) > 0);
            }
        }
    }

    #[test]
    fn induced_paths_match_brute_force(h in hypergraph_strategy(), r in 2usize..=4) {
        let g = aux_graph(&h);
        prop_assert_eq!(count_induced_paths(&g, r).unwrap(), brute_induced_paths(&g, r));
    }
}

#[test]
fn aux_graph_matches_definition() {
    for seed in 0..40 {
        let h = random_small(seed, 4..=9, 2..=12).unwrap();
        let g = aux_graph(&h);
        for i in 0..h.num_edges() {
            for j in 0..h.num_edges() {
                let want = i != j && meet(h.edge(i), h.edge(j)) == 1;
                assert_eq!(g.adjacent(i, j), want);
            }
        }
    }
}

#[test]
fn pluhar_equivalence_on_random_hypergraphs() {
    let mut hs = vec![
        Family::Fano.generate().unwrap(),
        Family::SingleChain { n: 3, r: 2 }.generate().unwrap(),
        Family::SingleChain { n: 3, r: 3 }.generate().unwrap(),
        Family::Complete { v: 5, n: 3 }.generate().unwrap(),
        Family::Complete { v: 6, n: 3 }.generate().unwrap(),
        Family::Complete { v: 7, n: 3 }.generate().unwrap(),
        Hypergraph::edgeless(5, 3).unwrap(),
    ];
    hs.extend((0..120).map(|s| random_small(s, 3..=7, 1..=6).unwrap()));
    for h in &hs {
        let chi = brute_chromatic(h);
        for r in 2..=3 {
            let found = exists_good_order(h, r).unwrap();
            assert_eq!(found.is_some(), chi <= r, "{}", h.to_text());
            if let Some(order) = found {
                assert_eq!(brute_ordered_count(h, r, &order), 0);
            }
        }
    }
}

#[test]
fn mean_over_all_orders_is_exact() {
    let cases = [
        (Family::SingleChain { n: 3, r: 2 }.generate().unwrap(), 2),
        (Family::SingleChain { n: 3, r: 3 }.generate().unwrap(), 3),
        (random_small(5, 6..=6, 5..=5).unwrap(), 2),
        (random_small(8, 7..=7, 6..=6).unwrap(), 3),
    ];
    for (h, r) in cases {
        let v = h.num_vertices();
        let (mut total, mut orders) = (0u64, 0u64);
        for perm in (0..v).permutations(v) {
            total += brute_ordered_count(&h, r, &LinearOrder::from_permutation(perm).unwrap());
            orders += 1;
        }
        let (seqs, _) = brute_chains(&h, r);
        let expect = to_rational(seqs.into()) * ordered_chain_probability(3, r).unwrap();
        assert_eq!(ratio(total, orders), expect, "{}", h.to_text());
    }
}

#[test]
fn inducibility_sandwich() {
    for seed in 0..60 {
        let h = random_small(seed + 77, 5..=10, 3..=14).unwrap();
        let g = aux_graph(&h);
        for r in 2..=3 {
            let (_, sets) = brute_chains(&h, r);
            let paths = brute_induced_paths(&g, r);
            assert!(sets <= paths);
            assert!(to_rational(paths.into()) <= pg_bound_exact(h.num_edges(), r).unwrap());
        }
        assert_eq!(count_induced_paths(&g, 2).unwrap(), g.num_edges() as u64);
    }
}

#[test]
fn blowup_matches_recursive_construction() {
    for (r, k) in [(3, 1), (3, 2), (4, 1), (4, 2), (3, 3), (5, 2)] {
        let g = blowup(r, k).unwrap();
        let adj = recursive_blowup(r, k);
        assert_eq!(g.num_vertices(), adj.len());
        for (x, row) in adj.iter().enumerate() {
            for (y, &want) in row.iter().enumerate() {
                assert_eq!(g.adjacent(x, y), want, "r={r} k={k} ({x},{y})");
            }
        }
    }
    for r in [3, 4, 5] {
        let g = blowup(r, 1).unwrap();
        assert_eq!(g.num_edges(), r + 1);
        assert!((0..=r).all(|u| g.degree(u) == 2));
    }
}

#[test]
fn blowup_paths_match_brute_force() {
    let g = blowup(3, 2).unwrap();
    assert_eq!(count_induced_paths(&g, 3).unwrap(), brute_induced_paths(&g, 3));
    let g = blowup(4, 1).unwrap();
    assert_eq!(count_induced_paths(&g, 4).unwrap(), brute_induced_paths(&g, 4));
}
