//! Intersection graphs, induced paths, and the chain-count bound they give.
//!
//! Every `r`-chain of a hypergraph is an induced path on `r` vertices in the
//! graph whose vertices are the hyperedges, adjacent when they share exactly
//! one vertex. Bounding induced paths therefore bounds chains.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::exact::{ratio, to_rational};
use crate::hypergraph::Hypergraph;

/// Default vertex cap for [`count_induced_paths`].
pub const PATH_VERTEX_CAP: usize = 4096;
/// Default vertex cap for [`blowup`].
pub const BLOWUP_CAP: usize = 4096;

/// Simple undirected graph with an adjacency matrix and neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![false; n * n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u}, {v}) out of range 0..{n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at {u}")));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        let neighbors = (0..n)
            .map(|u| (0..n).filter(|&v| adj[u * n + v]).collect())
            .collect();
        Ok(Self { n, adj, neighbors })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Views a 2-uniform hypergraph as a graph.
    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self> {
        if h.uniformity() != 2 {
            return Err(invalid(format!(
                "graph files must be 2-uniform, got uniformity {}",
                h.uniformity()
            )));
        }
        Self::from_edges(h.num_vertices(), h.edges().iter().map(|e| (e[0], e[1])))
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.n, 2, self.edges().map(|(u, v)| vec![u, v]).collect())
            .expect("graph edges are valid 2-edges")
    }

    /// Reads the hypergraph text format with uniformity 2.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_hypergraph(&Hypergraph::parse(text)?)
    }

    pub fn to_text(&self) -> String {
        self.to_hypergraph().to_text()
    }
}

/// Graph on the edges of `h`, adjacent when two edges share exactly one vertex.
pub fn aux_graph(h: &Hypergraph) -> Graph {
    let m = h.num_edges();
    let edges = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .filter(|&(i, j)| h.intersection_size(i, j) == 1);
    Graph::from_edges(m, edges).expect("indices are in range")
}

/// Number of induced paths on `r` vertices, each counted once.
pub fn count_induced_paths(g: &Graph, r: usize) -> Result<u64> {
    count_induced_paths_with_cap(g, r, PATH_VERTEX_CAP)
}

pub fn count_induced_paths_with_cap(g: &Graph, r: usize, cap: usize) -> Result<u64> {
    if r < 2 {
        return Err(invalid(format!("path length must be at least 2, got {r}")));
    }
    if g.num_vertices() > cap {
        return Err(Error::CapExceeded {
            what: "vertex count",
            cap,
            actual: g.num_vertices(),
        });
    }
    let mut count = 0u64;
    let mut seq = Vec::with_capacity(r);
    for start in 0..g.num_vertices() {
        seq.push(start);
        extend_path(g, r, &mut seq, &mut count);
        seq.pop();
    }
    Ok(count)
}

/// Extends an induced path; a completed path is counted from the endpoint
/// with the smaller label only.
fn extend_path(g: &Graph, r: usize, seq: &mut Vec<usize>, count: &mut u64) {
    if seq.len() == r {
        if seq[0] < seq[r - 1] {
            *count += 1;
        }
        return;
    }
    let last = seq[seq.len() - 1];
    for &next in g.neighbors(last) {
        if seq[..seq.len() - 1].iter().all(|&u| u != next && !g.adjacent(u, next)) {
            seq.push(next);
            extend_path(g, r, seq, count);
            seq.pop();
        }
    }
}

/// Upper bound `(nv/2) (nv/(r-1))^(r-1)` on induced `r`-vertex paths in a
/// graph with `nv` vertices, as an exact rational.
pub fn pg_bound_exact(nv: usize, r: usize) -> Result<BigRational> {
    if r < 2 {
        return Err(invalid(format!("path length must be at least 2, got {r}")));
    }
    let half = ratio(nv as u64, 2u64);
    let base = ratio(nv as u64, (r - 1) as u64);
    Ok(half * num_traits::Pow::pow(base, (r - 1) as u32))
}

pub fn pg_bound(nv: usize, r: usize) -> Result<f64> {
    if r < 2 {
        return Err(invalid(format!("path length must be at least 2, got {r}")));
    }
    let nv = nv as f64;
    Ok(nv / 2.0 * (nv / (r - 1) as f64).powi(r as i32 - 1))
}

/// Upper bound on set-counted `r`-chains of a hypergraph with `m` edges.
pub fn chain_bound(m: usize, r: usize) -> Result<f64> {
    pg_bound(m, r)
}

pub fn chain_bound_exact(m: usize, r: usize) -> Result<BigRational> {
    pg_bound_exact(m, r)
}

/// Recursive blow-up of the cycle `C_{r+1}`: level 1 is the cycle, level `k`
/// puts a copy of level `k-1` at each cycle position and joins copies at
/// adjacent positions completely. Vertex `x` has base-`(r+1)` digits giving
/// its position at each level, most significant first.
pub fn blowup(r: usize, k: usize) -> Result<Graph> {
    if r < 3 || k < 1 {
        return Err(invalid(format!("blowup needs r >= 3 and k >= 1, got ({r}, {k})")));
    }
    let base = r + 1;
    let n = base.checked_pow(k as u32).unwrap_or(usize::MAX);
    if n > BLOWUP_CAP {
        return Err(Error::CapExceeded {
            what: "blow-up vertex count",
            cap: BLOWUP_CAP,
            actual: n,
        });
    }
    let digits = |x: usize| -> Vec<usize> {
        let mut d = vec![0; k];
        let mut x = x;
        for slot in d.iter_mut().rev() {
            *slot = x % base;
            x /= base;
        }
        d
    };
    let all: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let level = (0..k).find(|&l| all[u][l] != all[v][l]).expect("distinct vertices");
            let diff = (all[u][level] + base - all[v][level]) % base;
            if diff == 1 || diff == base - 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// `Σ_{i=1}^{k} n^r / (r+1)^{i(r-1)}` with `n = (r+1)^k`.
pub fn example_formula(r: usize, k: usize) -> Result<BigRational> {
    if r < 3 || k < 1 {
        return Err(invalid(format!(
            "example_formula needs r >= 3 and k >= 1, got ({r}, {k})"
        )));
    }
    let base = BigUint::from(r + 1);
    let n = base.pow(k as u32);
    let top = to_rational(n.pow(r as u32));
    let mut sum = BigRational::zero();
    for i in 1..=k {
        sum += &top / to_rational(base.pow((i * (r - 1)) as u32));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::Family;
    use num_traits::ToPrimitive;

    #[test]
    fn aux_graph_examples() {
        let fano = Family::Fano.generate().unwrap();
        let g = aux_graph(&fano);
        assert_eq!(g, Graph::complete(7).unwrap());

        let c = Family::SingleChain { n: 3, r: 3 }.generate().unwrap();
        assert_eq!(aux_graph(&c), Graph::path(3).unwrap());

        let two = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let g = aux_graph(&two);
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 0));
    }

    #[test]
    fn induced_path_examples() {
        assert_eq!(count_induced_paths(&Graph::cycle(4).unwrap(), 3).unwrap(), 4);
        assert_eq!(count_induced_paths(&Graph::complete(4).unwrap(), 3).unwrap(), 0);
        assert_eq!(count_induced_paths(&Graph::path(4).unwrap(), 4).unwrap(), 1);
        assert_eq!(count_induced_paths(&Graph::cycle(5).unwrap(), 4).unwrap(), 5);
        assert_eq!(count_induced_paths(&Graph::cycle(5).unwrap(), 5).unwrap(), 0);
        assert!(count_induced_paths(&Graph::path(4).unwrap(), 1).is_err());
    }

    #[test]
    fn two_vertex_paths_are_edges() {
        let g = Graph::complete(7).unwrap();
        assert_eq!(count_induced_paths(&g, 2).unwrap(), 21);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(pg_bound(4, 3).unwrap(), 8.0);
        assert_eq!(pg_bound(7, 2).unwrap(), 24.5);
        assert_eq!(pg_bound(16, 3).unwrap(), 512.0);
        assert_eq!(chain_bound(0, 3).unwrap(), 0.0);
        assert_eq!(pg_bound_exact(7, 2).unwrap(), ratio(49u32, 2u32));
        assert_eq!(chain_bound_exact(16, 3).unwrap().to_f64().unwrap(), 512.0);
    }

    #[test]
    fn blowup_base_case_is_cycle() {
        assert_eq!(blowup(3, 1).unwrap(), Graph::cycle(4).unwrap());
        assert_eq!(blowup(4, 1).unwrap(), Graph::cycle(5).unwrap());
        assert!(blowup(2, 1).is_err());
        assert!(blowup(3, 0).is_err());
        assert!(matches!(blowup(3, 7), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn blowup_level_two() {
        let g = blowup(3, 2).unwrap();
        assert_eq!(g.num_vertices(), 16);
        // each vertex: 2 neighbors in its own C4 copy, 4 + 4 in the adjacent copies
        assert!((0..16).all(|u| g.degree(u) == 10));
        // copy 0 = vertices 0..4 is itself a C4
        for u in 0..4 {
            for v in 0..4 {
                let d = (u + 4 - v) % 4;
                assert_eq!(g.adjacent(u, v), d == 1 || d == 3);
            }
        }
        // copies 0 and 2 are not joined, copies 0 and 1 are
        assert!(!g.adjacent(0, 8));
        assert!((4..8).all(|v| g.adjacent(0, v)));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(example_formula(3, 1).unwrap(), ratio(4u32, 1u32));
        assert_eq!(example_formula(3, 2).unwrap(), ratio(272u32, 1u32));
        assert_eq!(example_formula(4, 1).unwrap(), ratio(5u32, 1u32));
    }

    #[test]
    fn graph_text_format() {
        let g = Graph::cycle(4).unwrap();
        let text = g.to_text();
        assert_eq!(text, "4 4 2\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(Graph::parse(&text).unwrap(), g);
        assert!(Graph::parse("3 1 3\n0 1 2\n").is_err());
    }
}
