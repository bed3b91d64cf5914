//! Chains of edges, ordered chains, and the order-based greedy colorer.
//!
//! An `r`-chain is a sequence of `r` edges where consecutive edges share
//! exactly one vertex and non-consecutive edges are disjoint. Under a linear
//! order it is *ordered* when every vertex of an earlier edge is at or before
//! every vertex of a later edge. A hypergraph is `r`-colorable exactly when
//! some linear order has no ordered `r`-chain; the greedy colorer here is the
//! constructive side of that equivalence.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, LinearOrder};
use crate::error::{invalid, Error, Result};
use crate::exact::{factorial, to_rational};
use crate::hypergraph::Hypergraph;

/// Default cap on `|E|` for chain enumeration.
pub const CHAIN_EDGE_CAP: usize = 256;
/// Default vertex cap for [`exists_good_order`].
pub const ORDER_SEARCH_CAP: usize = 9;

/// A validated chain: indices into the edge list of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain(Vec<usize>);

impl Chain {
    pub fn new(h: &Hypergraph, seq: Vec<usize>) -> Result<Self> {
        if is_chain(h, &seq)? {
            Ok(Self(seq))
        } else {
            Err(Error::NotAChain)
        }
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Directed sequences; a chain and its reversal count separately.
    Sequences,
    /// Underlying edge sets, each counted once.
    Sets,
}

impl std::str::FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sequences" | "seq" => Ok(Self::Sequences),
            "sets" | "set" => Ok(Self::Sets),
            _ => Err(invalid(format!("unknown count mode {s:?}"))),
        }
    }
}

fn check_indices(h: &Hypergraph, seq: &[usize]) -> Result<()> {
    match seq.iter().find(|&&i| i >= h.num_edges()) {
        Some(&i) => Err(invalid(format!(
            "edge index {i} out of range 0..{}",
            h.num_edges()
        ))),
        None => Ok(()),
    }
}

pub fn is_chain(h: &Hypergraph, seq: &[usize]) -> Result<bool> {
    check_indices(h, seq)?;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let want = usize::from(j == i + 1);
            if h.intersection_size(seq[i], seq[j]) != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Depth-first enumeration of directed `r`-chains, pruning on intersections.
pub struct ChainEnumerator<'h> {
    h: &'h Hypergraph,
    inter: Vec<Vec<usize>>,
    /// Per edge, the edges meeting it in exactly one vertex.
    touching: Vec<Vec<usize>>,
}

impl<'h> ChainEnumerator<'h> {
    pub fn new(h: &'h Hypergraph, cap: usize) -> Result<Self> {
        if h.num_edges() > cap {
            return Err(Error::CapExceeded {
                what: "edge count",
                cap,
                actual: h.num_edges(),
            });
        }
        let inter = h.intersection_matrix();
        let touching = inter
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &s)| s == 1)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Ok(Self { h, inter, touching })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        self.h
    }

    /// Calls `visit` on every directed `r`-chain.
    pub fn for_each(&self, r: usize, mut visit: impl FnMut(&[usize])) {
        if r == 0 {
            return;
        }
        let mut seq = Vec::with_capacity(r);
        for first in 0..self.h.num_edges() {
            seq.push(first);
            self.extend(r, &mut seq, &mut visit);
            seq.pop();
        }
    }

    fn extend(&self, r: usize, seq: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if seq.len() == r {
            visit(seq);
            return;
        }
        let last = *seq.last().expect("seq is non-empty");
        for &next in &self.touching[last] {
            if seq[..seq.len() - 1].iter().all(|&e| self.inter[e][next] == 0) {
                seq.push(next);
                self.extend(r, seq, visit);
                seq.pop();
            }
        }
    }

    pub fn count(&self, r: usize, mode: CountMode) -> u64 {
        let mut n = 0u64;
        self.for_each(r, |seq| {
            // A chain of length >= 2 has distinct ends, so exactly one of its
            // two orientations starts with the smaller edge index.
            if mode == CountMode::Sequences || seq.len() == 1 || seq[0] < seq[seq.len() - 1] {
                n += 1;
            }
        });
        n
    }

    pub fn collect(&self, r: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each(r, |seq| out.push(seq.to_vec()));
        out
    }
}

/// Exact number of `r`-chains, refusing hypergraphs with more than
/// [`CHAIN_EDGE_CAP`] edges.
pub fn count_chains(h: &Hypergraph, r: usize, mode: CountMode) -> Result<u64> {
    count_chains_with_cap(h, r, mode, CHAIN_EDGE_CAP)
}

pub fn count_chains_with_cap(h: &Hypergraph, r: usize, mode: CountMode, cap: usize) -> Result<u64> {
    if r < 2 {
        return Err(invalid(format!("chain length must be at least 2, got {r}")));
    }
    Ok(ChainEnumerator::new(h, cap)?.count(r, mode))
}

pub fn is_ordered_chain(h: &Hypergraph, seq: &[usize], order: &LinearOrder) -> Result<bool> {
    if !is_chain(h, seq)? {
        return Err(Error::NotAChain);
    }
    if order.len() != h.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: h.num_vertices(),
            actual: order.len(),
        });
    }
    Ok(ordered_unchecked(h, seq, order))
}

fn ordered_unchecked(h: &Hypergraph, seq: &[usize], order: &LinearOrder) -> bool {
    let span = |e: usize| {
        let ranks = h.edge(e).iter().map(|&v| order.rank(v));
        let lo = ranks.clone().min().expect("non-empty edge");
        let hi = ranks.max().expect("non-empty edge");
        (lo, hi)
    };
    let spans: Vec<(usize, usize)> = seq.iter().map(|&e| span(e)).collect();
    (0..spans.len()).all(|i| (i + 1..spans.len()).all(|j| spans[i].1 <= spans[j].0))
}

/// Number of directed `r`-chains that are ordered under `order`.
pub fn count_ordered_chains(h: &Hypergraph, r: usize, order: &LinearOrder) -> Result<u64> {
    let chains = ChainEnumerator::new(h, CHAIN_EDGE_CAP)?;
    let mut n = 0;
    chains.for_each(r, |seq| {
        if ordered_unchecked(h, seq, order) {
            n += 1;
        }
    });
    Ok(n)
}

/// Probability that a fixed directed `r`-chain of an `n`-uniform hypergraph
/// is ordered under a uniformly random linear order:
/// `((n-1)!)^2 ((n-2)!)^(r-2) / ((n-1)r+1)!`.
pub fn ordered_chain_probability(n: usize, r: usize) -> Result<BigRational> {
    if n < 2 || r < 2 {
        return Err(invalid(format!(
            "ordered_chain_probability needs n >= 2 and r >= 2, got ({n}, {r})"
        )));
    }
    let num: BigUint = factorial(n - 1).pow(2u32) * factorial(n - 2).pow((r - 2) as u32);
    let den = factorial((n - 1) * r + 1);
    Ok(to_rational(num) / to_rational(den))
}

/// Result of [`greedy_color`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOutcome {
    Colored(Coloring),
    /// Every color `1..=r` would complete a monochromatic edge at this vertex.
    Stuck { vertex: usize },
}

impl GreedyOutcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            GreedyOutcome::Colored(c) => Some(c),
            GreedyOutcome::Stuck { .. } => None,
        }
    }
}

/// First-fit coloring along `order`: each vertex takes the smallest color
/// that does not complete a monochromatic edge whose last vertex (in
/// `order`) is the current one.
pub fn greedy_color(h: &Hypergraph, order: &LinearOrder, r: u32) -> Result<GreedyOutcome> {
    if order.len() != h.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: h.num_vertices(),
            actual: order.len(),
        });
    }
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); h.num_vertices()];
    for (i, e) in h.edges().iter().enumerate() {
        let last = *e.iter().max_by_key(|&&v| order.rank(v)).expect("non-empty edge");
        closing[last].push(i);
    }
    let mut colors = vec![0u32; h.num_vertices()];
    for &v in order.vertices() {
        let choice = (1..=r).find(|&c| {
            closing[v].iter().all(|&ei| {
                h.edge(ei)
                    .iter()
                    .any(|&u| u != v && colors[u] != c)
            })
        });
        match choice {
            Some(c) => colors[v] = c,
            None => return Ok(GreedyOutcome::Stuck { vertex: v }),
        }
    }
    Ok(GreedyOutcome::Colored(Coloring::new(colors, r)?))
}

/// Searches for a linear order with no ordered `r`-chain, returning one if
/// it exists. Refuses hypergraphs above [`ORDER_SEARCH_CAP`] vertices.
pub fn exists_good_order(h: &Hypergraph, r: usize) -> Result<Option<LinearOrder>> {
    exists_good_order_with_cap(h, r, ORDER_SEARCH_CAP)
}

pub fn exists_good_order_with_cap(
    h: &Hypergraph,
    r: usize,
    cap: usize,
) -> Result<Option<LinearOrder>> {
    if h.num_vertices() > cap {
        return Err(Error::CapExceeded {
            what: "vertex count",
            cap,
            actual: h.num_vertices(),
        });
    }
    if r == 0 {
        return Err(invalid("chain length must be at least 1"));
    }
    let chains = ChainEnumerator::new(h, usize::MAX)?.collect(r);
    let nv = h.num_vertices();

    // vertex set of each chain, and chains indexed by member vertex
    let members: Vec<Vec<usize>> = chains
        .iter()
        .map(|seq| {
            let mut vs: Vec<usize> = seq.iter().flat_map(|&e| h.edge(e).iter().copied()).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect();
    let mut by_vertex = vec![Vec::new(); nv];
    for (ci, vs) in members.iter().enumerate() {
        for &v in vs {
            by_vertex[v].push(ci);
        }
    }

    let mut search = OrderSearch {
        h,
        chains: &chains,
        members: &members,
        by_vertex: &by_vertex,
        rank: vec![usize::MAX; nv],
        placed_in_chain: vec![0; chains.len()],
        order: Vec::with_capacity(nv),
    };
    if search.place() {
        Ok(Some(LinearOrder::from_permutation(search.order)?))
    } else {
        Ok(None)
    }
}

struct OrderSearch<'a> {
    h: &'a Hypergraph,
    chains: &'a [Vec<usize>],
    members: &'a [Vec<usize>],
    by_vertex: &'a [Vec<usize>],
    rank: Vec<usize>,
    placed_in_chain: Vec<usize>,
    order: Vec<usize>,
}

impl OrderSearch<'_> {
    /// Appends vertices one at a time; a branch dies as soon as some chain
    /// has all its vertices placed and turns out ordered.
    fn place(&mut self) -> bool {
        let nv = self.rank.len();
        if self.order.len() == nv {
            return true;
        }
        for v in 0..nv {
            if self.rank[v] != usize::MAX {
                continue;
            }
            self.rank[v] = self.order.len();
            self.order.push(v);
            let mut dead = false;
            for &ci in &self.by_vertex[v] {
                self.placed_in_chain[ci] += 1;
                if self.placed_in_chain[ci] == self.members[ci].len() && self.ordered(ci) {
                    dead = true;
                }
            }
            if !dead && self.place() {
                return true;
            }
            for &ci in &self.by_vertex[v] {
                self.placed_in_chain[ci] -= 1;
            }
            self.order.pop();
            self.rank[v] = usize::MAX;
        }
        false
    }

    fn ordered(&self, ci: usize) -> bool {
        let span = |e: usize| {
            let rs = self.h.edge(e).iter().map(|&u| self.rank[u]);
            (rs.clone().min().unwrap(), rs.max().unwrap())
        };
        self.chains[ci]
            .windows(2)
            .all(|w| span(w[0]).1 <= span(w[1]).0)
    }
}

/// Upper bound `2 |E|^r / r!` on the number of directed `r`-chains: every
/// set of `r` edges can be arranged into at most two chains.
pub fn sequence_count_bound(num_edges: usize, r: usize) -> BigRational {
    let m = to_rational(BigUint::from(num_edges));
    let two = to_rational(BigUint::from(2u32));
    two * Pow::pow(m, r as u32) / to_rational(factorial(r))
}
