//! Colorings, linear orders and the exact chromatic number.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;

/// Default vertex cap for [`chromatic_number`].
pub const CHROMATIC_CAP: usize = 16;

/// Vertex coloring with colors `1..=palette`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    colors: Vec<u32>,
    palette: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, palette: u32) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > palette) {
            return Err(invalid(format!("color {c} outside 1..={palette}")));
        }
        Ok(Self { colors, palette })
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of colors that actually occur.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.palette as usize + 1];
        self.colors.iter().for_each(|&c| seen[c as usize] = true);
        seen.iter().filter(|&&s| s).count()
    }
}

/// A linear order on `0..len`, stored as position -> vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LinearOrder {
    order: Vec<usize>,
    #[serde(skip)]
    rank: Vec<usize>,
}

impl LinearOrder {
    pub fn from_permutation(order: Vec<usize>) -> Result<Self> {
        let mut rank = vec![usize::MAX; order.len()];
        for (pos, &v) in order.iter().enumerate() {
            if v >= order.len() || rank[v] != usize::MAX {
                return Err(invalid(format!("{order:?} is not a permutation")));
            }
            rank[v] = pos;
        }
        Ok(Self { order, rank })
    }

    pub fn identity(len: usize) -> Self {
        Self {
            order: (0..len).collect(),
            rank: (0..len).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..len).collect();
        order.shuffle(rng);
        Self::from_permutation(order).expect("shuffle yields a permutation")
    }

    pub fn reversed(&self) -> Self {
        let order: Vec<usize> = self.order.iter().rev().copied().collect();
        Self::from_permutation(order).expect("reversal of a permutation")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Vertices in order, first to last.
    pub fn vertices(&self) -> &[usize] {
        &self.order
    }

    /// Position of `vertex` in the order.
    pub fn rank(&self, vertex: usize) -> usize {
        self.rank[vertex]
    }
}

pub fn is_proper(h: &Hypergraph, coloring: &Coloring) -> Result<bool> {
    if coloring.len() != h.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: h.num_vertices(),
            actual: coloring.len(),
        });
    }
    let c = coloring.colors();
    Ok(h
        .edges()
        .iter()
        .all(|e| e.iter().any(|&v| c[v] != c[e[0]])))
}

/// Indices of monochromatic edges under a raw color vector.
pub fn monochromatic_edges(h: &Hypergraph, colors: &[u32]) -> Vec<usize> {
    h.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.iter().all(|&v| colors[v] == colors[e[0]]))
        .map(|(i, _)| i)
        .collect()
}

/// Exact chromatic number with the default cap of [`CHROMATIC_CAP`] vertices.
pub fn chromatic_number(h: &Hypergraph) -> Result<usize> {
    chromatic_number_with_cap(h, CHROMATIC_CAP)
}

/// Exact chromatic number by branch and bound; refuses hypergraphs with
/// more than `cap` vertices.
///
/// By convention the empty and the edgeless hypergraph have chromatic number 1.
pub fn chromatic_number_with_cap(h: &Hypergraph, cap: usize) -> Result<usize> {
    if h.num_vertices() > cap {
        return Err(Error::CapExceeded {
            what: "vertex count",
            cap,
            actual: h.num_vertices(),
        });
    }
    if h.num_edges() == 0 {
        return Ok(1);
    }
    let search = ColorSearch::new(h);
    // One color per vertex is always proper since edges have at least 2 vertices.
    Ok((2..=h.num_vertices())
        .find(|&k| search.colorable(k).is_some())
        .expect("a hypergraph with edges of size >= 2 is |V|-colorable"))
}

/// Finds a proper `k`-coloring if one exists (same caps as [`chromatic_number`]).
pub fn find_proper_coloring(h: &Hypergraph, k: usize) -> Result<Option<Coloring>> {
    if h.num_vertices() > CHROMATIC_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count",
            cap: CHROMATIC_CAP,
            actual: h.num_vertices(),
        });
    }
    if k == 0 {
        return Ok(if h.num_vertices() == 0 {
            Some(Coloring::new(vec![], 0)?)
        } else {
            None
        });
    }
    Ok(ColorSearch::new(h)
        .colorable(k)
        .map(|c| Coloring::new(c, k as u32).expect("search colors are in range")))
}

struct ColorSearch {
    n: usize,
    /// For each vertex, the edges whose largest vertex it is, minus that vertex.
    closing: Vec<Vec<Vec<usize>>>,
}

impl ColorSearch {
    fn new(h: &Hypergraph) -> Self {
        let mut closing = vec![Vec::new(); h.num_vertices()];
        for e in h.edges() {
            let (&last, rest) = e.split_last().expect("edges are non-empty");
            closing[last].push(rest.to_vec());
        }
        Self {
            n: h.num_vertices(),
            closing,
        }
    }

    fn colorable(&self, k: usize) -> Option<Vec<u32>> {
        let mut colors = vec![0u32; self.n];
        if self.n == 0 || self.assign(0, 0, k as u32, &mut colors) {
            Some(colors)
        } else {
            None
        }
    }

    /// Colors vertices in index order; a new color is only opened as
    /// `max_used + 1`, which fixes vertex 0 to color 1.
    fn assign(&self, v: usize, max_used: u32, k: u32, colors: &mut [u32]) -> bool {
        if v == self.n {
            return true;
        }
        for c in 1..=(max_used + 1).min(k) {
            let blocked = self.closing[v]
                .iter()
                .any(|rest| rest.iter().all(|&u| colors[u] == c));
            if blocked {
                continue;
            }
            colors[v] = c;
            if self.assign(v + 1, max_used.max(c), k, colors) {
                return true;
            }
        }
        colors[v] = 0;
        false
    }
}
