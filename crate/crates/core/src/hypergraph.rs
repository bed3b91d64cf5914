//! Uniform hypergraphs and their plain-text exchange format.
//!
//! The text format is line oriented:
//!
//! ```text
//! # optional comment lines start with '#'
//! <num_vertices> <num_edges> <uniformity>
//! v0 v1 v2
//! ...
//! ```
//!
//! Vertices are 0-based. Edges are canonicalized on load (vertices sorted,
//! edge list sorted), so [`Hypergraph::to_text`] always produces the same
//! bytes for the same hypergraph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An `n`-uniform hypergraph on vertices `0..num_vertices`.
///
/// Edges are stored sorted, each edge itself sorted, with no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    num_vertices: usize,
    uniformity: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(num_vertices: usize, uniformity: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if uniformity < 2 {
            return Err(Error::InvalidParameter(format!(
                "uniformity must be at least 2, got {uniformity}"
            )));
        }
        let mut canon = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for (index, mut edge) in edges.into_iter().enumerate() {
            if edge.len() != uniformity {
                return Err(Error::InvalidEdge {
                    index,
                    reason: format!("has {} vertices, expected {uniformity}", edge.len()),
                });
            }
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge {
                    index,
                    reason: "repeats a vertex".into(),
                });
            }
            if let Some(&v) = edge.last() {
                if v >= num_vertices {
                    return Err(Error::InvalidEdge {
                        index,
                        reason: format!("vertex {v} out of range 0..{num_vertices}"),
                    });
                }
            }
            if !seen.insert(edge.clone()) {
                return Err(Error::DuplicateEdge(edge));
            }
            canon.push(edge);
        }
        canon.sort_unstable();
        Ok(Self {
            num_vertices,
            uniformity,
            edges: canon,
        })
    }

    /// Hypergraph with no edges.
    pub fn edgeless(num_vertices: usize, uniformity: usize) -> Result<Self> {
        Self::new(num_vertices, uniformity, Vec::new())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    /// Size of the intersection of edges `i` and `j`.
    pub fn intersection_size(&self, i: usize, j: usize) -> usize {
        sorted_intersection_len(&self.edges[i], &self.edges[j])
    }

    /// Pairwise intersection sizes, row-major `num_edges x num_edges`.
    pub fn intersection_matrix(&self) -> Vec<Vec<usize>> {
        let m = self.edges.len();
        (0..m)
            .map(|i| (0..m).map(|j| if i == j { self.uniformity } else { self.intersection_size(i, j) }).collect())
            .collect()
    }

    /// Sub-hypergraph on the same vertex set keeping the edges selected by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, &[usize]) -> bool) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| keep(*i, e))
            .map(|(_, e)| e.clone())
            .collect();
        Self {
            num_vertices: self.num_vertices,
            uniformity: self.uniformity,
            edges,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header".into(),
        })?;
        let header = parse_numbers(header_line, header)?;
        let [num_vertices, num_edges, uniformity] = header[..] else {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header needs 3 numbers, found {}", header.len()),
            });
        };

        let mut edges = Vec::with_capacity(num_edges);
        for (line, content) in lines {
            if edges.len() == num_edges {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {num_edges} edges"),
                });
            }
            let edge = parse_numbers(line, content)?;
            if edge.len() != uniformity {
                return Err(Error::Parse {
                    line,
                    message: format!("edge has {} vertices, expected {uniformity}", edge.len()),
                });
            }
            edges.push(edge);
        }
        if edges.len() != num_edges {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("declared {num_edges} edges, found {}", edges.len()),
            });
        }
        Self::new(num_vertices, uniformity, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {} {}",
            self.num_vertices,
            self.edges.len(),
            self.uniformity
        );
        for edge in &self.edges {
            let line: Vec<String> = edge.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_numbers(line: usize, content: &str) -> Result<Vec<usize>> {
    content
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|e| Error::Parse {
                line,
                message: format!("bad integer {tok:?}: {e}"),
            })
        })
        .collect()
}

pub(crate) fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_edges() {
        let h = Hypergraph::new(5, 3, vec![vec![4, 3, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Hypergraph::new(3, 3, vec![vec![0, 1]]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 3, vec![vec![0, 1, 1]]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 3, vec![vec![0, 1, 3]]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![2, 0, 1]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(Hypergraph::new(4, 1, vec![]).is_err());
    }

    #[test]
    fn parses_comments_and_round_trips() {
        let text = "# a 2-chain\n5 2 3\n# second edge below\n4 3 2\n0 1 2\n";
        let h = Hypergraph::parse(text).unwrap();
        assert_eq!(h.to_text(), "5 2 3\n0 1 2\n2 3 4\n");
        assert_eq!(Hypergraph::parse(&h.to_text()).unwrap(), h);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Hypergraph::parse("3 1 3\n0 x 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Hypergraph::parse("3 2 3\n0 1 2\n").is_err());
        assert!(Hypergraph::parse("3 1 3\n0 1 2\n0 1 2\n").is_err());
        assert!(Hypergraph::parse("").is_err());
        assert!(matches!(
            Hypergraph::parse("4 2 3\n0 1 2\n2 1 0\n"),
            Err(Error::DuplicateEdge(_))
        ));
    }

    #[test]
    fn intersections() {
        let h = Hypergraph::new(7, 3, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]]).unwrap();
        assert_eq!(h.intersection_size(0, 1), 1);
        assert_eq!(h.intersection_size(0, 2), 0);
        let m = h.intersection_matrix();
        assert_eq!(m[1][1], 3);
        assert_eq!(m[2][1], 1);
    }
}
