//! Loop-free multigraphs: the inputs to every counter and bound.
//!
//! Edges are unordered pairs with repetition allowed (parallel edges are
//! fine, loops are rejected). The edge-list file format is one edge per
//! line as `u v` with 0-based indices, `#` starting a comment, blank lines
//! ignored, and an optional `vertices N` header for graphs with isolated
//! vertices.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Undirected multigraph without loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    /// Build a graph, normalizing each edge to `(min, max)` and sorting the
    /// edge multiset so that equal multigraphs compare equal.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::LoopEdge { vertex: u });
            }
            let w = u.max(v);
            if w >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    vertex_count,
                });
            }
            normalized.push((u.min(v), w));
        }
        normalized.sort_unstable();
        Ok(MultiGraph {
            vertex_count,
            edges: normalized,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        match deg.first() {
            None => None,
            Some(&d) => deg.iter().all(|&x| x == d).then_some(d),
        }
    }

    /// Check that `(a, b)` partitions the vertices and every edge crosses it.
    pub fn validate_bipartition(&self, a: &[usize], b: &[usize]) -> Result<()> {
        let mut side = vec![None; self.vertex_count];
        for &v in a {
            if v >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
            side[v] = Some(0u8);
        }
        for &v in b {
            if v >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
            if side[v].is_some() {
                return Err(Error::NotBipartition(format!("vertex {v} on both sides")));
            }
            side[v] = Some(1);
        }
        if let Some(v) = side.iter().position(Option::is_none) {
            return Err(Error::NotBipartition(format!("vertex {v} on neither side")));
        }
        for &(u, v) in &self.edges {
            if side[u] == side[v] {
                return Err(Error::NotBipartition(format!(
                    "edge ({u}, {v}) does not cross the bipartition"
                )));
            }
        }
        Ok(())
    }

    /// Two-color the graph by BFS, rooting each component at its smallest
    /// vertex (root goes to side A, isolated vertices included). Returns
    /// `None` when an odd cycle makes the graph non-bipartite.
    pub fn two_coloring(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut color: Vec<Option<u8>> = vec![None; self.vertex_count];
        for start in 0..self.vertex_count {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(0);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(1 - cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (v, c) in color.iter().enumerate() {
            match c {
                Some(0) => a.push(v),
                _ => b.push(v),
            }
        }
        Some((a, b))
    }

    /// Disjoint union with vertices of `other` shifted past `self`.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let shift = self.vertex_count;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        MultiGraph::new(self.vertex_count + other.vertex_count, edges)
            .expect("both inputs are valid graphs")
    }

    /// Parse the edge-list format. `vertex_count` is the declared header
    /// value or `1 + max index` when absent.
    pub fn from_edge_list_str(input: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut max_index = None::<usize>;
        for (idx, raw) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "vertices" {
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected `vertices N`".into(),
                    });
                }
                let n = fields[1].parse::<usize>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad vertex count `{}`: {e}", fields[1]),
                })?;
                declared = Some(n);
                continue;
            }
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `u v`, got `{line}`"),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad vertex index `{s}`: {e}"),
                })
            };
            let (u, v) = (parse(fields[0])?, parse(fields[1])?);
            if u == v {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("loop edge {u} {v}"),
                });
            }
            max_index = Some(max_index.map_or(u.max(v), |m| m.max(u.max(v))));
            edges.push((u, v));
        }
        let vertex_count = declared.unwrap_or_else(|| max_index.map_or(0, |m| m + 1));
        MultiGraph::new(vertex_count, edges)
    }

    /// Inverse of [`from_edge_list_str`]; always writes the header so graphs
    /// with isolated vertices round-trip.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Complete bipartite graph K_{n,n}: sides `0..n` and `n..2n`.
    pub fn complete_bipartite(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InfeasibleSpec("complete_bipartite needs n >= 1".into()));
        }
        let edges = (0..n).flat_map(|u| (0..n).map(move |v| (u, n + v)));
        MultiGraph::new(2 * n, edges)
    }

    /// Cycle C_n, n >= 3.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InfeasibleSpec(format!("cycle needs n >= 3, got {n}")));
        }
        MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InfeasibleSpec("complete needs n >= 1".into()));
        }
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        MultiGraph::new(n, edges)
    }

    /// d-regular bipartite multigraph on sides `0..n` and `n..2n`, built as
    /// the union of d seeded random perfect matchings. Parallel edges are
    /// kept.
    pub fn random_regular_bipartite(n: usize, d: usize, seed: u64) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InfeasibleSpec(
                "random_regular_bipartite needs n >= 1 and d >= 1".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::with_capacity(n * d);
        for _ in 0..d {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            edges.extend((0..n).map(|i| (i, n + perm[i])));
        }
        MultiGraph::new(2 * n, edges)
    }

    /// Random graph on n vertices with every degree even: a seeded random
    /// Hamiltonian cycle plus a random triangle, so e = n + 3.
    pub fn random_even_graph(n: usize, seed: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InfeasibleSpec(format!(
                "random_even_graph needs n >= 3, got {n}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> =
            (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
        let mut tri: Vec<usize> = (0..n).collect();
        tri.shuffle(&mut rng);
        edges.push((tri[0], tri[1]));
        edges.push((tri[1], tri[2]));
        edges.push((tri[0], tri[2]));
        MultiGraph::new(n, edges)
    }
}
