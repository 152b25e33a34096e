//! Finite simple connected graphs.
//!
//! Vertices are dense 0-indexed integers and the edge list (unordered pairs,
//! stored with the smaller endpoint first) is the canonical external form.
//! Connectivity is validated at construction: every quantity computed by this
//! crate assumes it, so disconnected input is a hard error.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Builds and validates a graph from an edge list.
    ///
    /// Rejects self-loops, duplicate edges, out-of-range endpoints and
    /// disconnected input.
    pub fn build(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::SizeTooSmall {
                what: "graph",
                min: 1,
                got: 0,
            });
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let degrees = adj.iter().map(Vec::len).collect();
        let g = Graph {
            n,
            edges,
            adj,
            degrees,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_tree(&self) -> bool {
        // Connectivity already holds by construction.
        self.m() == self.n - 1
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.iter().all(|&d| d == self.degrees[0])
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// All-pairs shortest-path distances via breadth-first search from every
    /// vertex.
    pub fn distances(&self) -> DistanceMatrix {
        let mut d = vec![0u32; self.n * self.n];
        let mut queue = VecDeque::new();
        for src in 0..self.n {
            let row = &mut d[src * self.n..(src + 1) * self.n];
            const UNSEEN: u32 = u32::MAX;
            for x in row.iter_mut() {
                *x = UNSEEN;
            }
            row[src] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(v) = queue.pop_front() {
                let dv = row[v];
                for &w in &self.adj[v] {
                    if row[w] == UNSEEN {
                        row[w] = dv + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceMatrix { n: self.n, d }
    }

    /// Path on `n >= 2` vertices: `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Result<Graph> {
        if n < 2 {
            return Err(Error::SizeTooSmall {
                what: "path",
                min: 2,
                got: n,
            });
        }
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::build(n, &edges)
    }

    /// Star on `n >= 2` vertices with centre 0 and leaves `1..n`.
    pub fn star(n: usize) -> Result<Graph> {
        if n < 2 {
            return Err(Error::SizeTooSmall {
                what: "star",
                min: 2,
                got: n,
            });
        }
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::build(n, &edges)
    }

    /// Complete graph on `n >= 2` vertices.
    pub fn complete(n: usize) -> Result<Graph> {
        if n < 2 {
            return Err(Error::SizeTooSmall {
                what: "complete graph",
                min: 2,
                got: n,
            });
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::build(n, &edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::SizeTooSmall {
                what: "cycle",
                min: 3,
                got: n,
            });
        }
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        Graph::build(n, &edges)
    }

    /// A `k`-vertex clique joined by an edge to a vertex `x`, a path of
    /// length `p` from `x` to a vertex `y`, and a star of `l` leaves centred
    /// at `y`.
    ///
    /// Vertices `0..k` form the clique, `x = k` is the clique attachment,
    /// `y = k + p` is the star centre and the last `l` vertices are the star
    /// leaves, so the graph has `k + p + l + 1` vertices in total.
    pub fn clique_path_star(k: usize, p: usize, l: usize) -> Result<Graph> {
        if k < 2 {
            return Err(Error::SizeTooSmall {
                what: "clique part",
                min: 2,
                got: k,
            });
        }
        if p < 1 {
            return Err(Error::SizeTooSmall {
                what: "path part",
                min: 1,
                got: p,
            });
        }
        if l < 1 {
            return Err(Error::SizeTooSmall {
                what: "star part",
                min: 1,
                got: l,
            });
        }
        let n = k + p + l + 1;
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        // x = k sits next to clique vertex 0, then the path runs x .. y.
        edges.push((0, k));
        for i in k..k + p {
            edges.push((i, i + 1));
        }
        let y = k + p;
        for leaf in y + 1..n {
            edges.push((y, leaf));
        }
        Graph::build(n, &edges)
    }
}

/// Dense all-pairs distance table. Symmetric with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.d[x * self.n + y] as usize
    }

    /// Sum of distances from `x` to every vertex.
    pub fn row_sum(&self, x: usize) -> usize {
        self.d[x * self.n..(x + 1) * self.n]
            .iter()
            .map(|&v| v as usize)
            .sum()
    }

    pub fn eccentricity(&self, x: usize) -> usize {
        self.d[x * self.n..(x + 1) * self.n]
            .iter()
            .map(|&v| v as usize)
            .max()
            .unwrap_or(0)
    }
}

/// A tree with a distinguished root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
}

impl RootedTree {
    pub fn new(graph: Graph, root: usize) -> Result<RootedTree> {
        if !graph.is_tree() {
            return Err(Error::NotATree);
        }
        if root >= graph.n() {
            return Err(Error::VertexOutOfRange {
                vertex: root,
                n: graph.n(),
            });
        }
        Ok(RootedTree { graph, root })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

/// Parses the edge-list text format: a first line `"n m"` followed by `m`
/// lines `"u v"` (ASCII decimal, space-separated, 0-indexed).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    fn two_numbers(line: &str, lineno: usize) -> Result<(usize, usize)> {
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>, lineno: usize| -> Result<usize> {
            let tok = tok.ok_or(Error::Parse {
                line: lineno,
                message: "expected two numbers".into(),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid number {tok:?}"),
            })
        };
        let a = parse(it.next(), lineno)?;
        let b = parse(it.next(), lineno)?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "trailing tokens".into(),
            });
        }
        Ok((a, b))
    }

    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let (n, m) = two_numbers(header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (idx, line) = lines.next().ok_or(Error::Parse {
            line: m + 1,
            message: format!("expected {m} edge lines"),
        })?;
        edges.push(two_numbers(line, idx + 1)?);
    }
    for (idx, line) in lines {
        if !line.trim().is_empty() {
            return Err(Error::Parse {
                line: idx + 1,
                message: "unexpected extra line".into(),
            });
        }
    }
    Graph::build(n, &edges)
}

/// Inverse of [`parse_edge_list`].
pub fn render_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_small_graphs() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        assert_eq!((k2.n(), k2.m()), (2, 1));

        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.degrees(), &[2, 2, 2]);
        assert_eq!(k3.degrees().iter().sum::<usize>(), 2 * k3.m());
    }

    #[test]
    fn build_rejects_invalid_input() {
        assert_eq!(
            Graph::build(4, &[(0, 1), (2, 3)]),
            Err(Error::Disconnected)
        );
        assert_eq!(Graph::build(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::build(2, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::build(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn generators() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.edges(), &[(0, 1), (1, 2)]);

        let s4 = Graph::star(4).unwrap();
        assert_eq!(s4.degrees(), &[3, 1, 1, 1]);

        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.m(), 6);

        let c4 = Graph::cycle(4).unwrap();
        assert!(c4.is_regular() && c4.m() == 4);

        assert!(matches!(
            Graph::path(1),
            Err(Error::SizeTooSmall { min: 2, .. })
        ));
        assert!(matches!(Graph::cycle(2), Err(Error::SizeTooSmall { .. })));
    }

    #[test]
    fn clique_path_star_shape() {
        let g = Graph::clique_path_star(3, 1, 6).unwrap();
        assert_eq!(g.n(), 11);
        // x = 3 touches the clique and the path, y = 4 centres the star.
        assert_eq!(g.degree(3), 2);
        assert_eq!(g.degree(4), 7);
        assert!(g.has_edge(0, 3) && g.has_edge(3, 4));

        let g = Graph::clique_path_star(4, 3, 2).unwrap();
        assert_eq!(g.n(), 4 + 3 + 2 + 1);
        assert!(matches!(
            Graph::clique_path_star(1, 1, 1),
            Err(Error::SizeTooSmall { .. })
        ));
    }

    #[test]
    fn distances_examples() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.distances().get(0, 2), 2);

        let k4 = Graph::complete(4).unwrap();
        let d = k4.distances();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(d.get(x, y), usize::from(x != y));
            }
        }

        let s5 = Graph::star(5).unwrap();
        assert_eq!(s5.distances().get(1, 2), 2);
    }

    #[test]
    fn rooted_tree_validation() {
        let t = RootedTree::new(Graph::path(4).unwrap(), 2).unwrap();
        assert_eq!(t.root(), 2);
        assert_eq!(
            RootedTree::new(Graph::cycle(3).unwrap(), 0),
            Err(Error::NotATree)
        );
        assert!(RootedTree::new(Graph::path(3).unwrap(), 3).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::clique_path_star(3, 2, 2).unwrap();
        let text = render_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_parse_errors() {
        let err = parse_edge_list("3 2\n0 1\na b\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "invalid number \"a\"".into()
            }
        );
        assert!(matches!(
            parse_edge_list("2 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(
            parse_edge_list("4 2\n0 1\n2 3\n"),
            Err(Error::Disconnected)
        );
    }
}
