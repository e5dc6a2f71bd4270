//! Immutable trees with precomputed all-pairs distances.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Vertices are dense 0-based ids.
pub type Vertex = usize;

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub fn normalize(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("self loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {0}-{1} closes a cycle")]
    CycleDetected(Vertex, Vertex),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("edge {0}-{1} is not an edge of the tree")]
    EdgeNotInTree(Vertex, Vertex),
    #[error("vertex set does not induce a connected subtree")]
    NotASubtree,
}

/// A connected acyclic graph. Construction validates the input and fills in
/// the distance and eccentricity tables; afterwards the value never changes.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
    dist: Vec<u32>,
    ecc: Vec<u32>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metrics {
    pub radius: u32,
    pub diameter: u32,
    pub centers: Vec<Vertex>,
    pub peripheral: Vec<Vertex>,
}

/// A path given by its vertex sequence. Length is the number of edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePath {
    vertices: Vec<Vertex>,
}

impl TreePath {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        TreePath { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    /// Edges in path order, each normalized.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| normalize(w[0], w[1]))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

/// A piece of a larger tree together with the map from its local ids back to
/// the ids of the host tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub tree: Tree,
    pub mapping: Vec<Vertex>,
}

impl Component {
    pub fn local(&self, original: Vertex) -> Option<Vertex> {
        self.mapping.iter().position(|&v| v == original)
    }

    pub fn original(&self, local: Vertex) -> Vertex {
        self.mapping[local]
    }
}

impl Tree {
    /// Builds a tree on `n` vertices. Every id must be below `n`.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: w, n });
                }
            }
            normalized.push(normalize(u, v));
        }
        let mut sorted = normalized.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::DuplicateEdge(w[0].0, w[0].1));
        }

        // Union-find in input order so the reported cycle edge is the first
        // one that closes a cycle.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for &(u, v) in &normalized {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(TreeError::CycleDetected(u, v));
            }
            parent[ru] = rv;
            components -= 1;
        }
        if components > 1 {
            return Err(TreeError::Disconnected { components });
        }

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &sorted {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let mut dist = vec![u32::MAX; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if row[y] == u32::MAX {
                        row[y] = row[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        let ecc = (0..n)
            .map(|v| *dist[v * n..(v + 1) * n].iter().max().unwrap())
            .collect();

        Ok(Tree {
            n,
            edges: sorted,
            adj,
            dist,
            ecc,
        })
    }

    /// Builds a tree from an edge list alone; `n` is one more than the
    /// largest id. An empty list gives the single-vertex tree.
    pub fn from_edges(edges: &[(Vertex, Vertex)]) -> Result<Tree, TreeError> {
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
        Tree::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges sorted lexicographically.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&normalize(u, v)).ok()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn leaves(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.degree(v) <= 1).collect()
    }

    #[inline]
    pub fn dist(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Distances from `u` to every vertex.
    pub fn dist_row(&self, u: Vertex) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn ecc(&self, v: Vertex) -> u32 {
        self.ecc[v]
    }

    pub fn eccentricities(&self) -> &[u32] {
        &self.ecc
    }

    pub fn radius(&self) -> u32 {
        *self.ecc.iter().min().unwrap()
    }

    pub fn diameter(&self) -> u32 {
        *self.ecc.iter().max().unwrap()
    }

    pub fn centers(&self) -> Vec<Vertex> {
        let r = self.radius();
        (0..self.n).filter(|&v| self.ecc[v] == r).collect()
    }

    pub fn peripheral(&self) -> Vec<Vertex> {
        let d = self.diameter();
        (0..self.n).filter(|&v| self.ecc[v] == d).collect()
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            radius: self.radius(),
            diameter: self.diameter(),
            centers: self.centers(),
            peripheral: self.peripheral(),
        }
    }

    /// The unique path from `u` to `v`.
    pub fn path(&self, u: Vertex, v: Vertex) -> TreePath {
        let mut vertices = vec![u];
        let mut x = u;
        while x != v {
            let d = self.dist(x, v);
            x = *self.adj[x]
                .iter()
                .find(|&&y| self.dist(y, v) + 1 == d)
                .expect("distance table is consistent");
            vertices.push(x);
        }
        TreePath { vertices }
    }

    /// Whether `path` is a simple path of this tree.
    pub fn contains_path(&self, path: &TreePath) -> bool {
        let vs = path.vertices();
        if vs.iter().any(|&v| v >= self.n) {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &v in vs {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        vs.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// Every path whose length equals the diameter, once each, oriented from
    /// its smaller endpoint.
    pub fn diametrical_paths(&self) -> Vec<TreePath> {
        if self.n == 1 {
            return vec![TreePath::new(vec![0])];
        }
        let d = self.diameter();
        let peripheral = self.peripheral();
        let mut paths = Vec::new();
        for (i, &u) in peripheral.iter().enumerate() {
            for &v in &peripheral[i + 1..] {
                if self.dist(u, v) == d {
                    paths.push(self.path(u, v));
                }
            }
        }
        paths
    }

    pub fn is_diametrical(&self, path: &TreePath) -> bool {
        self.contains_path(path) && path.len() as u32 == self.diameter()
    }

    /// Distance from `v` to the nearest vertex of `path`.
    pub fn dist_to_path(&self, v: Vertex, path: &TreePath) -> u32 {
        path.vertices()
            .iter()
            .map(|&p| self.dist(v, p))
            .min()
            .unwrap()
    }

    /// Components of the forest obtained by deleting `removed`, ordered by
    /// their smallest original vertex.
    pub fn component_split(&self, removed: &[Edge]) -> Result<Vec<Component>, TreeError> {
        let mut cut = vec![false; self.edges.len()];
        for &(u, v) in removed {
            let idx = self
                .edge_index(u, v)
                .ok_or(TreeError::EdgeNotInTree(u, v))?;
            cut[idx] = true;
        }
        let mut label = vec![usize::MAX; self.n];
        let mut groups: Vec<Vec<Vertex>> = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut members = vec![s];
            label[s] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &y in &self.adj[x] {
                    if label[y] == usize::MAX && !cut[self.edge_index(x, y).unwrap()] {
                        label[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            groups.push(members);
        }
        groups
            .into_iter()
            .map(|members| self.induced(&members))
            .collect()
    }

    /// The subtree induced by `keep`; local ids follow the order of `keep`
    /// after sorting.
    pub fn induced(&self, keep: &[Vertex]) -> Result<Component, TreeError> {
        let mut mapping: Vec<Vertex> = keep.to_vec();
        mapping.sort_unstable();
        mapping.dedup();
        if mapping.is_empty() {
            return Err(TreeError::Empty);
        }
        if let Some(&bad) = mapping.iter().find(|&&v| v >= self.n) {
            return Err(TreeError::VertexOutOfRange {
                vertex: bad,
                n: self.n,
            });
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in mapping.iter().enumerate() {
            local[v] = i;
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]))
            .collect();
        let tree = Tree::new(mapping.len(), &edges).map_err(|_| TreeError::NotASubtree)?;
        Ok(Component { tree, mapping })
    }

    /// Isomorphism-invariant string: AHU encoding rooted at the center, or
    /// the smaller of the two encodings for a bicentral tree.
    pub fn canonical_form(&self) -> String {
        let centers = self.centers();
        centers
            .iter()
            .map(|&c| self.rooted_code(c, usize::MAX))
            .min()
            .unwrap()
    }

    fn rooted_code(&self, v: Vertex, parent: Vertex) -> String {
        let mut children: Vec<String> = self.adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.rooted_code(w, v))
            .collect();
        children.sort_unstable();
        let mut s = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
        s.push('(');
        for c in children {
            s.push_str(&c);
        }
        s.push(')');
        s
    }
}
