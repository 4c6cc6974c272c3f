use std::fmt;

use serde::{Deserialize, Serialize};

use super::subset::EdgeSubset;

/// Labeled multigraph. Multi-edges and self-loops are allowed, and edge
/// indices `0..N-1` are stable identifiers that all subset queries refer to.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Graph {
        let needed = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Graph {
            vertex_count: vertex_count.max(needed),
            edges,
        }
    }

    /// Cycle with edges `(0,1), (1,2), ..., (n-1,0)`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 1);
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, edges)
    }

    /// Two vertices joined by `n` parallel edges.
    pub fn bond(n: usize) -> Graph {
        Graph::new(2, vec![(0, 1); n])
    }

    /// Complete graph on `n` vertices, edges in lexicographic order.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges)
    }

    /// Wheel with hub `0` and rim `1..=n`: spokes first, then rim edges.
    pub fn wheel(n: usize) -> Graph {
        assert!(n >= 3);
        let mut edges = Vec::new();
        for i in 1..=n {
            edges.push((0, i));
        }
        for i in 1..=n {
            let j = if i == n { 1 } else { i + 1 };
            edges.push((i, j));
        }
        Graph::new(n + 1, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.vertex_count = self.vertex_count.max(u.max(v) + 1);
        self.edges.push((u, v));
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    /// Rank of an edge subset: vertices touched minus components spanned.
    pub fn rank(&self, subset: EdgeSubset) -> u32 {
        let mut uf = UnionFind::new(self.vertex_count);
        let mut rank = 0;
        for e in subset.iter() {
            let (u, v) = self.edges[e];
            if uf.union(u, v) {
                rank += 1;
            }
        }
        rank
    }

    /// Delete vertex `v`; returns the new graph together with the original
    /// indices of the surviving edges (in order).
    pub fn delete_vertex(&self, v: usize) -> (Graph, Vec<usize>) {
        assert!(v < self.vertex_count);
        let map = |w: usize| if w > v { w - 1 } else { w };
        let mut kept = Vec::new();
        let mut edges = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a != v && b != v {
                kept.push(i);
                edges.push((map(a), map(b)));
            }
        }
        (
            Graph {
                vertex_count: self.vertex_count - 1,
                edges,
            },
            kept,
        )
    }

    /// Keep only the edges in `subset`, renumbering them `0..k` in index
    /// order; vertex set is unchanged.
    pub fn edge_subgraph(&self, subset: EdgeSubset) -> Graph {
        let edges = subset.iter().map(|e| self.edges[e]).collect();
        Graph {
            vertex_count: self.vertex_count,
            edges,
        }
    }

    /// Contract the edges in `subset` (merging their endpoint classes) and
    /// drop them; remaining edges keep their relative order. Parallel edges
    /// and self-loops produced by the contraction are kept.
    pub fn contract_edges(&self, subset: EdgeSubset) -> Graph {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in subset.iter() {
            let (u, v) = self.edges[e];
            uf.union(u, v);
        }
        let mut relabel = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut edges = Vec::new();
        let mut vertex_of = |uf: &mut UnionFind, w: usize, relabel: &mut Vec<usize>| {
            let root = uf.find(w);
            if relabel[root] == usize::MAX {
                relabel[root] = next;
                next += 1;
            }
            relabel[root]
        };
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if subset.contains(i) {
                continue;
            }
            let u = vertex_of(&mut uf, a, &mut relabel);
            let v = vertex_of(&mut uf, b, &mut relabel);
            edges.push((u, v));
        }
        // also name any remaining isolated merged classes so vertex_count
        // reflects the quotient's vertex set
        for w in 0..self.vertex_count {
            let root = uf.find(w);
            if relabel[root] == usize::MAX {
                relabel[root] = next;
                next += 1;
            }
        }
        Graph {
            vertex_count: next,
            edges,
        }
    }

    /// Vertices touched by the given edge subset.
    pub fn support(&self, subset: EdgeSubset) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        for e in subset.iter() {
            let (u, v) = self.edges[e];
            seen[u] = true;
            seen[v] = true;
        }
        (0..self.vertex_count).filter(|&v| seen[v]).collect()
    }

    /// Is the edge-induced subgraph on `subset` connected as a graph
    /// (ignoring untouched vertices)? The empty subset counts as connected.
    pub fn edges_connected(&self, subset: EdgeSubset) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in subset.iter() {
            let (u, v) = self.edges[e];
            uf.union(u, v);
        }
        let support = self.support(subset);
        match support.first() {
            None => true,
            Some(&v0) => {
                let root = uf.find(v0);
                support.iter().all(|&v| uf.find(v) == root)
            }
        }
    }

    /// Glue another graph onto this one, identifying the listed vertex pairs
    /// `(here, there)`; returns the mapping from the other graph's vertices
    /// to the combined graph. Edges of `other` are appended in order.
    pub fn glue(&mut self, other: &Graph, identify: &[(usize, usize)]) -> Vec<usize> {
        let mut map = vec![usize::MAX; other.vertex_count];
        for &(here, there) in identify {
            map[there] = here;
        }
        for w in 0..other.vertex_count {
            if map[w] == usize::MAX {
                map[w] = self.add_vertex();
            }
        }
        for &(a, b) in &other.edges {
            self.add_edge(map[a], map[b]);
        }
        map
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(v={}, e={:?})", self.vertex_count, self.edges)
    }
}

/// Union-find over vertex indices.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merge the classes of `x` and `y`; true if they were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        true
    }
}
