//! Simple undirected graphs on at most 64 vertices.
//!
//! Edges are stored as an upper-triangle bitset in graph6 order: the pair
//! `(i, j)` with `i < j` occupies bit `j(j-1)/2 + i`. Adjacency is symmetric by
//! construction and self-loops cannot be represented.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

const WORDS: usize = (MAX_VERTICES * (MAX_VERTICES - 1) / 2).div_ceil(64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("{0} vertices requested, at most {MAX_VERTICES} supported")]
    NTooLarge(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
}

/// Index of the unordered pair `{i, j}`, `i != j`, in graph6 bit order.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

/// Number of unordered vertex pairs on `n` vertices.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u8,
    adj: [u64; WORDS],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        Ok(Graph { n: n as u8, adj: [0; WORDS] })
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_pair(pair_index(u, v));
        }
        Ok(g)
    }

    /// Builds a graph from the first `pair_count(n)` bits of `bits`, taken
    /// in graph6 pair order. Used by enumeration, where `n <= 11`.
    pub(crate) fn from_pair_mask(n: usize, bits: u64) -> Self {
        debug_assert!(pair_count(n) <= 64);
        let mut adj = [0; WORDS];
        adj[0] = bits;
        Graph { n: n as u8, adj }
    }

    pub(crate) fn set_pair(&mut self, k: usize) {
        self.adj[k / 64] |= 1 << (k % 64);
    }

    #[inline]
    pub(crate) fn pair_bit(&self, k: usize) -> bool {
        self.adj[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for k in 0..pair_count(n) {
            g.set_pair(k);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        if n < 3 {
            return Err(GraphError::CycleTooShort(n));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    /// `K_{p,q}`: parts `0..p` and `p..p+q`, every cross pair joined.
    pub fn complete_bipartite(p: usize, q: usize) -> Result<Self, GraphError> {
        if p == 0 || q == 0 {
            return Err(GraphError::NoVertices);
        }
        check_order(p + q)?;
        let mut g = Graph::empty(p + q)?;
        for i in 0..p {
            for j in p..p + q {
                g.set_pair(pair_index(i, j));
            }
        }
        Ok(g)
    }

    /// Star `K_{1,k}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        Graph::complete_bipartite(1, leaves)
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edge_list(10, &edges).expect("fixed edge list is valid")
    }

    /// Vertex-disjoint union, `self` first.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self, GraphError> {
        let shift = self.n();
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::from_edge_list(shift + other.n(), &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n() && v < self.n() && self.pair_bit(pair_index(u, v))
    }

    /// Edges `(i, j)` with `i < j`, in graph6 pair order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n()).flat_map(move |j| (0..j).map(move |i| (i, j))).filter(|&(i, j)| self.pair_bit(pair_index(i, j)))
    }

    /// Neighbourhood of every vertex as a bitmask.
    pub fn adjacency_rows(&self) -> Vec<u64> {
        let mut rows = vec![0u64; self.n()];
        for (i, j) in self.edges() {
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        }
        rows
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adjacency_rows().iter().map(|r| r.count_ones() as usize).collect()
    }

    pub fn is_regular(&self) -> bool {
        let degrees = self.degree_sequence();
        degrees.windows(2).all(|w| w[0] == w[1])
    }

    /// Breadth-first reachability from vertex 0.
    pub fn is_connected(&self) -> bool {
        let rows = self.adjacency_rows();
        let mut seen = 1u64;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let mut fresh = rows[v] & !seen;
            seen |= fresh;
            while fresh != 0 {
                queue.push_back(fresh.trailing_zeros() as usize);
                fresh &= fresh - 1;
            }
        }
        seen.count_ones() as usize == self.n()
    }

    /// Number of triangles, counted once per vertex triple.
    pub fn triangle_count(&self) -> usize {
        let rows = self.adjacency_rows();
        let mut count = 0;
        for (i, j) in self.edges() {
            // common neighbours above j so each triangle is seen once
            let above = if j + 1 >= 64 { 0 } else { !0u64 << (j + 1) };
            count += (rows[i] & rows[j] & above).count_ones() as usize;
        }
        count
    }

    pub fn is_triangle_free(&self) -> bool {
        self.triangle_count() == 0
    }

    /// Two-colouring of the vertices if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let rows = self.adjacency_rows();
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for start in 0..self.n() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let s = side[v].unwrap();
                let mut nb = rows[v];
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            queue.push_back(w);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// True iff the graph is `K_{p,q}` for some `p, q >= 1` (no isolated vertices).
    pub fn is_complete_bipartite(&self) -> bool {
        if self.n() < 2 || !self.is_connected() {
            return false;
        }
        match self.bipartition() {
            Some(side) => {
                let p = side.iter().filter(|&&s| s).count();
                self.edge_count() == p * (self.n() - p)
            }
            None => false,
        }
    }
}

fn check_order(n: usize) -> Result<(), GraphError> {
    match n {
        0 => Err(GraphError::NoVertices),
        n if n > MAX_VERTICES => Err(GraphError::NTooLarge(n)),
        _ => Ok(()),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_constructors() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.edge_count(), 1);
        assert_eq!(k2, Graph::complete(2).unwrap());

        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(p3, Graph::path(3).unwrap());

        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(c4, Graph::cycle(4).unwrap());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edge_list(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edge_list(65, &[]), Err(GraphError::NTooLarge(65)));
        assert_eq!(Graph::from_edge_list(0, &[]), Err(GraphError::NoVertices));
        assert_eq!(Graph::cycle(2), Err(GraphError::CycleTooShort(2)));
        assert_eq!(Graph::complete_bipartite(40, 25), Err(GraphError::NTooLarge(65)));
    }

    #[test]
    fn sixty_four_vertices_fit() {
        let k64 = Graph::complete(64).unwrap();
        assert_eq!(k64.edge_count(), 2016);
        assert!(k64.has_edge(62, 63));
        assert!(k64.is_regular());
        assert_eq!(k64.triangle_count(), 64 * 63 * 62 / 6);
    }

    #[test]
    fn complete_bipartite_family() {
        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        assert_eq!((k23.n(), k23.edge_count()), (5, 6));
        assert_eq!(Graph::complete_bipartite(1, 1).unwrap(), Graph::complete(2).unwrap());
        // K_{2,2} with parts {0,1},{2,3} is the 4-cycle 0-2-1-3
        let k22 = Graph::complete_bipartite(2, 2).unwrap();
        assert_eq!(k22, Graph::from_edge_list(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap());
        for p in 1..6 {
            for q in 1..6 {
                let g = Graph::complete_bipartite(p, q).unwrap();
                assert!(g.is_connected() && g.is_triangle_free() && g.is_bipartite());
                assert!(g.is_complete_bipartite());
                assert_eq!(g.edge_count(), p * q);
            }
        }
        assert!(!Graph::path(4).unwrap().is_complete_bipartite());
        assert!(!Graph::complete(3).unwrap().is_complete_bipartite());
    }

    #[test]
    fn fixture_families() {
        assert_eq!(Graph::complete(4).unwrap().edge_count(), 6);
        assert_eq!(Graph::cycle(5).unwrap().edge_count(), 5);
        let pet = Graph::petersen();
        assert_eq!((pet.n(), pet.edge_count()), (10, 15));
        assert!(pet.is_regular());
        assert_eq!(pet.degree_sequence(), vec![3; 10]);
    }

    #[test]
    fn petersen_matches_kneser_construction() {
        // vertices: 2-subsets of {1..5}; adjacent when disjoint
        let subsets: Vec<(u8, u8)> =
            (1..=5u8).flat_map(|a| (a + 1..=5).map(move |b| (a, b))).collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in subsets.iter().enumerate() {
            for (j, &(c, d)) in subsets.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    edges.push((i, j));
                }
            }
        }
        let kneser = Graph::from_edge_list(10, &edges).unwrap();
        assert_eq!(kneser.edge_count(), 15);
        assert!(kneser.is_regular());
        assert_eq!(kneser.triangle_count(), 0);
        assert_eq!(
            crate::enumeration::canonical_form(&kneser).unwrap(),
            crate::enumeration::canonical_form(&Graph::petersen()).unwrap()
        );
    }

    #[test]
    fn predicates() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.degree_sequence(), vec![2, 2, 2]);
        assert!(k3.is_regular() && k3.is_connected());
        assert_eq!(k3.triangle_count(), 1);

        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.degree_sequence(), vec![1, 2, 1]);
        assert!(!p3.is_regular() && p3.is_connected() && p3.is_triangle_free());

        let k2_plus_isolated = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert!(!k2_plus_isolated.is_connected());

        assert!(Graph::empty(1).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
    }

    #[test]
    fn disjoint_union_shifts_labels() {
        let k2 = Graph::complete(2).unwrap();
        let two_k2 = k2.disjoint_union(&k2).unwrap();
        assert_eq!(two_k2.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert!(!two_k2.is_connected());
    }
}
