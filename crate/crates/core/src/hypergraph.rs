//! Canonical r-uniform hypergraphs on the vertex set `1..=n`.
//!
//! Edges are stored as strictly increasing vertex lists inside a `BTreeSet`,
//! so iteration order is the lexicographic (canonical) order everywhere in
//! the crate. Vertex ids are 1-based; any per-vertex vector (degrees, Perron
//! vectors, partitions) stores vertex `v` at index `v - 1`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("rank must be at least 2 (got {0})")]
    RankTooSmall(usize),
    #[error("vertex count {n} is smaller than rank {r}")]
    TooFewVertices { r: usize, n: usize },
    #[error("edge {index} has {got} vertices, expected {expected}")]
    WrongCardinality {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("repeated vertex {vertex} in edge {index}")]
    RepeatedVertex { index: usize, vertex: Vertex },
    #[error("vertex {vertex} in edge {index} is out of range 1..={n}")]
    VertexOutOfRange {
        index: usize,
        vertex: Vertex,
        n: usize,
    },
    #[error("duplicate edge {edge}")]
    DuplicateEdge { edge: Edge },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("partition has {got} entries, expected {expected}")]
    PartitionLength { got: usize, expected: usize },
    #[error("partition class {class} of vertex {vertex} is out of range 1..={r}")]
    ClassOutOfRange {
        vertex: Vertex,
        class: usize,
        r: usize,
    },
    #[error("edge {edge} does not meet every partition class exactly once")]
    NotTransversal { edge: Edge },
    #[error("vertex count mismatch: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
}

/// A sorted list of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vec<Vertex>);

impl Edge {
    /// Builds an edge from any vertex list, sorting it. Does not check for
    /// repeats; use [`UniformHypergraph::build`] for validated input.
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        Edge(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The edge with `from` swapped out for `to`, re-sorted.
    pub fn replace(&self, from: Vertex, to: Vertex) -> Edge {
        Edge::new(
            self.0
                .iter()
                .map(|&v| if v == from { to } else { v })
                .collect(),
        )
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// An r-uniform hypergraph with vertex set `1..=n`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    rank: usize,
    n: usize,
    edges: BTreeSet<Edge>,
}

impl UniformHypergraph {
    /// Validates and canonicalizes an edge list. A repeated edge is an error.
    pub fn build<E>(rank: usize, n: usize, edge_list: E) -> Result<Self, HypergraphError>
    where
        E: IntoIterator,
        E::Item: AsRef<[Vertex]>,
    {
        Self::build_impl(rank, n, edge_list, false)
    }

    /// Like [`build`](Self::build), but silently drops repeated edges.
    pub fn build_lenient<E>(rank: usize, n: usize, edge_list: E) -> Result<Self, HypergraphError>
    where
        E: IntoIterator,
        E::Item: AsRef<[Vertex]>,
    {
        Self::build_impl(rank, n, edge_list, true)
    }

    fn build_impl<E>(
        rank: usize,
        n: usize,
        edge_list: E,
        lenient: bool,
    ) -> Result<Self, HypergraphError>
    where
        E: IntoIterator,
        E::Item: AsRef<[Vertex]>,
    {
        Self::check_shape(rank, n)?;
        let mut edges = BTreeSet::new();
        for (index, raw) in edge_list.into_iter().enumerate() {
            let raw = raw.as_ref();
            if raw.len() != rank {
                return Err(HypergraphError::WrongCardinality {
                    index,
                    got: raw.len(),
                    expected: rank,
                });
            }
            if let Some(&vertex) = raw.iter().find(|&&v| v == 0 || v as usize > n) {
                return Err(HypergraphError::VertexOutOfRange { index, vertex, n });
            }
            let edge = Edge::new(raw.to_vec());
            if let Some(w) = edge.0.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex {
                    index,
                    vertex: w[0],
                });
            }
            if !edges.insert(edge.clone()) && !lenient {
                return Err(HypergraphError::DuplicateEdge { edge });
            }
        }
        Ok(UniformHypergraph { rank, n, edges })
    }

    fn check_shape(rank: usize, n: usize) -> Result<(), HypergraphError> {
        if rank < 2 {
            return Err(HypergraphError::RankTooSmall(rank));
        }
        if n < rank {
            return Err(HypergraphError::TooFewVertices { r: rank, n });
        }
        Ok(())
    }

    /// Edgeless hypergraph on `n` vertices.
    pub fn empty(rank: usize, n: usize) -> Result<Self, HypergraphError> {
        Self::check_shape(rank, n)?;
        Ok(UniformHypergraph {
            rank,
            n,
            edges: BTreeSet::new(),
        })
    }

    /// Crate-internal constructor for edge sets that are valid by construction.
    pub(crate) fn from_parts(rank: usize, n: usize, edges: BTreeSet<Edge>) -> Self {
        debug_assert!(edges
            .iter()
            .all(|e| e.len() == rank && e.0.windows(2).all(|w| w[0] < w[1])
                && e.0.last().is_none_or(|&v| v as usize <= n)));
        UniformHypergraph { rank, n, edges }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &Edge> + Clone {
        self.edges.iter()
    }

    pub(crate) fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_edge(&self, edge: &Edge) -> bool {
        self.edges.contains(edge)
    }

    /// `degrees()[v - 1]` is the number of edges containing `v`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e.vertices() {
                d[v as usize - 1] += 1;
            }
        }
        d
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.iter().all(|&x| x == d[0])
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.degrees().contains(&0)
    }

    /// Connected components. Two vertices are linked when some edge holds
    /// both; isolated vertices become edgeless singleton components.
    ///
    /// Each component is returned with its sorted vertex set (ids of `self`)
    /// and the sub-hypergraph relabeled onto `1..=k` in that order. A
    /// component with fewer than `r` vertices is necessarily edgeless and is
    /// returned as `None` since no r-uniform hypergraph fits on it.
    pub fn components(&self) -> Vec<Component> {
        let mut dsu = DisjointSets::new(self.n);
        for e in &self.edges {
            let first = e.0[0] as usize - 1;
            for &v in &e.0[1..] {
                dsu.union(first, v as usize - 1);
            }
        }
        let mut root_index = vec![usize::MAX; self.n];
        let mut members: Vec<Vec<Vertex>> = Vec::new();
        for v in 0..self.n {
            let root = dsu.find(v);
            if root_index[root] == usize::MAX {
                root_index[root] = members.len();
                members.push(Vec::new());
            }
            members[root_index[root]].push(v as Vertex + 1);
        }
        let mut local = vec![0 as Vertex; self.n];
        for vs in &members {
            for (k, &v) in vs.iter().enumerate() {
                local[v as usize - 1] = k as Vertex + 1;
            }
        }
        let mut edge_sets: Vec<BTreeSet<Edge>> = vec![BTreeSet::new(); members.len()];
        for e in &self.edges {
            let c = root_index[dsu.find(e.0[0] as usize - 1)];
            edge_sets[c].insert(Edge::new(e.0.iter().map(|&v| local[v as usize - 1]).collect()));
        }
        members
            .into_iter()
            .zip(edge_sets)
            .map(|(vertices, edges)| {
                let k = vertices.len();
                let hypergraph =
                    (k >= self.rank).then(|| UniformHypergraph::from_parts(self.rank, k, edges));
                Component {
                    vertices,
                    hypergraph,
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Checks that every edge meets every class of `partition` exactly once.
    pub fn check_partition(&self, partition: &Partition) -> Result<(), HypergraphError> {
        if partition.class_of.len() != self.n {
            return Err(HypergraphError::PartitionLength {
                got: partition.class_of.len(),
                expected: self.n,
            });
        }
        if partition.classes != self.rank {
            return Err(HypergraphError::RankMismatch(partition.classes, self.rank));
        }
        let mut seen = vec![false; self.rank];
        for e in &self.edges {
            seen.iter_mut().for_each(|s| *s = false);
            for &v in e.vertices() {
                let c = partition.class(v) - 1;
                if std::mem::replace(&mut seen[c], true) {
                    return Err(HypergraphError::NotTransversal { edge: e.clone() });
                }
            }
        }
        Ok(())
    }

    pub fn validate_partition(&self, partition: &Partition) -> bool {
        self.check_partition(partition).is_ok()
    }

    /// Edge-set union on the shared vertex universe `1..=max(n1, n2)`.
    pub fn union_edges(&self, other: &UniformHypergraph) -> Result<Self, HypergraphError> {
        if self.rank != other.rank {
            return Err(HypergraphError::RankMismatch(self.rank, other.rank));
        }
        let edges = self.edges.union(&other.edges).cloned().collect();
        Ok(UniformHypergraph::from_parts(
            self.rank,
            self.n.max(other.n),
            edges,
        ))
    }

    /// `|E1 Δ E2|`.
    pub fn symmetric_difference_size(
        &self,
        other: &UniformHypergraph,
    ) -> Result<usize, HypergraphError> {
        if self.rank != other.rank {
            return Err(HypergraphError::RankMismatch(self.rank, other.rank));
        }
        Ok(self.edges.symmetric_difference(&other.edges).count())
    }

    /// Applies a vertex relabeling; `perm[v - 1]` is the new id of `v`.
    /// `perm` must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self, HypergraphError> {
        if perm.len() != self.n {
            return Err(HypergraphError::VertexCountMismatch(perm.len(), self.n));
        }
        let edges: Vec<Vec<Vertex>> = self
            .edges
            .iter()
            .map(|e| e.0.iter().map(|&v| perm[v as usize - 1]).collect())
            .collect();
        Self::build(self.rank, self.n, edges)
    }

    /// A copy with the vertex universe enlarged to `n` (new vertices isolated).
    pub fn with_vertex_count(&self, n: usize) -> Result<Self, HypergraphError> {
        if n < self.n {
            return Err(HypergraphError::VertexCountMismatch(n, self.n));
        }
        Ok(UniformHypergraph::from_parts(self.rank, n, self.edges.clone()))
    }

    /// A copy with one edge added (no-op when already present).
    pub fn with_edge(&self, vertices: &[Vertex]) -> Result<Self, HypergraphError> {
        let extra = Self::build(self.rank, self.n, [vertices])?;
        self.union_edges(&extra)
    }
}

/// One connected component; see [`UniformHypergraph::components`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<Vertex>,
    pub hypergraph: Option<UniformHypergraph>,
}

impl Component {
    pub fn edge_count(&self) -> usize {
        self.hypergraph.as_ref().map_or(0, |h| h.edge_count())
    }
}

/// Assignment of every vertex to one of `r` classes (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    classes: usize,
    class_of: Vec<usize>,
}

impl Partition {
    /// `class_of[v - 1]` is the class of vertex `v`, in `1..=classes`.
    pub fn new(classes: usize, class_of: Vec<usize>) -> Result<Self, HypergraphError> {
        if classes < 2 {
            return Err(HypergraphError::RankTooSmall(classes));
        }
        for (k, &c) in class_of.iter().enumerate() {
            if c == 0 || c > classes {
                return Err(HypergraphError::ClassOutOfRange {
                    vertex: k as Vertex + 1,
                    class: c,
                    r: classes,
                });
            }
        }
        Ok(Partition { classes, class_of })
    }

    /// Consecutive blocks: the first `sizes[0]` vertices form class 1, etc.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self, HypergraphError> {
        let class_of = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &s)| std::iter::repeat_n(c + 1, s))
            .collect();
        Self::new(sizes.len(), class_of)
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn vertex_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class(&self, v: Vertex) -> usize {
        self.class_of[v as usize - 1]
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    /// `n_1, …, n_r`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.classes];
        for &c in &self.class_of {
            sizes[c - 1] += 1;
        }
        sizes
    }

    /// Vertices of class `c` (1-based) in increasing order.
    pub fn members(&self, c: usize) -> Vec<Vertex> {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(_, &k)| k == c)
            .map(|(v, _)| v as Vertex + 1)
            .collect()
    }
}

/// Which stage of the near-regularization loop produced a swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwapPhase {
    /// Minimum degree at most `d - 1` and maximum at least `d + 2`, where
    /// `d` is the floor of the average; each such swap lowers `s` by 2.
    Spread,
    /// Remaining swaps that close the gap to a `{d, d + 1}` band.
    Band,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SwapRecord {
    pub removed: Edge,
    pub inserted: Edge,
    pub phase: SwapPhase,
}

/// Ordered log of edge swaps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeTrace {
    pub swaps: Vec<SwapRecord>,
}

impl EdgeTrace {
    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// Re-applies the swaps to `h`, checking that each removed edge is
    /// present and each inserted edge absent at the time of its swap.
    pub fn replay(&self, h: &UniformHypergraph) -> Result<UniformHypergraph, TraceError> {
        let mut edges = h.edges.clone();
        for (step, s) in self.swaps.iter().enumerate() {
            if s.removed.len() != h.rank || s.inserted.len() != h.rank {
                return Err(TraceError::WrongCardinality { step });
            }
            if s.inserted.vertices().iter().any(|&v| v == 0 || v as usize > h.n)
                || s.inserted.0.windows(2).any(|w| w[0] == w[1])
            {
                return Err(TraceError::InvalidEdge {
                    step,
                    edge: s.inserted.clone(),
                });
            }
            if !edges.remove(&s.removed) {
                return Err(TraceError::MissingEdge {
                    step,
                    edge: s.removed.clone(),
                });
            }
            if !edges.insert(s.inserted.clone()) {
                return Err(TraceError::AlreadyPresent {
                    step,
                    edge: s.inserted.clone(),
                });
            }
        }
        Ok(UniformHypergraph::from_parts(h.rank, h.n, edges))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("swap {step}: edge has the wrong number of vertices")]
    WrongCardinality { step: usize },
    #[error("swap {step}: inserted edge {edge} is not a valid edge")]
    InvalidEdge { step: usize, edge: Edge },
    #[error("swap {step}: removed edge {edge} is not present")]
    MissingEdge { step: usize, edge: Edge },
    #[error("swap {step}: inserted edge {edge} is already present")]
    AlreadyPresent { step: usize, edge: Edge },
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // smaller root wins so component order follows the lowest vertex id
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_edge_path() -> UniformHypergraph {
        UniformHypergraph::build(3, 5, [[1, 2, 3], [1, 4, 5]]).unwrap()
    }

    #[test]
    fn build_single_edge() {
        let h = UniformHypergraph::build(3, 3, [[1, 2, 3]]).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.degrees(), vec![1, 1, 1]);
    }

    #[test]
    fn build_canonicalizes_unsorted_edges() {
        let h = UniformHypergraph::build(3, 5, [[3, 2, 1], [5, 1, 4]]).unwrap();
        assert_eq!(h, two_edge_path());
        assert_eq!(h.degrees(), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            UniformHypergraph::build(3, 3, [[1, 2, 2]]),
            Err(HypergraphError::RepeatedVertex { vertex: 2, .. })
        ));
        assert!(matches!(
            UniformHypergraph::build(3, 3, [vec![1, 2]]),
            Err(HypergraphError::WrongCardinality { got: 2, .. })
        ));
        assert!(matches!(
            UniformHypergraph::build(3, 3, [[1, 2, 4]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 4, .. })
        ));
        assert!(matches!(
            UniformHypergraph::build(3, 3, [[0, 1, 2]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 0, .. })
        ));
        assert!(matches!(
            UniformHypergraph::build(3, 4, [[1, 2, 3], [3, 2, 1]]),
            Err(HypergraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            UniformHypergraph::build(1, 4, Vec::<Vec<Vertex>>::new()),
            Err(HypergraphError::RankTooSmall(1))
        ));
        assert!(matches!(
            UniformHypergraph::build(3, 2, Vec::<Vec<Vertex>>::new()),
            Err(HypergraphError::TooFewVertices { .. })
        ));
    }

    #[test]
    fn lenient_build_deduplicates() {
        let h = UniformHypergraph::build_lenient(3, 4, [[1, 2, 3], [3, 2, 1]]).unwrap();
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn components_of_connected_and_disjoint() {
        let h = two_edge_path();
        let comps = h.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].hypergraph.as_ref().unwrap(), &h);

        let h = UniformHypergraph::build(3, 7, [[1, 2, 3], [4, 5, 6]]).unwrap();
        let comps = h.components();
        assert_eq!(comps.len(), 3);
        let single = UniformHypergraph::build(3, 3, [[1, 2, 3]]).unwrap();
        assert_eq!(comps[0].vertices, vec![1, 2, 3]);
        assert_eq!(comps[0].hypergraph.as_ref().unwrap(), &single);
        assert_eq!(comps[1].vertices, vec![4, 5, 6]);
        assert_eq!(comps[1].hypergraph.as_ref().unwrap(), &single);
        assert_eq!(comps[2].vertices, vec![7]);
        assert_eq!(comps[2].edge_count(), 0);
        assert!(!h.is_connected());
    }

    #[test]
    fn partition_validation() {
        let h = two_edge_path();
        let p = Partition::new(3, vec![1, 2, 3, 2, 3]).unwrap();
        assert!(h.validate_partition(&p));

        let h = UniformHypergraph::build(3, 3, [[1, 2, 3]]).unwrap();
        let p = Partition::new(3, vec![1, 1, 2]).unwrap();
        assert_eq!(
            h.check_partition(&p),
            Err(HypergraphError::NotTransversal {
                edge: Edge::new(vec![1, 2, 3])
            })
        );
        assert!(Partition::new(3, vec![1, 4, 2]).is_err());
    }

    #[test]
    fn union_and_symmetric_difference() {
        let h = two_edge_path();
        assert_eq!(h.union_edges(&h).unwrap(), h);
        assert_eq!(h.symmetric_difference_size(&h).unwrap(), 0);

        let a = UniformHypergraph::build(3, 4, [[1, 2, 3]]).unwrap();
        let b = UniformHypergraph::build(3, 4, [[1, 2, 3], [2, 3, 4]]).unwrap();
        assert_eq!(a.union_edges(&b).unwrap().edge_count(), 2);

        let c = UniformHypergraph::build(3, 6, [[4, 5, 6]]).unwrap();
        let u = a.union_edges(&c).unwrap();
        assert_eq!(u.edge_count(), 2);
        assert_eq!(u.vertex_count(), 6);
        assert_eq!(a.symmetric_difference_size(&c).unwrap(), 2);

        let swapped = UniformHypergraph::build(3, 5, [[1, 2, 3], [2, 4, 5]]).unwrap();
        assert_eq!(h.symmetric_difference_size(&swapped).unwrap(), 2);

        let g = UniformHypergraph::build(2, 3, [[1, 2]]).unwrap();
        assert_eq!(h.union_edges(&g), Err(HypergraphError::RankMismatch(3, 2)));
        assert!(h.symmetric_difference_size(&g).is_err());
    }

    #[test]
    fn trace_replay_rejects_missing_edge() {
        let h = two_edge_path();
        let trace = EdgeTrace {
            swaps: vec![SwapRecord {
                removed: Edge::new(vec![2, 3, 4]),
                inserted: Edge::new(vec![1, 2, 4]),
                phase: SwapPhase::Band,
            }],
        };
        assert!(matches!(
            trace.replay(&h),
            Err(TraceError::MissingEdge { step: 0, .. })
        ));
    }
}
