//! Immutable simple graphs and the primitive operations of the
//! measurement-rewrite calculus.
//!
//! A [`Graph`] is a finite undirected simple graph (no loops, no parallel
//! edges) over integer vertex ids. Vertices may be isolated, so the vertex
//! set is stored explicitly. Adjacency lives in ordered sets and every
//! iterator yields vertices in ascending id order, which makes all derived
//! operations deterministic.
//!
//! Transformations (`local_complement`, `delete_vertex`, `complement`,
//! `induced_subgraph`) never mutate: they return a fresh graph, so a
//! rewrite trajectory can keep every intermediate stage.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Identifier of a graph vertex (a network node holding one qubit).
pub type VertexId = u32;

/// Errors from graph construction and primitive operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    /// An operation referenced a vertex that is not in the graph.
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    /// An edge joining a vertex to itself was supplied.
    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(VertexId),
}

/// A sequence of pairwise-adjacent vertices, as returned by
/// [`Graph::shortest_path`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path(pub Vec<VertexId>);

impl Path {
    /// Number of edges traversed (one less than the number of vertices).
    pub fn edge_len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// The vertices strictly between the two endpoints.
    pub fn interior(&self) -> &[VertexId] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }
}

/// An immutable undirected simple graph over [`VertexId`]s.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Graph {
    /// The empty graph.
    pub fn new() -> Self {
        Self::default()
    }

    /// Build a graph from explicit vertex and edge lists.
    ///
    /// Isolated vertices are kept; duplicate vertices and edges collapse
    /// silently. Fails if an edge references a missing vertex or is a
    /// self-loop.
    pub fn build<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            vertices.into_iter().map(|v| (v, BTreeSet::new())).collect();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !adj.contains_key(&a) {
                return Err(GraphError::UnknownVertex(a));
            }
            if !adj.contains_key(&b) {
                return Err(GraphError::UnknownVertex(b));
            }
            adj.get_mut(&a).expect("endpoint checked").insert(b);
            adj.get_mut(&b).expect("endpoint checked").insert(a);
        }
        Ok(Self { adj })
    }

    /// The path graph visiting `ids` in order.
    pub fn path(ids: &[VertexId]) -> Result<Self, GraphError> {
        let edges: Vec<_> = ids.windows(2).map(|w| (w[0], w[1])).collect();
        Self::build(ids.iter().copied(), edges)
    }

    /// The complete graph on `ids`.
    pub fn complete(ids: &[VertexId]) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                edges.push((a, b));
            }
        }
        Self::build(ids.iter().copied(), edges)
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Whether `v` is a vertex of the graph.
    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    /// All vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// The vertex set.
    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// All edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&v, nbrs) in &self.adj {
            for &w in nbrs.range(v + 1..) {
                out.push((v, w));
            }
        }
        out
    }

    /// The edge set as a sorted set of `(min, max)` pairs.
    pub fn edge_set(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges().into_iter().collect()
    }

    /// Whether `{a, b}` is an edge.
    pub fn contains_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|nbrs| nbrs.contains(&b))
    }

    /// The open neighborhood `N_a` — all vertices adjacent to `a`,
    /// excluding `a` itself.
    pub fn open_neighborhood(&self, a: VertexId) -> Result<&BTreeSet<VertexId>, GraphError> {
        self.adj.get(&a).ok_or(GraphError::UnknownVertex(a))
    }

    /// The closed neighborhood `N_a ∪ {a}`.
    pub fn closed_neighborhood(&self, a: VertexId) -> Result<BTreeSet<VertexId>, GraphError> {
        let mut set = self.open_neighborhood(a)?.clone();
        set.insert(a);
        Ok(set)
    }

    /// Degree of `a` (size of its open neighborhood).
    pub fn degree(&self, a: VertexId) -> Result<usize, GraphError> {
        Ok(self.open_neighborhood(a)?.len())
    }

    /// The subgraph induced by `keep`: vertices `V ∩ keep` and exactly the
    /// edges with both endpoints in `keep`.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, nbrs)| (v, nbrs.intersection(keep).copied().collect()))
            .collect();
        Graph { adj }
    }

    /// The complement graph: same vertices, an edge exactly where the
    /// original has none.
    pub fn complement(&self) -> Graph {
        let verts = self.vertex_set();
        let adj = self
            .adj
            .iter()
            .map(|(&v, nbrs)| {
                let inv = verts
                    .iter()
                    .copied()
                    .filter(|&w| w != v && !nbrs.contains(&w))
                    .collect();
                (v, inv)
            })
            .collect();
        Graph { adj }
    }

    /// Local complementation `τ_a`: toggle every edge between two
    /// neighbors of `a`, leaving all other edges (including those at `a`)
    /// unchanged.
    pub fn local_complement(&self, a: VertexId) -> Result<Graph, GraphError> {
        let nbrs: Vec<VertexId> = self.open_neighborhood(a)?.iter().copied().collect();
        let mut next = self.clone();
        for (i, &v) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                next.toggle_edge(v, w);
            }
        }
        Ok(next)
    }

    /// Vertex deletion `G − a`: remove `a` and every edge incident to it.
    pub fn delete_vertex(&self, a: VertexId) -> Result<Graph, GraphError> {
        if !self.contains_vertex(a) {
            return Err(GraphError::UnknownVertex(a));
        }
        let adj = self
            .adj
            .iter()
            .filter(|(&v, _)| v != a)
            .map(|(&v, nbrs)| {
                let mut nbrs = nbrs.clone();
                nbrs.remove(&a);
                (v, nbrs)
            })
            .collect();
        Ok(Graph { adj })
    }

    /// Whether `a` sees every other vertex (the center of a spanning star).
    pub fn is_star_vertex(&self, a: VertexId) -> Result<bool, GraphError> {
        Ok(self.degree(a)? == self.vertex_count() - 1)
    }

    /// The lexicographically smallest shortest path from `a` to `b`, or
    /// `None` when `b` is unreachable.
    ///
    /// Among all shortest paths, the returned vertex sequence is minimal
    /// in lexicographic order, so equal inputs always give equal paths.
    pub fn shortest_path(&self, a: VertexId, b: VertexId) -> Result<Option<Path>, GraphError> {
        if !self.contains_vertex(a) {
            return Err(GraphError::UnknownVertex(a));
        }
        let dist_to_b = self.bfs_distances(b)?;
        let Some(&total) = dist_to_b.get(&a) else {
            return Ok(None);
        };
        // Walk from `a`, always taking the smallest-id neighbor that still
        // lies on a shortest path; this greedy choice is exactly the
        // lexicographic minimum.
        let mut path = vec![a];
        let mut here = a;
        for step in (0..total).rev() {
            let next = self
                .open_neighborhood(here)
                .expect("path vertex exists")
                .iter()
                .copied()
                .find(|v| dist_to_b.get(v) == Some(&step))
                .expect("BFS distance guarantees a next hop");
            path.push(next);
            here = next;
        }
        Ok(Some(Path(path)))
    }

    /// BFS distances from `src` to every reachable vertex.
    pub fn bfs_distances(&self, src: VertexId) -> Result<BTreeMap<VertexId, usize>, GraphError> {
        if !self.contains_vertex(src) {
            return Err(GraphError::UnknownVertex(src));
        }
        let mut dist = BTreeMap::new();
        dist.insert(src, 0usize);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for &w in &self.adj[&v] {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Connected components, each a sorted vertex set, ordered by their
    /// smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp: BTreeSet<VertexId> = self
                .bfs_distances(v)
                .expect("iterating own vertices")
                .into_keys()
                .collect();
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Proper 2-coloring if one exists: `Some((a_side, b_side))` with the
    /// smallest vertex of each component on the `a` side, else `None`.
    pub fn is_two_colorable(&self) -> Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
        let mut color: BTreeMap<VertexId, bool> = BTreeMap::new();
        for root in self.vertices() {
            if color.contains_key(&root) {
                continue;
            }
            color.insert(root, false);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let c = color[&v];
                for &w in &self.adj[&v] {
                    match color.get(&w) {
                        None => {
                            color.insert(w, !c);
                            queue.push_back(w);
                        }
                        Some(&cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let mut a = BTreeSet::new();
        let mut b = BTreeSet::new();
        for (v, c) in color {
            if c { &mut b } else { &mut a }.insert(v);
        }
        Some((a, b))
    }

    /// If the whole graph is a single simple path, the vertices in path
    /// order starting from the smaller-id endpoint (a single vertex counts
    /// as a trivial path).
    pub fn as_path_order(&self) -> Option<Vec<VertexId>> {
        let n = self.vertex_count();
        if n == 0 {
            return None;
        }
        if n == 1 {
            return Some(vec![self.vertices().next().expect("one vertex")]);
        }
        if self.edge_count() != n - 1 {
            return None;
        }
        let mut ends = self.vertices().filter(|&v| self.adj[&v].len() == 1);
        if self.vertices().any(|v| self.adj[&v].len() > 2) {
            return None;
        }
        let start = ends.next()?;
        let mut order = vec![start];
        let mut prev = None;
        let mut here = start;
        while order.len() < n {
            let next = self.adj[&here].iter().copied().find(|&w| Some(w) != prev)?;
            order.push(next);
            prev = Some(here);
            here = next;
        }
        // edge_count == n-1 plus a spanning walk rules out extra components.
        Some(order)
    }

    fn toggle_edge(&mut self, a: VertexId, b: VertexId) {
        if self.contains_edge(a, b) {
            self.adj.get_mut(&a).expect("edge endpoint").remove(&b);
            self.adj.get_mut(&b).expect("edge endpoint").remove(&a);
        } else {
            self.adj.get_mut(&a).expect("vertex exists").insert(b);
            self.adj.get_mut(&b).expect("vertex exists").insert(a);
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph {{ vertices: {:?}, edges: {:?} }}",
            self.vertex_set(),
            self.edges()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> Graph {
        Graph::path(&[0, 1, 2, 3, 4]).expect("valid path")
    }

    #[test]
    fn build_rejects_unknown_endpoint_and_self_loop() {
        assert_eq!(
            Graph::build([0, 1], [(0, 2)]),
            Err(GraphError::UnknownVertex(2))
        );
        assert_eq!(Graph::build([0, 1], [(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn neighborhoods_on_path() {
        let g = p5();
        assert_eq!(
            g.open_neighborhood(2)
                .unwrap()
                .iter()
                .copied()
                .collect::<Vec<_>>(),
            vec![1, 3]
        );
        assert_eq!(
            g.closed_neighborhood(2)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert_eq!(g.degree(0).unwrap(), 1);
        assert!(g.open_neighborhood(9).is_err());
    }

    #[test]
    fn induced_subgraph_keeps_only_inner_edges() {
        let g = p5();
        let keep: BTreeSet<VertexId> = [0, 1, 3, 4].into_iter().collect();
        let sub = g.induced_subgraph(&keep);
        assert_eq!(sub.vertex_set(), keep);
        assert_eq!(sub.edges(), vec![(0, 1), (3, 4)]);
    }

    #[test]
    fn local_complement_of_path_center_toggles_one_edge() {
        let g = p5();
        let t = g.local_complement(2).unwrap();
        assert_eq!(t.edges(), vec![(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn local_complement_is_an_involution() {
        let g = Graph::build([0, 1, 2, 3, 4], [(0, 1), (0, 2), (0, 3), (2, 3), (3, 4)]).unwrap();
        let back = g.local_complement(0).unwrap().local_complement(0).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn delete_vertex_removes_incident_edges() {
        let g = p5();
        let d = g.delete_vertex(2).unwrap();
        assert_eq!(
            d.vertex_set(),
            [0, 1, 3, 4].into_iter().collect::<BTreeSet<_>>()
        );
        assert_eq!(d.edges(), vec![(0, 1), (3, 4)]);
    }

    #[test]
    fn complement_is_an_involution_and_star_becomes_clique_plus_isolate() {
        let star = Graph::build([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.complement().complement(), star);
        let comp = star.complement();
        assert_eq!(comp.edges(), vec![(1, 2), (1, 3), (2, 3)]);
        assert!(star.is_star_vertex(0).unwrap());
        assert!(!star.is_star_vertex(1).unwrap());
    }

    #[test]
    fn shortest_path_prefers_lexicographically_smaller_route() {
        // Two shortest routes 0-1-3 and 0-2-3; the 1-route wins.
        let g = Graph::build([0, 1, 2, 3], [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let path = g.shortest_path(0, 3).unwrap().unwrap();
        assert_eq!(path.0, vec![0, 1, 3]);
        assert_eq!(path.edge_len(), 2);
        assert_eq!(path.interior(), &[1]);
    }

    #[test]
    fn shortest_path_handles_unreachable_and_trivial_cases() {
        let g = Graph::build([0, 1, 2], [(0, 1)]).unwrap();
        assert_eq!(g.shortest_path(0, 2).unwrap(), None);
        assert_eq!(g.shortest_path(1, 1).unwrap().unwrap().0, vec![1]);
    }

    #[test]
    fn two_coloring_of_path_and_odd_cycle() {
        let g = p5();
        let (a, b) = g.is_two_colorable().unwrap();
        assert_eq!(a.into_iter().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(b.into_iter().collect::<Vec<_>>(), vec![1, 3]);
        let triangle = Graph::complete(&[0, 1, 2]).unwrap();
        assert!(triangle.is_two_colorable().is_none());
    }

    #[test]
    fn path_order_recognition() {
        assert_eq!(p5().as_path_order().unwrap(), vec![0, 1, 2, 3, 4]);
        let reordered = Graph::build([0, 1, 2], [(1, 0), (0, 2)]).unwrap();
        assert_eq!(reordered.as_path_order().unwrap(), vec![1, 0, 2]);
        let fork = Graph::build([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(fork.as_path_order().is_none());
        let two_parts = Graph::build([0, 1, 2, 3], [(0, 1), (2, 3)]).unwrap();
        assert!(two_parts.as_path_order().is_none());
    }

    #[test]
    fn components_are_sorted() {
        let g = Graph::build([0, 1, 2, 3, 4], [(1, 3), (0, 4)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].iter().copied().collect::<Vec<_>>(), vec![0, 4]);
        assert_eq!(comps[1].iter().copied().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(comps[2].iter().copied().collect::<Vec<_>>(), vec![2]);
    }
}
