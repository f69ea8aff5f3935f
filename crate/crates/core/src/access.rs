//! Gatekeeper between the walk algorithms and the graph.
//!
//! Blue neighbour lists are served for identities named by an earlier legal
//! query (or seeded). Red neighbours of a blue identity can only be *sampled*,
//! one at a time, after the blue walk has visited it. Red neighbours of a red
//! identity are served only under a two-hop budget and only for identities
//! revealed at hop depth 1.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::AccessError;
use crate::graph::{EdgeRef, Layer, NodeId, TwoLayerGraph};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryStats {
    pub blue_neighbor_queries: u64,
    pub red_of_blue_queries: u64,
    pub red_of_red_queries: u64,
    pub degree_queries: u64,
    /// Queries refused by the restriction model.
    pub rejected_queries: u64,
}

impl QueryStats {
    pub fn total(&self) -> u64 {
        self.blue_neighbor_queries
            + self.red_of_blue_queries
            + self.red_of_red_queries
            + self.degree_queries
    }

    pub fn merge(&mut self, other: &QueryStats) {
        self.blue_neighbor_queries += other.blue_neighbor_queries;
        self.red_of_blue_queries += other.red_of_blue_queries;
        self.red_of_red_queries += other.red_of_red_queries;
        self.degree_queries += other.degree_queries;
        self.rejected_queries += other.rejected_queries;
    }
}

/// Response to a blue neighbour query: the list plus both degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlueView<'g> {
    pub neighbors: &'g [NodeId],
    pub red_degree: usize,
}

impl BlueView<'_> {
    pub fn blue_degree(&self) -> usize {
        self.neighbors.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Restricted { red_hop_budget: u8 },
    Unrestricted,
}

#[derive(Debug, Clone)]
pub struct RestrictedAccess<'g> {
    graph: &'g TwoLayerGraph,
    mode: Mode,
    named_blue: Vec<bool>,
    visited_blue: Vec<bool>,
    red_depth: HashMap<NodeId, u8>,
    stats: QueryStats,
}

impl<'g> RestrictedAccess<'g> {
    /// `red_hop_budget` is 1 (sample red neighbours of visited blue nodes) or
    /// 2 (additionally list red neighbours of those samples).
    pub fn new(graph: &'g TwoLayerGraph, red_hop_budget: u8) -> Self {
        assert!(
            (1..=2).contains(&red_hop_budget),
            "red hop budget must be 1 or 2"
        );
        Self::with_mode(graph, Mode::Restricted { red_hop_budget })
    }

    /// Serves every query; counters still apply.
    pub fn unrestricted(graph: &'g TwoLayerGraph) -> Self {
        Self::with_mode(graph, Mode::Unrestricted)
    }

    fn with_mode(graph: &'g TwoLayerGraph, mode: Mode) -> Self {
        let n = graph.num_identities();
        RestrictedAccess {
            graph,
            mode,
            named_blue: vec![false; n],
            visited_blue: vec![false; n],
            red_depth: HashMap::new(),
            stats: QueryStats::default(),
        }
    }

    pub fn graph(&self) -> &'g TwoLayerGraph {
        self.graph
    }

    pub fn stats(&self) -> QueryStats {
        self.stats
    }

    pub fn red_hop_budget(&self) -> Option<u8> {
        match self.mode {
            Mode::Restricted { red_hop_budget } => Some(red_hop_budget),
            Mode::Unrestricted => None,
        }
    }

    pub fn is_visited(&self, u: NodeId) -> bool {
        self.visited_blue.get(u as usize).copied().unwrap_or(false)
    }

    /// Hop depth at which a red identity was first revealed.
    pub fn red_depth(&self, y: NodeId) -> Option<u8> {
        self.red_depth.get(&y).copied()
    }

    fn reject(&mut self, e: AccessError) -> AccessError {
        self.stats.rejected_queries += 1;
        e
    }

    fn in_range(&mut self, u: NodeId) -> Result<(), AccessError> {
        if (u as usize) < self.graph.num_identities() {
            Ok(())
        } else {
            Err(self.reject(AccessError::OutOfRange(u)))
        }
    }

    pub fn seed(&mut self, u: NodeId) -> Result<(), AccessError> {
        self.in_range(u)?;
        if !self.graph.in_blue(u) {
            return Err(self.reject(AccessError::NotBlue(u)));
        }
        self.named_blue[u as usize] = true;
        self.visited_blue[u as usize] = true;
        Ok(())
    }

    pub fn blue_neighbors(&mut self, u: NodeId) -> Result<BlueView<'g>, AccessError> {
        self.in_range(u)?;
        if self.mode == Mode::Unrestricted {
            self.stats.blue_neighbor_queries += 1;
            return Ok(BlueView {
                neighbors: self.graph.blue_neighbors(u),
                red_degree: self.graph.red_degree(u),
            });
        }
        if !self.graph.in_blue(u) {
            return Err(self.reject(AccessError::NotBlue(u)));
        }
        if !self.named_blue[u as usize] {
            return Err(self.reject(AccessError::UnreachedBlue(u)));
        }
        self.stats.blue_neighbor_queries += 1;
        self.visited_blue[u as usize] = true;
        let neighbors = self.graph.blue_neighbors(u);
        for &w in neighbors {
            self.named_blue[w as usize] = true;
        }
        Ok(BlueView {
            neighbors,
            red_degree: self.graph.red_degree(u),
        })
    }

    fn require_visited(&mut self, u: NodeId) -> Result<(), AccessError> {
        self.in_range(u)?;
        if matches!(self.mode, Mode::Restricted { .. }) && !self.visited_blue[u as usize] {
            return Err(self.reject(AccessError::UnvisitedBlue(u)));
        }
        Ok(())
    }

    fn note_red(&mut self, y: NodeId, depth: u8) {
        let d = self.red_depth.entry(y).or_insert(depth);
        *d = (*d).min(depth);
    }

    /// Uniformly samples one red neighbour of a visited blue identity.
    pub fn sample_red_neighbor<R: Rng + ?Sized>(
        &mut self,
        u: NodeId,
        rng: &mut R,
    ) -> Result<NodeId, AccessError> {
        self.require_visited(u)?;
        let reds = self.graph.red_neighbors(u);
        if reds.is_empty() {
            return Err(self.reject(AccessError::NoRedNeighbor(u)));
        }
        self.stats.red_of_blue_queries += 1;
        let y = reds[rng.random_range(0..reds.len())];
        self.note_red(y, 1);
        Ok(y)
    }

    /// r(u,v) for a blue edge whose endpoints were both visited.
    pub fn red_edge_count(&mut self, u: NodeId, v: NodeId) -> Result<usize, AccessError> {
        self.require_visited(u)?;
        self.require_visited(v)?;
        self.stats.degree_queries += 1;
        Ok(self.graph.edge_neighbor_count_unchecked(u, v, Layer::Red))
    }

    /// Uniformly samples one of the r(u,v) red edges incident to exactly one
    /// of `u`, `v`. The far endpoint is revealed at hop depth 1.
    pub fn sample_red_edge<R: Rng + ?Sized>(
        &mut self,
        u: NodeId,
        v: NodeId,
        rng: &mut R,
    ) -> Result<EdgeRef, AccessError> {
        self.require_visited(u)?;
        self.require_visited(v)?;
        let g = self.graph;
        let skip = usize::from(g.has_red_edge(u, v));
        let (ru, rv) = (g.red_degree(u) - skip, g.red_degree(v) - skip);
        if ru + rv == 0 {
            return Err(self.reject(AccessError::NoRedNeighbor(u)));
        }
        self.stats.red_of_blue_queries += 1;
        let k = rng.random_range(0..ru + rv);
        let (end, other, k) = if k < ru { (u, v, k) } else { (v, u, k - ru) };
        let far = nth_excluding(g.red_neighbors(end), other, k);
        self.note_red(far, 1);
        Ok(EdgeRef::new(end, far, Layer::Red))
    }

    /// Full red neighbour list of a red identity revealed at depth 1. The
    /// listed identities become known at depth 2.
    pub fn red_neighbors_of_red(&mut self, y: NodeId) -> Result<&'g [NodeId], AccessError> {
        self.in_range(y)?;
        if let Mode::Restricted { red_hop_budget } = self.mode {
            let depth = self.red_depth(y).unwrap_or(u8::MAX);
            if red_hop_budget < 2 || depth != 1 {
                return Err(self.reject(AccessError::RedDepthViolation {
                    node: y,
                    depth,
                    budget: red_hop_budget,
                }));
            }
        }
        self.stats.red_of_red_queries += 1;
        let reds = self.graph.red_neighbors(y);
        if self.mode != Mode::Unrestricted {
            for &w in reds {
                self.note_red(w, 2);
            }
        }
        Ok(reds)
    }

    /// Full red list of any identity; only served without restrictions.
    pub fn red_neighbors(&mut self, u: NodeId) -> Result<&'g [NodeId], AccessError> {
        self.in_range(u)?;
        match self.mode {
            Mode::Unrestricted => {
                self.stats.red_of_blue_queries += 1;
                Ok(self.graph.red_neighbors(u))
            }
            Mode::Restricted { red_hop_budget } => Err(self.reject(AccessError::RedDepthViolation {
                node: u,
                depth: self.red_depth(u).unwrap_or(0),
                budget: red_hop_budget,
            })),
        }
    }
}

/// The `k`-th element of a sorted list after removing `skip` (if present).
pub(crate) fn nth_excluding(list: &[NodeId], skip: NodeId, k: usize) -> NodeId {
    match list.binary_search(&skip) {
        Ok(pos) if k >= pos => list[k + 1],
        _ => list[k],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Fig.-3-like topology: blue A-B, B-C, C-D, C-E; red C-A.
    fn fig3() -> TwoLayerGraph {
        let (a, b, c, d, e) = (0, 1, 2, 3, 4);
        TwoLayerGraph::from_edges(5, &[(a, b), (b, c), (c, d), (c, e)], &[(c, a)]).unwrap()
    }

    #[test]
    fn seeding() {
        let tri = TwoLayerGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2)], &[(2, 3)]).unwrap();
        let mut f = RestrictedAccess::new(&tri, 1);
        f.seed(0).unwrap();
        assert!(f.is_visited(0));
        f.seed(1).unwrap();
        assert!(f.is_visited(0) && f.is_visited(1));
        assert_eq!(f.seed(3), Err(AccessError::NotBlue(3)));
        assert_eq!(f.stats().rejected_queries, 1);
    }

    #[test]
    fn blue_query_reveals_degrees() {
        let g = fig3();
        let mut f = RestrictedAccess::new(&g, 1);
        f.seed(2).unwrap();
        let view = f.blue_neighbors(2).unwrap();
        assert_eq!(view.blue_degree(), 3);
        assert_eq!(view.red_degree, 1);
        // neighbours named by the query become queryable
        assert_eq!(f.blue_neighbors(3).unwrap().blue_degree(), 1);
        assert_eq!(f.blue_neighbors(0), Err(AccessError::UnreachedBlue(0)));
    }

    #[test]
    fn isolated_blue_node_has_empty_list() {
        let g = TwoLayerGraph::parse_mlx("mlx 1 3\nNB 2\nB 0 1\n", "t".as_ref()).unwrap();
        let mut f = RestrictedAccess::new(&g, 1);
        f.seed(2).unwrap();
        assert!(f.blue_neighbors(2).unwrap().neighbors.is_empty());
    }

    #[test]
    fn red_sampling_requires_visit() {
        let g = fig3();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut f = RestrictedAccess::new(&g, 1);
        f.seed(1).unwrap();
        f.blue_neighbors(1).unwrap();
        assert_eq!(
            f.sample_red_neighbor(2, &mut rng),
            Err(AccessError::UnvisitedBlue(2))
        );
        f.blue_neighbors(2).unwrap();
        assert_eq!(f.sample_red_neighbor(2, &mut rng), Ok(0));
        assert_eq!(f.red_depth(0), Some(1));
        assert_eq!(
            f.sample_red_neighbor(1, &mut rng),
            Err(AccessError::NoRedNeighbor(1))
        );
    }

    #[test]
    fn red_sampling_is_uniform() {
        let g = TwoLayerGraph::from_edges(3, &[(0, 1)], &[(0, 1), (0, 2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut f = RestrictedAccess::new(&g, 1);
        f.seed(0).unwrap();
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| f.sample_red_neighbor(0, &mut rng).unwrap() == 1)
            .count() as f64;
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((hits - n as f64 / 2.0).abs() < 3.0 * sigma, "{hits}");
    }

    #[test]
    fn red_of_red_budget() {
        // identity 1 is in both layers; 0's red neighbour is 1, 1's red list contains 0.
        let g = TwoLayerGraph::from_edges(3, &[(0, 1), (1, 2)], &[(0, 1), (1, 2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);

        let mut one = RestrictedAccess::new(&g, 1);
        one.seed(0).unwrap();
        let y = one.sample_red_neighbor(0, &mut rng).unwrap();
        assert!(matches!(
            one.red_neighbors_of_red(y),
            Err(AccessError::RedDepthViolation { budget: 1, .. })
        ));

        let mut two = RestrictedAccess::new(&g, 2);
        two.seed(0).unwrap();
        let y = two.sample_red_neighbor(0, &mut rng).unwrap();
        assert_eq!(y, 1);
        let list = two.red_neighbors_of_red(y).unwrap();
        assert!(list.contains(&0));
        // identity 2 was revealed at depth 2 only
        assert!(matches!(
            two.red_neighbors_of_red(2),
            Err(AccessError::RedDepthViolation { depth: 2, .. })
        ));
        assert_eq!(two.stats().red_of_red_queries, 1);
        assert_eq!(two.stats().rejected_queries, 1);
    }

    #[test]
    fn red_edge_sampling_excludes_shared_edge() {
        // blue edge (0,1) also red; other red edges (0,2), (1,3)
        let g = TwoLayerGraph::from_edges(4, &[(0, 1)], &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut f = RestrictedAccess::new(&g, 1);
        f.seed(0).unwrap();
        f.blue_neighbors(0).unwrap();
        f.blue_neighbors(1).unwrap();
        assert_eq!(f.red_edge_count(0, 1).unwrap(), 2);
        for _ in 0..200 {
            let e = f.sample_red_edge(0, 1, &mut rng).unwrap();
            assert!(e == EdgeRef::new(0, 2, Layer::Red) || e == EdgeRef::new(1, 3, Layer::Red));
        }
    }

    #[test]
    fn unrestricted_mode_serves_everything() {
        let g = fig3();
        let mut f = RestrictedAccess::unrestricted(&g);
        assert_eq!(f.red_neighbors(0).unwrap(), &[2]);
        assert_eq!(f.blue_neighbors(4).unwrap().blue_degree(), 1);
        assert_eq!(f.stats().total(), 2);
    }

    #[test]
    fn nth_excluding_skips() {
        assert_eq!(nth_excluding(&[1, 3, 5, 7], 3, 0), 1);
        assert_eq!(nth_excluding(&[1, 3, 5, 7], 3, 1), 5);
        assert_eq!(nth_excluding(&[1, 3, 5, 7], 4, 1), 3);
    }
}
