//! Two-layer multiplex graph over a shared identity space.
//!
//! The blue layer is the walkable layer; the red layer can only be sampled
//! from identities the blue walk has visited. Inter-layer edges are implicit:
//! an identity belongs to both layers iff both presence flags are set.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Layer {
    Blue,
    Red,
}

impl Layer {
    pub fn name(self) -> &'static str {
        match self {
            Layer::Blue => "blue",
            Layer::Red => "red",
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An undirected edge of one layer, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub u: NodeId,
    pub v: NodeId,
    pub layer: Layer,
}

impl EdgeRef {
    pub fn new(a: NodeId, b: NodeId, layer: Layer) -> Self {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        EdgeRef { u, v, layer }
    }

    pub fn touches(&self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint shared with `other`, if exactly one is shared.
    pub fn shared_endpoint(&self, other: &EdgeRef) -> Option<NodeId> {
        let shared_u = other.touches(self.u);
        let shared_v = other.touches(self.v);
        match (shared_u, shared_v) {
            (true, false) => Some(self.u),
            (false, true) => Some(self.v),
            _ => None,
        }
    }

    pub fn other(&self, x: NodeId) -> NodeId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Compressed sorted adjacency for one layer.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Adjacency {
    fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in edges {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for u in 0..n {
            targets[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        Adjacency { offsets, targets }
    }

    #[inline]
    fn neighbors(&self, u: NodeId) -> &[NodeId] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    fn contains(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }
}

/// Immutable two-layer graph; see the module docs for the coupling model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLayerGraph {
    blue: Adjacency,
    red: Adjacency,
    in_blue: Vec<bool>,
    in_red: Vec<bool>,
}

/// Accumulates edges and presence declarations, validating on `build`.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    n: usize,
    blue_edges: Vec<(NodeId, NodeId)>,
    red_edges: Vec<(NodeId, NodeId)>,
    in_blue: Vec<bool>,
    in_red: Vec<bool>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            blue_edges: Vec::new(),
            red_edges: Vec::new(),
            in_blue: vec![false; n],
            in_red: vec![false; n],
        }
    }

    pub fn num_identities(&self) -> usize {
        self.n
    }

    fn check(&self, id: NodeId) -> Result<(), GraphError> {
        if (id as usize) < self.n {
            Ok(())
        } else {
            Err(GraphError::OutOfRange {
                id: u64::from(id),
                len: self.n,
            })
        }
    }

    pub fn declare(&mut self, id: NodeId, layer: Layer) -> Result<&mut Self, GraphError> {
        self.check(id)?;
        match layer {
            Layer::Blue => self.in_blue[id as usize] = true,
            Layer::Red => self.in_red[id as usize] = true,
        }
        Ok(self)
    }

    pub fn edge(&mut self, u: NodeId, v: NodeId, layer: Layer) -> Result<&mut Self, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = if u < v { (u, v) } else { (v, u) };
        match layer {
            Layer::Blue => self.blue_edges.push(e),
            Layer::Red => self.red_edges.push(e),
        }
        self.declare(u, layer)?;
        self.declare(v, layer)?;
        Ok(self)
    }

    pub fn build(mut self) -> Result<TwoLayerGraph, GraphError> {
        for (layer, edges) in [
            (Layer::Blue, &mut self.blue_edges),
            (Layer::Red, &mut self.red_edges),
        ] {
            edges.sort_unstable();
            if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge {
                    layer: layer.name(),
                    u: w[0].0,
                    v: w[0].1,
                });
            }
        }
        Ok(TwoLayerGraph {
            blue: Adjacency::from_edges(self.n, &self.blue_edges),
            red: Adjacency::from_edges(self.n, &self.red_edges),
            in_blue: self.in_blue,
            in_red: self.in_red,
        })
    }
}

impl TwoLayerGraph {
    /// Builds a graph from edge lists; presence is inferred from endpoints.
    pub fn from_edges(
        n: usize,
        blue: &[(NodeId, NodeId)],
        red: &[(NodeId, NodeId)],
    ) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in blue {
            b.edge(u, v, Layer::Blue)?;
        }
        for &(u, v) in red {
            b.edge(u, v, Layer::Red)?;
        }
        b.build()
    }

    pub fn num_identities(&self) -> usize {
        self.in_blue.len()
    }

    pub fn num_blue_edges(&self) -> usize {
        self.blue.num_edges()
    }

    pub fn num_red_edges(&self) -> usize {
        self.red.num_edges()
    }

    #[inline]
    pub fn in_blue(&self, u: NodeId) -> bool {
        self.in_blue[u as usize]
    }

    #[inline]
    pub fn in_red(&self, u: NodeId) -> bool {
        self.in_red[u as usize]
    }

    pub fn in_layer(&self, u: NodeId, layer: Layer) -> bool {
        match layer {
            Layer::Blue => self.in_blue(u),
            Layer::Red => self.in_red(u),
        }
    }

    #[inline]
    pub fn blue_neighbors(&self, u: NodeId) -> &[NodeId] {
        self.blue.neighbors(u)
    }

    #[inline]
    pub fn red_neighbors(&self, u: NodeId) -> &[NodeId] {
        self.red.neighbors(u)
    }

    #[inline]
    pub fn neighbors(&self, u: NodeId, layer: Layer) -> &[NodeId] {
        match layer {
            Layer::Blue => self.blue_neighbors(u),
            Layer::Red => self.red_neighbors(u),
        }
    }

    #[inline]
    pub fn blue_degree(&self, u: NodeId) -> usize {
        self.blue.neighbors(u).len()
    }

    #[inline]
    pub fn red_degree(&self, u: NodeId) -> usize {
        self.red.neighbors(u).len()
    }

    #[inline]
    pub fn degree(&self, u: NodeId, layer: Layer) -> usize {
        self.neighbors(u, layer).len()
    }

    #[inline]
    pub fn has_blue_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.blue.contains(u, v)
    }

    #[inline]
    pub fn has_red_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.red.contains(u, v)
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId, layer: Layer) -> bool {
        match layer {
            Layer::Blue => self.has_blue_edge(u, v),
            Layer::Red => self.has_red_edge(u, v),
        }
    }

    /// Edges of one layer in ascending `(u, v)` order with `u < v`.
    pub fn edges(&self, layer: Layer) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.num_identities() as NodeId).flat_map(move |u| {
            self.neighbors(u, layer)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| EdgeRef { u, v, layer })
        })
    }

    fn check(&self, id: NodeId) -> Result<(), GraphError> {
        if (id as usize) < self.num_identities() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange {
                id: u64::from(id),
                len: self.num_identities(),
            })
        }
    }

    /// b(u,v) = b_u + b_v - 2·[uv blue]: blue edges sharing exactly one endpoint with (u,v).
    pub fn edge_blue_neighbor_count(&self, u: NodeId, v: NodeId) -> Result<usize, GraphError> {
        self.edge_neighbor_count(u, v, Layer::Blue)
    }

    /// r(u,v) = r_u + r_v - 2·[uv red].
    pub fn edge_red_neighbor_count(&self, u: NodeId, v: NodeId) -> Result<usize, GraphError> {
        self.edge_neighbor_count(u, v, Layer::Red)
    }

    fn edge_neighbor_count(&self, u: NodeId, v: NodeId, layer: Layer) -> Result<usize, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if !self.in_layer(u, layer) && !self.in_layer(v, layer) {
            return Err(GraphError::NotInLayer(u, layer.name()));
        }
        Ok(self.edge_neighbor_count_unchecked(u, v, layer))
    }

    #[inline]
    pub(crate) fn edge_neighbor_count_unchecked(&self, u: NodeId, v: NodeId, layer: Layer) -> usize {
        let shared = if self.has_edge(u, v, layer) { 2 } else { 0 };
        self.degree(u, layer) + self.degree(v, layer) - shared
    }

    /// Sorted union of blue and red neighbours.
    pub fn union_neighbors(&self, u: NodeId) -> Vec<NodeId> {
        let (b, r) = (self.blue_neighbors(u), self.red_neighbors(u));
        let mut out = Vec::with_capacity(b.len() + r.len());
        let (mut i, mut j) = (0, 0);
        while i < b.len() || j < r.len() {
            let next = match (b.get(i), r.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    y
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        out
    }

    /// Identities of the largest connected component of the blue layer,
    /// ascending. Ties go to the component containing the smallest id.
    pub fn largest_blue_component(&self) -> Vec<NodeId> {
        let n = self.num_identities();
        let mut comp = vec![usize::MAX; n];
        let mut best: Vec<NodeId> = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n as NodeId {
            if comp[s as usize] != usize::MAX || self.blue_degree(s) == 0 {
                continue;
            }
            let mut members = vec![s];
            comp[s as usize] = s as usize;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &y in self.blue_neighbors(x) {
                    if comp[y as usize] == usize::MAX {
                        comp[y as usize] = s as usize;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            if members.len() > best.len() {
                best = members;
            }
        }
        best.sort_unstable();
        best
    }

    /// Subgraph induced by `keep` (ascending, distinct), relabelled densely in
    /// the given order. Presence flags carry over.
    pub fn induced(&self, keep: &[NodeId]) -> TwoLayerGraph {
        let mut map = vec![NodeId::MAX; self.num_identities()];
        for (new, &old) in keep.iter().enumerate() {
            map[old as usize] = new as NodeId;
        }
        let mut b = GraphBuilder::new(keep.len());
        for (new, &old) in keep.iter().enumerate() {
            let new = new as NodeId;
            for layer in [Layer::Blue, Layer::Red] {
                if self.in_layer(old, layer) {
                    b.declare(new, layer).expect("in range");
                }
                for &w in self.neighbors(old, layer) {
                    let m = map[w as usize];
                    if m != NodeId::MAX && new < m {
                        b.edge(new, m, layer).expect("valid edge");
                    }
                }
            }
        }
        b.build().expect("induced subgraph of a valid graph is valid")
    }

    /// Serializes to the `mlx` text format.
    pub fn to_mlx(&self) -> String {
        let mut out = String::new();
        writeln!(out, "mlx 1 {}", self.num_identities()).unwrap();
        for u in 0..self.num_identities() as NodeId {
            if self.in_blue(u) && self.blue_degree(u) == 0 {
                writeln!(out, "NB {u}").unwrap();
            }
        }
        for u in 0..self.num_identities() as NodeId {
            if self.in_red(u) && self.red_degree(u) == 0 {
                writeln!(out, "NR {u}").unwrap();
            }
        }
        for e in self.edges(Layer::Blue) {
            writeln!(out, "B {} {}", e.u, e.v).unwrap();
        }
        for e in self.edges(Layer::Red) {
            writeln!(out, "R {} {}", e.u, e.v).unwrap();
        }
        out
    }

    /// Parses the `mlx` text format. `origin` is only used in error messages.
    pub fn parse_mlx(text: &str, origin: &Path) -> Result<Self, GraphError> {
        let parse_err = |line: usize, message: String| GraphError::Parse {
            path: origin.to_path_buf(),
            line,
            message,
        };
        let mut builder: Option<GraphBuilder> = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let Some(b) = builder.as_mut() else {
                match fields.as_slice() {
                    ["mlx", "1", n] => {
                        let n: usize = n
                            .parse()
                            .map_err(|_| parse_err(lineno, format!("bad node count {n:?}")))?;
                        if n > NodeId::MAX as usize {
                            return Err(parse_err(lineno, format!("node count {n} too large")));
                        }
                        builder = Some(GraphBuilder::new(n));
                        continue;
                    }
                    _ => return Err(parse_err(lineno, "expected header \"mlx 1 <N>\"".into())),
                }
            };
            let id = |s: &str| -> Result<NodeId, GraphError> {
                let v: u64 = s
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad identity {s:?}")))?;
                if v >= b.num_identities() as u64 {
                    return Err(parse_err(
                        lineno,
                        GraphError::OutOfRange {
                            id: v,
                            len: b.num_identities(),
                        }
                        .to_string(),
                    ));
                }
                Ok(v as NodeId)
            };
            let with_line = |e: GraphError| parse_err(lineno, e.to_string());
            match fields.as_slice() {
                ["NB", u] => {
                    let u = id(u)?;
                    b.declare(u, Layer::Blue).map_err(with_line)?;
                }
                ["NR", u] => {
                    let u = id(u)?;
                    b.declare(u, Layer::Red).map_err(with_line)?;
                }
                ["B", u, v] => {
                    let (u, v) = (id(u)?, id(v)?);
                    b.edge(u, v, Layer::Blue).map_err(with_line)?;
                }
                ["R", u, v] => {
                    let (u, v) = (id(u)?, id(v)?);
                    b.edge(u, v, Layer::Red).map_err(with_line)?;
                }
                _ => return Err(parse_err(lineno, format!("unrecognized record {line:?}"))),
            }
        }
        let builder = builder.ok_or_else(|| parse_err(0, "missing header".into()))?;
        match builder.build() {
            Ok(g) => Ok(g),
            Err(e) => Err(parse_err(0, e.to_string())),
        }
    }
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<TwoLayerGraph, GraphError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    TwoLayerGraph::parse_mlx(&text, path)
}

pub fn save_graph(g: &TwoLayerGraph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    let path = path.as_ref();
    fs::write(path, g.to_mlx()).map_err(|source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<TwoLayerGraph, GraphError> {
        TwoLayerGraph::parse_mlx(text, Path::new("<test>"))
    }

    #[test]
    fn minimal_triangle() {
        let g = parse("mlx 1 3\nB 0 1\nB 1 2\nB 0 2\n").unwrap();
        assert_eq!(g.num_identities(), 3);
        assert_eq!(g.num_blue_edges(), 3);
        assert_eq!(g.num_red_edges(), 0);
        assert_eq!(g.blue_neighbors(1), &[0, 2]);
    }

    #[test]
    fn presence_is_inferred_from_edges() {
        let g = parse("mlx 1 3\nB 0 1\nR 1 2\n").unwrap();
        assert!(g.in_blue(1) && g.in_red(1));
        assert!(g.in_red(2) && !g.in_blue(2));
        assert!(g.in_blue(0) && !g.in_red(0));
    }

    #[test]
    fn self_loop_rejected() {
        let err = parse("mlx 1 3\nB 0 0\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("self-loop"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse("# header next\nmlx 1 2\nB 0 5\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }), "{err}");
        let err = parse("mlx 1 2\nQ 0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
        assert!(parse("B 0 1\n").is_err());
    }

    #[test]
    fn duplicate_within_layer_rejected_across_layers_allowed() {
        assert!(parse("mlx 1 2\nB 0 1\nB 1 0\n").is_err());
        let g = parse("mlx 1 2\nB 0 1\nR 1 0\n").unwrap();
        assert!(g.has_blue_edge(0, 1) && g.has_red_edge(1, 0));
    }

    #[test]
    fn declarations_and_comments() {
        let g = parse("mlx 1 4 # four people\nNB 3\nNR 2\nB 0 1\n").unwrap();
        assert!(g.in_blue(3) && !g.in_red(3));
        assert!(g.in_red(2) && !g.in_blue(2));
        assert_eq!(g.blue_degree(3), 0);
    }

    #[test]
    fn round_trip_minimal_and_empty() {
        let g = parse("mlx 1 3\nB 0 1\nB 1 2\nB 0 2\n").unwrap();
        assert_eq!(parse(&g.to_mlx()).unwrap(), g);
        let empty = parse("mlx 1 5\nNB 0\nNR 4\n").unwrap();
        assert_eq!(parse(&empty.to_mlx()).unwrap(), empty);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.mlx");
        save_graph(&g, &path).unwrap();
        assert_eq!(load_graph(&path).unwrap(), g);
    }

    #[test]
    fn edge_neighbor_counts() {
        let tri = TwoLayerGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], &[]).unwrap();
        assert_eq!(tri.edge_blue_neighbor_count(0, 1).unwrap(), 2);
        let path = TwoLayerGraph::from_edges(3, &[(0, 1), (1, 2)], &[]).unwrap();
        assert_eq!(path.edge_blue_neighbor_count(0, 1).unwrap(), 1);
        let red = TwoLayerGraph::from_edges(3, &[], &[(1, 2)]).unwrap();
        assert_eq!(red.edge_red_neighbor_count(1, 2).unwrap(), 0);
        assert!(red.edge_blue_neighbor_count(1, 2).is_err());
        assert!(tri.edge_blue_neighbor_count(0, 9).is_err());
    }

    #[test]
    fn union_neighbors_merges() {
        let g = TwoLayerGraph::from_edges(5, &[(0, 1), (0, 3)], &[(0, 3), (0, 4), (0, 2)]).unwrap();
        assert_eq!(g.union_neighbors(0), vec![1, 2, 3, 4]);
    }

    #[test]
    fn largest_component_and_induced() {
        let g = TwoLayerGraph::from_edges(6, &[(0, 1), (2, 3), (3, 4)], &[(0, 4), (4, 5)]).unwrap();
        let cc = g.largest_blue_component();
        assert_eq!(cc, vec![2, 3, 4]);
        let sub = g.induced(&cc);
        assert_eq!(sub.num_identities(), 3);
        assert_eq!(sub.num_blue_edges(), 2);
        assert_eq!(sub.num_red_edges(), 0);
        assert!(sub.in_red(2));
    }
}
