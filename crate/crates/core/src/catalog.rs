//! The sixteen two-layer 3-node graphlet types and their isomorphic-state
//! coefficients.
//!
//! A connected 3-identity subgraph is described by the colours of its three
//! identity pairs. Paths are written end–centre–end with the two edge colours
//! unordered; triangles by their colour multiset.
//!
//! | idx | shape    | colours      | idx | shape    | colours      |
//! |-----|----------|--------------|-----|----------|--------------|
//! | 1   | path     | B, B         | 9   | triangle | B, B, BR     |
//! | 2   | path     | B, R         | 10  | triangle | R, R, BR     |
//! | 3   | path     | B, BR        | 11  | triangle | B, R, BR     |
//! | 4   | path     | R, BR        | 12  | triangle | B, BR, BR    |
//! | 5   | path     | BR, BR       | 13  | triangle | R, BR, BR    |
//! | 6   | triangle | B, B, B      | 14  | triangle | BR, BR, BR   |
//! | 7   | triangle | B, B, R      | 15  | path     | R, R         |
//! | 8   | triangle | B, R, R      | 16  | triangle | R, R, R      |

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeRef, GraphBuilder, Layer, NodeId, TwoLayerGraph};
use crate::samplers::{is_legal_state, Algorithm, WalkState};

/// Number of graphlet types, including the two pure-red ones.
pub const NUM_TYPES: usize = 16;
/// Types reachable by the restricted walks (indices 1..=14).
pub const NUM_RESTRICTED_TYPES: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairColor {
    None,
    Blue,
    Red,
    BlueRed,
}

impl PairColor {
    pub fn of(g: &TwoLayerGraph, u: NodeId, v: NodeId) -> PairColor {
        match (g.has_blue_edge(u, v), g.has_red_edge(u, v)) {
            (false, false) => PairColor::None,
            (true, false) => PairColor::Blue,
            (false, true) => PairColor::Red,
            (true, true) => PairColor::BlueRed,
        }
    }

    pub fn has_blue(self) -> bool {
        matches!(self, PairColor::Blue | PairColor::BlueRed)
    }

    pub fn has_red(self) -> bool {
        matches!(self, PairColor::Red | PairColor::BlueRed)
    }

    pub fn short(self) -> &'static str {
        match self {
            PairColor::None => "-",
            PairColor::Blue => "B",
            PairColor::Red => "R",
            PairColor::BlueRed => "BR",
        }
    }
}

/// One of the sixteen canonical graphlet types, indexed 1..=16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GraphletType(u8);

use PairColor::{Blue as B, BlueRed as BR, Red as R};

const CANONICAL: [&[PairColor]; NUM_TYPES] = [
    &[B, B],
    &[B, R],
    &[B, BR],
    &[R, BR],
    &[BR, BR],
    &[B, B, B],
    &[B, B, R],
    &[B, R, R],
    &[B, B, BR],
    &[R, R, BR],
    &[B, R, BR],
    &[B, BR, BR],
    &[R, BR, BR],
    &[BR, BR, BR],
    &[R, R],
    &[R, R, R],
];

impl GraphletType {
    pub fn new(index: usize) -> Option<Self> {
        (1..=NUM_TYPES)
            .contains(&index)
            .then_some(GraphletType(index as u8))
    }

    pub fn all() -> impl Iterator<Item = GraphletType> {
        (1..=NUM_TYPES as u8).map(GraphletType)
    }

    pub fn restricted() -> impl Iterator<Item = GraphletType> {
        (1..=NUM_RESTRICTED_TYPES as u8).map(GraphletType)
    }

    pub fn index(self) -> usize {
        usize::from(self.0)
    }

    /// Zero-based slot for per-type arrays.
    pub fn slot(self) -> usize {
        self.index() - 1
    }

    /// Edge colours of the canonical form (two for paths, three for triangles).
    pub fn colors(self) -> &'static [PairColor] {
        CANONICAL[self.slot()]
    }

    pub fn is_triangle(self) -> bool {
        self.colors().len() == 3
    }

    /// Pair positions coloured blue only.
    pub fn pure_blue_positions(self) -> usize {
        self.colors().iter().filter(|&&c| c == B).count()
    }

    /// Pair positions carrying a red edge (red or blue+red).
    pub fn red_positions(self) -> usize {
        self.colors().iter().filter(|c| c.has_red()).count()
    }

    pub fn has_blue(self) -> bool {
        self.colors().iter().any(|c| c.has_blue())
    }

    pub fn label(self) -> String {
        let shape = if self.is_triangle() { "triangle" } else { "path" };
        let cols: Vec<&str> = self.colors().iter().map(|c| c.short()).collect();
        format!("{shape} {}", cols.join(","))
    }

    /// Classifies three pair colours (in any order).
    pub fn from_pair_colors(colors: [PairColor; 3]) -> Option<GraphletType> {
        let mut present: Vec<PairColor> = colors
            .into_iter()
            .filter(|&c| c != PairColor::None)
            .collect();
        if present.len() < 2 {
            return None;
        }
        present.sort_unstable();
        let idx = CANONICAL
            .iter()
            .position(|canon| *canon == present.as_slice())
            .expect("every connected colouring has a canonical type");
        Some(GraphletType(idx as u8 + 1))
    }
}

impl fmt::Display for GraphletType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Type of the subgraph induced by `{a, b, c}`; `None` when the identities
/// are not distinct or the induced union graph is disconnected.
pub fn classify_triple(g: &TwoLayerGraph, a: NodeId, b: NodeId, c: NodeId) -> Option<GraphletType> {
    if a == b || b == c || a == c {
        return None;
    }
    GraphletType::from_pair_colors([
        PairColor::of(g, a, b),
        PairColor::of(g, b, c),
        PairColor::of(g, a, c),
    ])
}

/// Type of the subgraph induced by the identities of a walk state.
pub fn classify_state(g: &TwoLayerGraph, s: &WalkState) -> Option<GraphletType> {
    let [a, b, c] = s.identities()?;
    classify_triple(g, a, b, c)
}

/// Isomorphic-state coefficients α_i for one walk model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCoefficients {
    pub algo: Algorithm,
    alpha: [u32; NUM_TYPES],
}

impl IsoCoefficients {
    pub fn get(&self, t: GraphletType) -> u32 {
        self.alpha[t.slot()]
    }

    pub fn as_array(&self) -> [u32; NUM_TYPES] {
        self.alpha
    }

    /// Smallest non-zero coefficient among types 1..=14.
    pub fn min_restricted(&self) -> u32 {
        self.alpha[..NUM_RESTRICTED_TYPES]
            .iter()
            .copied()
            .filter(|&a| a > 0)
            .min()
            .unwrap_or(0)
    }
}

/// Three-identity graph realising a canonical type. Identities are placed in
/// both layers whenever the type has a blue pair, otherwise red only.
pub fn scaffold(t: GraphletType) -> TwoLayerGraph {
    let pairs: [(NodeId, NodeId); 3] = [(0, 1), (1, 2), (0, 2)];
    let mut b = GraphBuilder::new(3);
    for (&(u, v), &color) in pairs.iter().zip(t.colors()) {
        if color.has_blue() {
            b.edge(u, v, Layer::Blue).expect("scaffold edge");
        }
        if color.has_red() {
            b.edge(u, v, Layer::Red).expect("scaffold edge");
        }
    }
    for id in 0..3 {
        if t.has_blue() {
            b.declare(id, Layer::Blue).expect("in range");
        }
        b.declare(id, Layer::Red).expect("in range");
    }
    b.build().expect("scaffold is valid")
}

/// Every candidate state over identities {0,1,2} of a scaffold, legal or not.
fn candidate_states(g: &TwoLayerGraph) -> Vec<WalkState> {
    const PERMS: [[NodeId; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::new();
    for nodes in PERMS {
        for h1 in [Layer::Blue, Layer::Red] {
            for h2 in [Layer::Blue, Layer::Red] {
                out.push(WalkState::NodeTriple {
                    nodes,
                    hops: [h1, h2],
                });
            }
        }
    }
    let edges: Vec<EdgeRef> = g.edges(Layer::Blue).chain(g.edges(Layer::Red)).collect();
    for &first in &edges {
        for &second in &edges {
            if first != second {
                out.push(WalkState::EdgePair { first, second });
            }
        }
    }
    out
}

/// Counts, per type, the distinct legal states of `algo` whose identity set
/// is exactly the scaffold's three identities.
pub fn compute_iso_coefficients(algo: Algorithm) -> IsoCoefficients {
    let mut alpha = [0u32; NUM_TYPES];
    for t in GraphletType::all() {
        let g = scaffold(t);
        alpha[t.slot()] = candidate_states(&g)
            .iter()
            .filter(|s| s.identities().is_some() && is_legal_state(algo, &g, s))
            .count() as u32;
    }
    IsoCoefficients { algo, alpha }
}
