//! Walk algorithms over explicit Markov states.
//!
//! Node-based walks keep the last three identities together with the layer of
//! the two hops between them: `(Blue, Blue)` is an all-blue window,
//! `(Blue, Red)` ends in a red sample, `(Red, Red)` is the two-red-node state
//! of the one-more-red and mixed walks. The edge walk keeps the last two
//! edges. Backtracking states (repeated identities) are legal and carry no
//! estimator weight.

mod estimator;
mod kernel;
mod step;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeRef, Layer, NodeId, TwoLayerGraph};
use crate::scalar::Scalar;

pub use estimator::{
    run_estimator, Accumulator, ConcentrationEstimate, EstimatorOptions, InitialStates, Sampler,
    Snapshot, WalkTrace,
};
pub use kernel::transitions;
pub use step::{step, step_rwebe, step_rwmix, step_rwnbn, step_rwnr, step_rwomrn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    /// Node-by-node walk; one red hop, then back to blue.
    #[serde(rename = "rwnbn")]
    RwNbN,
    /// Edge-by-edge walk.
    #[serde(rename = "rwebe")]
    RwEbE,
    /// Node walk that always samples a second red node after a red hop.
    #[serde(rename = "rwomrn")]
    RwOmrn,
    /// Node walk that randomly either deepens in red or returns to blue.
    #[serde(rename = "rwmix")]
    RwMix,
    /// Simple walk over both layers with no restrictions (baseline).
    #[serde(rename = "rwnr")]
    RwNr,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::RwNbN,
        Algorithm::RwEbE,
        Algorithm::RwOmrn,
        Algorithm::RwMix,
        Algorithm::RwNr,
    ];

    pub const RESTRICTED: [Algorithm; 4] = [
        Algorithm::RwNbN,
        Algorithm::RwEbE,
        Algorithm::RwOmrn,
        Algorithm::RwMix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::RwNbN => "rwnbn",
            Algorithm::RwEbE => "rwebe",
            Algorithm::RwOmrn => "rwomrn",
            Algorithm::RwMix => "rwmix",
            Algorithm::RwNr => "rwnr",
        }
    }

    /// Red hop budget enforced by the access facade; `None` for the baseline.
    pub fn red_hop_budget(self) -> Option<u8> {
        match self {
            Algorithm::RwNbN | Algorithm::RwEbE => Some(1),
            Algorithm::RwOmrn | Algorithm::RwMix => Some(2),
            Algorithm::RwNr => None,
        }
    }

    pub fn is_restricted(self) -> bool {
        self.red_hop_budget().is_some()
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                format!("unknown algorithm {s:?} (expected rwnbn, rwebe, rwomrn, rwmix or rwnr)")
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WalkState {
    NodeTriple { nodes: [NodeId; 3], hops: [Layer; 2] },
    EdgePair { first: EdgeRef, second: EdgeRef },
}

impl WalkState {
    pub fn all_blue(a: NodeId, b: NodeId, c: NodeId) -> Self {
        WalkState::NodeTriple {
            nodes: [a, b, c],
            hops: [Layer::Blue, Layer::Blue],
        }
    }

    /// The three distinct identities covered by the state, if there are three.
    pub fn identities(&self) -> Option<[NodeId; 3]> {
        let ids = match *self {
            WalkState::NodeTriple { nodes, .. } => nodes,
            WalkState::EdgePair { first, second } => {
                let shared = first.shared_endpoint(&second)?;
                [first.other(shared), shared, second.other(shared)]
            }
        };
        let [a, b, c] = ids;
        (a != b && b != c && a != c).then_some(ids)
    }

    /// Number of red hops (node states) or red edges (edge states).
    pub fn red_slots(&self) -> usize {
        match self {
            WalkState::NodeTriple { hops, .. } => hops.iter().filter(|&&h| h == Layer::Red).count(),
            WalkState::EdgePair { first, second } => [first, second]
                .iter()
                .filter(|e| e.layer == Layer::Red)
                .count(),
        }
    }
}

/// Whether `s` is a state of `algo`'s chain as far as local structure goes:
/// edges exist in the stated layers and the hop pattern is one the walk can
/// produce.
pub fn is_legal_state(algo: Algorithm, g: &TwoLayerGraph, s: &WalkState) -> bool {
    use Layer::{Blue, Red};
    match (*s, algo) {
        (WalkState::EdgePair { first, second }, Algorithm::RwEbE) => {
            first.layer == Blue
                && g.has_edge(first.u, first.v, first.layer)
                && g.has_edge(second.u, second.v, second.layer)
                && first.shared_endpoint(&second).is_some()
        }
        (WalkState::EdgePair { .. }, _) | (WalkState::NodeTriple { .. }, Algorithm::RwEbE) => false,
        (WalkState::NodeTriple { nodes: [a, b, c], hops }, algo) => {
            let edges_ok = g.has_edge(a, b, hops[0]) && g.has_edge(b, c, hops[1]);
            let pattern_ok = match (algo, hops) {
                (Algorithm::RwNr, _) => true,
                (_, [Blue, Blue]) | (_, [Blue, Red]) => true,
                (Algorithm::RwOmrn | Algorithm::RwMix, [Red, Red]) => g.in_blue(a),
                _ => false,
            };
            edges_ok && pattern_ok
        }
    }
}

/// Unnormalised stationary weight π̃(S) = M·π(S), from local degrees only.
pub fn stationary_weight<S: Scalar>(algo: Algorithm, g: &TwoLayerGraph, s: &WalkState) -> S {
    use Layer::{Blue, Red};
    let deg = |u: NodeId| (g.blue_degree(u) as u64, g.red_degree(u) as u64);
    match *s {
        WalkState::NodeTriple { nodes: [a, b, _], hops } => {
            let (bb, rb) = deg(b);
            match (algo, hops) {
                (Algorithm::RwNr, _) => S::ratio(1, bb + rb),
                (_, [Blue, Blue]) => S::ratio(1, bb),
                (_, [Blue, Red]) => S::ratio(1, bb + rb),
                (Algorithm::RwOmrn, [Red, Red]) => {
                    let (ba, ra) = deg(a);
                    S::ratio(ba, (ba + ra) * rb)
                }
                (Algorithm::RwMix, [Red, Red]) => {
                    let (ba, ra) = deg(a);
                    S::ratio(ba, (ba + ra) * (rb + ba))
                }
                _ => S::zero(),
            }
        }
        WalkState::EdgePair { first, second } => match second.layer {
            Blue => S::one(),
            Red => {
                let be = g.edge_neighbor_count_unchecked(first.u, first.v, Blue) as u64;
                let re = g.edge_neighbor_count_unchecked(first.u, first.v, Red) as u64;
                S::ratio(be, be + re)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(
                serde_json::to_string(&a).unwrap(),
                format!("\"{}\"", a.name())
            );
        }
        assert!("RWNBN".parse::<Algorithm>().is_ok());
        assert!("walk".parse::<Algorithm>().is_err());
    }

    #[test]
    fn identities_of_states() {
        let s = WalkState::all_blue(0, 1, 0);
        assert_eq!(s.identities(), None);
        let e = WalkState::EdgePair {
            first: EdgeRef::new(0, 1, Layer::Blue),
            second: EdgeRef::new(2, 1, Layer::Red),
        };
        assert_eq!(e.identities(), Some([0, 1, 2]));
        assert_eq!(e.red_slots(), 1);
    }

    #[test]
    fn weights_on_small_graph() {
        // b_1 = 2, r_1 = 1
        let g = TwoLayerGraph::from_edges(4, &[(0, 1), (1, 2)], &[(1, 3), (3, 0)]).unwrap();
        let s = WalkState::all_blue(0, 1, 2);
        assert_eq!(stationary_weight::<BigRational>(Algorithm::RwNbN, &g, &s), BigRational::ratio(1, 2));
        let red = WalkState::NodeTriple {
            nodes: [0, 1, 3],
            hops: [Layer::Blue, Layer::Red],
        };
        assert_eq!(stationary_weight::<f64>(Algorithm::RwNbN, &g, &red), 1.0 / 3.0);
        let rr = WalkState::NodeTriple {
            nodes: [1, 3, 0],
            hops: [Layer::Red, Layer::Red],
        };
        // b_1 = 2, r_1 = 1, r_3 = 2
        assert_eq!(stationary_weight::<f64>(Algorithm::RwOmrn, &g, &rr), 2.0 / 6.0);
        assert_eq!(stationary_weight::<f64>(Algorithm::RwMix, &g, &rr), 2.0 / 12.0);
        assert!(is_legal_state(Algorithm::RwOmrn, &g, &rr));
        assert!(!is_legal_state(Algorithm::RwNbN, &g, &rr));
    }
}
