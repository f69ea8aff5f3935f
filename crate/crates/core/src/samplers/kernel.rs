//! Exact one-step transition distributions, used to build explicit chains.

use crate::graph::{EdgeRef, Layer, NodeId, TwoLayerGraph};
use crate::scalar::Scalar;

use super::{Algorithm, WalkState};

/// Blue edges sharing exactly one endpoint with `e`, in a fixed order.
pub(crate) fn blue_edge_neighbors(g: &TwoLayerGraph, e: EdgeRef) -> impl Iterator<Item = EdgeRef> + '_ {
    [(e.u, e.v), (e.v, e.u)].into_iter().flat_map(move |(end, other)| {
        g.blue_neighbors(end)
            .iter()
            .filter(move |&&w| w != other)
            .map(move |&w| EdgeRef::new(end, w, Layer::Blue))
    })
}

fn red_edge_neighbors(g: &TwoLayerGraph, e: EdgeRef) -> impl Iterator<Item = EdgeRef> + '_ {
    [(e.u, e.v), (e.v, e.u)].into_iter().flat_map(move |(end, other)| {
        g.red_neighbors(end)
            .iter()
            .filter(move |&&w| w != other)
            .map(move |&w| EdgeRef::new(end, w, Layer::Red))
    })
}

fn node(nodes: [NodeId; 3], hops: [Layer; 2]) -> WalkState {
    WalkState::NodeTriple { nodes, hops }
}

/// Outgoing transitions of `s` with their exact probabilities. Dead ends
/// yield an empty list.
pub fn transitions<S: Scalar>(algo: Algorithm, g: &TwoLayerGraph, s: &WalkState) -> Vec<(WalkState, S)> {
    use Layer::{Blue, Red};
    let mut out = Vec::new();
    match *s {
        WalkState::EdgePair { first, second } => {
            let base = if second.layer == Blue { second } else { first };
            let blue: Vec<EdgeRef> = blue_edge_neighbors(g, base).collect();
            if second.layer == Blue {
                let red: Vec<EdgeRef> = red_edge_neighbors(g, base).collect();
                let total = (blue.len() + red.len()) as u64;
                for e in blue.into_iter().chain(red) {
                    out.push((WalkState::EdgePair { first: base, second: e }, S::ratio(1, total)));
                }
            } else {
                let total = blue.len() as u64;
                for e in blue {
                    out.push((WalkState::EdgePair { first, second: e }, S::ratio(1, total)));
                }
            }
        }
        WalkState::NodeTriple { nodes: [a, b, c], hops } => match (algo, hops) {
            (Algorithm::RwNr, [_, h]) => {
                let total = (g.blue_degree(c) + g.red_degree(c)) as u64;
                for layer in [Blue, Red] {
                    for &d in g.neighbors(c, layer) {
                        out.push((node([b, c, d], [h, layer]), S::ratio(1, total)));
                    }
                }
            }
            (_, [Blue, Blue]) => {
                let total = (g.blue_degree(c) + g.red_degree(c)) as u64;
                for &d in g.blue_neighbors(c) {
                    out.push((node([b, c, d], [Blue, Blue]), S::ratio(1, total)));
                }
                for &y in g.red_neighbors(c) {
                    out.push((node([b, c, y], [Blue, Red]), S::ratio(1, total)));
                }
            }
            (Algorithm::RwNbN, [Blue, Red]) => {
                let total = g.blue_degree(b) as u64;
                for &d in g.blue_neighbors(b) {
                    out.push((node([a, b, d], [Blue, Blue]), S::ratio(1, total)));
                }
            }
            (Algorithm::RwOmrn, [Blue, Red]) => {
                let total = g.red_degree(c) as u64;
                for &y in g.red_neighbors(c) {
                    out.push((node([b, c, y], [Red, Red]), S::ratio(1, total)));
                }
            }
            (Algorithm::RwMix, [Blue, Red]) => {
                let total = (g.blue_degree(b) + g.red_degree(c)) as u64;
                for &d in g.blue_neighbors(b) {
                    out.push((node([a, b, d], [Blue, Blue]), S::ratio(1, total)));
                }
                for &y in g.red_neighbors(c) {
                    out.push((node([b, c, y], [Red, Red]), S::ratio(1, total)));
                }
            }
            (Algorithm::RwOmrn | Algorithm::RwMix, [Red, Red]) => {
                let bx = g.blue_degree(a) as u64;
                for &p in g.blue_neighbors(a) {
                    for &q in g.blue_neighbors(a) {
                        out.push((node([p, a, q], [Blue, Blue]), S::ratio(1, bx * bx)));
                    }
                }
            }
            _ => {}
        },
    }
    out
}
