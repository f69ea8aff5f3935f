use crate::graph::{Layer, NodeId, TwoLayerGraph};
use crate::samplers::Algorithm;
use crate::scalar::Scalar;

/// M = Σ_S π̃(S) over the state space of `algo`'s chain, so that
/// π(S) = π̃(S)/M. Assumes every state is reachable (connected blue layer).
pub fn normalization<S: Scalar>(g: &TwoLayerGraph, algo: Algorithm) -> S {
    let n = g.num_identities() as NodeId;
    let deg = |u: NodeId| (g.blue_degree(u) as u64, g.red_degree(u) as u64);
    let mut m = S::zero();
    let mut add = |x: S| m = m.clone() + x;
    match algo {
        Algorithm::RwNbN | Algorithm::RwOmrn | Algorithm::RwMix => {
            for v in 0..n {
                let (b, r) = deg(v);
                if b == 0 {
                    continue;
                }
                // b² all-blue windows at weight 1/b, b·r red endings at 1/(b+r)
                add(S::from_count(b));
                if r > 0 {
                    add(S::ratio(b * r, b + r));
                }
                if algo == Algorithm::RwNbN || r == 0 {
                    continue;
                }
                for &y in g.red_neighbors(v) {
                    let ry = g.red_degree(y) as u64;
                    match algo {
                        // r_y states (v, y, y') each at b/((b+r)·r_y)
                        Algorithm::RwOmrn => add(S::ratio(b, b + r)),
                        _ => add(S::ratio(ry * b, (b + r) * (ry + b))),
                    }
                }
            }
        }
        Algorithm::RwEbE => {
            for e in g.edges(Layer::Blue) {
                let be = g.edge_neighbor_count_unchecked(e.u, e.v, Layer::Blue) as u64;
                let re = g.edge_neighbor_count_unchecked(e.u, e.v, Layer::Red) as u64;
                add(S::from_count(be));
                if re > 0 && be > 0 {
                    add(S::ratio(re * be, be + re));
                }
            }
        }
        Algorithm::RwNr => {
            for v in 0..n {
                let (b, r) = deg(v);
                add(S::from_count(b + r));
            }
        }
    }
    m
}

pub fn compute_m(g: &TwoLayerGraph, algo: Algorithm) -> f64 {
    normalization::<f64>(g, algo)
}

/// The closed forms as published for the node walks. The edge walk is
/// published with the node walk's constant, which this reproduces. Returns
/// `None` for the unrestricted walk, which has no published constant.
pub fn published_normalization(g: &TwoLayerGraph, algo: Algorithm) -> Option<f64> {
    let n = g.num_identities() as NodeId;
    let deg = |u: NodeId| (g.blue_degree(u) as f64, g.red_degree(u) as f64);
    let blue_present = (0..n).filter(|&v| g.in_blue(v));
    match algo {
        Algorithm::RwNbN | Algorithm::RwEbE => Some(
            2.0 * g.num_blue_edges() as f64
                + blue_present
                    .map(|v| {
                        let (b, r) = deg(v);
                        if b + r > 0.0 { b * r / (b + r) } else { 0.0 }
                    })
                    .sum::<f64>(),
        ),
        Algorithm::RwOmrn => Some(
            blue_present
                .map(|v| {
                    let (b, r) = deg(v);
                    if b + r > 0.0 {
                        (b * b - b - r + 3.0 * b * r) / (b + r)
                    } else {
                        0.0
                    }
                })
                .sum(),
        ),
        Algorithm::RwMix => Some(normalization::<f64>(g, algo)),
        Algorithm::RwNr => None,
    }
}
