//! One random step of each walk, issued through the access facade.

use rand::Rng;

use crate::access::{nth_excluding, RestrictedAccess};
use crate::error::SampleError;
use crate::graph::{EdgeRef, Layer, NodeId};

use super::{Algorithm, WalkState};

use Layer::{Blue, Red};

fn node(nodes: [NodeId; 3], hops: [Layer; 2]) -> WalkState {
    WalkState::NodeTriple { nodes, hops }
}

fn pick<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    rng.random_range(0..n)
}

fn invalid(algo: Algorithm, s: &WalkState) -> ! {
    panic!("{algo} cannot step from foreign state {s:?}")
}

/// Extends an all-blue window from its last node: blue and red neighbours
/// are equally likely candidates.
fn extend_from_blue<R: Rng + ?Sized>(
    [_, b, c]: [NodeId; 3],
    facade: &mut RestrictedAccess<'_>,
    rng: &mut R,
) -> Result<WalkState, SampleError> {
    let view = facade.blue_neighbors(c)?;
    let total = view.blue_degree() + view.red_degree;
    if total == 0 {
        return Err(SampleError::DeadEnd(c));
    }
    let k = pick(rng, total);
    if k < view.blue_degree() {
        Ok(node([b, c, view.neighbors[k]], [Blue, Blue]))
    } else {
        let y = facade.sample_red_neighbor(c, rng)?;
        Ok(node([b, c, y], [Blue, Red]))
    }
}

/// Replaces the last slot with a uniform blue neighbour of the middle node.
fn return_to_blue<R: Rng + ?Sized>(
    [a, b, _]: [NodeId; 3],
    facade: &mut RestrictedAccess<'_>,
    rng: &mut R,
) -> Result<WalkState, SampleError> {
    let view = facade.blue_neighbors(b)?;
    if view.neighbors.is_empty() {
        return Err(SampleError::DeadEnd(b));
    }
    Ok(node([a, b, view.neighbors[pick(rng, view.blue_degree())]], [Blue, Blue]))
}

/// From `(X, Y, Y')`: two independent uniform blue neighbours of `X`
/// become the ends of an all-blue window centred on `X`.
fn recenter_on_blue<R: Rng + ?Sized>(
    x: NodeId,
    facade: &mut RestrictedAccess<'_>,
    rng: &mut R,
) -> Result<WalkState, SampleError> {
    let view = facade.blue_neighbors(x)?;
    let bx = view.blue_degree();
    if bx == 0 {
        return Err(SampleError::DeadEnd(x));
    }
    let p = view.neighbors[pick(rng, bx)];
    let q = view.neighbors[pick(rng, bx)];
    Ok(node([p, x, q], [Blue, Blue]))
}

pub fn step_rwnbn<R: Rng + ?Sized>(
    s: &WalkState,
    facade: &mut RestrictedAccess<'_>,
    rng: &mut R,
) -> Result<WalkState, SampleError> {
    match *s {
        WalkState::NodeTriple { nodes, hops: [Blue, Blue] } => extend_from_blue(nodes, facade, rng),
        WalkState::NodeTriple { nodes, hops: [Blue, Red] } => return_to_blue(nodes, facade, rng),
        _ => invalid(Algorithm::RwNbN, s),
    }
}

pub fn step_rwomrn<R: Rng + ?Sized>(
    s: &WalkState,
    facade: &mut RestrictedAccess<'_>,
    rng: &mut R,
) -> Result<WalkState, SampleError> {
    match *s {
        WalkState::NodeTriple { nodes, hops: [Blue, Blue] } => extend_from_blue(nodes, facade, rng),
        WalkState::NodeTriple { nodes: [_, b, y], hops: [Blue, Red] } => {
            let reds = facade.red_neighbors_of_red(y)?;
            // y is a red neighbour of b, so its list is never empty
            let z = reds[pick(rng, reds.len())];
            Ok(node([b, y, z], [Red, Red]))
        }
        WalkState::NodeTriple { nodes: [x, _, _], hops: [Red, Red] } => recenter_on_blue(x, facade, rng),
        _ => invalid(Algorithm::RwOmrn, s),
    }
}

pub fn step_rwmix<R: Rng + ?Sized>(
    s: &WalkState,
    facade: &mut RestrictedAccess<'_>,
    rng: &mut R,
) -> Result<WalkState, SampleError> {
    match *s {
        WalkState::NodeTriple { nodes, hops: [Blue, Blue] } => extend_from_blue(nodes, facade, rng),
        WalkState::NodeTriple { nodes: [a, v, y], hops: [Blue, Red] } => {
            let blues = facade.blue_neighbors(v)?.neighbors;
            let reds = facade.red_neighbors_of_red(y)?;
            let k = pick(rng, blues.len() + reds.len());
            if k < blues.len() {
                Ok(node([a, v, blues[k]], [Blue, Blue]))
            } else {
                Ok(node([v, y, reds[k - blues.len()]], [Red, Red]))
            }
        }
        WalkState::NodeTriple { nodes: [x, _, _], hops: [Red, Red] } => recenter_on_blue(x, facade, rng),
        _ => invalid(Algorithm::RwMix, s),
    }
}

/// Simple walk over the union multigraph; the facade must be unrestricted.
pub fn step_rwnr<R: Rng + ?Sized>(
    s: &WalkState,
    facade: &mut RestrictedAccess<'_>,
    rng: &mut R,
) -> Result<WalkState, SampleError> {
    let WalkState::NodeTriple { nodes: [_, b, c], hops: [_, h] } = *s else {
        invalid(Algorithm::RwNr, s)
    };
    let blues = facade.blue_neighbors(c)?.neighbors;
    let reds = facade.red_neighbors(c)?;
    let total = blues.len() + reds.len();
    if total == 0 {
        return Err(SampleError::DeadEnd(c));
    }
    let k = pick(rng, total);
    if k < blues.len() {
        Ok(node([b, c, blues[k]], [h, Blue]))
    } else {
        Ok(node([b, c, reds[k - blues.len()]], [h, Red]))
    }
}

/// Uniform blue edge sharing exactly one endpoint with `e`, given both
/// endpoint lists.
fn pick_blue_edge(e: EdgeRef, nu: &[NodeId], nv: &[NodeId], k: usize) -> EdgeRef {
    let bu = nu.len() - 1;
    if k < bu {
        EdgeRef::new(e.u, nth_excluding(nu, e.v, k), Blue)
    } else {
        EdgeRef::new(e.v, nth_excluding(nv, e.u, k - bu), Blue)
    }
}

pub fn step_rwebe<R: Rng + ?Sized>(
    s: &WalkState,
    facade: &mut RestrictedAccess<'_>,
    rng: &mut R,
) -> Result<WalkState, SampleError> {
    let WalkState::EdgePair { first, second } = *s else {
        invalid(Algorithm::RwEbE, s)
    };
    match second.layer {
        Blue => {
            let e = second;
            let nu = facade.blue_neighbors(e.u)?.neighbors;
            let nv = facade.blue_neighbors(e.v)?.neighbors;
            let be = nu.len() + nv.len() - 2;
            let re = facade.red_edge_count(e.u, e.v)?;
            if be + re == 0 {
                return Err(SampleError::DeadEnd(e.u));
            }
            let k = pick(rng, be + re);
            let next = if k < be {
                pick_blue_edge(e, nu, nv, k)
            } else {
                facade.sample_red_edge(e.u, e.v, rng)?
            };
            Ok(WalkState::EdgePair { first: e, second: next })
        }
        Red => {
            let e = first;
            let nu = facade.blue_neighbors(e.u)?.neighbors;
            let nv = facade.blue_neighbors(e.v)?.neighbors;
            let be = nu.len() + nv.len() - 2;
            if be == 0 {
                return Err(SampleError::DeadEnd(e.u));
            }
            let next = pick_blue_edge(e, nu, nv, pick(rng, be));
            Ok(WalkState::EdgePair { first: e, second: next })
        }
    }
}

pub fn step<R: Rng + ?Sized>(
    algo: Algorithm,
    s: &WalkState,
    facade: &mut RestrictedAccess<'_>,
    rng: &mut R,
) -> Result<WalkState, SampleError> {
    match algo {
        Algorithm::RwNbN => step_rwnbn(s, facade, rng),
        Algorithm::RwEbE => step_rwebe(s, facade, rng),
        Algorithm::RwOmrn => step_rwomrn(s, facade, rng),
        Algorithm::RwMix => step_rwmix(s, facade, rng),
        Algorithm::RwNr => step_rwnr(s, facade, rng),
    }
}
