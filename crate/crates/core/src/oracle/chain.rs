use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::error::ChainError;
use crate::graph::{EdgeRef, Layer, NodeId, TwoLayerGraph};
use crate::samplers::{stationary_weight, transitions, Algorithm, WalkState};
use crate::scalar::Scalar;

pub const DEFAULT_STATE_CAP: usize = 5000;

/// All-blue windows `(a, v, c)` with `a != c` (edge pairs for the edge walk),
/// the support of the initial distribution.
pub fn initial_states(g: &TwoLayerGraph, algo: Algorithm) -> Vec<WalkState> {
    let mut out = Vec::new();
    for v in 0..g.num_identities() as NodeId {
        let nbrs = g.blue_neighbors(v);
        for &a in nbrs {
            for &c in nbrs.iter().filter(|&&c| c != a) {
                out.push(match algo {
                    Algorithm::RwEbE => WalkState::EdgePair {
                        first: EdgeRef::new(a, v, Layer::Blue),
                        second: EdgeRef::new(v, c, Layer::Blue),
                    },
                    _ => WalkState::all_blue(a, v, c),
                });
            }
        }
    }
    out
}

/// The reachable part of a walk's Markov chain with exact transition rows.
#[derive(Debug, Clone)]
pub struct ExplicitChain<S> {
    pub algo: Algorithm,
    pub states: Vec<WalkState>,
    /// Sparse rows `(target index, probability)`.
    pub rows: Vec<Vec<(usize, S)>>,
    /// π̃ of each state.
    pub weights: Vec<S>,
}

/// Breadth-first enumeration of every state reachable from the initial
/// support. Fails once more than `cap` states are discovered.
pub fn build_explicit_chain<S: Scalar>(
    g: &TwoLayerGraph,
    algo: Algorithm,
    cap: usize,
) -> Result<ExplicitChain<S>, ChainError> {
    let mut index: HashMap<WalkState, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    for s in initial_states(g, algo) {
        if let Entry::Vacant(slot) = index.entry(s) {
            slot.insert(states.len());
            states.push(s);
            queue.push_back(s);
        }
    }
    if states.is_empty() {
        return Err(ChainError::Sample(crate::error::SampleError::NoInitialState));
    }
    if states.len() > cap {
        return Err(ChainError::CapExceeded { cap });
    }
    let mut raw: HashMap<usize, Vec<(WalkState, S)>> = HashMap::new();
    while let Some(s) = queue.pop_front() {
        let out = transitions::<S>(algo, g, &s);
        for (t, _) in &out {
            if let Entry::Vacant(slot) = index.entry(*t) {
                slot.insert(states.len());
                states.push(*t);
                queue.push_back(*t);
                if states.len() > cap {
                    return Err(ChainError::CapExceeded { cap });
                }
            }
        }
        raw.insert(index[&s], out);
    }
    let rows = (0..states.len())
        .map(|i| {
            let mut row: Vec<(usize, S)> = Vec::new();
            for (t, p) in raw.remove(&i).unwrap_or_default() {
                let j = index[&t];
                match row.iter_mut().find(|(k, _)| *k == j) {
                    Some((_, q)) => *q = q.clone() + p,
                    None => row.push((j, p)),
                }
            }
            row.sort_by_key(|(j, _)| *j);
            row
        })
        .collect();
    let weights = states
        .iter()
        .map(|s| stationary_weight::<S>(algo, g, s))
        .collect();
    Ok(ExplicitChain {
        algo,
        states,
        rows,
        weights,
    })
}

impl<S: Scalar> ExplicitChain<S> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn row_sums(&self) -> Vec<S> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(S::zero(), |acc, (_, p)| acc + p.clone()))
            .collect()
    }

    /// (π̃P)(t) − π̃(t) for every state; all zero iff π̃ is invariant.
    pub fn inflow_residuals(&self) -> Vec<S> {
        let mut inflow = vec![S::zero(); self.len()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, p) in row {
                inflow[*j] = inflow[*j].clone() + self.weights[i].clone() * p.clone();
            }
        }
        inflow
            .into_iter()
            .zip(&self.weights)
            .map(|(x, w)| x - w.clone())
            .collect()
    }

    /// Σ π̃ over the reachable states.
    pub fn total_weight(&self) -> S {
        self.weights.iter().fold(S::zero(), |acc, w| acc + w.clone())
    }

    fn float_rows(&self) -> Vec<Vec<(usize, f64)>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(j, p)| (*j, p.to_f64())).collect())
            .collect()
    }

    /// Stationary vector by power iteration on the lazy chain (I + P)/2,
    /// which shares π with P and converges for periodic P too. Stops when
    /// successive iterates differ by less than `tol` in L1.
    pub fn solve_stationary(&self, tol: f64, max_iter: usize) -> Vec<f64> {
        let rows = self.float_rows();
        let n = self.len();
        let mut pi = vec![1.0 / n as f64; n];
        let mut next = vec![0.0; n];
        for _ in 0..max_iter {
            next.iter_mut().zip(&pi).for_each(|(x, p)| *x = 0.5 * p);
            for (i, row) in rows.iter().enumerate() {
                let half = 0.5 * pi[i];
                for &(j, p) in row {
                    next[j] += half * p;
                }
            }
            let sum: f64 = next.iter().sum();
            next.iter_mut().for_each(|x| *x /= sum);
            let diff: f64 = next.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum();
            std::mem::swap(&mut pi, &mut next);
            if diff < tol {
                break;
            }
        }
        pi
    }

    /// τ(ζ): the first t with max over deterministic starts of
    /// TV(P^t(s, ·), π) ≤ ζ, or `None` if not reached within `max_t` steps
    /// (periodic chains never get there). With `lazy`, uses (I + P)/2.
    pub fn mixing_time(&self, pi: &[f64], zeta: f64, max_t: usize, lazy: bool) -> Option<usize> {
        let rows = self.float_rows();
        let n = self.len();
        let mut worst = 0;
        let mut dist = vec![0.0; n];
        let mut next = vec![0.0; n];
        for start in 0..n {
            dist.iter_mut().for_each(|x| *x = 0.0);
            dist[start] = 1.0;
            let mut t = 0;
            // TV from a fixed start is non-increasing, so stop at the first hit
            loop {
                let tv: f64 = 0.5 * dist.iter().zip(pi).map(|(a, b)| (a - b).abs()).sum::<f64>();
                if tv <= zeta {
                    break;
                }
                if t >= max_t {
                    return None;
                }
                let keep = if lazy { 0.5 } else { 0.0 };
                next.iter_mut().zip(&dist).for_each(|(x, d)| *x = keep * d);
                for (i, row) in rows.iter().enumerate() {
                    let mass = (1.0 - keep) * dist[i];
                    if mass == 0.0 {
                        continue;
                    }
                    for &(j, p) in row {
                        next[j] += mass * p;
                    }
                }
                std::mem::swap(&mut dist, &mut next);
                t += 1;
            }
            worst = worst.max(t);
        }
        Some(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::normalization;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn small() -> TwoLayerGraph {
        TwoLayerGraph::from_edges(
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
            &[(0, 1), (1, 3), (2, 4), (3, 4)],
        )
        .unwrap()
    }

    #[test]
    fn blue_triangle_rwnbn() {
        let g = TwoLayerGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], &[]).unwrap();
        let chain = build_explicit_chain::<BigRational>(&g, Algorithm::RwNbN, 100).unwrap();
        // b_v² ordered pairs per centre, 6 of them without a repeat
        assert_eq!(chain.len(), 12);
        assert_eq!(chain.states.iter().filter(|s| s.identities().is_some()).count(), 6);
        let pi = chain.solve_stationary(1e-14, 100_000);
        for (p, w) in pi.iter().zip(&chain.weights) {
            assert!((p * 6.0 - w.to_f64()).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_invariance_all_algorithms() {
        let g = small();
        for algo in Algorithm::ALL {
            let chain = build_explicit_chain::<BigRational>(&g, algo, 5000).unwrap();
            assert!(chain.row_sums().iter().all(|s| s.is_one()), "{algo}");
            assert!(chain.inflow_residuals().iter().all(|r| r.is_zero()), "{algo}");
            assert_eq!(chain.total_weight(), normalization::<BigRational>(&g, algo), "{algo}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = small();
        assert!(matches!(
            build_explicit_chain::<f64>(&g, Algorithm::RwOmrn, 10),
            Err(ChainError::CapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn mixing_time_on_small_chain() {
        let g = small();
        let chain = build_explicit_chain::<f64>(&g, Algorithm::RwNbN, 5000).unwrap();
        let pi = chain.solve_stationary(1e-13, 1_000_000);
        let lazy = chain.mixing_time(&pi, 0.125, 10_000, true).unwrap();
        assert!(lazy >= 1);
        assert_eq!(chain.mixing_time(&pi, 1.0, 10_000, false), Some(0));
    }
}
