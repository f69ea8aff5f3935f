use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{classify_triple, GraphletType, NUM_RESTRICTED_TYPES, NUM_TYPES};
use crate::graph::{NodeId, TwoLayerGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// |C_i| for types 1..=16.
    pub counts: Vec<u64>,
    pub total: u64,
    /// |C_i| / |C| over all sixteen types.
    pub concentrations: Vec<f64>,
}

impl GroundTruth {
    pub fn from_counts(counts: [u64; NUM_TYPES]) -> Self {
        let total: u64 = counts.iter().sum();
        GroundTruth {
            counts: counts.to_vec(),
            total,
            concentrations: normalize(&counts),
        }
    }

    pub fn count(&self, t: GraphletType) -> u64 {
        self.counts[t.slot()]
    }

    /// Concentrations over types 1..=14 only, the estimand of every walk.
    pub fn restricted_concentrations(&self) -> Vec<f64> {
        normalize(&self.counts[..NUM_RESTRICTED_TYPES])
    }

    pub fn restricted_total(&self) -> u64 {
        self.counts[..NUM_RESTRICTED_TYPES].iter().sum()
    }
}

fn normalize(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    counts
        .iter()
        .map(|&c| if total == 0 { 0.0 } else { c as f64 / total as f64 })
        .collect()
}

/// Counts every connected 3-identity subset exactly once.
///
/// Wedges are enumerated at their centre on the union adjacency. A path has
/// one centre, a triangle three, so triangle hits are divided by 3.
pub fn count_exact(g: &TwoLayerGraph) -> GroundTruth {
    let zero = || ([0u64; NUM_TYPES], [0u64; NUM_TYPES]);
    let (paths, triangle_hits) = (0..g.num_identities() as NodeId)
        .into_par_iter()
        .fold(zero, |(mut paths, mut tri), v| {
            let nbrs = g.union_neighbors(v);
            for (i, &a) in nbrs.iter().enumerate() {
                for &c in &nbrs[i + 1..] {
                    let Some(t) = classify_triple(g, a, v, c) else {
                        continue;
                    };
                    if t.is_triangle() {
                        tri[t.slot()] += 1;
                    } else {
                        paths[t.slot()] += 1;
                    }
                }
            }
            (paths, tri)
        })
        .reduce(zero, |(mut p1, mut t1), (p2, t2)| {
            for i in 0..NUM_TYPES {
                p1[i] += p2[i];
                t1[i] += t2[i];
            }
            (p1, t1)
        });
    let mut counts = [0u64; NUM_TYPES];
    for i in 0..NUM_TYPES {
        debug_assert_eq!(triangle_hits[i] % 3, 0);
        counts[i] = paths[i] + triangle_hits[i] / 3;
    }
    GroundTruth::from_counts(counts)
}

/// Reference O(N³) scan over all identity triples.
pub fn count_naive(g: &TwoLayerGraph) -> GroundTruth {
    let n = g.num_identities() as NodeId;
    let mut counts = [0u64; NUM_TYPES];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Some(t) = classify_triple(g, a, b, c) {
                    counts[t.slot()] += 1;
                }
            }
        }
    }
    GroundTruth::from_counts(counts)
}
