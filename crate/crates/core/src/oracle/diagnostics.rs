use serde::{Deserialize, Serialize};

use crate::catalog::{compute_iso_coefficients, GraphletType};
use crate::graph::{Layer, NodeId, TwoLayerGraph};
use crate::samplers::Algorithm;

use super::chain::build_explicit_chain;
use super::exact::GroundTruth;
use super::normalization::compute_m;

/// Graph-dependent factors of the step bound
/// n ≥ ξ·(H/Λ_i)·(τ/ε²)·ln(‖φ‖_π/δ). ξ and ‖φ‖_π are not computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundDiagnostics {
    pub algo: Algorithm,
    #[serde(rename = "M")]
    pub m: f64,
    /// max_S 1/π(S).
    #[serde(rename = "H")]
    pub h: f64,
    pub alpha_min: u32,
    /// Λ_i = min(α_i|C_i|, α_min|C|) for types 1..=14.
    #[serde(rename = "Lambda")]
    pub lambda: Vec<f64>,
    /// H/Λ_i, `None` where Λ_i = 0.
    pub hardness: Vec<Option<f64>>,
    /// τ(1/8) of the chain itself; `None` when the explicit chain is over
    /// the cap, was not requested, or the chain is periodic.
    pub tau: Option<usize>,
    /// τ(1/8) of the lazy chain (I + P)/2.
    pub tau_lazy: Option<usize>,
    pub chain_states: Option<usize>,
}

/// max_S 1/π̃(S), read off the degree structure without listing states.
fn max_inverse_weight(g: &TwoLayerGraph, algo: Algorithm) -> f64 {
    let n = g.num_identities() as NodeId;
    let deg = |u: NodeId| (g.blue_degree(u) as f64, g.red_degree(u) as f64);
    let mut best: f64 = 0.0;
    match algo {
        Algorithm::RwEbE => {
            for e in g.edges(Layer::Blue) {
                let be = g.edge_neighbor_count_unchecked(e.u, e.v, Layer::Blue) as f64;
                let re = g.edge_neighbor_count_unchecked(e.u, e.v, Layer::Red) as f64;
                if be > 0.0 {
                    best = best.max(1.0);
                    if re > 0.0 {
                        best = best.max((be + re) / be);
                    }
                }
            }
        }
        Algorithm::RwNr => {
            for v in 0..n {
                let (b, r) = deg(v);
                best = best.max(b + r);
            }
        }
        _ => {
            for v in 0..n {
                let (b, r) = deg(v);
                if b == 0.0 {
                    continue;
                }
                best = best.max(if r > 0.0 { b + r } else { b });
                if algo == Algorithm::RwNbN {
                    continue;
                }
                for &y in g.red_neighbors(v) {
                    let ry = g.red_degree(y) as f64;
                    let inv = match algo {
                        Algorithm::RwOmrn => (b + r) * ry / b,
                        _ => (b + r) * (ry + b) / b,
                    };
                    best = best.max(inv);
                }
            }
        }
    }
    best
}

/// Bound factors for `algo` on `g`. When `chain_cap` is given and the
/// explicit chain fits, τ(1/8) is computed as well.
pub fn bound_diagnostics(
    g: &TwoLayerGraph,
    algo: Algorithm,
    truth: &GroundTruth,
    chain_cap: Option<usize>,
) -> BoundDiagnostics {
    let alpha = compute_iso_coefficients(algo);
    let alpha_min = alpha.min_restricted();
    let total = truth.restricted_total() as f64;
    let m = compute_m(g, algo);
    let h = m * max_inverse_weight(g, algo);
    let lambda: Vec<f64> = GraphletType::restricted()
        .map(|t| (alpha.get(t) as f64 * truth.count(t) as f64).min(alpha_min as f64 * total))
        .collect();
    let hardness = lambda
        .iter()
        .map(|&l| (l > 0.0).then(|| h / l))
        .collect();
    let mut diag = BoundDiagnostics {
        algo,
        m,
        h,
        alpha_min,
        lambda,
        hardness,
        tau: None,
        tau_lazy: None,
        chain_states: None,
    };
    if let Some(cap) = chain_cap {
        match build_explicit_chain::<f64>(g, algo, cap) {
            Ok(chain) => {
                let pi = chain.solve_stationary(1e-12, 1_000_000);
                diag.chain_states = Some(chain.len());
                diag.tau = chain.mixing_time(&pi, 0.125, 10_000, false);
                diag.tau_lazy = chain.mixing_time(&pi, 0.125, 20_000, true);
            }
            Err(e) => log::info!("no explicit chain for {algo}: {e}"),
        }
    }
    diag
}
