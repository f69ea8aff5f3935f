use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::access::{QueryStats, RestrictedAccess};
use crate::catalog::{
    classify_state, compute_iso_coefficients, GraphletType, IsoCoefficients, NUM_RESTRICTED_TYPES,
    NUM_TYPES,
};
use crate::error::SampleError;
use crate::graph::{EdgeRef, Layer, NodeId, TwoLayerGraph};
use crate::scalar::Scalar;
use crate::WalkRng;

use super::{stationary_weight, step, Algorithm, WalkState};

/// Per-type sums of 1/(α_i π̃(S)) over visited states.
#[derive(Debug, Clone, PartialEq)]
pub struct Accumulator<S> {
    weights: Vec<S>,
}

impl<S: Scalar> Default for Accumulator<S> {
    fn default() -> Self {
        Accumulator {
            weights: vec![S::zero(); NUM_TYPES],
        }
    }
}

impl<S: Scalar> Accumulator<S> {
    pub fn add(&mut self, t: GraphletType, alpha: u32, weight: S) {
        let w = (S::from_count(u64::from(alpha)) * weight).recip();
        let slot = &mut self.weights[t.slot()];
        *slot = slot.clone() + w;
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// Weights over types 1..=14 normalised to sum to one (all zero if
    /// nothing was accumulated).
    pub fn concentrations(&self) -> Vec<S> {
        let scope = &self.weights[..NUM_RESTRICTED_TYPES];
        let total = scope.iter().fold(S::zero(), |acc, w| acc + w.clone());
        if total.is_zero() {
            return vec![S::zero(); NUM_RESTRICTED_TYPES];
        }
        scope.iter().map(|w| w.clone() / total.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationEstimate {
    pub algo: Algorithm,
    pub steps: usize,
    pub seed: u64,
    /// Estimated concentrations of types 1..=14.
    pub d_hat: Vec<f64>,
    /// Accumulated weights Σ g_i(S)/(α_i π̃(S)) for types 1..=16.
    #[serde(rename = "C_hat_weights")]
    pub c_hat_weights: Vec<f64>,
    pub degenerate_state_count: u64,
    /// States inducing a type with α = 0 under this walk (pure-red triples).
    pub out_of_scope_count: u64,
    pub query_stats: QueryStats,
}

impl ConcentrationEstimate {
    pub fn d_hat_of(&self, t: GraphletType) -> f64 {
        self.d_hat.get(t.slot()).copied().unwrap_or(0.0)
    }

    /// Absolute count estimates |Ĉ_i| given the chain's normalisation
    /// constant M.
    pub fn counts(&self, m: f64) -> Vec<f64> {
        self.c_hat_weights
            .iter()
            .map(|w| m * w / self.steps as f64)
            .collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct EstimatorOptions {
    /// Steps discarded before accumulation starts.
    pub burn_in: usize,
    /// Accumulated-step counts at which to snapshot d̂ (ascending).
    pub checkpoints: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub steps: usize,
    /// d̂ over types 1..=14.
    pub d_hat: Vec<f64>,
    /// Accumulated weights for types 1..=16.
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct WalkTrace {
    pub estimate: ConcentrationEstimate,
    /// Running estimate at each requested checkpoint.
    pub snapshots: Vec<Snapshot>,
    /// Visited states by number of red slots (0, 1, 2).
    pub red_slot_histogram: [u64; 3],
}

/// Uniform distribution over non-degenerate all-blue windows `(a, v, c)`.
#[derive(Debug, Clone)]
pub struct InitialStates {
    centers: Vec<NodeId>,
    index: WeightedIndex<u64>,
}

impl InitialStates {
    pub fn new(g: &TwoLayerGraph) -> Result<Self, SampleError> {
        let (centers, weights): (Vec<NodeId>, Vec<u64>) = (0..g.num_identities() as NodeId)
            .filter_map(|v| {
                let b = g.blue_degree(v) as u64;
                (b >= 2).then(|| (v, b * (b - 1)))
            })
            .unzip();
        let index = WeightedIndex::new(&weights).map_err(|_| SampleError::NoInitialState)?;
        Ok(InitialStates { centers, index })
    }

    pub fn sample<R: Rng + ?Sized>(
        &self,
        algo: Algorithm,
        facade: &mut RestrictedAccess<'_>,
        rng: &mut R,
    ) -> Result<WalkState, SampleError> {
        let v = self.centers[self.index.sample(rng)];
        facade.seed(v)?;
        let nbrs = facade.blue_neighbors(v)?.neighbors;
        let i = rng.random_range(0..nbrs.len());
        let mut j = rng.random_range(0..nbrs.len() - 1);
        if j >= i {
            j += 1;
        }
        let (a, c) = (nbrs[i], nbrs[j]);
        Ok(match algo {
            Algorithm::RwEbE => WalkState::EdgePair {
                first: EdgeRef::new(a, v, Layer::Blue),
                second: EdgeRef::new(v, c, Layer::Blue),
            },
            _ => WalkState::all_blue(a, v, c),
        })
    }
}

/// A walk algorithm bound to a graph, reusable across trials.
#[derive(Debug, Clone)]
pub struct Sampler<'g> {
    algo: Algorithm,
    graph: &'g TwoLayerGraph,
    alpha: IsoCoefficients,
    init: InitialStates,
}

impl<'g> Sampler<'g> {
    pub fn new(algo: Algorithm, graph: &'g TwoLayerGraph) -> Result<Self, SampleError> {
        Ok(Sampler {
            algo,
            graph,
            alpha: compute_iso_coefficients(algo),
            init: InitialStates::new(graph)?,
        })
    }

    pub fn algo(&self) -> Algorithm {
        self.algo
    }

    pub fn coefficients(&self) -> &IsoCoefficients {
        &self.alpha
    }

    pub fn facade(&self) -> RestrictedAccess<'g> {
        match self.algo.red_hop_budget() {
            Some(budget) => RestrictedAccess::new(self.graph, budget),
            None => RestrictedAccess::unrestricted(self.graph),
        }
    }

    pub fn run(&self, steps: usize, seed: u64, opts: &EstimatorOptions) -> Result<WalkTrace, SampleError> {
        let mut rng = WalkRng::seed_from_u64(seed);
        let mut facade = self.facade();
        self.run_with(steps, seed, opts, &mut facade, &mut rng)
    }

    /// Runs `steps` accumulated states (after `opts.burn_in`) through the
    /// given facade and generator.
    pub fn run_with<R: Rng + ?Sized>(
        &self,
        steps: usize,
        seed: u64,
        opts: &EstimatorOptions,
        facade: &mut RestrictedAccess<'g>,
        rng: &mut R,
    ) -> Result<WalkTrace, SampleError> {
        if steps == 0 {
            return Err(SampleError::ZeroSteps);
        }
        let g = self.graph;
        let mut state = self.init.sample(self.algo, facade, rng)?;
        for _ in 0..opts.burn_in {
            state = step(self.algo, &state, facade, rng)?;
        }
        let mut acc = Accumulator::<f64>::default();
        let mut degenerate = 0u64;
        let mut out_of_scope = 0u64;
        let mut histogram = [0u64; 3];
        let mut snapshots = Vec::with_capacity(opts.checkpoints.len());
        let mut next_checkpoint = opts.checkpoints.iter().copied().peekable();
        for t in 1..=steps {
            histogram[state.red_slots().min(2)] += 1;
            match classify_state(g, &state) {
                None => degenerate += 1,
                Some(kind) => match self.alpha.get(kind) {
                    0 => out_of_scope += 1,
                    alpha => acc.add(kind, alpha, stationary_weight::<f64>(self.algo, g, &state)),
                },
            }
            while next_checkpoint.peek() == Some(&t) {
                snapshots.push(Snapshot {
                    steps: t,
                    d_hat: acc.concentrations(),
                    weights: acc.weights().to_vec(),
                });
                next_checkpoint.next();
            }
            if t < steps {
                state = step(self.algo, &state, facade, rng)?;
            }
        }
        Ok(WalkTrace {
            estimate: ConcentrationEstimate {
                algo: self.algo,
                steps,
                seed,
                d_hat: acc.concentrations(),
                c_hat_weights: acc.weights().to_vec(),
                degenerate_state_count: degenerate,
                out_of_scope_count: out_of_scope,
                query_stats: facade.stats(),
            },
            snapshots,
            red_slot_histogram: histogram,
        })
    }
}

/// Estimates concentrations with `steps` walk states. Deterministic given
/// `(algo, g, steps, seed)`.
pub fn run_estimator(
    algo: Algorithm,
    g: &TwoLayerGraph,
    steps: usize,
    seed: u64,
) -> Result<ConcentrationEstimate, SampleError> {
    Ok(Sampler::new(algo, g)?
        .run(steps, seed, &EstimatorOptions::default())?
        .estimate)
}
