//! Multi-trial runs of the walk estimators with MRE/NRMSE aggregation.

pub mod metrics;
mod report;
mod svg;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::access::QueryStats;
use crate::catalog::NUM_RESTRICTED_TYPES;
use crate::error::ExperimentError;
use crate::graph::TwoLayerGraph;
use crate::oracle::{compute_m, GroundTruth};
use crate::samplers::{Algorithm, EstimatorOptions, Sampler, Snapshot};

pub use report::{emit_report, load_series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricTarget {
    /// d̂_i against d_i over types 1..=14.
    #[default]
    Concentrations,
    /// |Ĉ_i| = M·Ĉ_i/n against |C_i|, with M from the oracle.
    Counts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    /// Where the graph came from, for the record only.
    pub graph: Option<String>,
    pub algorithms: Vec<Algorithm>,
    pub trials: usize,
    pub steps: usize,
    /// Snapshot every `stride` steps (the final step is always included).
    pub checkpoint_stride: Option<usize>,
    pub base_seed: u64,
    pub burn_in: usize,
    pub target: MetricTarget,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            graph: None,
            algorithms: Algorithm::ALL.to_vec(),
            trials: 1000,
            steps: 20_000,
            checkpoint_stride: Some(2000),
            base_seed: 0,
            burn_in: 0,
            target: MetricTarget::Concentrations,
        }
    }
}

impl ExperimentPlan {
    pub fn checkpoints(&self) -> Vec<usize> {
        let mut out: Vec<usize> = match self.checkpoint_stride {
            Some(stride) if stride > 0 => (1..).map(|k| k * stride).take_while(|&t| t < self.steps).collect(),
            _ => Vec::new(),
        };
        out.push(self.steps);
        out
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: &str| Err(ExperimentError::InvalidPlan(m.to_owned()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.steps == 0 {
            return bad("steps must be at least 1");
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms selected");
        }
        Ok(())
    }
}

/// Seed of one trial, a SplitMix64 hash of `(base, algo, trial)`, so that
/// results do not depend on scheduling.
pub fn trial_seed(base: u64, algo: Algorithm, trial: usize) -> u64 {
    let algo_index = Algorithm::ALL.iter().position(|&a| a == algo).unwrap_or(0) as u64;
    let mut z = base ^ (algo_index << 56) ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Metrics of one algorithm, indexed `[checkpoint][type]` over types 1..=14.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgoSeries {
    pub algo: Algorithm,
    pub mre: Vec<Vec<Option<f64>>>,
    pub nrmse: Vec<Vec<Option<f64>>>,
    /// Mean estimate across trials.
    pub mean: Vec<Vec<f64>>,
    /// Standard error of that mean (`None` with a single trial).
    pub stderr: Vec<Vec<Option<f64>>>,
    pub query_stats: QueryStats,
    pub degenerate_fraction: f64,
    /// Per-trial estimates `[trial][checkpoint][type]`; kept in memory only.
    #[serde(skip)]
    pub estimates: Vec<Vec<Vec<f64>>>,
}

impl AlgoSeries {
    pub fn final_mre(&self) -> &[Option<f64>] {
        self.mre.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn final_mean(&self) -> &[f64] {
        self.mean.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn final_stderr(&self) -> &[Option<f64>] {
        self.stderr.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSeries {
    pub plan: ExperimentPlan,
    pub checkpoints: Vec<usize>,
    /// Reference values for types 1..=14 (concentrations or counts).
    pub truth: Vec<f64>,
    pub algos: Vec<AlgoSeries>,
}

/// Aggregates per-trial estimates `[trial][checkpoint][type]` against
/// `truth`.
pub fn aggregate(algo: Algorithm, estimates: Vec<Vec<Vec<f64>>>, truth: &[f64]) -> AlgoSeries {
    let checkpoints = estimates.first().map_or(0, Vec::len);
    let mut series = AlgoSeries {
        algo,
        mre: Vec::with_capacity(checkpoints),
        nrmse: Vec::with_capacity(checkpoints),
        mean: Vec::with_capacity(checkpoints),
        stderr: Vec::with_capacity(checkpoints),
        query_stats: QueryStats::default(),
        degenerate_fraction: 0.0,
        estimates: Vec::new(),
    };
    let mut column = Vec::with_capacity(estimates.len());
    for c in 0..checkpoints {
        let (mut mre, mut nrmse, mut mean, mut stderr) = (vec![], vec![], vec![], vec![]);
        for (i, &d) in truth.iter().enumerate() {
            column.clear();
            column.extend(estimates.iter().map(|trial| trial[c][i]));
            mre.push(metrics::mre(&column, d));
            nrmse.push(metrics::nrmse(&column, d));
            let (m, se) = metrics::mean_stderr(&column);
            mean.push(m);
            stderr.push(se.is_finite().then_some(se));
        }
        series.mre.push(mre);
        series.nrmse.push(nrmse);
        series.mean.push(mean);
        series.stderr.push(stderr);
    }
    series.estimates = estimates;
    series
}

/// Runs `plan.trials` independent walks per algorithm, snapshotting each at
/// the plan's checkpoints, and aggregates the errors against `truth`.
pub fn run_experiment(
    g: &TwoLayerGraph,
    plan: &ExperimentPlan,
    truth: &GroundTruth,
) -> Result<MetricSeries, ExperimentError> {
    plan.validate()?;
    let checkpoints = plan.checkpoints();
    let opts = EstimatorOptions {
        burn_in: plan.burn_in,
        checkpoints: checkpoints.clone(),
    };
    let reference: Vec<f64> = match plan.target {
        MetricTarget::Concentrations => truth.restricted_concentrations(),
        MetricTarget::Counts => truth.counts[..NUM_RESTRICTED_TYPES].iter().map(|&c| c as f64).collect(),
    };
    let mut algos = Vec::with_capacity(plan.algorithms.len());
    for &algo in &plan.algorithms {
        let abort = |trial: usize, source| ExperimentError::TrialAborted {
            algo: algo.to_string(),
            trial,
            seed: trial_seed(plan.base_seed, algo, trial),
            source,
        };
        let sampler = Sampler::new(algo, g).map_err(|e| abort(0, e))?;
        let m = match plan.target {
            MetricTarget::Counts => compute_m(g, algo),
            MetricTarget::Concentrations => 0.0,
        };
        let project = |s: &Snapshot| -> Vec<f64> {
            match plan.target {
                MetricTarget::Concentrations => s.d_hat.clone(),
                MetricTarget::Counts => s.weights[..NUM_RESTRICTED_TYPES]
                    .iter()
                    .map(|w| m * w / s.steps as f64)
                    .collect(),
            }
        };
        let traces: Vec<_> = (0..plan.trials)
            .into_par_iter()
            .map(|trial| {
                sampler
                    .run(plan.steps, trial_seed(plan.base_seed, algo, trial), &opts)
                    .map_err(|e| abort(trial, e))
            })
            .collect::<Result<_, _>>()?;
        let mut stats = QueryStats::default();
        let mut degenerate = 0u64;
        let estimates = traces
            .iter()
            .map(|t| {
                stats.merge(&t.estimate.query_stats);
                degenerate += t.estimate.degenerate_state_count;
                t.snapshots.iter().map(project).collect()
            })
            .collect();
        let mut series = aggregate(algo, estimates, &reference);
        series.query_stats = stats;
        series.degenerate_fraction = degenerate as f64 / (plan.steps * plan.trials) as f64;
        log::info!("{algo}: {} trials done", plan.trials);
        algos.push(series);
    }
    Ok(MetricSeries {
        plan: plan.clone(),
        checkpoints,
        truth: reference,
        algos,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_exact;

    fn graph() -> TwoLayerGraph {
        TwoLayerGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)],
            &[(0, 2), (1, 3), (2, 5), (0, 1), (3, 4)],
        )
        .unwrap()
    }

    #[test]
    fn checkpoint_grid() {
        let plan = ExperimentPlan {
            steps: 7000,
            ..Default::default()
        };
        assert_eq!(plan.checkpoints(), vec![2000, 4000, 6000, 7000]);
        let plan = ExperimentPlan {
            checkpoint_stride: None,
            ..plan
        };
        assert_eq!(plan.checkpoints(), vec![7000]);
    }

    #[test]
    fn stub_estimator_has_zero_error() {
        let truth = vec![0.5, 0.25, 0.25];
        let estimates = vec![vec![truth.clone(); 2]; 5];
        let s = aggregate(Algorithm::RwNbN, estimates, &truth);
        for c in 0..2 {
            assert!(s.mre[c].iter().all(|x| *x == Some(0.0)));
            assert!(s.nrmse[c].iter().all(|x| *x == Some(0.0)));
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let g = graph();
        let truth = count_exact(&g);
        let plan = ExperimentPlan {
            trials: 16,
            steps: 500,
            checkpoint_stride: Some(100),
            base_seed: 42,
            ..Default::default()
        };
        let a = run_experiment(&g, &plan, &truth).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| run_experiment(&g, &plan, &truth)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.algos.len(), 5);
        assert_eq!(a.algos[0].mre.len(), 5);
        assert_eq!(a.algos[0].estimates.len(), 16);
    }

    #[test]
    fn count_mode_scales_by_m() {
        let g = graph();
        let truth = count_exact(&g);
        let plan = ExperimentPlan {
            algorithms: vec![Algorithm::RwNbN],
            trials: 8,
            steps: 20_000,
            checkpoint_stride: None,
            target: MetricTarget::Counts,
            ..Default::default()
        };
        let s = run_experiment(&g, &plan, &truth).unwrap();
        let total_est: f64 = s.algos[0].final_mean().iter().sum();
        let total = truth.restricted_total() as f64;
        assert!((total_est / total - 1.0).abs() < 0.1, "{total_est} vs {total}");
    }

    #[test]
    fn seeds_differ_by_trial_and_algo() {
        let a = trial_seed(1, Algorithm::RwNbN, 0);
        assert_ne!(a, trial_seed(1, Algorithm::RwNbN, 1));
        assert_ne!(a, trial_seed(1, Algorithm::RwEbE, 0));
        assert_ne!(a, trial_seed(2, Algorithm::RwNbN, 0));
    }

    #[test]
    fn invalid_plans() {
        let g = graph();
        let truth = count_exact(&g);
        let plan = ExperimentPlan {
            trials: 0,
            ..Default::default()
        };
        assert!(matches!(
            run_experiment(&g, &plan, &truth),
            Err(ExperimentError::InvalidPlan(_))
        ));
    }
}
