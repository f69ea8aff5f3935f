use mlgraphlet::experiments::{emit_report, load_series, run_experiment, ExperimentPlan};
use mlgraphlet::generators::{generate, Coupling, GeneratorSpec};
use mlgraphlet::oracle::count_exact;
use mlgraphlet::{load_graph, save_graph, Algorithm};

#[test]
fn generate_save_experiment_report() {
    let dir = tempfile::tempdir().unwrap();
    let spec = GeneratorSpec {
        blue: "ba:n=150,m=3".parse().unwrap(),
        red: "er:ratio=0.5,rho=0.2".parse().unwrap(),
        coupling: Coupling::HalfOverlap,
        seed: 11,
    };
    let g = generate(&spec).unwrap();
    assert_eq!(g, generate(&spec).unwrap());
    let path = dir.path().join("g.mlx");
    save_graph(&g, &path).unwrap();
    let g = load_graph(&path).unwrap();

    let truth = count_exact(&g);
    let plan = ExperimentPlan {
        algorithms: Algorithm::ALL.to_vec(),
        trials: 20,
        steps: 3000,
        checkpoint_stride: Some(1000),
        base_seed: 2,
        ..Default::default()
    };
    let series = run_experiment(&g, &plan, &truth).unwrap();
    assert_eq!(series.checkpoints, vec![1000, 2000, 3000]);
    assert_eq!(series.algos.len(), 5);
    for s in &series.algos {
        assert_eq!(s.mre.len(), 3);
        assert!(s.final_mre()[0].unwrap() < 0.5, "{} type 1 MRE", s.algo);
    }
    assert_eq!(run_experiment(&g, &plan, &truth).unwrap().algos[0].mre, series.algos[0].mre);

    let out = dir.path().join("results");
    let files = emit_report(&series, &out).unwrap();
    assert!(files.iter().any(|f| f.ends_with("rwmix_mre.svg")));
    let csv = std::fs::read_to_string(out.join("results.csv")).unwrap();
    assert!(csv.starts_with("algo,type,checkpoint,metric,value"));
    let back = load_series(out.join("results.json")).unwrap();
    assert_eq!(back.checkpoints, series.checkpoints);
    assert_eq!(back.algos[2].mre, series.algos[2].mre);
}
