use std::path::Path;
use std::process::{Command, Output};

fn mlg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlg"))
        .args(args)
        .env_remove("MLG_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn small_graph(dir: &Path, seed: &str) -> String {
    let path = dir.join(format!("g{seed}.mlx"));
    let p = path.to_str().unwrap();
    let o = mlg(&["--seed", seed, "generate", "--blue", "er:n=80,m=300", "--red", "er:ratio=0.5,rho=0.2", "-o", p]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p.to_string()
}

#[test]
fn help_matches_golden() {
    let o = mlg(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = include_str!("golden/help.txt");
    assert_eq!(stdout(&o), golden);
}

#[test]
fn exit_codes() {
    assert_eq!(mlg(&["--version"]).status.code(), Some(0));
    assert_eq!(mlg(&["bogus"]).status.code(), Some(1));
    assert_eq!(mlg(&["sample", "--algo", "nope", "x.mlx"]).status.code(), Some(1));
    assert_eq!(mlg(&["exact", "/nonexistent/graph.mlx"]).status.code(), Some(2));
}

#[test]
fn catalog_lists_sixteen_types() {
    let o = mlg(&["catalog"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 16);
    assert!(rows[0].split_whitespace().eq(["1", "path", "B,B", "2", "2", "2", "2", "2"]));
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = std::fs::read_to_string(small_graph(dir.path(), "5")).unwrap();
    let b = std::fs::read_to_string(small_graph(dir.path(), "5")).unwrap();
    let c = std::fs::read_to_string(small_graph(dir.path(), "6")).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn sample_concentrations_sum_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = small_graph(dir.path(), "1");
    for algo in ["rwnbn", "rwebe", "rwomrn", "rwmix", "rwnr"] {
        let o = mlg(&["sample", "--algo", algo, "--steps", "2000", &g]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let sum: f64 = v["d_hat"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-9, "{algo}: {sum}");
    }
}

#[test]
fn config_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let g = small_graph(dir.path(), "2");
    let cfg = dir.path().join("mlg.toml");
    std::fs::write(&cfg, "seed = 9\n[sample]\nalgo = \"rwmix\"\nsteps = 500\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let o = mlg(&["--config", cfg, "sample", &g]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["algo"], "rwmix");
    assert_eq!(v["steps"], 500);
    assert_eq!(v["seed"], 9);

    let o = mlg(&["--config", cfg, "--seed", "3", "sample", "--steps", "700", &g]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["steps"], 700);
    assert_eq!(v["seed"], 3);
}

#[test]
fn experiment_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let g = small_graph(dir.path(), "3");
    let out = dir.path().join("res");
    let o = mlg(&[
        "experiment", "--algos", "rwnbn,rwomrn", "--trials", "5", "--steps", "1000", "--stride", "500", "-o",
        out.to_str().unwrap(), &g,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["results.csv", "results.json", "rwnbn_mre.svg", "rwomrn_nrmse.svg"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let again = dir.path().join("again");
    let o = mlg(&["report", out.join("results.json").to_str().unwrap(), "-o", again.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        std::fs::read_to_string(out.join("results.csv")).unwrap(),
        std::fs::read_to_string(again.join("results.csv")).unwrap()
    );
}
