//! Synthetic two-layer graphs: ER, small-world and preferential-attachment
//! layers joined under one of three identity couplings.
//!
//! Every generator draws from a single seeded stream and never iterates a
//! hash container, so a spec and seed always give the same graph.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{GeneratorError, GraphError};
use crate::graph::{GraphBuilder, Layer, NodeId, TwoLayerGraph};
use crate::WalkRng;

type Edge = (NodeId, NodeId);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BlueModel {
    /// G(n, m) when `m` is given, else G(n, p).
    Er { n: usize, m: Option<usize>, p: Option<f64> },
    /// Watts-Strogatz ring of even degree `k`, each edge rewired with `rewire_p`.
    Sw { n: usize, k: usize, rewire_p: f64 },
    /// Barabasi-Albert, `attach_m` edges per arriving node.
    Ba { n: usize, attach_m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RedModel {
    /// ER over red-present identities with about `ratio`·|E_B| edges; each
    /// edge copies a uniform blue edge with probability `rho`.
    Er { ratio: f64, rho: f64 },
    Sw { k: usize, rewire_p: f64 },
    Ba { attach_m: usize },
    None,
}

impl Default for RedModel {
    fn default() -> Self {
        RedModel::Er { ratio: 0.4, rho: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Coupling {
    /// Every identity is in both layers.
    #[default]
    OneToOne,
    /// |V_R| = |V_B|; a uniform half of the blue identities are red too and
    /// the rest of the red layer is red-only identities.
    HalfOverlap,
    /// |V_B| = 2|V_R|; every red identity is one of the blue ones.
    BlueDouble,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub blue: BlueModel,
    pub red: RedModel,
    pub coupling: Coupling,
    pub seed: u64,
}

fn invalid(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParameter(msg.into())
}

fn check_prob(name: &str, p: f64) -> Result<(), GeneratorError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(format!("{name} = {p} is not in [0, 1]")))
    }
}

impl BlueModel {
    pub fn n(&self) -> usize {
        match *self {
            BlueModel::Er { n, .. } | BlueModel::Sw { n, .. } | BlueModel::Ba { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        let n = self.n();
        if n < 3 {
            return Err(invalid(format!("n = {n} (need at least 3)")));
        }
        match *self {
            BlueModel::Er { m: Some(m), .. } => {
                let max = n * (n - 1) / 2;
                if m > max {
                    return Err(invalid(format!("m = {m} exceeds n(n-1)/2 = {max}")));
                }
            }
            BlueModel::Er { p: Some(p), .. } => check_prob("p", p)?,
            BlueModel::Er { .. } => return Err(invalid("er needs m or p")),
            BlueModel::Sw { k, rewire_p, .. } => {
                check_prob("rewire_p", rewire_p)?;
                if k < 2 || k >= n {
                    return Err(invalid(format!("k = {k} must be in [2, n)")));
                }
            }
            BlueModel::Ba { attach_m, .. } => {
                if attach_m == 0 || attach_m >= n {
                    return Err(invalid(format!("attach_m = {attach_m} must be in [1, n)")));
                }
            }
        }
        Ok(())
    }
}

impl RedModel {
    pub fn validate(&self) -> Result<(), GeneratorError> {
        match *self {
            RedModel::Er { ratio, rho } => {
                check_prob("rho", rho)?;
                if ratio.is_nan() || ratio < 0.0 {
                    return Err(invalid(format!("ratio = {ratio} must be non-negative")));
                }
            }
            RedModel::Sw { k, rewire_p } => {
                check_prob("rewire_p", rewire_p)?;
                if k < 2 {
                    return Err(invalid(format!("k = {k} must be at least 2")));
                }
            }
            RedModel::Ba { attach_m: 0 } => return Err(invalid("attach_m must be positive")),
            _ => {}
        }
        Ok(())
    }
}

/// `key=value` pairs after the model name, e.g. `n=100,m=300`.
fn params(body: &str) -> Result<Vec<(&str, &str)>, GeneratorError> {
    body.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| invalid(format!("expected key=value, got {kv:?}")))
        })
        .collect()
}

fn get<T: FromStr>(ps: &[(&str, &str)], key: &str) -> Result<Option<T>, GeneratorError> {
    ps.iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| v.parse::<T>().map_err(|_| invalid(format!("bad value for {key}: {v:?}"))))
        .transpose()
}

fn require<T: FromStr>(ps: &[(&str, &str)], key: &str, model: &str) -> Result<T, GeneratorError> {
    get(ps, key)?.ok_or_else(|| invalid(format!("{model} needs {key}")))
}

fn reject_unknown(ps: &[(&str, &str)], allowed: &[&str], model: &str) -> Result<(), GeneratorError> {
    match ps.iter().find(|(k, _)| !allowed.contains(k)) {
        Some((k, _)) => Err(invalid(format!("unknown {model} parameter {k:?}"))),
        None => Ok(()),
    }
}

impl FromStr for BlueModel {
    type Err = GeneratorError;

    /// `er:n=..,m=..` | `er:n=..,p=..` | `sw:n=..,k=..[,p=..]` |
    /// `ba:n=..,m=..` | `ba:n=..,edges=..`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, body) = s.split_once(':').unwrap_or((s, ""));
        let ps = params(body)?;
        let model = match kind.trim().to_ascii_lowercase().as_str() {
            "er" => {
                reject_unknown(&ps, &["n", "m", "p"], "er")?;
                BlueModel::Er {
                    n: require(&ps, "n", "er")?,
                    m: get(&ps, "m")?,
                    p: get(&ps, "p")?,
                }
            }
            "sw" => {
                reject_unknown(&ps, &["n", "k", "p"], "sw")?;
                BlueModel::Sw {
                    n: require(&ps, "n", "sw")?,
                    k: require(&ps, "k", "sw")?,
                    rewire_p: get(&ps, "p")?.unwrap_or(0.1),
                }
            }
            "ba" => {
                reject_unknown(&ps, &["n", "m", "edges"], "ba")?;
                let n: usize = require(&ps, "n", "ba")?;
                let attach_m = match (get::<usize>(&ps, "m")?, get::<usize>(&ps, "edges")?) {
                    (Some(m), _) => m,
                    (None, Some(e)) => ((e as f64 / n as f64).round() as usize).max(1),
                    (None, None) => return Err(invalid("ba needs m or edges")),
                };
                BlueModel::Ba { n, attach_m }
            }
            other => return Err(invalid(format!("unknown blue model {other:?} (er, sw, ba)"))),
        };
        model.validate()?;
        Ok(model)
    }
}

impl FromStr for RedModel {
    type Err = GeneratorError;

    /// `er[:ratio=..,rho=..]` | `sw:k=..[,p=..]` | `ba:m=..` | `none`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, body) = s.split_once(':').unwrap_or((s, ""));
        let ps = params(body)?;
        let model = match kind.trim().to_ascii_lowercase().as_str() {
            "er" => {
                reject_unknown(&ps, &["ratio", "rho"], "red er")?;
                RedModel::Er {
                    ratio: get(&ps, "ratio")?.unwrap_or(0.4),
                    rho: get(&ps, "rho")?.unwrap_or(0.0),
                }
            }
            "sw" => {
                reject_unknown(&ps, &["k", "p"], "red sw")?;
                RedModel::Sw {
                    k: require(&ps, "k", "red sw")?,
                    rewire_p: get(&ps, "p")?.unwrap_or(0.1),
                }
            }
            "ba" => {
                reject_unknown(&ps, &["m"], "red ba")?;
                RedModel::Ba {
                    attach_m: require(&ps, "m", "red ba")?,
                }
            }
            "none" => RedModel::None,
            other => return Err(invalid(format!("unknown red model {other:?} (er, sw, ba, none)"))),
        };
        model.validate()?;
        Ok(model)
    }
}

impl FromStr for Coupling {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().trim_start_matches('#') {
            "1" | "one-to-one" => Ok(Coupling::OneToOne),
            "2" | "half-overlap" => Ok(Coupling::HalfOverlap),
            "3" | "blue-double" => Ok(Coupling::BlueDouble),
            other => Err(invalid(format!(
                "unknown coupling {other:?} (one-to-one, half-overlap, blue-double)"
            ))),
        }
    }
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coupling::OneToOne => "one-to-one",
            Coupling::HalfOverlap => "half-overlap",
            Coupling::BlueDouble => "blue-double",
        })
    }
}

fn ordered(u: NodeId, v: NodeId) -> Edge {
    if u < v { (u, v) } else { (v, u) }
}

/// Uniform G(n, m) by rejection.
pub fn erdos_renyi_m<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Vec<Edge> {
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n) as NodeId;
        let v = rng.random_range(0..n) as NodeId;
        if u != v && seen.insert(ordered(u, v)) {
            edges.push(ordered(u, v));
        }
    }
    edges
}

/// G(n, p) with geometric skipping over the pair sequence.
pub fn erdos_renyi_p<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Vec<Edge> {
    let mut edges = Vec::new();
    if p <= 0.0 {
        return edges;
    }
    if p >= 1.0 {
        for u in 0..n as NodeId {
            for v in u + 1..n as NodeId {
                edges.push((u, v));
            }
        }
        return edges;
    }
    let lq = (1.0 - p).ln();
    let (mut v, mut w) = (1i64, -1i64);
    let n = n as i64;
    while v < n {
        let r: f64 = rng.random();
        w += 1 + ((1.0 - r).ln() / lq).floor() as i64;
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            edges.push((w as NodeId, v as NodeId));
        }
    }
    edges
}

/// Ring lattice where each node links to its `k/2` successors, then every
/// lattice edge has its far end rewired with probability `p`.
pub fn watts_strogatz<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Vec<Edge> {
    let half = (k / 2).max(1);
    let mut lattice = Vec::with_capacity(n * half);
    for u in 0..n {
        for j in 1..=half {
            lattice.push((u as NodeId, ((u + j) % n) as NodeId));
        }
    }
    let mut present: HashSet<Edge> = lattice.iter().map(|&(u, v)| ordered(u, v)).collect();
    let mut edges = Vec::with_capacity(lattice.len());
    for (u, v) in lattice {
        if rng.random::<f64>() < p && present.len() < n * (n - 1) / 2 {
            let mut target = None;
            for _ in 0..64 {
                let w = rng.random_range(0..n) as NodeId;
                if w != u && !present.contains(&ordered(u, w)) {
                    target = Some(w);
                    break;
                }
            }
            if let Some(w) = target {
                present.remove(&ordered(u, v));
                present.insert(ordered(u, w));
                edges.push(ordered(u, w));
                continue;
            }
        }
        edges.push(ordered(u, v));
    }
    edges
}

/// Preferential attachment from a clique of `m + 1` seed nodes.
pub fn barabasi_albert<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Vec<Edge> {
    let seed = (m + 1).min(n);
    let mut edges = Vec::new();
    // each endpoint appears once per incident edge
    let mut ends: Vec<NodeId> = Vec::new();
    for u in 0..seed as NodeId {
        for v in u + 1..seed as NodeId {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for u in seed..n {
        targets.clear();
        while targets.len() < m {
            let t = ends[rng.random_range(0..ends.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, u as NodeId));
            ends.extend([t, u as NodeId]);
        }
    }
    edges
}

fn blue_edges<R: Rng + ?Sized>(model: &BlueModel, rng: &mut R) -> Vec<Edge> {
    match *model {
        BlueModel::Er { n, m: Some(m), .. } => erdos_renyi_m(n, m, rng),
        BlueModel::Er { n, p, .. } => erdos_renyi_p(n, p.unwrap_or(0.0), rng),
        BlueModel::Sw { n, k, rewire_p } => watts_strogatz(n, k, rewire_p, rng),
        BlueModel::Ba { n, attach_m } => barabasi_albert(n, attach_m, rng),
    }
}

/// Relabels the largest connected component of `edges` to `0..len`,
/// preserving relative order.
fn giant_component(n: usize, edges: &[Edge]) -> (usize, Vec<Edge>) {
    let g = TwoLayerGraph::from_edges(n, edges, &[]).expect("generated edges are simple");
    let keep = g.largest_blue_component();
    let mut map = vec![NodeId::MAX; n];
    for (i, &u) in keep.iter().enumerate() {
        map[u as usize] = i as NodeId;
    }
    let kept = edges
        .iter()
        .filter(|&&(u, v)| map[u as usize] != NodeId::MAX && map[v as usize] != NodeId::MAX)
        .map(|&(u, v)| ordered(map[u as usize], map[v as usize]))
        .collect();
    (keep.len(), kept)
}

/// Red edges over `members` (identities present in red).
fn red_edges<R: Rng + ?Sized>(
    model: &RedModel,
    members: &[NodeId],
    blue: &[Edge],
    in_red: &[bool],
    rng: &mut R,
) -> Vec<Edge> {
    let nr = members.len();
    if nr < 2 {
        return Vec::new();
    }
    // structural models are laid out over a shuffled order so the red ring
    // or hub structure does not mirror the blue one
    let mut order = members.to_vec();
    order.shuffle(rng);
    let relabel = |edges: Vec<Edge>| -> Vec<Edge> {
        edges
            .into_iter()
            .map(|(u, v)| ordered(order[u as usize], order[v as usize]))
            .collect()
    };
    match *model {
        RedModel::None => Vec::new(),
        RedModel::Sw { k, rewire_p } => relabel(watts_strogatz(nr, k.min(nr - 1), rewire_p, rng)),
        RedModel::Ba { attach_m } => relabel(barabasi_albert(nr, attach_m.min(nr - 1), rng)),
        RedModel::Er { ratio, rho } => {
            let max = nr * (nr - 1) / 2;
            let target = ((ratio * blue.len() as f64).round() as usize).min(max);
            let copyable: Vec<Edge> = blue
                .iter()
                .copied()
                .filter(|&(u, v)| in_red[u as usize] && in_red[v as usize])
                .collect();
            let mut seen = HashSet::with_capacity(target);
            let mut edges = Vec::with_capacity(target);
            let mut attempts = 0usize;
            while edges.len() < target && attempts < 50 * target + 1000 {
                attempts += 1;
                let e = if !copyable.is_empty() && rng.random::<f64>() < rho {
                    copyable[rng.random_range(0..copyable.len())]
                } else {
                    let u = order[rng.random_range(0..nr)];
                    let v = order[rng.random_range(0..nr)];
                    if u == v {
                        continue;
                    }
                    ordered(u, v)
                };
                if seen.insert(e) {
                    edges.push(e);
                }
            }
            edges
        }
    }
}

/// Joins a blue layer on `0..nb` with a red layer under `coupling`. The blue
/// layer must already be connected.
fn assemble<R: Rng + ?Sized>(
    nb: usize,
    blue: Vec<Edge>,
    red: &RedModel,
    coupling: Coupling,
    rng: &mut R,
) -> Result<TwoLayerGraph, GeneratorError> {
    let mut ids: Vec<NodeId> = (0..nb as NodeId).collect();
    let (n, members): (usize, Vec<NodeId>) = match coupling {
        Coupling::OneToOne => (nb, ids),
        Coupling::HalfOverlap => {
            ids.shuffle(rng);
            let shared = nb / 2;
            let mut members: Vec<NodeId> = ids[..shared].to_vec();
            members.sort_unstable();
            let fresh = nb - shared;
            members.extend((nb..nb + fresh).map(|u| u as NodeId));
            (nb + fresh, members)
        }
        Coupling::BlueDouble => {
            ids.shuffle(rng);
            let mut members = ids[..nb / 2].to_vec();
            members.sort_unstable();
            (nb, members)
        }
    };
    let mut in_red = vec![false; n];
    for &u in &members {
        in_red[u as usize] = true;
    }
    let red = red_edges(red, &members, &blue, &in_red, rng);
    let mut b = GraphBuilder::new(n);
    for u in 0..nb as NodeId {
        b.declare(u, Layer::Blue)?;
    }
    for &u in &members {
        b.declare(u, Layer::Red)?;
    }
    for (u, v) in blue {
        b.edge(u, v, Layer::Blue)?;
    }
    for (u, v) in red {
        b.edge(u, v, Layer::Red)?;
    }
    Ok(b.build()?)
}

/// Builds the two-layer graph described by `spec`. The blue layer is cut to
/// its largest component before the coupling is applied.
pub fn generate(spec: &GeneratorSpec) -> Result<TwoLayerGraph, GeneratorError> {
    spec.blue.validate()?;
    spec.red.validate()?;
    let mut rng = WalkRng::seed_from_u64(spec.seed);
    let raw = blue_edges(&spec.blue, &mut rng);
    let (nb, blue) = giant_component(spec.blue.n(), &raw);
    if nb < 3 {
        return Err(invalid("blue giant component has fewer than 3 nodes"));
    }
    assemble(nb, blue, &spec.red, spec.coupling, &mut rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub input_nodes: usize,
    pub input_edges: usize,
    pub skipped_self_loops: usize,
    pub skipped_duplicates: usize,
    pub kept_nodes: usize,
    pub kept_edges: usize,
}

/// Parses a whitespace-separated edge list (lines starting with `#` or `%`
/// are comments, extra columns ignored), relabelling ids densely in order
/// of first appearance.
pub fn parse_edge_list(text: &str, origin: &Path) -> Result<(usize, Vec<Edge>, IngestReport), GraphError> {
    let mut ids = std::collections::HashMap::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut report = IngestReport {
        input_nodes: 0,
        input_edges: 0,
        skipped_self_loops: 0,
        skipped_duplicates: 0,
        kept_nodes: 0,
        kept_edges: 0,
    };
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut cols = line.split_whitespace();
        let (Some(a), Some(b)) = (cols.next(), cols.next()) else {
            return Err(GraphError::Parse {
                path: origin.to_path_buf(),
                line: i + 1,
                message: format!("expected two node labels, got {line:?}"),
            });
        };
        report.input_edges += 1;
        let mut id = |label: &str| {
            let next = ids.len() as NodeId;
            *ids.entry(label.to_owned()).or_insert(next)
        };
        let (u, v) = (id(a), id(b));
        if u == v {
            report.skipped_self_loops += 1;
        } else if !seen.insert(ordered(u, v)) {
            report.skipped_duplicates += 1;
        } else {
            edges.push(ordered(u, v));
        }
    }
    report.input_nodes = ids.len();
    Ok((ids.len(), edges, report))
}

/// Real blue layer from an edge list plus a synthetic red layer.
pub fn ingest_external(
    path: impl AsRef<Path>,
    red: &RedModel,
    coupling: Coupling,
    seed: u64,
) -> Result<(TwoLayerGraph, IngestReport), GeneratorError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let (n, edges, mut report) = parse_edge_list(&text, path)?;
    red.validate()?;
    let (nb, blue) = giant_component(n, &edges);
    if nb < 3 {
        return Err(invalid("blue giant component has fewer than 3 nodes"));
    }
    report.kept_nodes = nb;
    report.kept_edges = blue.len();
    let mut rng = WalkRng::seed_from_u64(seed);
    Ok((assemble(nb, blue, red, coupling, &mut rng)?, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(blue: &str, red: &str, coupling: Coupling, seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            blue: blue.parse().unwrap(),
            red: red.parse().unwrap(),
            coupling,
            seed,
        }
    }

    fn red_present(g: &TwoLayerGraph) -> usize {
        (0..g.num_identities() as NodeId).filter(|&u| g.in_red(u)).count()
    }

    #[test]
    fn parses_model_strings() {
        assert_eq!(
            "er:n=10000,m=95000".parse::<BlueModel>().unwrap(),
            BlueModel::Er { n: 10000, m: Some(95000), p: None }
        );
        assert_eq!(
            "sw:n=100,k=6".parse::<BlueModel>().unwrap(),
            BlueModel::Sw { n: 100, k: 6, rewire_p: 0.1 }
        );
        assert_eq!(
            "ba:n=100,edges=300".parse::<BlueModel>().unwrap(),
            BlueModel::Ba { n: 100, attach_m: 3 }
        );
        assert_eq!(
            "er:ratio=0.4,rho=0.3".parse::<RedModel>().unwrap(),
            RedModel::Er { ratio: 0.4, rho: 0.3 }
        );
        assert_eq!("#2".parse::<Coupling>().unwrap(), Coupling::HalfOverlap);
        assert!("er:n=10,p=1.5".parse::<BlueModel>().is_err());
        assert!("sw:n=10,k=10".parse::<BlueModel>().is_err());
        assert!("ba:n=10,m=10".parse::<BlueModel>().is_err());
        assert!("er:n=10,q=3".parse::<BlueModel>().is_err());
        assert!("grid:n=10".parse::<BlueModel>().is_err());
    }

    #[test]
    fn reproducible_bytes() {
        let s = spec("er:n=300,m=900", "er:ratio=0.4,rho=0.3", Coupling::HalfOverlap, 7);
        let a = generate(&s).unwrap().to_mlx();
        assert_eq!(a, generate(&s).unwrap().to_mlx());
        let other = GeneratorSpec { seed: 8, ..s };
        assert_ne!(a, generate(&other).unwrap().to_mlx());
    }

    #[test]
    fn coupling_cardinalities() {
        let one = generate(&spec("sw:n=400,k=4,p=0.05", "er", Coupling::OneToOne, 1)).unwrap();
        assert_eq!(red_present(&one), one.num_identities());

        let half = generate(&spec("sw:n=400,k=4,p=0.05", "er", Coupling::HalfOverlap, 1)).unwrap();
        let nb = (0..half.num_identities() as NodeId).filter(|&u| half.in_blue(u)).count();
        let both = (0..half.num_identities() as NodeId)
            .filter(|&u| half.in_blue(u) && half.in_red(u))
            .count();
        assert_eq!(red_present(&half), nb);
        assert_eq!(both, nb / 2);

        let double = generate(&spec("sw:n=2000,k=4,p=0.0", "er", Coupling::BlueDouble, 1)).unwrap();
        assert_eq!(double.num_identities(), 2000);
        assert_eq!(red_present(&double), 1000);
        assert!((0..2000).all(|u| !double.in_red(u) || double.in_blue(u)));
    }

    #[test]
    fn blue_layer_is_connected() {
        let g = generate(&spec("er:n=500,m=400", "none", Coupling::OneToOne, 3)).unwrap();
        assert_eq!(g.largest_blue_component().len(), g.num_identities());
        assert!(g.num_identities() < 500);
    }

    #[test]
    fn red_edge_ratio_and_overlap() {
        let g = generate(&spec("er:n=2000,m=8000", "er:ratio=0.4,rho=0.5", Coupling::OneToOne, 5)).unwrap();
        let ratio = g.num_red_edges() as f64 / g.num_blue_edges() as f64;
        assert!((ratio - 0.4).abs() < 0.01, "{ratio}");
        let shared = g.edges(Layer::Red).filter(|e| g.has_blue_edge(e.u, e.v)).count();
        let frac = shared as f64 / g.num_red_edges() as f64;
        assert!((frac - 0.5).abs() < 0.05, "{frac}");
    }

    #[test]
    fn sw_lattice_is_regular_before_rewiring() {
        let mut rng = WalkRng::seed_from_u64(0);
        let edges = watts_strogatz(50, 6, 0.0, &mut rng);
        let g = TwoLayerGraph::from_edges(50, &edges, &[]).unwrap();
        assert!((0..50).all(|u| g.blue_degree(u) == 6));
    }

    #[test]
    fn ba_has_hubs() {
        let mut rng = WalkRng::seed_from_u64(0);
        let edges = barabasi_albert(3000, 3, &mut rng);
        let g = TwoLayerGraph::from_edges(3000, &edges, &[]).unwrap();
        let max = (0..3000).map(|u| g.blue_degree(u)).max().unwrap();
        let mean = 2.0 * edges.len() as f64 / 3000.0;
        assert!(max as f64 > 8.0 * mean, "{max} vs {mean}");
    }

    #[test]
    fn gnp_edge_count() {
        let mut rng = WalkRng::seed_from_u64(4);
        let edges = erdos_renyi_p(1000, 0.01, &mut rng);
        let expected = 0.01 * 1000.0 * 999.0 / 2.0;
        assert!((edges.len() as f64 - expected).abs() < 4.0 * expected.sqrt());
        let set: HashSet<_> = edges.iter().collect();
        assert_eq!(set.len(), edges.len());
        assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < 1000));
    }

    #[test]
    fn ingest_relabels_and_keeps_giant() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("edges.txt");
        std::fs::write(&path, "# comment\n10 20\n20 30\n30 10\n10 10\n20 10\n77 88\n").unwrap();
        let (g, report) = ingest_external(&path, &RedModel::None, Coupling::OneToOne, 0).unwrap();
        assert_eq!(report.input_nodes, 5);
        assert_eq!(report.skipped_self_loops, 1);
        assert_eq!(report.skipped_duplicates, 1);
        assert_eq!(report.kept_nodes, 3);
        assert_eq!(g.num_blue_edges(), 3);
        assert!(g.has_blue_edge(0, 1) && g.has_blue_edge(1, 2) && g.has_blue_edge(0, 2));
    }
}
