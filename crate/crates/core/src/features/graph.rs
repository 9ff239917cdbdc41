//! Graph-based feature group: MST and 1-nearest-neighbour graphs over the
//! first non-domination layer, built in decision and objective space, with
//! edge transfer between the two spaces.

use crate::matrix::{euclidean, Matrix};
use crate::sampling::EvaluatedSample;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Mst,
    OneNn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceTag {
    Decision,
    Objective,
    DecisionToObjective,
    ObjectiveToDecision,
}

impl SpaceTag {
    fn transferred(self) -> SpaceTag {
        match self {
            SpaceTag::Decision => SpaceTag::DecisionToObjective,
            SpaceTag::Objective => SpaceTag::ObjectiveToDecision,
            other => other,
        }
    }
}

/// Undirected weighted graph over a point set, carrying the coordinates of
/// the space its weights are currently measured in.
#[derive(Clone, Debug, PartialEq)]
pub struct SpatialGraph<R> {
    pub kind: GraphKind,
    pub space: SpaceTag,
    /// Coordinates in the current measuring space, one row per vertex.
    pub points: Matrix<R>,
    /// Unordered edges (i < j), sorted lexicographically.
    pub edges: Vec<(usize, usize)>,
    /// Euclidean edge lengths, parallel to `edges`.
    pub weights: Vec<R>,
}

impl<R: Real> SpatialGraph<R> {
    pub fn n_vertices(&self) -> usize {
        self.points.n_rows()
    }

    pub fn total_weight(&self) -> R {
        let mut s = R::zero();
        for &w in &self.weights {
            s = s + w;
        }
        s
    }
}

/// Minimum spanning tree of the complete Euclidean graph (Kruskal).
/// Ties are broken by lexicographic edge index.
pub fn build_mst<R: Real>(points: &Matrix<R>, space: SpaceTag) -> SpatialGraph<R> {
    let n = points.n_rows();
    assert!(n >= 1);
    let mut all: Vec<(R, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            all.push((euclidean(points.row(i), points.row(j)), i, j));
        }
    }
    all.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut weights = Vec::with_capacity(n.saturating_sub(1));
    for (w, i, j) in all {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            edges.push((i, j));
            weights.push(w);
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    let order = sorted_edge_order(&edges);
    SpatialGraph {
        kind: GraphKind::Mst,
        space,
        points: points.clone(),
        edges: order.iter().map(|&k| edges[k]).collect(),
        weights: order.iter().map(|&k| weights[k]).collect(),
    }
}

/// Undirected 1-nearest-neighbour graph: one edge {i, nn(i)} per vertex,
/// mutual pairs collapsed. Distance ties pick the smallest index.
pub fn build_1nn<R: Real>(points: &Matrix<R>, space: SpaceTag) -> SpatialGraph<R> {
    let n = points.n_rows();
    assert!(n >= 2, "a 1NN graph needs at least two vertices");
    let mut edge_set = Vec::new();
    for i in 0..n {
        let mut best = usize::MAX;
        let mut best_d = R::infinity();
        for j in 0..n {
            if j == i {
                continue;
            }
            let d = euclidean(points.row(i), points.row(j));
            if d < best_d || (d == best_d && j < best) {
                best = j;
                best_d = d;
            }
        }
        let e = (i.min(best), i.max(best));
        if !edge_set.contains(&e) {
            edge_set.push(e);
        }
    }
    edge_set.sort_unstable();
    let weights = edge_set
        .iter()
        .map(|&(i, j)| euclidean(points.row(i), points.row(j)))
        .collect();
    SpatialGraph {
        kind: GraphKind::OneNn,
        space,
        points: points.clone(),
        edges: edge_set,
        weights,
    }
}

/// Re-measure a graph in another space: identical edge set, weights
/// recomputed from the target coordinates.
pub fn transfer<R: Real>(graph: &SpatialGraph<R>, target_points: &Matrix<R>) -> SpatialGraph<R> {
    assert_eq!(
        graph.n_vertices(),
        target_points.n_rows(),
        "vertex count mismatch in transfer"
    );
    let weights = graph
        .edges
        .iter()
        .map(|&(i, j)| euclidean(target_points.row(i), target_points.row(j)))
        .collect();
    SpatialGraph {
        kind: graph.kind,
        space: graph.space.transferred(),
        points: target_points.clone(),
        edges: graph.edges.clone(),
        weights,
    }
}

fn sorted_edge_order(edges: &[(usize, usize)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&k| edges[k]);
    order
}

/// Per-graph statistics in catalog order.
pub const COMMON_STATS: [&str; 9] = [
    "weights_min",
    "weights_max",
    "weights_avg",
    "closeness_centrality_min",
    "closeness_centrality_max",
    "closeness_centrality_avg",
    "angle_min",
    "angle_max",
    "angle_avg",
];

pub const NN_EXTRA_STATS: [&str; 7] = [
    "num_components",
    "nodes_per_component_min",
    "nodes_per_component_max",
    "nodes_per_component_avg",
    "longest_path_min",
    "longest_path_max",
    "longest_path_avg",
];

pub const MST_EXTRA_STATS: [&str; 1] = ["longest_path"];

pub fn stat_names(kind: GraphKind) -> Vec<&'static str> {
    let mut names: Vec<&'static str> = COMMON_STATS.to_vec();
    match kind {
        GraphKind::Mst => names.extend(MST_EXTRA_STATS),
        GraphKind::OneNn => names.extend(NN_EXTRA_STATS),
    }
    names
}

fn min_max_avg<R: Real>(values: &[R]) -> (R, R, R) {
    if values.is_empty() {
        return (R::zero(), R::zero(), R::zero());
    }
    let mut min = values[0];
    let mut max = values[0];
    let mut sum = R::zero();
    for &v in values {
        if v < min {
            min = v;
        }
        if v > max {
            max = v;
        }
        sum = sum + v;
    }
    (min, max, sum / R::from_usize_(values.len()))
}

/// All-pairs shortest path distances over the (sparse) graph; infinity for
/// unreachable pairs. Array-based Dijkstra per source.
fn shortest_paths<R: Real>(g: &SpatialGraph<R>) -> Vec<Vec<R>> {
    let n = g.n_vertices();
    let mut adj: Vec<Vec<(usize, R)>> = vec![Vec::new(); n];
    for (&(i, j), &w) in g.edges.iter().zip(&g.weights) {
        adj[i].push((j, w));
        adj[j].push((i, w));
    }
    let mut dist = vec![vec![R::infinity(); n]; n];
    for src in 0..n {
        let d = &mut dist[src];
        let mut done = vec![false; n];
        d[src] = R::zero();
        for _ in 0..n {
            let mut u = usize::MAX;
            let mut best = R::infinity();
            for v in 0..n {
                if !done[v] && d[v] < best {
                    best = d[v];
                    u = v;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            for &(v, w) in &adj[u] {
                let cand = d[u] + w;
                if cand < d[v] {
                    d[v] = cand;
                }
            }
        }
    }
    dist
}

fn connected_components<R: Real>(g: &SpatialGraph<R>) -> Vec<usize> {
    let n = g.n_vertices();
    let mut comp = vec![usize::MAX; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in &g.edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut next = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// All angles between pairs of edges meeting at a node, measured in the
/// graph's current coordinate space. Zero-length edges contribute angle 0.
fn node_angles<R: Real>(g: &SpatialGraph<R>) -> Vec<R> {
    let n = g.n_vertices();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &(i, j)) in g.edges.iter().enumerate() {
        incident[i].push(k);
        incident[j].push(k);
    }
    let mut angles = Vec::new();
    for v in 0..n {
        let inc = &incident[v];
        for a in 0..inc.len() {
            for b in a + 1..inc.len() {
                let other = |k: usize| {
                    let (i, j) = g.edges[k];
                    if i == v {
                        j
                    } else {
                        i
                    }
                };
                let (pa, pb) = (other(inc[a]), other(inc[b]));
                angles.push(angle_at(
                    g.points.row(v),
                    g.points.row(pa),
                    g.points.row(pb),
                ));
            }
        }
    }
    angles
}

fn angle_at<R: Real>(v: &[R], a: &[R], b: &[R]) -> R {
    let mut dot = R::zero();
    let mut na = R::zero();
    let mut nb = R::zero();
    for k in 0..v.len() {
        let ua = a[k] - v[k];
        let ub = b[k] - v[k];
        dot = dot + ua * ub;
        na = na + ua * ua;
        nb = nb + ub * ub;
    }
    if na == R::zero() || nb == R::zero() {
        return R::zero();
    }
    let c = (dot / (na.sqrt() * nb.sqrt())).max(-R::one()).min(R::one());
    c.acos()
}

/// Statistics of one graph, ordered per [`stat_names`].
pub fn graph_stats<R: Real>(g: &SpatialGraph<R>) -> Vec<R> {
    let n = g.n_vertices();
    let (w_min, w_max, w_avg) = min_max_avg(&g.weights);
    let dist = shortest_paths(g);
    let closeness: Vec<R> = (0..n)
        .map(|v| {
            let mut reachable = 0usize;
            let mut sum = R::zero();
            for u in 0..n {
                if u != v && dist[v][u].is_finite() {
                    reachable += 1;
                    sum = sum + dist[v][u];
                }
            }
            if reachable == 0 || sum == R::zero() {
                R::zero()
            } else {
                R::from_usize_(reachable) / sum
            }
        })
        .collect();
    let (c_min, c_max, c_avg) = min_max_avg(&closeness);
    let (a_min, a_max, a_avg) = min_max_avg(&node_angles(g));
    let mut out = vec![
        w_min, w_max, w_avg, c_min, c_max, c_avg, a_min, a_max, a_avg,
    ];
    match g.kind {
        GraphKind::Mst => {
            out.push(weighted_diameter(&dist));
        }
        GraphKind::OneNn => {
            let comp = connected_components(g);
            let n_comp = comp.iter().copied().max().map_or(0, |c| c + 1);
            let mut sizes = vec![0usize; n_comp];
            for &c in &comp {
                sizes[c] += 1;
            }
            let size_vals: Vec<R> = sizes.iter().map(|&s| R::from_usize_(s)).collect();
            let (s_min, s_max, s_avg) = min_max_avg(&size_vals);
            // weighted diameter per component
            let diameters: Vec<R> = (0..n_comp)
                .map(|c| {
                    let members: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
                    let mut best = R::zero();
                    for (ai, &u) in members.iter().enumerate() {
                        for &v in &members[ai + 1..] {
                            if dist[u][v].is_finite() && dist[u][v] > best {
                                best = dist[u][v];
                            }
                        }
                    }
                    best
                })
                .collect();
            let (d_min, d_max, d_avg) = min_max_avg(&diameters);
            out.extend([
                R::from_usize_(n_comp),
                s_min,
                s_max,
                s_avg,
                d_min,
                d_max,
                d_avg,
            ]);
        }
    }
    out
}

fn weighted_diameter<R: Real>(dist: &[Vec<R>]) -> R {
    let mut best = R::zero();
    for row in dist {
        for &d in row {
            if d.is_finite() && d > best {
                best = d;
            }
        }
    }
    best
}

/// Ratio of decision-space over objective-space statistics with the
/// division sentinels 0/0 -> 1 and x/0 -> 0.
pub fn ratio_stats<R: Real>(d_stats: &[R], o_stats: &[R]) -> Vec<R> {
    d_stats
        .iter()
        .zip(o_stats)
        .map(|(&d, &o)| {
            if o == R::zero() {
                if d == R::zero() {
                    R::one()
                } else {
                    R::zero()
                }
            } else {
                d / o
            }
        })
        .collect()
}

pub const SPACES: [&str; 5] = ["d", "d_o", "o", "o_d", "ratio"];

/// Feature ids of the whole group, catalog order.
pub fn feature_names() -> Vec<String> {
    let mut names = Vec::new();
    for (kind, kind_name) in [(GraphKind::Mst, "mst"), (GraphKind::OneNn, "nn")] {
        for space in SPACES {
            for stat in stat_names(kind) {
                names.push(format!("graph.{kind_name}.{space}.{stat}"));
            }
        }
    }
    names
}

/// Sentinel statistics for a one-vertex graph: distances and angles 0,
/// component count and size features 1.
fn singleton_stats<R: Real>(kind: GraphKind) -> Vec<R> {
    let mut out = vec![R::zero(); 9];
    match kind {
        GraphKind::Mst => out.push(R::zero()),
        GraphKind::OneNn => {
            out.extend([
                R::one(),
                R::one(),
                R::one(),
                R::one(),
                R::zero(),
                R::zero(),
                R::zero(),
            ]);
        }
    }
    out
}

/// The full graph feature group over the first layer `l1` of a sample.
pub fn compute_graph_features<R: Real>(sample: &EvaluatedSample<R>, l1: &[usize]) -> Vec<R> {
    assert!(!l1.is_empty());
    let xd = sample.x.select_rows(l1);
    let yo = sample.y.select_rows(l1);
    let mut out = Vec::with_capacity(130);
    for kind in [GraphKind::Mst, GraphKind::OneNn] {
        let (s_d, s_do, s_o, s_od) = if l1.len() == 1 {
            let s = singleton_stats::<R>(kind);
            (s.clone(), s.clone(), s.clone(), s)
        } else {
            let (g_d, g_o) = match kind {
                GraphKind::Mst => (
                    build_mst(&xd, SpaceTag::Decision),
                    build_mst(&yo, SpaceTag::Objective),
                ),
                GraphKind::OneNn => (
                    build_1nn(&xd, SpaceTag::Decision),
                    build_1nn(&yo, SpaceTag::Objective),
                ),
            };
            let g_do = transfer(&g_d, &yo);
            let g_od = transfer(&g_o, &xd);
            (
                graph_stats(&g_d),
                graph_stats(&g_do),
                graph_stats(&g_o),
                graph_stats(&g_od),
            )
        };
        let ratio = ratio_stats(&s_d, &s_o);
        out.extend(s_d);
        out.extend(s_do);
        out.extend(s_o);
        out.extend(s_od);
        out.extend(ratio);
    }
    out
}
