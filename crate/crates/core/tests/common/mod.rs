#![allow(dead_code)]

use proptest::prelude::*;
use span_oracle::generate;
use span_oracle::Graph;

/// Floyd–Warshall on the weighted graph.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for e in g.edges() {
        d[e.u][e.v] = d[e.u][e.v].min(e.w);
        d[e.v][e.u] = d[e.v][e.u].min(e.w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Hop distances from a plain queue BFS on an adjacency matrix.
pub fn bfs_all(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        adj[e.u][e.v] = true;
        adj[e.v][e.u] = true;
    }
    (0..n)
        .map(|s| {
            let mut hops = vec![None; n];
            hops[s] = Some(0);
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in 0..n {
                    if adj[x][y] && hops[y].is_none() {
                        hops[y] = Some(hops[x].unwrap() + 1);
                        queue.push_back(y);
                    }
                }
            }
            hops
        })
        .collect()
}

pub fn edge_weight(g: &Graph, a: usize, b: usize) -> Option<f64> {
    g.neighbors(a)
        .iter()
        .find(|&&(x, _)| x == b)
        .map(|&(_, idx)| g.edge(idx).w)
}

/// A random simple graph given by a bit per vertex pair.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::unweighted(n, &edges).unwrap()
        })
}

/// Same as [`arb_graph`] but with integer weights in `1..=9`.
pub fn arb_weighted_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (arb_graph(max_n), any::<u64>())
        .prop_map(|(g, seed)| generate::random_weights(&g, 9, seed).unwrap())
}

/// A mix of the generator families at roughly `n` vertices.
pub fn family_graphs(n: usize, seed: u64) -> Vec<(String, Graph)> {
    let side = (n as f64).sqrt().round() as usize;
    let p = (3.0 * (n as f64).ln() / n as f64).min(1.0);
    let radius = (2.0 * (n as f64).ln() / n as f64).sqrt().min(1.5);
    vec![
        (format!("path{n}"), generate::path(n)),
        (format!("cycle{n}"), generate::cycle(n).unwrap()),
        (format!("grid{side}x{side}"), generate::grid(side, side)),
        (format!("gnp{n}"), generate::gnp(n, p, seed).unwrap()),
        (
            format!("geometric{n}"),
            generate::geometric(n, radius, seed).unwrap(),
        ),
    ]
}
