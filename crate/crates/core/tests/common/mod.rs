#![allow(dead_code)]

//! Independent reference implementations used as test oracles.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use subdiv_core::metric::MetricSpace;
use subdiv_core::spaces::{Atom, Euclidean, FiniteSet, Measure};

/// Metric pairs by exhaustive search with exact ties on squared distances.
/// Only valid for data where squared distances are computed exactly.
pub fn brute_metric_pairs(a: &FiniteSet, b: &FiniteSet) -> Vec<(usize, usize)> {
    let sq = |p: &[f64], q: &[f64]| p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
    let (pa, pb) = (a.points(), b.points());
    let mut out = Vec::new();
    for (i, p) in pa.iter().enumerate() {
        for (k, q) in pb.iter().enumerate() {
            let d = sq(p, q);
            let a_near = pb.iter().all(|r| d <= sq(p, r));
            let b_near = pa.iter().all(|r| d <= sq(r, q));
            if a_near || b_near {
                out.push((i, k));
            }
        }
    }
    out
}

/// `max(sup_a inf_b, sup_b inf_a)` using the backend's point distance.
pub fn brute_hausdorff(a: &FiniteSet, b: &FiniteSet) -> f64 {
    let e = Euclidean::new(a.dim());
    let d = |p: &Vec<f64>, q: &Vec<f64>| e.distance(p, q).unwrap();
    let one = |x: &FiniteSet, y: &FiniteSet| {
        x.points()
            .iter()
            .map(|p| y.points().iter().map(|q| d(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one(a, b).max(one(b, a))
}

/// Optimal transport cost `min sum pi_ij |x_i - y_j|^p` over couplings, by
/// successive shortest paths on the transportation network.
pub fn transport_lp(mu: &Measure, nu: &Measure, p: f64) -> f64 {
    let (m, n) = (mu.len(), nu.len());
    let (src, sink) = (m + n, m + n + 1);
    let nodes = m + n + 2;
    // (to, cap, cost, rev)
    let mut g: Vec<Vec<(usize, f64, f64, usize)>> = vec![Vec::new(); nodes];
    let add = |g: &mut Vec<Vec<(usize, f64, f64, usize)>>, u: usize, v: usize, cap: f64, cost: f64| {
        let (ru, rv) = (g[v].len(), g[u].len());
        g[u].push((v, cap, cost, ru));
        g[v].push((u, 0.0, -cost, rv));
    };
    for (i, a) in mu.atoms().iter().enumerate() {
        add(&mut g, src, i, a.w, 0.0);
        for (j, b) in nu.atoms().iter().enumerate() {
            add(&mut g, i, m + j, f64::INFINITY, (a.x - b.x).abs().powf(p));
        }
    }
    for (j, b) in nu.atoms().iter().enumerate() {
        add(&mut g, m + j, sink, b.w, 0.0);
    }
    let mut cost = 0.0;
    loop {
        let mut dist = vec![f64::INFINITY; nodes];
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; nodes];
        dist[src] = 0.0;
        for _ in 0..nodes {
            let mut changed = false;
            for u in 0..nodes {
                if dist[u].is_infinite() {
                    continue;
                }
                for (e, &(v, cap, c, _)) in g[u].iter().enumerate() {
                    if cap > 1e-15 && dist[u] + c < dist[v] - 1e-12 {
                        dist[v] = dist[u] + c;
                        prev[v] = Some((u, e));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if dist[sink].is_infinite() {
            break;
        }
        let mut push = f64::INFINITY;
        let mut v = sink;
        let mut hops = 0;
        while let Some((u, e)) = prev[v] {
            push = push.min(g[u][e].1);
            v = u;
            hops += 1;
            assert!(hops <= nodes, "cycle in shortest-path tree");
        }
        let mut v = sink;
        while let Some((u, e)) = prev[v] {
            g[u][e].1 -= push;
            let (to, rev) = (g[u][e].0, g[u][e].3);
            g[to][rev].1 += push;
            v = u;
        }
        cost += push * dist[sink];
    }
    cost
}

/// `min over permutations of (1/n) sum |x_i - y_s(i)|^p`, for equal uniform masses.
pub fn transport_permutation(xs: &[f64], ys: &[f64], p: f64) -> f64 {
    fn rec(xs: &[f64], ys: &mut Vec<f64>, k: usize, p: f64, acc: f64, best: &mut f64) {
        if k == xs.len() {
            *best = best.min(acc);
            return;
        }
        for i in k..ys.len() {
            ys.swap(k, i);
            rec(xs, ys, k + 1, p, acc + (xs[k] - ys[k]).abs().powf(p), best);
            ys.swap(k, i);
        }
    }
    let mut best = f64::INFINITY;
    rec(xs, &mut ys.to_vec(), 0, p, 0.0, &mut best);
    best / xs.len() as f64
}

/// Full convolution of two coefficient lists.
pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Linear mask of the Lane-Riesenfeld scheme with `n` smoothing rounds, split
/// into the two alternating sub-lists.
pub fn lr_mask_split(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = vec![0.5, 1.0, 0.5];
    for _ in 0..n {
        a = convolve(&a, &[0.5, 0.5]);
    }
    let first = a.iter().step_by(2).copied().collect();
    let second = a.iter().skip(1).step_by(2).copied().collect();
    (first, second)
}

pub fn random_set(r: &mut ChaCha8Rng, dim: usize, max: usize, lattice: bool) -> FiniteSet {
    let n = r.gen_range(1..=max);
    let pts = (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    if lattice {
                        r.gen_range(-4i32..=4) as f64
                    } else {
                        r.gen_range(-3.0..3.0)
                    }
                })
                .collect()
        })
        .collect();
    FiniteSet::new(pts).unwrap()
}

pub fn random_measure(r: &mut ChaCha8Rng, max: usize) -> Measure {
    let n = r.gen_range(1..=max);
    let raw: Vec<(f64, f64)> = (0..n).map(|_| (r.gen_range(-5.0..5.0), r.gen_range(0.05..1.0))).collect();
    let total: f64 = raw.iter().map(|a| a.1).sum();
    Measure::new(raw.into_iter().map(|(x, w)| Atom { x, w: w / total }).collect()).unwrap()
}
