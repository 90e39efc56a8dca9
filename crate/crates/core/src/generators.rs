//! Seeded data generators for experiments and tests.
//!
//! Every generator is deterministic for a fixed seed (ChaCha8 stream).

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::spaces::{Atom, FiniteSet, HermitePair, Measure, Sphere, SpherePoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; u1 in (0, 1].
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

fn unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| normal(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// `n` equally spaced samples of the circle of radius `r` with unit tangents.
/// Open samples cover `[0, arc]`; closed samples cover a full turn.
pub fn circle_hermite(n: usize, radius: f64, arc: f64, closed: bool) -> Result<Vec<HermitePair>> {
    if n < 2 {
        return Err(Error::Invalid("circle sampler needs at least 2 points".into()));
    }
    let step = if closed { TAU / n as f64 } else { arc / (n - 1) as f64 };
    (0..n)
        .map(|i| {
            let a = step * i as f64;
            HermitePair::new(vec![radius * a.cos(), radius * a.sin()], vec![-a.sin(), a.cos()])
        })
        .collect()
}

/// Helix `(r cos t, r sin t, c t)` sampled at `t = i * step` with unit tangents.
pub fn helix_hermite(n: usize, radius: f64, pitch: f64, step: f64) -> Result<Vec<HermitePair>> {
    (0..n)
        .map(|i| {
            let t = step * i as f64;
            HermitePair::new(
                vec![radius * t.cos(), radius * t.sin(), pitch * t],
                vec![-radius * t.sin(), radius * t.cos(), pitch],
            )
        })
        .collect()
}

/// Random walk in `R^dim` with Gaussian increments of standard deviation `step`.
pub fn random_walk(seed: u64, n: usize, dim: usize, step: f64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    let mut p = vec![0.0; dim];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(p.clone());
        for x in p.iter_mut() {
            *x += step * normal(&mut r);
        }
    }
    out
}

/// Point clouds of `size` points scattered within `radius` of a random walk.
pub fn point_cloud_tube(seed: u64, n: usize, size: usize, dim: usize, radius: f64) -> Result<Vec<FiniteSet>> {
    let mut r = rng(seed);
    let centers = random_walk(seed.wrapping_add(1), n, dim, 1.0);
    centers
        .into_iter()
        .map(|c| {
            let pts = (0..size.max(1))
                .map(|_| {
                    let u = unit(&mut r, dim);
                    let s = radius * r.gen::<f64>();
                    c.iter().zip(&u).map(|(a, b)| a + s * b).collect()
                })
                .collect();
            FiniteSet::new(pts)
        })
        .collect()
}

/// Quantized draws from a two-component Gaussian mixture: `atoms` locations
/// with normalized random masses.
pub fn gaussian_mixture_measures(seed: u64, n: usize, atoms: usize) -> Result<Vec<Measure>> {
    let mut r = rng(seed);
    (0..n)
        .map(|i| {
            let shift = i as f64;
            let raw: Vec<(f64, f64)> = (0..atoms.max(1))
                .map(|_| {
                    let mean = if r.gen_bool(0.5) { -1.0 } else { 1.5 };
                    (shift + mean + 0.5 * normal(&mut r), 0.1 + r.gen::<f64>())
                })
                .collect();
            let total: f64 = raw.iter().map(|a| a.1).sum();
            Measure::new(raw.into_iter().map(|(x, w)| Atom { x, w: w / total }).collect())
        })
        .collect()
}

/// `n` points along the great circle through `e_1` and `e_2` in `R^dim`, spaced by `step`.
pub fn sphere_great_circle(n: usize, dim: usize, step: f64) -> Result<Vec<SpherePoint>> {
    if dim < 2 {
        return Err(Error::Invalid("great circle needs dimension >= 2".into()));
    }
    (0..n)
        .map(|i| {
            let a = step * i as f64;
            let mut v = vec![0.0; dim];
            v[0] = a.cos();
            v[1] = a.sin();
            SpherePoint::new(v)
        })
        .collect()
}

/// Small circle on `S^2` at height `z`, `n` equally spaced points over a full turn.
pub fn sphere_small_circle(n: usize, z: f64) -> Result<Vec<SpherePoint>> {
    let r = (1.0 - z * z).sqrt();
    (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            SpherePoint::new(vec![r * a.cos(), r * a.sin(), z])
        })
        .collect()
}

/// Geodesic walk on `S^2`: step lengths `scale * U(0.5, 1)` with random turns
/// of up to `turn` radians. Halving `scale` halves every step.
pub fn sphere_walk(seed: u64, n: usize, scale: f64, turn: f64) -> Result<Vec<SpherePoint>> {
    let s = Sphere::new(3);
    let mut r = rng(seed);
    let mut p = SpherePoint::new(unit(&mut r, 3))?;
    let mut heading = {
        let u = unit(&mut r, 3);
        let b = p.as_slice();
        let d: f64 = u.iter().zip(b).map(|(x, y)| x * y).sum();
        u.iter().zip(b).map(|(x, y)| x - d * y).collect::<Vec<f64>>()
    };
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(p.clone());
        let len = scale * r.gen_range(0.5..1.0);
        let hn = heading.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dir: Vec<f64> = heading.iter().map(|x| x / hn).collect();
        let next = s.exp(&p, &dir.iter().map(|x| len * x).collect::<Vec<_>>())?;
        // Transport the heading along the step, then turn it.
        let back = s.log(&next, &p)?;
        let bn = back.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
        let fwd: Vec<f64> = back.iter().map(|x| -x / bn).collect();
        let q = next.as_slice();
        let side = [
            q[1] * fwd[2] - q[2] * fwd[1],
            q[2] * fwd[0] - q[0] * fwd[2],
            q[0] * fwd[1] - q[1] * fwd[0],
        ];
        let phi = turn * r.gen_range(-1.0..1.0);
        heading = (0..3).map(|i| phi.cos() * fwd[i] + phi.sin() * side[i]).collect();
        p = next;
    }
    Ok(out)
}

/// Uniform random point on `S^{dim-1}`.
pub fn sphere_point(r: &mut ChaCha8Rng, dim: usize) -> SpherePoint {
    SpherePoint::new(unit(r, dim)).expect("unit vector")
}

/// Planar Hermite sequence with chord lengths and tangent turns drawn at random,
/// then scaled together so that the mixed-metric `delta` equals `target`.
pub fn hermite_turning(seed: u64, n: usize, target: f64) -> Result<Vec<HermitePair>> {
    if n < 2 {
        return Err(Error::Invalid("need at least 2 pairs".into()));
    }
    let mut r = rng(seed);
    let gaps: Vec<f64> = (0..n - 1).map(|_| r.gen_range(0.2..1.0)).collect();
    let turns: Vec<f64> = (0..n - 1).map(|_| r.gen_range(-1.0..1.0)).collect();
    let skew: Vec<f64> = (0..n - 1).map(|_| r.gen_range(-0.3..0.3)).collect();
    let raw = gaps
        .iter()
        .zip(&turns)
        .map(|(g, t)| g.hypot(*t))
        .fold(0.0, f64::max);
    let s = target / raw;
    let mut psi = r.gen_range(0.0..TAU);
    let mut p = vec![0.0, 0.0];
    let mut out = vec![HermitePair::new(p.clone(), vec![psi.cos(), psi.sin()])?];
    for i in 0..n - 1 {
        let turn = s * turns[i];
        let beta = psi + 0.5 * turn + skew[i];
        p = vec![p[0] + s * gaps[i] * beta.cos(), p[1] + s * gaps[i] * beta.sin()];
        psi += turn;
        out.push(HermitePair::new(p.clone(), vec![psi.cos(), psi.sin()])?);
    }
    Ok(out)
}

/// Planar Hermite sequence with point gaps in `(0, 1)` and tangent angles in
/// `(-1, 1)`, with chord directions unrelated to the tangents.
pub fn hermite_unit_gaps(seed: u64, n: usize) -> Result<Vec<HermitePair>> {
    let mut r = rng(seed);
    let mut psi = r.gen_range(0.0..TAU);
    let mut p = vec![0.0, 0.0];
    let mut out = vec![HermitePair::new(p.clone(), vec![psi.cos(), psi.sin()])?];
    for _ in 1..n {
        let gap = r.gen_range(0.01..0.999);
        let beta = r.gen_range(0.0..TAU);
        p = vec![p[0] + gap * beta.cos(), p[1] + gap * beta.sin()];
        psi += r.gen_range(-0.999..0.999);
        out.push(HermitePair::new(p.clone(), vec![psi.cos(), psi.sin()])?);
    }
    Ok(out)
}

/// Two pairs sampled from one circular arc (or a segment) with tangents along
/// the arc; with probability 1/2 both tangents are reversed.
pub fn arc_consistent_pair(r: &mut ChaCha8Rng) -> Result<(HermitePair, HermitePair)> {
    let c = [r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)];
    let sign = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
    let (p0, v0, p1, v1) = if r.gen_bool(0.1) {
        let a: f64 = r.gen_range(0.0..TAU);
        let len = r.gen_range(0.05..1.0);
        let d = [a.cos(), a.sin()];
        (c.to_vec(), d.to_vec(), vec![c[0] + len * d[0], c[1] + len * d[1]], d.to_vec())
    } else {
        let radius = r.gen_range(0.3..3.0);
        let a: f64 = r.gen_range(0.0..TAU);
        let theta = r.gen_range(0.05..1.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let b = a + theta;
        let o = theta.signum();
        (
            vec![c[0] + radius * a.cos(), c[1] + radius * a.sin()],
            vec![-o * a.sin(), o * a.cos()],
            vec![c[0] + radius * b.cos(), c[1] + radius * b.sin()],
            vec![-o * b.sin(), o * b.cos()],
        )
    };
    let v0: Vec<f64> = v0.iter().map(|x| sign * x).collect();
    let v1: Vec<f64> = v1.iter().map(|x| sign * x).collect();
    Ok((HermitePair::new(p0, v0)?, HermitePair::new(p1, v1)?))
}
