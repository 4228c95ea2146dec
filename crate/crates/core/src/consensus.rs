//! Continuous-time consensus `ẋ = −Lx` and the lattice rewiring experiment.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructor::regular_lattice;
use crate::error::SimError;
use crate::graph::Graph;
use crate::spectral::{
    algebraic_connectivity, jacobi_eigen, laplacian_matrix, laplacian_spectrum, thm5_closed_form,
    EigenDecomposition,
};

/// Name of the generator behind every seeded draw.
pub const RNG_NAME: &str = "ChaCha8Rng";
pub const DEFAULT_WINDOW: f64 = 0.5;
pub const REWIRE_RETRIES: usize = 100;
/// Disagreement below this fraction of the consensus component `‖x̄·1‖` is
/// round-off, not signal.
pub const UNDERFLOW_RATIO: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub t_end: f64,
    pub dt: f64,
    pub x0: Vec<f64>,
    pub seed: u64,
}

impl SimConfig {
    /// Uniform `x0` in `[-1, 1]^n` drawn from `seed`.
    pub fn random(n: usize, t_end: f64, dt: f64, seed: u64) -> Self {
        SimConfig { t_end, dt, x0: random_state(n, seed), seed }
    }
}

pub fn random_state(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub disagreement: Vec<f64>,
}

impl Trajectory {
    fn push(&mut self, t: f64, x: &[f64]) {
        self.times.push(t);
        self.disagreement.push(disagreement(x));
        self.states.push(x.to_vec());
    }

    /// Largest deviation of the state mean from its initial value.
    pub fn max_mean_drift(&self) -> f64 {
        let m0 = mean(&self.states[0]);
        self.states.iter().map(|x| (mean(x) - m0).abs()).fold(0.0, f64::max)
    }
}

fn mean(x: &[f64]) -> f64 {
    if x.is_empty() {
        0.0
    } else {
        x.iter().sum::<f64>() / x.len() as f64
    }
}

/// `‖x − x̄·1‖₂`.
pub fn disagreement(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m) * (v - m)).sum::<f64>().sqrt()
}

fn laplacian_apply(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (v, o) in out.iter_mut().enumerate() {
        let nbrs = g.neighbors(v + 1);
        *o = nbrs.len() as f64 * x[v] - nbrs.iter().map(|&u| x[u - 1]).sum::<f64>();
    }
}

fn check_config(g: &Graph, cfg: &SimConfig) -> Result<(), SimError> {
    if cfg.x0.len() != g.n() {
        return Err(SimError::DimensionMismatch { n: g.n(), got: cfg.x0.len() });
    }
    let (t_end, dt) = (cfg.t_end, cfg.dt);
    if !(t_end.is_finite() && dt.is_finite() && t_end > 0.0 && dt > 0.0 && dt <= t_end) {
        return Err(SimError::InvalidTime { t_end, dt });
    }
    Ok(())
}

/// Classical RK4 on `ẋ = −Lx`, sampling every step.
pub fn simulate(g: &Graph, cfg: &SimConfig) -> Result<Trajectory, SimError> {
    check_config(g, cfg)?;
    let n = g.n();
    let lambda_max = laplacian_spectrum(g).last().copied().unwrap_or(0.0);
    if cfg.dt * lambda_max >= 2.0 {
        return Err(SimError::UnstableStep(cfg.dt * lambda_max));
    }
    let steps = (cfg.t_end / cfg.dt - 1e-9).ceil().max(1.0) as usize;
    let h = cfg.t_end / steps as f64;

    let mut traj = Trajectory { times: Vec::with_capacity(steps + 1), states: Vec::new(), disagreement: Vec::new() };
    let mut x = cfg.x0.clone();
    traj.push(0.0, &x);
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for step in 1..=steps {
        laplacian_apply(g, &x, &mut k1);
        for i in 0..n {
            tmp[i] = x[i] - 0.5 * h * k1[i];
        }
        laplacian_apply(g, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = x[i] - 0.5 * h * k2[i];
        }
        laplacian_apply(g, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = x[i] - h * k3[i];
        }
        laplacian_apply(g, &tmp, &mut k4);
        for i in 0..n {
            x[i] -= h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        traj.push(step as f64 * h, &x);
    }
    Ok(traj)
}

/// Closed-form solution `x(t) = Σ e^{−λᵢt}(vᵢᵀx₀)vᵢ`.
#[derive(Debug, Clone)]
pub struct SpectralSolution {
    eigen: EigenDecomposition,
    coeffs: Vec<f64>,
}

impl SpectralSolution {
    pub fn new(g: &Graph, x0: &[f64]) -> Result<Self, SimError> {
        if x0.len() != g.n() {
            return Err(SimError::DimensionMismatch { n: g.n(), got: x0.len() });
        }
        let eigen = jacobi_eigen(&laplacian_matrix(g))?;
        let coeffs = eigen.vectors.iter().map(|v| v.iter().zip(x0).map(|(a, b)| a * b).sum()).collect();
        Ok(SpectralSolution { eigen, coeffs })
    }

    pub fn state_at(&self, t: f64) -> Vec<f64> {
        let n = self.coeffs.len();
        let mut x = vec![0.0; n];
        for ((lambda, v), c) in self.eigen.values.iter().zip(&self.eigen.vectors).zip(&self.coeffs) {
            let w = c * (-lambda * t).exp();
            for i in 0..n {
                x[i] += w * v[i];
            }
        }
        x
    }
}

/// Largest `‖x_rk4(t) − x_exact(t)‖₂` over the samples of `traj`.
pub fn integrator_gap(g: &Graph, traj: &Trajectory) -> Result<f64, SimError> {
    let exact = SpectralSolution::new(g, &traj.states[0])?;
    Ok(traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(&t, x)| exact.state_at(t).iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
        .fold(0.0, f64::max))
}

/// Negated least-squares slope of `ln(disagreement)` over the final `window`
/// fraction of samples.
pub fn measured_rate(traj: &Trajectory, window: f64) -> Result<f64, SimError> {
    if !(window > 0.0 && window <= 1.0) {
        return Err(SimError::InvalidWindow(window));
    }
    let len = traj.times.len();
    let count = ((len as f64 * window).ceil() as usize).clamp(2.min(len), len);
    if count < 2 {
        return Err(SimError::InvalidWindow(window));
    }
    let start = len - count;
    let x0 = &traj.states[0];
    let floor = mean(x0).abs() * (x0.len() as f64).sqrt() * UNDERFLOW_RATIO;
    let ys = &traj.disagreement[start..];
    if ys.iter().any(|&d| !(d > floor) || d < f64::MIN_POSITIVE) {
        return Err(SimError::Underflow);
    }
    let ts = &traj.times[start..];
    let tm = mean(ts);
    let logs: Vec<f64> = ys.iter().map(|d| d.ln()).collect();
    let lm = mean(&logs);
    let (num, den) = ts.iter().zip(&logs).fold((0.0, 0.0), |(num, den), (t, l)| {
        (num + (t - tm) * (l - lm), den + (t - tm) * (t - tm))
    });
    Ok(-num / den)
}

/// Moves the larger endpoint of each edge, with probability `p`, to a uniform
/// vertex. Self-loops and duplicates are resampled up to 100 times, then the
/// edge is left alone.
pub fn rewire(g: &Graph, p: f64, seed: u64) -> Result<Graph, SimError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(SimError::InvalidProbability(p));
    }
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: HashSet<(usize, usize)> = g.edges().iter().copied().collect();
    for &(u, v) in g.edges() {
        if rng.gen::<f64>() >= p {
            continue;
        }
        for _ in 0..REWIRE_RETRIES {
            let w = rng.gen_range(1..=n);
            let e = (u.min(w), u.max(w));
            if w != u && !present.contains(&e) {
                present.remove(&(u, v));
                present.insert(e);
                break;
            }
        }
    }
    let mut edges: Vec<_> = present.into_iter().collect();
    edges.sort_unstable();
    Ok(Graph::new(n, edges).expect("rewiring keeps the graph simple"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainReport {
    pub p: f64,
    pub lambda2_0: f64,
    /// Mean over connected samples; absent when every sample disconnected.
    pub lambda2_p: Option<f64>,
    pub gain: Option<f64>,
    pub samples: usize,
    pub disconnected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainExperiment {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub rng: &'static str,
    pub lambda2_closed_form: f64,
    pub lambda2_eigensolver: f64,
    pub rows: Vec<GainReport>,
}

/// Sample `s` at every `p` uses seed `seed + s`.
pub fn gain_experiment(n: usize, k: usize, ps: &[f64], samples: usize, seed: u64) -> Result<GainExperiment, SimError> {
    let lattice = regular_lattice(n, k)?;
    let closed = thm5_closed_form(n, k)?;
    let measured = algebraic_connectivity(&lattice);
    if (closed - measured).abs() > 1e-9 {
        return Err(SimError::BaselineMismatch { closed_form: closed, eigensolver: measured });
    }
    let samples = samples.max(1);
    let mut rows = Vec::with_capacity(ps.len());
    for &p in ps {
        let mut total = 0.0;
        let mut connected = 0usize;
        for s in 0..samples {
            let g = rewire(&lattice, p, seed.wrapping_add(s as u64))?;
            if g.is_connected() {
                total += algebraic_connectivity(&g);
                connected += 1;
            }
        }
        let lambda2_p = (connected > 0).then(|| total / connected as f64);
        let gain = if p == 0.0 { Some(1.0) } else { lambda2_p.map(|l| l / measured) };
        rows.push(GainReport { p, lambda2_0: measured, lambda2_p, gain, samples, disconnected: samples - connected });
    }
    Ok(GainExperiment {
        n,
        k,
        seed,
        rng: RNG_NAME,
        lambda2_closed_form: closed,
        lambda2_eigensolver: measured,
        rows,
    })
}
