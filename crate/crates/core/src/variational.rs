//! The discrete variational constant `α_{N,s}`.
//!
//! For points `x_1, …, x_N ∈ ℝ³ \ {0}` the objective is
//!
//! ```text
//! F(x) = Σ_{j≠k} (|x_j|^s + |x_k|^s) / |x_j − x_k|  /  (2(N−1) Σ_k |x_k|^{s−1})
//! ```
//!
//! and `α_{N,s}` is its infimum. [`minimize_alpha`] returns the best value
//! found by a seeded multi-start BFGS search, which is an upper estimate of
//! the infimum.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bfgs;
use crate::error::{domain, Error, Result};
use crate::exec::Exec;

/// Default floor on pairwise distances and norms.
pub const DEFAULT_EPS_GEOM: f64 = 1e-12;

/// Two restarts are considered to agree when their values differ by at most this.
pub const RESTART_AGREEMENT: f64 = 1e-3;

/// `N` points in 3-space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleConfiguration {
    pub points: Vec<[f64; 3]>,
}

impl ParticleConfiguration {
    /// Validates `N ≥ 2`, finiteness, distinctness and that no point sits at the origin.
    pub fn new(points: Vec<[f64; 3]>) -> Result<Self> {
        if points.len() < 2 {
            return Err(domain("ParticleConfiguration", "need at least two points"));
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(domain("ParticleConfiguration", "coordinates must be finite"));
        }
        let cfg = Self { points };
        cfg.check_geometry(0.0)?;
        Ok(cfg)
    }

    pub fn from_flat(x: &[f64]) -> Result<Self> {
        Self::new(x.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect())
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.points.iter().flatten().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            points: self.points.iter().map(|p| p.map(|c| c * lambda)).collect(),
        }
    }

    /// Applies the 3×3 matrix `m` (row-major) to every point.
    pub fn transformed(&self, m: &[[f64; 3]; 3]) -> Self {
        let apply = |p: &[f64; 3]| {
            let mut out = [0.0; 3];
            for (o, row) in out.iter_mut().zip(m) {
                *o = row[0] * p[0] + row[1] * p[1] + row[2] * p[2];
            }
            out
        };
        Self {
            points: self.points.iter().map(apply).collect(),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            points: perm.iter().map(|&i| self.points[i]).collect(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.points.iter().map(norm3).fold(0.0, f64::max)
    }

    /// Fails when some norm or pairwise distance is at or below `eps`.
    pub fn check_geometry(&self, eps: f64) -> Result<()> {
        for (k, p) in self.points.iter().enumerate() {
            let r = norm3(p);
            if !(r > eps) {
                return Err(Error::Degenerate(format!("|x_{k}| = {r:e} <= {eps:e}")));
            }
        }
        for j in 0..self.points.len() {
            for k in j + 1..self.points.len() {
                let d = dist3(&self.points[j], &self.points[k]);
                if !(d > eps) {
                    return Err(Error::Degenerate(format!("|x_{j} - x_{k}| = {d:e} <= {eps:e}")));
                }
            }
        }
        Ok(())
    }
}

fn norm3(p: &[f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

fn dist3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    norm3(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]])
}

fn check_s(op: &'static str, s: f64) -> Result<()> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(domain(op, format!("s must be >= 1, got {s}")));
    }
    Ok(())
}

/// Objective and optional gradient on a flat coordinate vector.
/// Returns `None` when a norm or distance falls below `eps`.
fn eval_flat(x: &[f64], s: f64, eps: f64, with_grad: bool) -> Option<(f64, Vec<f64>)> {
    let n = x.len() / 3;
    let pt = |k: usize| [x[3 * k], x[3 * k + 1], x[3 * k + 2]];
    let mut r = Vec::with_capacity(n);
    let mut rs = Vec::with_capacity(n);
    let mut denom = 0.0;
    for k in 0..n {
        let rk = norm3(&pt(k));
        if !(rk > eps) {
            return None;
        }
        let rsk = rk.powf(s);
        denom += rsk / rk;
        r.push(rk);
        rs.push(rsk);
    }

    let mut u = 0.0;
    let mut du = if with_grad { vec![0.0; 3 * n] } else { Vec::new() };
    for j in 0..n {
        let xj = pt(j);
        for k in j + 1..n {
            let xk = pt(k);
            let diff = [xj[0] - xk[0], xj[1] - xk[1], xj[2] - xk[2]];
            let d = norm3(&diff);
            if !(d > eps) {
                return None;
            }
            let w = rs[j] + rs[k];
            u += 2.0 * w / d;
            if with_grad {
                let inv_d = 1.0 / d;
                let inv_d3 = inv_d * inv_d * inv_d;
                let cj = 2.0 * s * rs[j] / (r[j] * r[j]) * inv_d;
                let ck = 2.0 * s * rs[k] / (r[k] * r[k]) * inv_d;
                let cw = 2.0 * w * inv_d3;
                for c in 0..3 {
                    du[3 * j + c] += cj * xj[c] - cw * diff[c];
                    du[3 * k + c] += ck * xk[c] + cw * diff[c];
                }
            }
        }
    }

    let norm_const = 2.0 * (n as f64 - 1.0);
    let f = u / (norm_const * denom);
    if !with_grad {
        return Some((f, Vec::new()));
    }
    let mut g = du;
    let scale = 1.0 / (norm_const * denom * denom);
    for k in 0..n {
        let dsk = (s - 1.0) * rs[k] / (r[k] * r[k] * r[k]);
        for c in 0..3 {
            let idx = 3 * k + c;
            g[idx] = (g[idx] * denom - u * dsk * x[idx]) * scale;
        }
    }
    Some((f, g))
}

/// `F(config)` for `s ≥ 1`, rejecting norms or distances at or below [`DEFAULT_EPS_GEOM`].
pub fn alpha_objective(config: &ParticleConfiguration, s: f64) -> Result<f64> {
    alpha_objective_eps(config, s, DEFAULT_EPS_GEOM)
}

pub fn alpha_objective_eps(config: &ParticleConfiguration, s: f64, eps_geom: f64) -> Result<f64> {
    check_s("alpha_objective", s)?;
    config.check_geometry(eps_geom)?;
    eval_flat(&config.to_flat(), s, eps_geom, false)
        .map(|(f, _)| f)
        .ok_or_else(|| Error::Degenerate("objective undefined".into()))
}

/// `∂F/∂x_k` for every point.
pub fn alpha_gradient(config: &ParticleConfiguration, s: f64) -> Result<Vec<[f64; 3]>> {
    check_s("alpha_gradient", s)?;
    config.check_geometry(DEFAULT_EPS_GEOM)?;
    let (_, g) = eval_flat(&config.to_flat(), s, DEFAULT_EPS_GEOM, true)
        .ok_or_else(|| Error::Degenerate("gradient undefined".into()))?;
    Ok(g.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect())
}

/// Budgets and numerical settings for [`minimize_alpha`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaOptions {
    pub n_starts: usize,
    pub seed: u64,
    pub tol_grad: f64,
    pub max_iter: usize,
    /// Rescale every iterate to `max_k |x_k| = 1`.
    pub radius_gauge: bool,
    pub eps_geom: f64,
    /// Inner and outer radius of the annulus initial points are drawn from.
    pub annulus: (f64, f64),
    /// When set, a run in which no start meets `tol_grad` is an error.
    /// Otherwise the best value over all starts is reported with `n_converged = 0`.
    pub require_convergence: bool,
    pub exec: Exec,
}

impl AlphaOptions {
    /// Defaults sized for `N` particles: 64 starts up to `N = 10`, 256 beyond.
    pub fn for_n(n: usize) -> Self {
        Self {
            n_starts: default_starts(n),
            seed: 0,
            tol_grad: 1e-8,
            max_iter: 2000,
            radius_gauge: true,
            eps_geom: DEFAULT_EPS_GEOM,
            annulus: (0.3, 1.0),
            require_convergence: true,
            exec: Exec::default(),
        }
    }
}

pub fn default_starts(n: usize) -> usize {
    if n <= 10 {
        64
    } else {
        256
    }
}

/// Best configuration found by [`minimize_alpha`] with diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaResult {
    pub n_particles: usize,
    pub s: f64,
    pub value: f64,
    pub minimizer: ParticleConfiguration,
    pub n_starts: usize,
    pub n_converged: usize,
    pub best_gradient_norm: f64,
    pub seed: u64,
    /// Index of the start that produced the reported minimizer.
    pub best_start: usize,
    /// BFGS iterations used by that start.
    pub best_iterations: usize,
    /// Converged starts whose value lies within [`RESTART_AGREEMENT`] of the best.
    pub agreeing_starts: usize,
    /// Set when no second start reproduces the best value.
    pub restarts_disagree: bool,
}

#[derive(Debug, Clone)]
struct StartOutcome {
    value: f64,
    grad_norm: f64,
    converged: bool,
    iterations: usize,
    x: Vec<f64>,
}

/// Draws a start configuration uniformly (by volume) from the annulus.
pub fn random_configuration(n: usize, annulus: (f64, f64), rng: &mut impl Rng) -> Vec<f64> {
    let (a3, b3) = (annulus.0.powi(3), annulus.1.powi(3));
    let mut x = Vec::with_capacity(3 * n);
    for _ in 0..n {
        let r = (a3 + rng.gen::<f64>() * (b3 - a3)).cbrt();
        let z: f64 = rng.gen_range(-1.0..=1.0);
        let phi = rng.gen::<f64>() * 2.0 * PI;
        let rho = (1.0 - z * z).max(0.0).sqrt();
        x.extend_from_slice(&[r * rho * phi.cos(), r * rho * phi.sin(), r * z]);
    }
    x
}

/// RNG for start `index` under `seed`; independent of scheduling.
pub fn start_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn gauge_to_unit_radius(x: &mut [f64]) -> f64 {
    let m = x
        .chunks_exact(3)
        .map(|c| (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt())
        .fold(0.0, f64::max);
    if m > 0.0 && m.is_finite() && m != 1.0 {
        x.iter_mut().for_each(|v| *v /= m);
        m
    } else {
        1.0
    }
}

fn run_start(n: usize, s: f64, opts: &AlphaOptions, index: usize) -> Option<StartOutcome> {
    let mut rng = start_rng(opts.seed, index);
    let mut x0 = random_configuration(n, opts.annulus, &mut rng);
    if opts.radius_gauge {
        gauge_to_unit_radius(&mut x0);
    }
    let eps = opts.eps_geom;
    let eval = |x: &[f64]| eval_flat(x, s, eps, true);
    let bopts = bfgs::Options {
        tol_grad: opts.tol_grad,
        max_iter: opts.max_iter,
        max_step: 0.25,
    };
    let out = if opts.radius_gauge {
        bfgs::minimize(x0, eval, gauge_to_unit_radius, &bopts)?
    } else {
        bfgs::minimize(x0, eval, |_| 1.0, &bopts)?
    };
    Some(StartOutcome {
        value: out.f,
        grad_norm: out.grad_norm,
        converged: out.converged,
        iterations: out.iterations,
        x: out.x,
    })
}

/// Multi-start BFGS search for `α_{N,s}`.
pub fn minimize_alpha(n: usize, s: f64, opts: &AlphaOptions) -> Result<AlphaResult> {
    if n < 2 {
        return Err(domain("minimize_alpha", format!("N must be >= 2, got {n}")));
    }
    check_s("minimize_alpha", s)?;
    if opts.n_starts == 0 {
        return Err(domain("minimize_alpha", "n_starts must be >= 1"));
    }

    let outcomes = opts.exec.map_range(opts.n_starts, |i| run_start(n, s, opts, i));

    let all: Vec<(usize, &StartOutcome)> = outcomes
        .iter()
        .enumerate()
        .filter_map(|(i, o)| o.as_ref().map(|o| (i, o)))
        .collect();
    let converged: Vec<(usize, &StartOutcome)> =
        all.iter().filter(|(_, o)| o.converged).copied().collect();
    let pool = if !converged.is_empty() {
        &converged
    } else if !opts.require_convergence && !all.is_empty() {
        &all
    } else {
        return Err(Error::NoConvergence {
            starts: opts.n_starts,
            max_iter: opts.max_iter,
        });
    };

    let min_value = pool.iter().map(|(_, o)| o.value).fold(f64::INFINITY, f64::min);
    let tie = 1e-12 * min_value.abs().max(1.0);
    let (best_start, best) = pool
        .iter()
        .filter(|(_, o)| o.value <= min_value + tie)
        .min_by(|a, b| a.1.grad_norm.total_cmp(&b.1.grad_norm).then(a.0.cmp(&b.0)))
        .copied()
        .expect("non-empty");
    let agreeing_starts = pool
        .iter()
        .filter(|(_, o)| o.value <= best.value + RESTART_AGREEMENT)
        .count();

    Ok(AlphaResult {
        n_particles: n,
        s,
        value: best.value,
        minimizer: ParticleConfiguration {
            points: best.x.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect(),
        },
        n_starts: opts.n_starts,
        n_converged: converged.len(),
        best_gradient_norm: best.grad_norm,
        seed: opts.seed,
        best_start,
        best_iterations: best.iterations,
        agreeing_starts,
        restarts_disagree: agreeing_starts < 2,
    })
}
