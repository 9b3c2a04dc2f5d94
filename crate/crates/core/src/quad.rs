//! Gauss–Legendre rules and an adaptive bisection integrator built on them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on `P_n` from Chebyshev-like guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, w * half))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Shared rules for the common sizes.
pub fn rule(n: usize) -> &'static GaussLegendre {
    static R16: OnceLock<GaussLegendre> = OnceLock::new();
    static R32: OnceLock<GaussLegendre> = OnceLock::new();
    static R64: OnceLock<GaussLegendre> = OnceLock::new();
    static R128: OnceLock<GaussLegendre> = OnceLock::new();
    static R256: OnceLock<GaussLegendre> = OnceLock::new();
    match n {
        16 => R16.get_or_init(|| GaussLegendre::new(16)),
        32 => R32.get_or_init(|| GaussLegendre::new(32)),
        64 => R64.get_or_init(|| GaussLegendre::new(64)),
        128 => R128.get_or_init(|| GaussLegendre::new(128)),
        256 => R256.get_or_init(|| GaussLegendre::new(256)),
        _ => panic!("no shared Gauss-Legendre rule with {n} nodes"),
    }
}

/// Adaptive integration by global interval bisection.
///
/// Every panel carries a 16-point estimate and the difference to the sum of
/// 16-point estimates on its halves. The panel with the largest difference is
/// split until the summed differences fall below `max(abs_tol, rel_tol·|I|)`.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    const MAX_PANELS: usize = 100_000;
    let g = rule(16);
    let panel = |lo: f64, hi: f64| {
        let mid = 0.5 * (lo + hi);
        let whole = g.integrate(lo, hi, f);
        let refined = g.integrate(lo, mid, f) + g.integrate(mid, hi, f);
        Panel {
            lo,
            hi,
            value: refined,
            err: (refined - whole).abs(),
        }
    };
    let mut heap = BinaryHeap::new();
    let first = panel(a, b);
    let mut total = first.value;
    let mut err = first.err;
    heap.push(first);
    while err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_PANELS {
            return Err(Error::Quadrature(format!(
                "adaptive rule on [{a}, {b}] stopped at error {err:e} after {MAX_PANELS} panels"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            return Err(Error::Quadrature(format!("panel at {} cannot be split further", worst.lo)));
        }
        let (left, right) = (panel(worst.lo, mid), panel(mid, worst.hi));
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to remove drift from the incremental updates.
    let mut parts: Vec<f64> = heap.into_iter().map(|p| p.value).collect();
    parts.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    Ok(parts.iter().sum())
}

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then(other.lo.total_cmp(&self.lo))
    }
}

/// Product rule on the unit sphere: Gauss–Legendre in `cos θ`, trapezoid in `φ`.
///
/// Returns points `ω` together with weights that sum to one, so that
/// `Σ w f(ω)` approximates the normalized surface average.
pub fn sphere_rule(n_theta: usize, n_phi: usize) -> Vec<([f64; 3], f64)> {
    let g = GaussLegendre::new(n_theta);
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for (z, w) in g.nodes.iter().zip(&g.weights) {
        let rho = (1.0 - z * z).max(0.0).sqrt();
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            out.push(([rho * phi.cos(), rho * phi.sin(), *z], 0.5 * w / n_phi as f64));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 64, 200] {
            let g = GaussLegendre::new(n);
            let s: f64 = g.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}: {s}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let g = GaussLegendre::new(8);
        for k in 0..16 {
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            let got = g.integrate(-1.0, 1.0, |x| x.powi(k));
            assert!((got - exact).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let v = adaptive(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-12, 1e-14).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn sphere_rule_is_normalized_and_integrates_quadratics() {
        let pts = sphere_rule(16, 32);
        let w: f64 = pts.iter().map(|p| p.1).sum();
        assert!((w - 1.0).abs() < 1e-14);
        let zz: f64 = pts.iter().map(|(x, w)| w * x[0] * x[0]).sum();
        assert!((zz - 1.0 / 3.0).abs() < 1e-14);
    }
}
