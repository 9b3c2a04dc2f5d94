//! The coefficient `b(s)`, closed forms of `β_s` for `s ∈ {2, 3}`, and
//! numerical upper bounds on `β_s` from radial power-law trial measures.
//!
//! A trial measure has density `A|x|^{-p}` on the shell `1 ≤ |x| ≤ n`.
//! After the substitution `u = e^x` every radial integral becomes an
//! exponential polynomial on `[0, ln n]`, which is what the closed forms
//! below evaluate.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::nelder_mead;
use crate::quad;

/// Root `t_0` of `t^s + s t + 1 − s` on `(0, 1)` and the derived coefficient `b(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BofS {
    pub s: f64,
    pub t0: f64,
    pub b: f64,
    /// `1 / b(s)`, a lower bound for `β_s`.
    pub beta_lower: f64,
}

fn root_poly(s: f64, t: f64) -> f64 {
    t.powf(s) + s * t - (s - 1.0)
}

/// Computes `b(s) = (s−1)/(s t_0)` for `s ∈ (1, 3]`.
pub fn b_of_s(s: f64) -> Result<BofS> {
    if !(s > 1.0 && s <= 3.0) {
        return Err(domain("b_of_s", format!("s must lie in (1, 3], got {s}")));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    if !(root_poly(s, lo) < 0.0 && root_poly(s, hi) > 0.0) {
        return Err(Error::Consistency(format!("no sign change for s = {s}")));
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if root_poly(s, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t0 = 0.5 * (lo + hi);
    let deriv = s * t0.powf(s - 1.0) + s;
    let newton = t0 - root_poly(s, t0) / deriv;
    if newton > 0.0 && newton < 1.0 && root_poly(s, newton).abs() <= root_poly(s, t0).abs() {
        t0 = newton;
    }
    let b = (s - 1.0) / (s * t0);
    let min_value = (1.0 + t0.powf(s)) / (1.0 + t0.powf(s - 1.0));
    if (min_value * b - 1.0).abs() > 1e-12 {
        return Err(Error::Consistency(format!(
            "b(s) formulas disagree at s = {s}: 1/b = {}, min = {min_value}",
            1.0 / b
        )));
    }
    Ok(BofS {
        s,
        t0,
        b,
        beta_lower: 1.0 / b,
    })
}

/// `(1 + t^s) / (1 + t^{s−1})`, whose minimum over `[0, 1]` is `1/b(s)`.
pub fn b_quotient(s: f64, t: f64) -> f64 {
    (1.0 + t.powf(s)) / (1.0 + t.powf(s - 1.0))
}

/// `β_2 = 2(√2 − 1)` and `β_3 = (3/2)((1+√2)^{2/3} − 1)/(1+√2)^{1/3}`.
pub fn beta_closed_form(s: u32) -> Result<f64> {
    let w = 1.0 + 2f64.sqrt();
    match s {
        2 => Ok(2.0 * (2f64.sqrt() - 1.0)),
        3 => Ok(1.5 * (w.powf(2.0 / 3.0) - 1.0) / w.cbrt()),
        _ => Err(domain("beta_closed_form", format!("only s = 2 or 3, got {s}"))),
    }
}

/// Probability measure with density `A |x|^{-p}` on `1 ≤ |x| ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialPowerLawMeasure {
    pub p: f64,
    pub n: f64,
    pub a: f64,
}

impl RadialPowerLawMeasure {
    /// Normalized measure for exponent `p` and outer radius `n > 1`.
    pub fn new(p: f64, n: f64) -> Result<Self> {
        if !(n > 1.0) || !n.is_finite() || !p.is_finite() {
            return Err(domain(
                "RadialPowerLawMeasure",
                format!("need finite p and n > 1, got p = {p}, n = {n}"),
            ));
        }
        let mass = exp_int(3.0 - p, n.ln());
        Ok(Self {
            p,
            n,
            a: 1.0 / (4.0 * PI * mass),
        })
    }

    fn log_n(&self) -> f64 {
        self.n.ln()
    }

    /// Total mass `4πA ∫_1^n r^{2−p} dr`.
    pub fn mass(&self) -> f64 {
        4.0 * PI * self.a * exp_int(3.0 - self.p, self.log_n())
    }
}

// ∫_0^L e^{αx} dx
fn exp_int(alpha: f64, l: f64) -> f64 {
    if alpha == 0.0 {
        l
    } else {
        (alpha * l).exp_m1() / alpha
    }
}

// ∫_0^L x^j e^{γx} dx for j ∈ {1, 2}
fn exp_poly_int(gamma: f64, j: u32, l: f64) -> f64 {
    let z = gamma * l;
    if z.abs() < 1.0 {
        // Σ_i γ^i L^{i+j+1} / (i! (i+j+1))
        let mut term = l.powi(j as i32 + 1);
        let mut acc = 0.0;
        for i in 0..60 {
            let add = term / (i + j + 1) as f64;
            acc += add;
            if add.abs() < 1e-18 * acc.abs() {
                break;
            }
            term *= z / (i + 1) as f64;
        }
        return acc;
    }
    let e = z.exp();
    let g = gamma;
    match j {
        1 => e * (l / g - 1.0 / (g * g)) + 1.0 / (g * g),
        2 => e * (l * l / g - 2.0 * l / (g * g) + 2.0 / (g * g * g)) - 2.0 / (g * g * g),
        _ => unreachable!(),
    }
}

// D(γ, β) = ∫_0^L e^{γx} ∫_0^x e^{βy} dy dx
fn nested_exp_int(gamma: f64, beta: f64, l: f64) -> f64 {
    if (beta * l).abs() >= 1e-5 {
        (exp_int(gamma + beta, l) - exp_int(gamma, l)) / beta
    } else {
        exp_poly_int(gamma, 1, l) + 0.5 * beta * exp_poly_int(gamma, 2, l)
    }
}

/// `∫ |x|^t dμ` in closed form.
pub fn radial_moment(mu: &RadialPowerLawMeasure, t: f64) -> f64 {
    let l = mu.log_n();
    exp_int(3.0 - mu.p + t, l) / exp_int(3.0 - mu.p, l)
}

/// `I_s(μ) = ½ ∬ (|x|^s + |y|^s) / max(|x|, |y|) dμ dμ` in closed form.
pub fn radial_energy(mu: &RadialPowerLawMeasure, s: f64) -> f64 {
    let l = mu.log_n();
    let c = 1.0 / exp_int(3.0 - mu.p, l);
    let p = mu.p;
    c * c * (nested_exp_int(2.0 - p + s, 3.0 - p, l) + nested_exp_int(2.0 - p, 3.0 - p + s, l))
}

/// The same energy by nested adaptive quadrature over `1 ≤ v ≤ u ≤ n`.
pub fn radial_energy_quadrature(mu: &RadialPowerLawMeasure, s: f64) -> Result<f64> {
    const TOL: f64 = 1e-10;
    let p = mu.p;
    let w = |u: f64| u.powf(2.0 - p);
    let mass = quad::adaptive(&w, 1.0, mu.n, TOL, 0.0)?;
    let failure = std::cell::Cell::new(None);
    let outer = |u: f64| {
        let inner = quad::adaptive(&|v: f64| w(v) * (u.powf(s) + v.powf(s)), 1.0, u, TOL, 0.0);
        match inner {
            Ok(val) => w(u) * val / u,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let total = quad::adaptive(&outer, 1.0, mu.n, TOL, 0.0)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(total / (mass * mass))
}

/// `R(p, n) = I_s(μ) / ∫|x|^{s−1} dμ`.
pub fn beta_quotient(s: f64, p: f64, n: f64) -> Result<f64> {
    let mu = RadialPowerLawMeasure::new(p, n)?;
    Ok(radial_energy(&mu, s) / radial_moment(&mu, s - 1.0))
}

/// Search settings for [`beta_upper_bound`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BetaSearch {
    pub p_range: (f64, f64),
    pub n_max: f64,
    pub grid: usize,
    pub polish_iter: usize,
    pub exec: Exec,
}

impl Default for BetaSearch {
    fn default() -> Self {
        Self {
            p_range: (-2.0, 6.0),
            n_max: 200.0,
            grid: 64,
            polish_iter: 200,
            exec: Exec::default(),
        }
    }
}

/// Best trial measure found and the implied bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaUpper {
    pub s: f64,
    /// `min R(p, n)`, an upper bound for `β_s`.
    pub beta_up: f64,
    /// `1 / beta_up`, a lower bound for `1/β_s`.
    pub b_num: f64,
    pub p: f64,
    pub n: f64,
}

/// Grid search over `(p, n)` followed by a Nelder–Mead polish in `(p, ln(n−1))`.
pub fn beta_upper_bound(s: f64, search: &BetaSearch) -> Result<BetaUpper> {
    if !(s > 1.0 && s <= 3.0) {
        return Err(domain("beta_upper_bound", format!("s must lie in (1, 3], got {s}")));
    }
    if search.grid == 0 || !(search.n_max > 1.0) || !(search.p_range.1 >= search.p_range.0) {
        return Err(Error::SearchFailure("empty search grid".into()));
    }
    let g = search.grid;
    let (p_lo, p_hi) = search.p_range;
    let ln_max = search.n_max.ln();
    let p_at = |i: usize| {
        if g == 1 {
            p_lo
        } else {
            p_lo + (p_hi - p_lo) * i as f64 / (g - 1) as f64
        }
    };
    let n_at = |j: usize| (ln_max * (j + 1) as f64 / g as f64).exp();

    let values = search.exec.map_range(g * g, |idx| {
        let (i, j) = (idx / g, idx % g);
        beta_quotient(s, p_at(i), n_at(j)).unwrap_or(f64::INFINITY)
    });
    let mut best = (f64::INFINITY, 0usize);
    for (idx, &v) in values.iter().enumerate() {
        if v < best.0 {
            best = (v, idx);
        }
    }
    if !best.0.is_finite() {
        return Err(Error::SearchFailure("no finite quotient on the grid".into()));
    }
    let (p0, n0) = (p_at(best.1 / g), n_at(best.1 % g));

    let objective = |z: &[f64]| {
        let n = 1.0 + z[1].exp();
        if n > search.n_max || !n.is_finite() {
            return f64::INFINITY;
        }
        beta_quotient(s, z[0], n).unwrap_or(f64::INFINITY)
    };
    let dp = (p_hi - p_lo) / g as f64;
    let (z, v) = nelder_mead::minimize(objective, &[p0, (n0 - 1.0).ln()], &[dp, 0.25], search.polish_iter);
    let (beta_up, p, n) = if v < best.0 {
        (v, z[0], 1.0 + z[1].exp())
    } else {
        (best.0, p0, n0)
    };

    let b_num = 1.0 / beta_up;
    let b = b_of_s(s)?.b;
    if b_num > b {
        return Err(Error::Consistency(format!(
            "sandwich violated at s = {s}: b_num = {b_num} > b(s) = {b}"
        )));
    }
    Ok(BetaUpper {
        s,
        beta_up,
        b_num,
        p,
        n,
    })
}

/// The 30 values of `s` in the Figure 2 tables: `1.5 + k·(1.5/29)`.
pub fn figure2_grid() -> Vec<f64> {
    (0..30).map(|k| 1.5 + 1.5 * k as f64 / 29.0).collect()
}
