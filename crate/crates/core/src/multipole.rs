//! Multipole machinery behind the comparison of `α_{N,s}` with `β_s`.
//!
//! The central objects are the moments
//!
//! ```text
//! λ_{l,s}(r) = ½ ∫_{-1}^{1} (1 + r² + 2rt)^{s/2} P_l(t) dt
//! ```
//!
//! which are computed both by quadrature and through the binomial series
//! `(1+r²)^{s/2} Σ_{n≥l} C(s/2, n) qⁿ c_{n,l}/(2l+1)` with `q = 2r/(1+r²)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quad;
use crate::specfun::{gen_binomial, legendre_all, legendre_coeff, legendre_coeff_row, legendre_unchecked};

/// Terms used by the series representation of `λ_{l,s}(r)`.
pub const SERIES_TERMS: usize = 4000;

/// `q = 2r / (1 + r²)`.
pub fn q_of_r(r: f64) -> f64 {
    2.0 * r / (1.0 + r * r)
}

/// Average of `|a + rω|^λ` over the unit sphere, `|a| = a_norm`.
pub fn sphere_average_power(a_norm: f64, r: f64, lam: f64) -> Result<f64> {
    if !(lam > -2.0) {
        return Err(domain("sphere_average_power", format!("lambda must be > -2, got {lam}")));
    }
    if !(a_norm > 0.0 && r > 0.0) {
        return Err(domain("sphere_average_power", "radii must be positive"));
    }
    let e = lam + 2.0;
    Ok(((a_norm + r).powf(e) - (a_norm - r).abs().powf(e)) / (2.0 * r * a_norm * e))
}

/// Closed form of `∫ P_l(x̂·ω) / |a − rω| dω/4π` for a unit vector `x̂`:
/// `min(|a|,r)^l / max(|a|,r)^{l+1} · P_l(â·x̂) / (2l+1)`.
pub fn zonal_inverse_distance_average(l: usize, a: [f64; 3], r: f64, xhat: [f64; 3]) -> f64 {
    let an = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    let cos = ((a[0] * xhat[0] + a[1] * xhat[1] + a[2] * xhat[2]) / an).clamp(-1.0, 1.0);
    let (lo, hi) = if an < r { (an, r) } else { (r, an) };
    (lo / hi).powi(l as i32) / hi * legendre_unchecked(l, cos) / (2 * l + 1) as f64
}

/// `λ_{0,s}(r) = ((1+r)^{s+2} − (1−r)^{s+2}) / (2(s+2)r)`.
pub fn lambda0_closed(s: f64, r: f64) -> f64 {
    ((1.0 + r).powf(s + 2.0) - (1.0 - r).abs().powf(s + 2.0)) / (2.0 * (s + 2.0) * r)
}

fn check_moment_args(op: &'static str, s: f64, r: f64) -> Result<()> {
    if !(2.0..=4.0).contains(&s) {
        return Err(domain(op, format!("s must lie in [2, 4], got {s}")));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(domain(op, format!("r must lie in (0, 1], got {r}")));
    }
    Ok(())
}

// Panels graded geometrically towards t = -1, where the integrand
// (1 + r² + 2rt)^{s/2} loses smoothness as r → 1.
fn graded_panels() -> Vec<(f64, f64)> {
    let mut breaks = vec![1.0];
    for j in 0..14 {
        breaks.push(-1.0 + 2.0 * 0.25f64.powi(j + 1));
    }
    breaks.push(-1.0);
    breaks.windows(2).map(|w| (w[1], w[0])).collect()
}

/// `[λ_0, …, λ_L]` by composite Gauss–Legendre quadrature.
pub fn lambda_quadrature_all(lmax: usize, s: f64, r: f64) -> Vec<f64> {
    let g = quad::rule(64);
    let mut acc = vec![0.0; lmax + 1];
    for (a, b) in graded_panels() {
        for (t, w) in g.mapped(a, b) {
            let f = (1.0 + r * r + 2.0 * r * t).max(0.0).powf(0.5 * s);
            for (slot, p) in acc.iter_mut().zip(legendre_all(lmax, t)) {
                *slot += w * f * p;
            }
        }
    }
    acc.iter_mut().for_each(|v| *v *= 0.5);
    acc
}

/// Bound on `Σ_{n>m} |C(a, n)| qⁿ` for `a = s/2 ∈ [1, 2]` and `m ≥ 1`,
/// from `|C(a, n)| ≤ a(a−1)/(n(n−1))`.
fn binomial_tail(a: f64, q: f64, m: usize) -> f64 {
    let mf = m as f64;
    let telescoped = 1.0 / mf;
    let geometric = if q < 1.0 {
        q.powi(m as i32 + 1) / (mf * (mf + 1.0) * (1.0 - q))
    } else {
        f64::INFINITY
    };
    a * (a - 1.0) * telescoped.min(geometric)
}

/// Series value of `λ_{l,s}(r)` truncated after `n_terms` and a bound on the remainder.
pub fn lambda_series(l: usize, s: f64, r: f64, n_terms: usize) -> (f64, f64) {
    let a = 0.5 * s;
    let q = q_of_r(r);
    let pre = (1.0 + r * r).powf(a);
    let nmax = l.max(n_terms);

    let mut binom = gen_binomial(a, l);
    let mut qn = q.powi(l as i32);
    let mut c = legendre_coeff(l, l);
    let mut sum = 0.0;
    let mut n = l;
    while n <= nmax {
        sum += binom * qn * c;
        if binom == 0.0 && n >= 2 {
            break;
        }
        let m = ((n - l) / 2) as f64;
        let nf = n as f64;
        c *= (nf + 1.0) * (nf + 2.0) / (2.0 * (m + 1.0) * (nf + l as f64 + 3.0));
        binom *= (a - nf) / (nf + 1.0) * (a - nf - 1.0) / (nf + 2.0);
        qn *= q * q;
        n += 2;
    }
    let denom = (2 * l + 1) as f64;
    let tail = pre * binomial_tail(a, q, nmax.max(1)) / denom;
    (pre * sum / denom, tail)
}

/// `λ_{l,s}(r)` by quadrature, cross-checked against the series.
pub fn lambda_moment(l: usize, s: f64, r: f64) -> Result<f64> {
    check_moment_args("lambda_moment", s, r)?;
    let quadrature = lambda_quadrature_all(l, s, r)[l];
    let (series, tail) = lambda_series(l, s, r, SERIES_TERMS);
    if (quadrature - series).abs() > 1e-8 + tail {
        return Err(Error::Consistency(format!(
            "lambda_{l}: quadrature {quadrature} vs series {series} (tail {tail}) at s = {s}, r = {r}"
        )));
    }
    Ok(quadrature)
}

/// Moments `λ_0 … λ_L` with a bound on `Σ_{l>L} |λ_l|`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentSeries {
    pub s: f64,
    pub r: f64,
    pub q: f64,
    pub moments: Vec<f64>,
    pub tail_bound: f64,
}

impl MomentSeries {
    /// `Σ_{l=2}^{L} |λ_l|`.
    pub fn higher_abs_sum(&self) -> f64 {
        self.moments.iter().skip(2).map(|v| v.abs()).sum()
    }
}

/// Builds the moment list, checking each entry against its series and `λ_0`
/// against its closed form.
pub fn moment_series(s: f64, r: f64, lmax: usize) -> Result<MomentSeries> {
    check_moment_args("moment_series", s, r)?;
    let lmax = lmax.max(1);
    let moments = lambda_quadrature_all(lmax, s, r);
    for (l, &v) in moments.iter().enumerate() {
        let (series, tail) = lambda_series(l, s, r, SERIES_TERMS);
        if (v - series).abs() > 1e-8 + tail {
            return Err(Error::Consistency(format!(
                "lambda_{l}: quadrature {v} vs series {series} (tail {tail})"
            )));
        }
    }
    let closed = lambda0_closed(s, r);
    if (moments[0] - closed).abs() > 1e-10 * closed {
        return Err(Error::Consistency(format!("lambda_0 = {} but closed form gives {closed}", moments[0])));
    }
    if moments[1] < -1e-14 {
        return Err(Error::Consistency(format!("lambda_1 = {} is negative", moments[1])));
    }
    let a = 0.5 * s;
    let q = q_of_r(r);
    let tail_bound = (1.0 + r * r).powf(a) * binomial_tail(a, q, lmax) / (2 * lmax + 3) as f64;
    Ok(MomentSeries {
        s,
        r,
        q,
        moments,
        tail_bound,
    })
}

/// `(s/2)(s/2 − 1)(2 − s/2)`, the common factor of the `A_k` estimates.
pub fn tail_prefactor(s: f64) -> f64 {
    let a = 0.5 * s;
    a * (a - 1.0) * (2.0 - a)
}

fn check_tail_s(op: &'static str, s: f64) -> Result<()> {
    if !(2.0..=3.0).contains(&s) {
        return Err(domain(op, format!("s must lie in [2, 3], got {s}")));
    }
    Ok(())
}

fn higher_coeff_sum(k: usize) -> f64 {
    legendre_coeff_row(k)
        .iter()
        .enumerate()
        .skip(2)
        .map(|(l, c)| c / (2 * l + 1) as f64)
        .sum()
}

/// `A_k = |C(s/2, k)| Σ_{l=2}^{k} c_{k,l}/(2l+1)`.
pub fn a_k(k: usize, s: f64) -> Result<f64> {
    check_tail_s("a_k", s)?;
    if k < 2 {
        return Err(domain("a_k", format!("k must be >= 2, got {k}")));
    }
    Ok(gen_binomial(0.5 * s, k).abs() * higher_coeff_sum(k))
}

/// Partial sums of `A_k` with the tail estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailSum {
    pub s: f64,
    pub k_max: usize,
    pub prefactor: f64,
    /// `Σ_{k=4}^{K} A_k`.
    pub partial: f64,
    pub partial_even: f64,
    pub partial_odd: f64,
    /// `Σ_{even k ≤ K} Σ_l c_{k,l}/(2l+1) / (k(k−1))` from `k = 4`, in units of the prefactor.
    pub majorant_even: f64,
    /// The odd counterpart, summed from `k = 3`.
    pub majorant_odd: f64,
    /// `prefactor · 2 / (5(K − 1))`.
    pub delta: f64,
    /// `partial + delta`.
    pub certified_total: f64,
    /// `prefactor · (majorant_even + majorant_odd) + delta`.
    pub majorant_total: f64,
    /// `prefactor · 448/10000`.
    pub bound: f64,
}

/// Sums `A_4 … A_K` and certifies the infinite tail.
///
/// For `K ≥ 2001` both certified totals must stay below `prefactor · 448/10000`.
pub fn tail_sum(s: f64, k_max: usize) -> Result<TailSum> {
    check_tail_s("tail_sum", s)?;
    if k_max < 4 {
        return Err(domain("tail_sum", format!("K must be >= 4, got {k_max}")));
    }
    let a = 0.5 * s;
    let prefactor = tail_prefactor(s);
    let mut binom = gen_binomial(a, 3);
    let (mut partial_even, mut partial_odd) = (0.0, 0.0);
    let (mut majorant_even, mut majorant_odd) = (0.0, 0.0);
    for k in 3..=k_max {
        if k > 3 {
            binom *= (a - (k - 1) as f64) / k as f64;
        }
        let sk = higher_coeff_sum(k);
        let kf = k as f64;
        let majorant = sk / (kf * (kf - 1.0));
        if k % 2 == 0 {
            partial_even += binom.abs() * sk;
            majorant_even += majorant;
        } else {
            if k > 3 {
                partial_odd += binom.abs() * sk;
            }
            majorant_odd += majorant;
        }
    }
    let partial = partial_even + partial_odd;
    let delta = prefactor * 2.0 / (5.0 * (k_max as f64 - 1.0));
    let bound = prefactor * 448.0 / 10_000.0;
    let out = TailSum {
        s,
        k_max,
        prefactor,
        partial,
        partial_even,
        partial_odd,
        majorant_even,
        majorant_odd,
        delta,
        certified_total: partial + delta,
        majorant_total: prefactor * (majorant_even + majorant_odd) + delta,
        bound,
    };
    if k_max >= 2001 && (out.certified_total > bound + 1e-6 || out.majorant_total > bound + 1e-6) {
        return Err(Error::Violation(format!(
            "tail certificate {} / {} exceeds {bound}",
            out.certified_total, out.majorant_total
        )));
    }
    Ok(out)
}

/// `f(r,s) = (s/2)(s/2−1)(4/15 + (2−s/2)(8/105) r + (2−s/2)(448/625) r²)`.
pub fn f_remainder(r: f64, s: f64) -> f64 {
    let a = 0.5 * s;
    a * (a - 1.0) * (4.0 / 15.0 + (2.0 - a) * (8.0 / 105.0) * r + (2.0 - a) * (448.0 / 625.0) * r * r)
}

/// `g(r) = (1+r²)^{s/2} ( [(1+q)^{s/2} + (1−q)^{s/2}]/2 − s(s−2)/15 · q² (1+q)^{(s−4)/2} )`.
pub fn g_convexity(r: f64, s: f64) -> f64 {
    let q = q_of_r(r);
    let a = 0.5 * s;
    let bracket = 0.5 * ((1.0 + q).powf(a) + (1.0 - q).max(0.0).powf(a))
        - s * (s - 2.0) / 15.0 * q * q * (1.0 + q).powf(0.5 * (s - 4.0));
    (1.0 + r * r).powf(a) * bracket
}

/// Both sides of `(1+qt)^{s/2} ≤ linear + d_0 (t² − 1)` where `H_{d_0}` is the convex
/// modification of `t ↦ (1+qt)^{s/2}`.
pub fn convexity_majorant(t: f64, q: f64, s: f64) -> (f64, f64) {
    let a = 0.5 * s;
    let f1 = (1.0 + q).powf(a);
    let fm1 = (1.0 - q).max(0.0).powf(a);
    let d0 = 0.5 * a * (a - 1.0) * q * q * (1.0 + q).powf(a - 2.0);
    let lhs = (1.0 + q * t).max(0.0).powf(a);
    let rhs = 0.5 * (f1 - fm1) * t + 0.5 * (f1 + fm1) + d0 * (t * t - 1.0);
    (lhs, rhs)
}

/// `C_s(r)` computed directly next to its bound `r² f(r,s)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CsReport {
    pub s: f64,
    pub r: f64,
    pub lmax: usize,
    /// `Σ_{l=2}^{L} |λ_l| + tail`.
    pub direct: f64,
    pub tail: f64,
    pub bound: f64,
}

/// Checks `C_s(r) = Σ_{l≥2} |λ_{l,s}(r)| ≤ r² f(r,s)`.
pub fn cs_tail_vs_bound(s: f64, r: f64, lmax: usize) -> Result<CsReport> {
    check_tail_s("cs_tail_vs_bound", s)?;
    if lmax < 10 {
        return Err(domain("cs_tail_vs_bound", format!("L must be >= 10, got {lmax}")));
    }
    let series = moment_series(s, r, lmax)?;
    let direct = series.higher_abs_sum() + series.tail_bound;
    let bound = r * r * f_remainder(r, s);
    let report = CsReport {
        s,
        r,
        lmax,
        direct,
        tail: series.tail_bound,
        bound,
    };
    if direct > bound + 1e-8 {
        return Err(Error::Violation(format!(
            "C_s(r) = {direct} exceeds r^2 f(r,s) = {bound} at s = {s}, r = {r}"
        )));
    }
    Ok(report)
}

/// `γ(u,v) = v^s min(u,v) / (3u max(u,v)²)`.
pub fn gamma_weight(u: f64, v: f64, s: f64) -> f64 {
    gamma_weight_tilde(u, v, s) / 3.0
}

/// `γ̃(u,v) = v^s min(u,v) / (u max(u,v)²)`.
pub fn gamma_weight_tilde(u: f64, v: f64, s: f64) -> f64 {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    v.powf(s) * lo / (u * hi * hi)
}

/// `Σ_{j≠k} γ(|x_j − x_k|, r|x_j|) / |x_j| · x_j·(x_j − x_k)` for two points.
pub fn positivity_pair_sum(x1: [f64; 3], x2: [f64; 3], r: f64, s: f64, tilde: bool) -> f64 {
    let weight = if tilde { gamma_weight_tilde } else { gamma_weight };
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let d = [x1[0] - x2[0], x1[1] - x2[1], x1[2] - x2[2]];
    let u = dot(d, d).sqrt();
    let (n1, n2) = (dot(x1, x1).sqrt(), dot(x2, x2).sqrt());
    let term1 = weight(u, r * n1, s) / n1 * dot(x1, d);
    let term2 = weight(u, r * n2, s) / n2 * (-dot(x2, d));
    term1 + term2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_average_examples() {
        assert!((sphere_average_power(0.7, 0.2, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((sphere_average_power(2.0, 1.0, -1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((sphere_average_power(1.0, 2.0, -1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((sphere_average_power(1.0, 0.5, 2.0).unwrap() - 1.25).abs() < 1e-14);
        assert!(sphere_average_power(1.0, 0.5, -2.0).is_err());
    }

    #[test]
    fn sphere_average_against_quadrature() {
        let pts = quad::sphere_rule(64, 128);
        for (a, r, lam) in [(1.0, 0.5, 2.0), (1.3, 0.4, 2.5), (0.8, 0.3, -1.0), (2.0, 0.9, 0.7)] {
            let q: f64 = pts
                .iter()
                .map(|(w, wt)| {
                    let v = [r * w[0], r * w[1], a + r * w[2]];
                    wt * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt().powf(lam)
                })
                .sum();
            let c = sphere_average_power(a, r, lam).unwrap();
            assert!((q - c).abs() < 1e-8, "a={a} r={r} lam={lam}: {q} vs {c}");
        }
    }

    #[test]
    fn moment_examples() {
        assert!((lambda_moment(0, 2.0, 0.3).unwrap() - 1.09).abs() < 1e-12);
        assert!(lambda_moment(3, 2.0, 0.5).unwrap().abs() < 1e-12);
        assert!((lambda_moment(0, 3.0, 0.2).unwrap() - 1.08032).abs() < 1e-12);
        assert!((lambda0_closed(3.0, 0.2) - 1.08032).abs() < 1e-14);
        assert!(lambda_moment(0, 1.5, 0.2).is_err());
        assert!(lambda_moment(0, 3.0, 1.5).is_err());
    }

    #[test]
    fn series_and_quadrature_agree_tightly_away_from_r_one() {
        for (s, r) in [(3.0, 0.3), (2.5, 0.7), (3.7, 0.5)] {
            let quadv = lambda_quadrature_all(8, s, r);
            for (l, qv) in quadv.iter().enumerate() {
                let (sv, tail) = lambda_series(l, s, r, SERIES_TERMS);
                assert!(tail < 1e-14);
                assert!((qv - sv).abs() < 1e-12, "l={l} s={s} r={r}");
            }
        }
    }

    #[test]
    fn moment_series_at_r_one() {
        let m = moment_series(3.0, 1.0, 20).unwrap();
        assert!(m.moments[1] > 0.0);
        assert!((m.q - 1.0).abs() < 1e-15);
    }

    #[test]
    fn a_k_examples() {
        assert!((a_k(2, 3.0).unwrap() - 0.05).abs() < 1e-15);
        assert!((a_k(3, 3.0).unwrap() - 0.0625 * 2.0 / 35.0).abs() < 1e-15);
        assert_eq!(a_k(2, 2.0).unwrap(), 0.0);
        for s in [2.2, 2.6, 3.0] {
            let b2 = gen_binomial(s / 2.0, 2).abs();
            let b3 = gen_binomial(s / 2.0, 3).abs();
            assert!((a_k(2, s).unwrap() - b2 * 2.0 / 15.0).abs() < 1e-15);
            assert!((a_k(3, s).unwrap() - b3 * 2.0 / 35.0).abs() < 1e-15);
        }
        assert!(a_k(1, 3.0).is_err());
    }

    #[test]
    fn tail_sum_small_cases() {
        let t = tail_sum(2.0, 50).unwrap();
        assert_eq!(t.partial, 0.0);
        assert_eq!(t.certified_total, 0.0);
        let t = tail_sum(3.0, 30).unwrap();
        let direct: f64 = (4..=30).map(|k| a_k(k, 3.0).unwrap()).sum();
        assert!((t.partial - direct).abs() < 1e-15);
        assert!(tail_sum(3.0, 3).is_err());
        assert!(tail_sum(3.5, 10).is_err());
    }

    #[test]
    fn remainder_polynomial() {
        assert_eq!(f_remainder(0.7, 2.0), 0.0);
        for r in [0.0, 0.3, 1.0] {
            let expect = 0.2 + r / 35.0 + 168.0 * r * r / 625.0;
            assert!((f_remainder(r, 3.0) - expect).abs() < 1e-15);
        }
        assert!((f_remainder(1.0, 3.0) - 0.4974).abs() < 1e-4);
    }

    #[test]
    fn g_examples() {
        assert!((g_convexity(1e-9, 3.0) - 1.0).abs() < 1e-12);
        for r in [0.1, 0.5, 1.0] {
            assert!((g_convexity(r, 2.0) - (1.0 + r * r)).abs() < 1e-14);
        }
        assert!(g_convexity(0.5, 3.0) > 0.0);
    }

    #[test]
    fn cs_examples() {
        let c = cs_tail_vs_bound(2.0, 0.6, 20).unwrap();
        assert!(c.direct.abs() < 1e-12 && c.bound == 0.0);
        let c = cs_tail_vs_bound(3.0, 0.3, 40).unwrap();
        assert!(c.direct <= 0.09 * f_remainder(0.3, 3.0));
        cs_tail_vs_bound(2.5, 0.8, 40).unwrap();
        assert!(cs_tail_vs_bound(2.5, 0.8, 5).is_err());
    }

    #[test]
    fn zonal_average_against_quadrature() {
        let pts = quad::sphere_rule(64, 128);
        let xhat = [0.0, 0.6, 0.8];
        for (a, r) in [([0.3, -0.2, 1.1], 0.5), ([0.1, 0.2, 0.3], 0.9)] {
            for l in 0..4 {
                let q: f64 = pts
                    .iter()
                    .map(|(w, wt)| {
                        let d = [a[0] - r * w[0], a[1] - r * w[1], a[2] - r * w[2]];
                        let dist = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                        let c = xhat[0] * w[0] + xhat[1] * w[1] + xhat[2] * w[2];
                        wt * legendre_unchecked(l, c) / dist
                    })
                    .sum();
                let c = zonal_inverse_distance_average(l, a, r, xhat);
                assert!((q - c).abs() < 1e-7, "l={l}: {q} vs {c}");
            }
        }
    }

    #[test]
    fn quadrupole_bound() {
        let xhat = [1.0, 0.0, 0.0];
        for (a, r) in [([0.5, 0.0, 0.0], 0.2), ([0.0, 0.3, 0.0], 0.8), ([0.4, 0.4, 0.1], 0.6)] {
            let an: f64 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
            let v = zonal_inverse_distance_average(2, a, r, xhat);
            assert!(v <= 1.0 / (5.0 * an.sqrt().max(r)) + 1e-15);
        }
    }

    #[test]
    fn positivity_examples() {
        let x1 = [0.6, 0.0, 0.8];
        let x2 = [0.0, 1.0, 0.0];
        // Equal norms: the difference-product lower bound vanishes and the
        // sum collapses to γ(u, r|x|) u² / |x|.
        let u2: f64 = 0.36 + 1.0 + 0.64;
        let expect = gamma_weight(u2.sqrt(), 0.5, 2.5) * u2;
        assert!((positivity_pair_sum(x1, x2, 0.5, 2.5, false) - expect).abs() < 1e-15);
        let x1 = [0.5, 0.0, 0.0];
        let x2 = [-1.5, 0.0, 0.0];
        assert!(positivity_pair_sum(x1, x2, 0.5, 2.5, false) > 0.0);
        assert!(positivity_pair_sum(x1, x2, 0.5, 2.5, true) > 0.0);
    }
}
