//! Upper bounds on the maximal number of electrons `N_c(Z)`.

use serde::{Deserialize, Serialize};

use crate::constants::kinetic_correction_coeff;
use crate::error::{domain, Error, Result};
use crate::radial::{b_of_s, beta_closed_form};

/// Coefficient of `Z^{1/3}` in the explicit `s = 2` bound.
pub const S2_CUBE_ROOT_COEFF: f64 = 2.96;
/// Coefficients of `Z^{1/3}, Z^0, Z^{-1/3}, Z^{-2/3}` in the explicit `s = 3` bound.
pub const S3_COEFFS: [f64; 4] = [3.90, 0.0134, 0.184, 0.0196];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorBounds {
    /// `2Z + 1`.
    pub lieb: f64,
    /// `1.22 Z + 3 Z^{1/3}`.
    pub nam: f64,
}

impl PriorBounds {
    pub fn at(z: f64) -> Self {
        Self {
            lieb: lieb_bound(z),
            nam: nam_bound(z),
        }
    }
}

pub fn lieb_bound(z: f64) -> f64 {
    2.0 * z + 1.0
}

pub fn nam_bound(z: f64) -> f64 {
    1.22 * z + 3.0 * z.cbrt()
}

/// Side conditions on the localization radius `r = λ N^{−1/3}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusCheck {
    pub r: f64,
    pub r_below_one: bool,
    pub r_below_half: bool,
}

/// An evaluated bound `Σ coefficient · Z^{power}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundBreakdown {
    pub z: f64,
    pub s: f64,
    pub leading_coeff: f64,
    /// `(power of Z, coefficient)` pairs.
    pub terms: Vec<(f64, f64)>,
    pub total: f64,
    /// The integer particle count implied by `total`.
    pub floor_total: f64,
    pub valid_from_z: f64,
    pub comparisons: PriorBounds,
    pub radius: Option<RadiusCheck>,
}

impl BoundBreakdown {
    fn from_terms(z: f64, s: f64, terms: Vec<(f64, f64)>, valid_from_z: f64) -> Self {
        let total = terms.iter().map(|(p, c)| c * z.powf(*p)).sum::<f64>();
        Self {
            z,
            s,
            leading_coeff: terms[0].1,
            terms,
            total,
            floor_total: total.floor(),
            valid_from_z,
            comparisons: PriorBounds::at(z),
            radius: None,
        }
    }
}

/// `N_c(Z) < ½(√2+1) Z + 2.96 Z^{1/3}` for `Z ≥ 2`.
pub fn bound_s2(z: f64) -> Result<BoundBreakdown> {
    if !(z >= 2.0) {
        return Err(domain("bound_s2", format!("Z must be >= 2, got {z}")));
    }
    let b = b_of_s(2.0)?.b;
    Ok(BoundBreakdown::from_terms(
        z,
        2.0,
        vec![(1.0, b), (1.0 / 3.0, S2_CUBE_ROOT_COEFF)],
        2.0,
    ))
}

/// `N_c(Z) < b(3) Z + 3.90 Z^{1/3} + 0.0134 + 0.184 Z^{−1/3} + 0.0196 Z^{−2/3}` for `Z ≥ 4`.
pub fn bound_s3(z: f64) -> Result<BoundBreakdown> {
    if !(z >= 4.0) {
        return Err(domain("bound_s3", format!("Z must be >= 4, got {z}")));
    }
    let b = b_of_s(3.0)?.b;
    let [c1, c0, cm1, cm2] = S3_COEFFS;
    Ok(BoundBreakdown::from_terms(
        z,
        3.0,
        vec![
            (1.0, b),
            (1.0 / 3.0, c1),
            (0.0, c0),
            (-1.0 / 3.0, cm1),
            (-2.0 / 3.0, cm2),
        ],
        4.0,
    ))
}

/// Ingredients of the implicit inequality for general `s`.
#[derive(Debug, Clone, Copy)]
struct GeneralInequality {
    z: f64,
    b: f64,
    lambda: f64,
    kinetic: f64,
    s: f64,
}

impl GeneralInequality {
    fn new(z: f64, s: f64) -> Result<Self> {
        let b = b_of_s(s)?.b;
        Ok(Self {
            z,
            b,
            lambda: (3.0 / (2.0 * s)).cbrt() * b.cbrt(),
            kinetic: kinetic_correction_coeff(s)?,
            s,
        })
    }

    /// Right side minus `N / b(s)`; nonnegative for every admissible `N`.
    fn slack(&self, n: f64) -> f64 {
        let m23 = n.powf(-2.0 / 3.0);
        let l = self.lambda;
        self.z * (1.0 + self.kinetic * m23) * (1.0 + 0.5 * l * l * m23)
            + (1.0 / l + self.s / 3.0 * l * l / self.b) * n.cbrt()
            - n / self.b
    }
}

/// Largest `N ∈ [Z, 3Z]` compatible with the implicit inequality for `s ∈ [2, 3]`.
///
/// The radius side conditions `r < 1` and `r < ½` are evaluated at the returned `N`.
pub fn bound_general(z: f64, s: f64) -> Result<BoundBreakdown> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain("bound_general", format!("Z must be positive, got {z}")));
    }
    if !(2.0..=3.0).contains(&s) {
        return Err(domain("bound_general", format!("s must lie in [2, 3], got {s}")));
    }
    let ineq = GeneralInequality::new(z, s)?;
    let (lo, hi) = (z, 3.0 * z);
    if ineq.slack(hi) >= 0.0 {
        return Err(Error::NoSolution(format!(
            "inequality holds on all of [Z, 3Z] for Z = {z}, s = {s}; the bound exceeds 3Z = {hi}"
        )));
    }
    const SCAN: usize = 4000;
    let at = |i: usize| hi - (hi - lo) * i as f64 / SCAN as f64;
    let mut root = lo;
    for i in 1..=SCAN {
        if ineq.slack(at(i)) >= 0.0 {
            let (mut a, mut b) = (at(i), at(i - 1));
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if ineq.slack(m) >= 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            root = a;
            break;
        }
    }
    let r = ineq.lambda * root.powf(-1.0 / 3.0);
    let cube_coeff = (root - ineq.b * z) / z.cbrt();
    let mut out = BoundBreakdown::from_terms(z, s, vec![(1.0, ineq.b), (1.0 / 3.0, cube_coeff)], z);
    out.total = root;
    out.floor_total = root.floor();
    out.radius = Some(RadiusCheck {
        r,
        r_below_one: r < 1.0,
        r_below_half: r < 0.5,
    });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub z: f64,
    pub lieb: f64,
    pub nam: f64,
    pub ours_s2: Option<f64>,
    pub ours_s3: Option<f64>,
    /// Label of the smallest applicable bound.
    pub best: String,
}

pub fn compare_bounds(z: f64) -> Result<Comparison> {
    if !(z >= 1.0) {
        return Err(domain("compare_bounds", format!("Z must be >= 1, got {z}")));
    }
    let ours_s2 = if z >= 2.0 { Some(bound_s2(z)?.total) } else { None };
    let ours_s3 = if z >= 4.0 { Some(bound_s3(z)?.total) } else { None };
    let mut candidates = vec![("lieb", lieb_bound(z)), ("nam", nam_bound(z))];
    if let Some(v) = ours_s2 {
        candidates.push(("ours_s2", v));
    }
    if let Some(v) = ours_s3 {
        candidates.push(("ours_s3", v));
    }
    let best = candidates
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|c| c.0.to_string())
        .expect("non-empty");
    Ok(Comparison {
        z,
        lieb: lieb_bound(z),
        nam: nam_bound(z),
        ours_s2,
        ours_s3,
        best,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossovers {
    /// Smallest `Z` beyond which the `s = 2` bound beats `2Z + 1`.
    pub s2_vs_lieb: f64,
    /// Smallest `Z` beyond which the `s = 3` bound beats the `s = 2` bound.
    pub s3_vs_s2: f64,
}

fn bisect_sign_change<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> Result<f64> {
    let fa = f(a);
    if fa * f(b) > 0.0 {
        return Err(Error::NoSolution(format!("no sign change on [{a}, {b}]")));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (f(m) > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

pub fn crossovers() -> Result<Crossovers> {
    let s2 = |z: f64| bound_s2(z).map(|b| b.total).unwrap_or(f64::NAN);
    let s3 = |z: f64| bound_s3(z).map(|b| b.total).unwrap_or(f64::NAN);
    Ok(Crossovers {
        s2_vs_lieb: bisect_sign_change(|z| s2(z) - lieb_bound(z), 2.0, 100.0)?,
        s3_vs_s2: bisect_sign_change(|z| s3(z) - s2(z), 4.0, 1000.0)?,
    })
}

fn maximize_on<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> (f64, f64) {
    const GRID: usize = 20_000;
    let mut best = (lo, f(lo));
    for i in 1..=GRID {
        let x = lo + (hi - lo) * i as f64 / GRID as f64;
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    let h = (hi - lo) / GRID as f64;
    let (x, v) = golden_min(|x| -f(x), (best.0 - h).max(lo), (best.0 + h).min(hi));
    if -v > best.1 {
        (x, -v)
    } else {
        best
    }
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    for _ in 0..200 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - phi * (b - a);
        d = a + phi * (b - a);
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProofConstantS2 {
    /// Maximum over `x = N/Z ∈ [1, 5/2]`.
    pub value: f64,
    pub argmax: f64,
    pub at_left: f64,
    pub at_right: f64,
    pub lambda: f64,
}

/// `max_{x∈[1,5/2]} β_2^{−1} λ x^{−2/3} + β_2^{−1} (9β_2/2)^{1/3} x^{1/3}` with `λ = (3/8) C_1^{−1} κ`.
pub fn proof_constant_s2() -> Result<ProofConstantS2> {
    proof_constant_s2_with(kinetic_correction_coeff(2.0)?)
}

/// The same maximization with a caller-chosen `λ`.
pub fn proof_constant_s2_with(lambda: f64) -> Result<ProofConstantS2> {
    let beta2 = beta_closed_form(2)?;
    let f = |x: f64| lambda / beta2 * x.powf(-2.0 / 3.0) + (4.5 * beta2).cbrt() / beta2 * x.cbrt();
    let (argmax, value) = maximize_on(f, 1.0, 2.5);
    Ok(ProofConstantS2 {
        value,
        argmax,
        at_left: f(1.0),
        at_right: f(2.5),
        lambda,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProofConstantsS3 {
    /// Supremum over `x ∈ [β_3^{−1}, 5/2]`.
    pub a1: f64,
    pub a1_argmax: f64,
    /// The function at the lower end `x = β_3^{−1}`,
    /// equal to `3(3/10)^{1/3} β_3^{−1} + c β_3^{−1/3}`.
    pub a1_at_lower_end: f64,
    pub a1_at_upper_end: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    /// Minimizer of `λ^{−1} + (6/5) λ²`.
    pub lambda_opt: f64,
    pub lambda_opt_min: f64,
    pub c: f64,
}

/// Constants `a_1 … a_4` of the explicit `s = 3` bound, recomputed from scratch.
pub fn proof_constants_s3() -> Result<ProofConstantsS3> {
    let beta3 = beta_closed_form(3)?;
    let binv = 1.0 / beta3;
    let c = kinetic_correction_coeff(3.0)?;
    let k = 3.0 * 0.3f64.cbrt();
    let f = |x: f64| k * binv.powf(2.0 / 3.0) * x.cbrt() + c * binv * x.powf(-2.0 / 3.0);
    let (a1_argmax, a1) = maximize_on(f, binv, 2.5);
    let (lambda_opt, lambda_opt_min) = golden_min(|l| 1.0 / l + 1.2 * l * l, 0.1, 3.0);
    Ok(ProofConstantsS3 {
        a1,
        a1_argmax,
        a1_at_lower_end: f(binv),
        a1_at_upper_end: f(2.5),
        a2: binv / 84.0,
        a3: c / 5.0 * (5.0f64 / 12.0).powf(2.0 / 3.0) * binv.cbrt(),
        a4: c * binv.cbrt() / 84.0,
        lambda_opt,
        lambda_opt_min,
        c,
    })
}
