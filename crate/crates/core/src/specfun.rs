//! Legendre polynomials, monomial-to-Legendre coefficients, generalized
//! binomial coefficients, the Gamma function and double factorials.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Largest degree for which `c_{k,l}` is evaluated in exact integer arithmetic.
pub const EXACT_COEFF_MAX_DEGREE: usize = 20;

/// `P_l(t)` by the Bonnet recurrence. Fails for `|t| > 1`.
pub fn legendre_eval(l: usize, t: f64) -> Result<f64> {
    if !(t.abs() <= 1.0) {
        return Err(domain("legendre_eval", format!("|t| must be <= 1, got {t}")));
    }
    Ok(legendre_unchecked(l, t))
}

/// `P_l(t)` without the domain check, for callers that already guarantee `|t| ≤ 1`.
pub fn legendre_unchecked(l: usize, t: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = t;
    for k in 2..=l {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `[P_0(t), …, P_lmax(t)]`.
pub fn legendre_all(lmax: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(lmax + 1);
    out.push(1.0);
    if lmax == 0 {
        return out;
    }
    out.push(t);
    for k in 2..=lmax {
        let kf = k as f64;
        let p = ((2.0 * kf - 1.0) * t * out[k - 1] - (kf - 1.0) * out[k - 2]) / kf;
        out.push(p);
    }
    out
}

/// Coefficient `c_{k,l}` in `t^k = Σ_l c_{k,l} P_l(t)`.
///
/// Nonzero only for `l ≤ k` with `k + l` even, where
/// `c_{k,l} = (2l+1) k! / (2^m m! (k+l+1)!!)` and `m = (k-l)/2`.
pub fn legendre_coeff(k: usize, l: usize) -> f64 {
    if l > k || (k + l) % 2 == 1 {
        return 0.0;
    }
    if k <= EXACT_COEFF_MAX_DEGREE {
        return exact_coeff(k, l);
    }
    let mut c = coeff_start(k);
    let mut j = k % 2;
    while j < l {
        c *= coeff_ratio(k, j);
        j += 2;
    }
    c
}

/// All coefficients `c_{k,0}, …, c_{k,k}` for a fixed `k`.
pub fn legendre_coeff_row(k: usize) -> Vec<f64> {
    let mut row = vec![0.0; k + 1];
    if k <= EXACT_COEFF_MAX_DEGREE {
        for (l, slot) in row.iter_mut().enumerate() {
            *slot = legendre_coeff(k, l);
        }
        return row;
    }
    let mut l = k % 2;
    let mut c = coeff_start(k);
    loop {
        row[l] = c;
        if l + 2 > k {
            break;
        }
        c *= coeff_ratio(k, l);
        l += 2;
    }
    row
}

// c_{k,0} = 1/(k+1) for even k, c_{k,1} = 3/(k+2) for odd k.
fn coeff_start(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0 / (k as f64 + 1.0)
    } else {
        3.0 / (k as f64 + 2.0)
    }
}

// c_{k,l+2} / c_{k,l}
fn coeff_ratio(k: usize, l: usize) -> f64 {
    let m = ((k - l) / 2) as f64;
    let lf = l as f64;
    (2.0 * lf + 5.0) / (2.0 * lf + 1.0) * (2.0 * m) / (lf + k as f64 + 3.0)
}

fn exact_coeff(k: usize, l: usize) -> f64 {
    let m = (k - l) / 2;
    let mut num: u128 = (2 * l + 1) as u128;
    for i in 2..=k as u128 {
        num *= i;
    }
    let mut den: u128 = 1u128 << m;
    for i in 2..=m as u128 {
        den *= i;
    }
    let mut i = (k + l + 1) as u128;
    while i > 1 {
        den *= i;
        i -= 2;
    }
    let g = gcd(num, den);
    (num / g) as f64 / (den / g) as f64
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Immutable table of `c_{k,l}` for `0 ≤ l ≤ k ≤ max_degree`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LegendreCoeffTable {
    pub max_degree: usize,
    pub entries: BTreeMap<(usize, usize), f64>,
}

impl LegendreCoeffTable {
    pub fn new(max_degree: usize) -> Self {
        let mut entries = BTreeMap::new();
        for k in 0..=max_degree {
            for (l, c) in legendre_coeff_row(k).into_iter().enumerate() {
                entries.insert((k, l), c);
            }
        }
        Self {
            max_degree,
            entries,
        }
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.entries.get(&(k, l)).copied().unwrap_or(0.0)
    }
}

/// Generalized binomial coefficient `Π_{n<k} (a-n) / k!`.
pub fn gen_binomial(a: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for n in 0..k {
        acc *= (a - n as f64) / (n as f64 + 1.0);
        if acc == 0.0 {
            return 0.0;
        }
    }
    acc
}

/// `Γ(x)` for `x > 0`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("gamma_fn", format!("argument must be positive, got {x}")));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("ln_gamma", format!("argument must be positive, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// `n!!` for `n ≥ -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(domain("double_factorial", format!("n must be >= -1, got {n}")));
    }
    let mut acc = 1.0;
    let mut i = n;
    while i > 1 {
        acc *= i as f64;
        i -= 2;
    }
    Ok(acc)
}
