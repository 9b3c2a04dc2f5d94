//! Published reference values, shipped as `data/reference.json`.
//!
//! These numbers are transcribed, not computed. The test suite and the CLI
//! compare against them; nothing in the library depends on them.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

const RAW: &str = include_str!("../data/reference.json");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaPoint {
    pub n: usize,
    pub s: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BPoint {
    pub s: f64,
    pub b: f64,
    pub b_num: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ceilings {
    pub a_s2: f64,
    pub a1_s3: f64,
    pub a2_s3: f64,
    pub a3_s3: f64,
    pub a4_s3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Intervals {
    pub b2: (f64, f64),
    pub b3: (f64, f64),
    pub c1_inv: (f64, f64),
    pub c2_inv_sqrt: (f64, f64),
    pub k3: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NamedConstants {
    pub lambda_s2: f64,
    pub c_s3_max: f64,
}

/// Tail sums for `s = 3` in units of the prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tails {
    pub even: f64,
    pub odd: f64,
    pub total_ceiling: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossoverValues {
    pub s2_vs_lieb: f64,
    pub s3_vs_s2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceData {
    pub version: u32,
    pub source: String,
    pub figure1: Vec<AlphaPoint>,
    pub figure2: Vec<BPoint>,
    pub ceilings: Ceilings,
    pub intervals: Intervals,
    pub constants: NamedConstants,
    pub tails: Tails,
    pub crossovers: CrossoverValues,
}

impl ReferenceData {
    /// The tabulated `α_{N,s}`, if present.
    pub fn alpha(&self, n: usize, s: f64) -> Option<f64> {
        self.figure1
            .iter()
            .find(|p| p.n == n && p.s == s)
            .map(|p| p.alpha)
    }

    pub fn figure1_s_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = Vec::new();
        for p in &self.figure1 {
            if !v.contains(&p.s) {
                v.push(p.s);
            }
        }
        v
    }

    pub fn figure1_n_values(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.figure1.iter().map(|p| p.n).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// The embedded reference table, parsed once.
pub fn reference() -> &'static ReferenceData {
    static DATA: OnceLock<ReferenceData> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(RAW).expect("embedded reference data is valid JSON"))
}
