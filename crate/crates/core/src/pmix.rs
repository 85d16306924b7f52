//! Classical states as positive discrete coherent-state mixtures, the
//! weak-value form of the resolution functional, and the nonclassicality
//! witnesses for displacement, phase-shift, and phase-difference generators.
//!
//! A probe that resolves better than every coherent state under these
//! generators cannot admit a positive coherent-state mixture, so crossing a
//! witness threshold certifies nonclassicality. The converse does not hold;
//! `ClassicalConsistent` is not a classicality certificate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{self, FockSpace, TruncationReport, DEFICIT_LIMIT};
use crate::hermitian::{trace_of_product, CMat, DensityMatrix, Observable};
use crate::measures;

/// Margin added to witness thresholds so truncation noise cannot flip
/// boundary (coherent-state) cases.
pub const WITNESS_MARGIN: f64 = 1e-9;

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// One-sided witness verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The threshold test does not certify anything.
    ClassicalConsistent,
    /// Resolution exceeds every classical mixture: the probe is nonclassical.
    Nonclassical,
}

/// Witness evaluation: the resolution value, the classical ceiling, and the
/// signed margin `lambda_sq - threshold`.
#[derive(Clone, Copy, Debug)]
pub struct WitnessReport {
    pub verdict: Verdict,
    pub lambda_sq: f64,
    pub threshold: f64,
    pub margin: f64,
}

impl WitnessReport {
    fn from_values(lambda_sq: f64, threshold: f64) -> Self {
        let margin = lambda_sq - threshold;
        let verdict = if margin > WITNESS_MARGIN {
            Verdict::Nonclassical
        } else {
            Verdict::ClassicalConsistent
        };
        Self {
            verdict,
            lambda_sq,
            threshold,
            margin,
        }
    }
}

/// Generator selector for the closed-form weak-value sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakGenerator {
    Quadrature,
    Number,
}

/// Mixture component amplitudes: one mode or two.
#[derive(Clone, Debug, PartialEq)]
pub enum MixtureAmplitudes {
    SingleMode(Vec<Complex64>),
    TwoMode(Vec<(Complex64, Complex64)>),
}

/// Classical state `sum_k w_k |alpha_k><alpha_k|` with positive weights: a
/// discrete positive coherent-state representation.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentMixture {
    weights: Vec<f64>,
    amplitudes: MixtureAmplitudes,
}

#[derive(Serialize, Deserialize)]
struct MixtureFile {
    weights: Vec<f64>,
    amplitudes: AmplitudeList,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AmplitudeList {
    SingleMode(Vec<[f64; 2]>),
    TwoMode(Vec<[[f64; 2]; 2]>),
}

impl CoherentMixture {
    pub fn single_mode(weights: Vec<f64>, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::validate_weights(&weights, amplitudes.len())?;
        Ok(Self {
            weights,
            amplitudes: MixtureAmplitudes::SingleMode(amplitudes),
        })
    }

    pub fn two_mode(weights: Vec<f64>, amplitudes: Vec<(Complex64, Complex64)>) -> Result<Self> {
        Self::validate_weights(&weights, amplitudes.len())?;
        Ok(Self {
            weights,
            amplitudes: MixtureAmplitudes::TwoMode(amplitudes),
        })
    }

    fn validate_weights(weights: &[f64], amp_count: usize) -> Result<()> {
        if weights.is_empty() {
            return Err(Error::InvalidMixture("no components".into()));
        }
        if weights.len() != amp_count {
            return Err(Error::InvalidMixture(format!(
                "{} weights vs {} amplitudes",
                weights.len(),
                amp_count
            )));
        }
        if weights.iter().any(|w| *w <= 0.0 || !w.is_finite()) {
            return Err(Error::InvalidMixture(
                "weights must be positive and finite".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidMixture(format!(
                "weights sum to {total}, expected 1 within {WEIGHT_SUM_TOL:e}"
            )));
        }
        Ok(())
    }

    /// Parses the plain-text config format:
    /// `{"weights": [...], "amplitudes": [[re, im], ...]}` for a single mode or
    /// `{"weights": [...], "amplitudes": [[[re, im], [re, im]], ...]}` for two.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: MixtureFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidMixture(format!("bad mixture JSON: {e}")))?;
        match file.amplitudes {
            AmplitudeList::SingleMode(list) => Self::single_mode(
                file.weights,
                list.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
            ),
            AmplitudeList::TwoMode(list) => Self::two_mode(
                file.weights,
                list.iter()
                    .map(|[[re1, im1], [re2, im2]]| {
                        (Complex64::new(*re1, *im1), Complex64::new(*re2, *im2))
                    })
                    .collect(),
            ),
        }
    }

    pub fn to_json(&self) -> String {
        let amplitudes = match &self.amplitudes {
            MixtureAmplitudes::SingleMode(list) => {
                AmplitudeList::SingleMode(list.iter().map(|z| [z.re, z.im]).collect())
            }
            MixtureAmplitudes::TwoMode(list) => AmplitudeList::TwoMode(
                list.iter()
                    .map(|(a, b)| [[a.re, a.im], [b.re, b.im]])
                    .collect(),
            ),
        };
        serde_json::to_string_pretty(&MixtureFile {
            weights: self.weights.clone(),
            amplitudes,
        })
        .expect("mixture serializes")
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn amplitudes(&self) -> &MixtureAmplitudes {
        &self.amplitudes
    }

    pub fn is_two_mode(&self) -> bool {
        matches!(self.amplitudes, MixtureAmplitudes::TwoMode(_))
    }

    /// Largest single-mode amplitude modulus, for cutoff selection.
    pub fn max_amplitude(&self) -> f64 {
        match &self.amplitudes {
            MixtureAmplitudes::SingleMode(list) => {
                list.iter().map(|z| z.norm()).fold(0.0, f64::max)
            }
            MixtureAmplitudes::TwoMode(list) => list
                .iter()
                .map(|(a, b)| a.norm().max(b.norm()))
                .fold(0.0, f64::max),
        }
    }

    /// Default cutoff per mode from the coherent heuristic at the largest
    /// component amplitude.
    pub fn default_cutoff(&self) -> usize {
        let amp = self.max_amplitude();
        fock::cutoff_for_mean_photon(amp * amp)
    }

    /// Truncated Fock representation `sum w_k |alpha_k><alpha_k|`; two-mode
    /// mixtures use `space` for both modes.
    pub fn to_density(&self, space: FockSpace) -> Result<(DensityMatrix, TruncationReport)> {
        match &self.amplitudes {
            MixtureAmplitudes::SingleMode(list) => {
                let c = space.cutoff();
                let mut acc = CMat::zeros(c, c);
                let mut kept = 0.0;
                for (w, alpha) in self.weights.iter().zip(list) {
                    let amps = coherent_amplitudes(*alpha, c);
                    kept += w * amps.iter().map(|z| z.norm_sqr()).sum::<f64>();
                    for i in 0..c {
                        for j in 0..c {
                            acc[(i, j)] += amps[i] * amps[j].conj() * w;
                        }
                    }
                }
                finish_mixture(acc, kept, space)
            }
            MixtureAmplitudes::TwoMode(list) => {
                let c = space.cutoff();
                let dim = c * c;
                let mut acc = CMat::zeros(dim, dim);
                let mut kept = 0.0;
                for (w, (a1, a2)) in self.weights.iter().zip(list) {
                    let amps1 = coherent_amplitudes(*a1, c);
                    let amps2 = coherent_amplitudes(*a2, c);
                    let joint: Vec<Complex64> = (0..dim)
                        .map(|idx| amps1[idx / c] * amps2[idx % c])
                        .collect();
                    kept += w * joint.iter().map(|z| z.norm_sqr()).sum::<f64>();
                    for i in 0..dim {
                        for j in 0..dim {
                            acc[(i, j)] += joint[i] * joint[j].conj() * w;
                        }
                    }
                }
                finish_mixture(acc, kept, space)
            }
        }
    }

    /// Closed-form weak-value evaluation of the resolution functional over
    /// the mixture, `sum_{j,k} w_j w_k |<a_j|a_k>|^2 [G2 - |G1|^2]`, using the
    /// coherent-state weak values of the generator and its square.
    pub fn lambda_sq_weak(&self, kind: WeakGenerator) -> Result<f64> {
        let list = match &self.amplitudes {
            MixtureAmplitudes::SingleMode(list) => list,
            MixtureAmplitudes::TwoMode(_) => {
                return Err(Error::InvalidMixture(
                    "weak-value form is defined for single-mode mixtures".into(),
                ))
            }
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (wj, ket) in self.weights.iter().zip(list) {
            for (wk, bra) in self.weights.iter().zip(list) {
                let overlap_sq = (-(ket - bra).norm_sqr()).exp();
                let (g1, g2) = match kind {
                    WeakGenerator::Quadrature => {
                        let s = ket + bra.conj();
                        ((s / std::f64::consts::SQRT_2), (s * s + 1.0) / 2.0)
                    }
                    WeakGenerator::Number => {
                        let prod = bra.conj() * ket;
                        (prod, prod * prod + prod)
                    }
                };
                acc += wj * wk * overlap_sq * (g2 - g1.norm_sqr());
            }
        }
        debug_assert!(acc.im.abs() < 1e-9 * acc.re.abs().max(1.0));
        Ok(acc.re.max(0.0))
    }
}

/// Flags a single-mode probe whose quadrature resolution exceeds the coherent
/// ceiling of 1/2, which forces a negative coherent-state representation.
pub fn witness_displacement(rho: &DensityMatrix, x: &Observable) -> WitnessReport {
    WitnessReport::from_values(measures::lambda_sq(rho, x), 0.5)
}

/// Flags a single-mode probe whose phase-shift resolution exceeds the
/// coherent ceiling at the same mean photon number, `tr(N rho)`.
pub fn witness_number(rho: &DensityMatrix, n: &Observable) -> WitnessReport {
    let threshold = trace_of_product(rho.raw(), n.raw()).re;
    WitnessReport::from_values(measures::lambda_sq(rho, n), threshold)
}

/// Flags a two-mode probe whose phase-difference resolution exceeds the
/// two-mode coherent ceiling `tr[(N1 + N2) rho]`.
pub fn witness_jz(
    rho: &DensityMatrix,
    space1: FockSpace,
    space2: FockSpace,
) -> Result<WitnessReport> {
    let dim = space1.dim() * space2.dim();
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: dim,
        });
    }
    let jz_op = fock::jz(space1, space2)?;
    let nsum = fock::number_sum(space1, space2)?;
    let threshold = trace_of_product(rho.raw(), nsum.raw()).re;
    Ok(WitnessReport::from_values(
        measures::lambda_sq(rho, &jz_op),
        threshold,
    ))
}

fn coherent_amplitudes(alpha: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut amps = Vec::with_capacity(cutoff);
    let mut cur = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..cutoff {
        amps.push(cur);
        cur *= alpha / ((n + 1) as f64).sqrt();
    }
    amps
}

fn finish_mixture(
    acc: CMat,
    kept: f64,
    space: FockSpace,
) -> Result<(DensityMatrix, TruncationReport)> {
    let deficit = (1.0 - kept).clamp(0.0, 1.0);
    if deficit > DEFICIT_LIMIT {
        return Err(Error::TruncationDeficit {
            deficit,
            limit: DEFICIT_LIMIT,
            cutoff: space.cutoff(),
        });
    }
    Ok((
        DensityMatrix::trusted(acc),
        TruncationReport {
            trace_deficit: deficit,
            renormalized: true,
        },
    ))
}
