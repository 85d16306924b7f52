//! Optimum generators for a fixed probe, and the two-level closed form.
//!
//! By the probe-generator symmetry, searching over trace-normalized positive
//! generators reduces to maximizing the variance of the probe in a pure
//! state; the maximizer is the balanced superposition of the probe
//! eigenvectors with extreme eigenvalues, achieving `(r_max - r_min)^2 / 4`.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hermitian::{CMat, DensityMatrix, Observable};
use crate::measures;
use crate::sample;

/// Spread below which a probe is treated as fully degenerate (every
/// generator yields zero resolution).
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Constructed optimal pure generator and its resolution.
#[derive(Clone, Debug)]
pub struct OptimumGenerator {
    pub generator: Observable,
    pub lambda_sq: f64,
    /// Eigenvalue spread `r_max - r_min` of the probe.
    pub spread: f64,
    /// True when the probe spectrum is flat and the resolution vanishes.
    pub degenerate: bool,
}

/// Outcome of the random-search check around the constructed optimum.
#[derive(Clone, Copy, Debug)]
pub struct OptimalityReport {
    pub optimum_lambda_sq: f64,
    pub best_random_lambda_sq: f64,
    /// `optimum - best_random`; negative would mean a violation.
    pub margin: f64,
    pub trials: usize,
    pub violations: usize,
}

/// Builds the pure projector onto `(|r_max> + |r_min>)/sqrt(2)`, the
/// maximal-resolution generator for the given probe. Degenerate extremes are
/// broken by spectrum order; a flat spectrum yields a zero-resolution report.
pub fn optimum_pure_generator(rho: &DensityMatrix) -> Result<OptimumGenerator> {
    let spectrum = rho.spectrum()?;
    let n = spectrum.dim();
    let spread = spectrum.values[0] - spectrum.values[n - 1];
    let top = spectrum.vector(0);
    let bottom = spectrum.vector(n - 1);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let psi: Vec<Complex64> = top
        .iter()
        .zip(&bottom)
        .map(|(a, b)| (a + b) * inv_sqrt2)
        .collect();
    let proj = CMat::from_fn(n, n, |i, j| psi[i] * psi[j].conj());
    let generator = Observable::trusted(proj);
    if spread <= DEGENERACY_TOL {
        return Ok(OptimumGenerator {
            generator,
            lambda_sq: 0.0,
            spread,
            degenerate: true,
        });
    }
    let lambda_sq = measures::lambda_sq(rho, &generator);
    Ok(OptimumGenerator {
        generator,
        lambda_sq,
        spread,
        degenerate: false,
    })
}

/// Samples Haar-random pure projectors and checks none resolves better than
/// the constructed optimum.
pub fn verify_generator_optimality(
    rho: &DensityMatrix,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<OptimalityReport> {
    if trials == 0 {
        return Err(Error::Domain {
            name: "trials",
            value: 0.0,
            domain: ">= 1",
        });
    }
    let optimum = optimum_pure_generator(rho)?;
    let n = rho.dim();
    let mut best_random = f64::NEG_INFINITY;
    let mut violations = 0usize;
    for _ in 0..trials {
        let phi = sample::random_unit_vector(rng, n);
        let proj = CMat::from_fn(n, n, |i, j| phi[i] * phi[j].conj());
        let candidate = Observable::trusted(proj);
        let value = measures::lambda_sq(rho, &candidate);
        best_random = best_random.max(value);
        if value > optimum.lambda_sq + 1e-9 {
            violations += 1;
        }
    }
    Ok(OptimalityReport {
        optimum_lambda_sq: optimum.lambda_sq,
        best_random_lambda_sq: best_random,
        margin: optimum.lambda_sq - best_random,
        trials,
        violations,
    })
}

/// Closed-form two-level resolution `q (1 - q) (g1 - g2)^2 |mu|^2`.
pub fn two_level_lambda(q: f64, mu: Complex64, g1: f64, g2: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain {
            name: "q",
            value: q,
            domain: "[0, 1]",
        });
    }
    if mu.norm() > 1.0 + 1e-12 {
        return Err(Error::Domain {
            name: "|mu|",
            value: mu.norm(),
            domain: "<= 1",
        });
    }
    Ok(q * (1.0 - q) * (g1 - g2) * (g1 - g2) * mu.norm_sqr())
}

/// The generic two-level probe in the generator eigenbasis:
/// `[[q, mu sqrt(q(1-q))], [conj(mu) sqrt(q(1-q)), 1-q]]`.
pub fn two_level_probe(q: f64, mu: Complex64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain {
            name: "q",
            value: q,
            domain: "[0, 1]",
        });
    }
    if mu.norm() > 1.0 + 1e-12 {
        return Err(Error::Domain {
            name: "|mu|",
            value: mu.norm(),
            domain: "<= 1",
        });
    }
    let off = mu * (q * (1.0 - q)).sqrt();
    let data = CMat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => Complex64::new(q, 0.0),
        (0, 1) => off,
        (1, 0) => off.conj(),
        _ => Complex64::new(1.0 - q, 0.0),
    });
    Ok(DensityMatrix::trusted(data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{thermal_state, FockSpace};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn optimum_for_two_level_probe() {
        // Dichotomic oracle: <psi|rho^2|psi> - <psi|rho|psi>^2 for the
        // balanced superposition of extreme eigenvectors.
        let rho = DensityMatrix::from_probabilities(&[0.75, 0.25]).unwrap();
        let opt = optimum_pure_generator(&rho).unwrap();
        let oracle = (0.75f64 * 0.75 + 0.25 * 0.25) / 2.0 - 0.25;
        assert!((opt.lambda_sq - oracle).abs() < 1e-12);
        assert!((opt.lambda_sq - 0.0625).abs() < 1e-12);
        assert!((opt.lambda_sq - opt.spread * opt.spread / 4.0).abs() < 1e-12);
        assert!(!opt.degenerate);
    }

    #[test]
    fn degenerate_probe_yields_zero() {
        let rho = DensityMatrix::from_probabilities(&[0.25; 4]).unwrap();
        let opt = optimum_pure_generator(&rho).unwrap();
        assert!(opt.degenerate);
        assert_eq!(opt.lambda_sq, 0.0);
    }

    #[test]
    fn thermal_probe_spread() {
        // Geometric-spectrum oracle: r_max = 1 - xi (up to renormalization),
        // r_min at the truncation tail.
        let xi = 0.5;
        let space = FockSpace::new(40).unwrap();
        let (rho, _) = thermal_state(xi, space).unwrap();
        let opt = optimum_pure_generator(&rho).unwrap();
        let spectrum = rho.spectrum().unwrap();
        let spread = spectrum.values[0] - spectrum.values[39];
        assert!((opt.lambda_sq - spread * spread / 4.0).abs() < 1e-10);
        assert!((spectrum.values[0] - 0.5).abs() < 1e-10);
        assert!(spectrum.values[39] < 1e-11);
    }

    #[test]
    fn random_search_never_beats_optimum() {
        let mut rng = sample::rng(11);
        let rho = DensityMatrix::from_probabilities(&[0.75, 0.25]).unwrap();
        let report = verify_generator_optimality(&rho, 1000, &mut rng).unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.margin >= 0.0);

        // Pure probe: extremes 1 and 0, optimum 1/4.
        let pure = DensityMatrix::from_pure(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let report = verify_generator_optimality(&pure, 200, &mut rng).unwrap();
        assert!((report.optimum_lambda_sq - 0.25).abs() < 1e-9);
        assert_eq!(report.violations, 0);

        // Maximally mixed: every candidate gives zero.
        let flat = DensityMatrix::from_probabilities(&[1.0 / 3.0; 3]).unwrap();
        let report = verify_generator_optimality(&flat, 100, &mut rng).unwrap();
        assert_eq!(report.optimum_lambda_sq, 0.0);
        assert!(report.best_random_lambda_sq < 1e-12);
    }

    #[test]
    fn optimum_matches_closed_form_on_random_probes() {
        let mut rng = sample::rng(23);
        for dim in 2..=12 {
            let rho = sample::random_density(&mut rng, dim);
            let opt = optimum_pure_generator(&rho).unwrap();
            assert!(
                (opt.lambda_sq - opt.spread * opt.spread / 4.0).abs() < 1e-10,
                "dim {dim}"
            );
        }
    }

    #[test]
    fn two_level_closed_form_cases() {
        assert_eq!(two_level_lambda(0.3, c(0.0, 0.0), 2.0, -1.0).unwrap(), 0.0);
        assert_eq!(two_level_lambda(0.8, c(0.0, 0.0), 5.0, 1.0).unwrap(), 0.0);

        let v = two_level_lambda(0.5, c(1.0, 0.0), 1.0, -1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-15);

        // |mu| = 1: the resolution saturates the variance bound.
        let (q, g1, g2) = (0.35, 1.7, -0.4);
        let mu = Complex64::from_polar(1.0, 0.9);
        let lam = two_level_lambda(q, mu, g1, g2).unwrap();
        let var = q * (1.0 - q) * (g1 - g2) * (g1 - g2);
        assert!((lam - var).abs() < 1e-12);

        // Exact agreement with the trace functional on the built pair.
        let rho = two_level_probe(q, mu).unwrap();
        let g = Observable::diagonal(&[g1, g2]);
        assert!((lam - measures::lambda_sq(&rho, &g)).abs() < 1e-12);

        // Partial coherence keeps the resolution under the variance bound.
        let mu = c(0.4, 0.3);
        let lam = two_level_lambda(q, mu, g1, g2).unwrap();
        let rho = two_level_probe(q, mu).unwrap();
        assert!(lam < measures::variance(&rho, &g));

        assert!(two_level_lambda(1.2, c(0.0, 0.0), 1.0, 0.0).is_err());
        assert!(two_level_lambda(0.5, c(1.2, 0.0), 1.0, 0.0).is_err());
    }
}
