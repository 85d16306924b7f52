//! Distance measures and probe-generator resolution functionals, with
//! mutually cross-checking implementations.
//!
//! The central functional is `lambda_sq(rho, G) = tr(rho^2 G^2) - tr(rho G rho G)`,
//! the coefficient of `2 chi^2` in the small-signal Hilbert-Schmidt distance
//! between `rho` and `exp(i chi G) rho exp(-i chi G)`. Equivalent commutator
//! and spectral forms are provided and agree to 1e-8; the quantum Fisher
//! information and Wigner-Yanase skew information give the monotone-metric
//! counterparts (local forms of the Bures and Hellinger distances).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::{
    commutator, eigen_hermitian, expm_raw, is_exactly_diagonal, mul_raw, psd_sqrt,
    trace_of_product, CMat, DensityMatrix, Observable,
};

/// Largest imaginary residue tolerated when a functional that is real by
/// Hermiticity is extracted from complex arithmetic.
const IMAG_RESIDUE_TOL: f64 = 1e-9;

/// Pairs with `r_j + r_k` at or below this are skipped in Fisher sums.
const EIGENVALUE_SUM_CUT: f64 = 1e-12;

/// Resolution summary for a probe-generator pair.
#[derive(Clone, Copy, Debug)]
pub struct ResolutionReport {
    pub lambda_sq: f64,
    pub variance: f64,
    /// `lambda_sq / variance`, with the 0/0 case defined as 1.
    pub ratio: f64,
}

/// Both sides of the would-be skew-information uncertainty product for the
/// two-level probe `diag(0.75, 0.25)` against the x and y Pauli generators.
#[derive(Clone, Copy, Debug)]
pub struct CounterexampleReport {
    pub skew_x: f64,
    pub skew_y: f64,
    /// `4 I_W(rho, sx) I_W(rho, sy)`.
    pub left: f64,
    /// `|tr(rho [sx, sy])|^2`.
    pub right: f64,
    /// True when `left < right`, i.e. the product bound fails.
    pub violated: bool,
}

fn assert_same_dim(a: usize, b: usize) {
    assert_eq!(a, b, "probe and generator dimensions must match");
}

/// `exp(i chi G) rho exp(-i chi G)`; trace and spectrum are preserved.
pub fn evolve(rho: &DensityMatrix, g: &Observable, chi: f64) -> DensityMatrix {
    assert_same_dim(rho.dim(), g.dim());
    if chi == 0.0 {
        return rho.clone();
    }
    let gen = g.raw().map(|z| z * Complex64::new(0.0, chi));
    let u = expm_raw(&gen);
    DensityMatrix::trusted(crate::hermitian::conjugate_by(&u, rho.raw()))
}

/// Squared Hilbert-Schmidt distance `tr[(rho1 - rho2)^2]`.
pub fn hs_distance_sq(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch {
            left: rho1.dim(),
            right: rho2.dim(),
        });
    }
    let a = rho1.raw();
    let b = rho2.raw();
    // The difference is Hermitian, so tr(d^2) is its squared Frobenius norm.
    let mut acc = 0.0;
    for (za, zb) in a.iter().zip(b.iter()) {
        acc += (za - zb).norm_sqr();
    }
    Ok(acc)
}

/// Probe-generator resolution functional `tr(rho^2 G^2) - tr(rho G rho G)`.
/// Tiny negative roundoff (beyond -1e-10) is clamped to zero.
pub fn lambda_sq(rho: &DensityMatrix, g: &Observable) -> f64 {
    assert_same_dim(rho.dim(), g.dim());
    lambda_sq_raw(rho.raw(), g.raw())
}

/// The same functional evaluated on raw Hermitian factors; also used for the
/// skew information where the first factor is sqrt(rho).
pub(crate) fn lambda_sq_raw(sigma: &CMat, g: &CMat) -> f64 {
    let n = sigma.nrows();
    let (first, second) = if is_exactly_diagonal(sigma) {
        let mut first = 0.0;
        let mut second = 0.0;
        for i in 0..n {
            let ri = sigma[(i, i)].re;
            for j in 0..n {
                let gij = g[(i, j)].norm_sqr();
                first += ri * ri * gij;
                second += ri * sigma[(j, j)].re * gij;
            }
        }
        (first, second)
    } else if is_exactly_diagonal(g) {
        let mut first = 0.0;
        let mut second = 0.0;
        for j in 0..n {
            let gj = g[(j, j)].re;
            for i in 0..n {
                let sij = sigma[(i, j)].norm_sqr();
                first += gj * gj * sij;
                second += g[(i, i)].re * gj * sij;
            }
        }
        (first, second)
    } else {
        // One product: tr(s^2 G^2) = ||sG||_F^2 and tr(sGsG) = tr((sG)^2).
        let p = mul_raw(sigma, g);
        let first: f64 = p.iter().map(|z| z.norm_sqr()).sum();
        let mut second = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                second += p[(i, j)] * p[(j, i)];
            }
        }
        assert!(
            second.im.abs() <= IMAG_RESIDUE_TOL * first.max(1.0),
            "imaginary residue {} beyond roundoff",
            second.im
        );
        (first, second.re)
    };
    let value = first - second;
    if value < 0.0 {
        debug_assert!(value > -1e-10 * first.max(1.0));
        0.0
    } else {
        value
    }
}

/// Spectral form over the generator basis:
/// `1/2 sum_{j,k} (g_j - g_k)^2 |<g_k| rho |g_j>|^2`.
pub fn lambda_sq_spectral_g(rho: &DensityMatrix, g: &Observable) -> Result<f64> {
    assert_same_dim(rho.dim(), g.dim());
    let spec = eigen_hermitian(g.raw())?;
    let transformed = basis_transform(rho.raw(), spec.vectors.raw());
    Ok(weighted_offdiag_sum(&spec.values, &transformed, |gj, gk| {
        (gj - gk) * (gj - gk)
    }))
}

/// Dual spectral form over the probe basis:
/// `1/2 sum_{j,k} (r_j - r_k)^2 |<r_k| G |r_j>|^2`.
pub fn lambda_sq_spectral_rho(rho: &DensityMatrix, g: &Observable) -> Result<f64> {
    assert_same_dim(rho.dim(), g.dim());
    let spec = rho.spectrum()?;
    let transformed = basis_transform(g.raw(), spec.vectors.raw());
    Ok(weighted_offdiag_sum(&spec.values, &transformed, |rj, rk| {
        (rj - rk) * (rj - rk)
    }))
}

/// Commutator form `-1/2 tr([rho, G]^2)`.
pub fn lambda_sq_commutator(rho: &DensityMatrix, g: &Observable) -> f64 {
    assert_same_dim(rho.dim(), g.dim());
    let comm = commutator(
        &Observable::trusted(rho.raw().clone()),
        g,
    )
    .expect("dimensions already checked");
    // The commutator is anti-Hermitian: tr(C C) = -tr(C C^dag) = -||C||_F^2.
    let frob: f64 = comm.raw().iter().map(|z| z.norm_sqr()).sum();
    0.5 * frob
}

/// Ratio of the exact Hilbert-Schmidt distance to its small-signal limit
/// `2 chi^2 lambda_sq`; approaches 1 as `chi -> 0`.
pub fn small_signal_ratio(rho: &DensityMatrix, g: &Observable, chi: f64) -> Result<f64> {
    if chi == 0.0 {
        return Err(Error::Domain {
            name: "chi",
            value: chi,
            domain: "nonzero",
        });
    }
    let lambda = lambda_sq(rho, g);
    if lambda <= 1e-12 {
        return Err(Error::InvariantProbe);
    }
    let moved = evolve(rho, g, chi);
    let d2 = hs_distance_sq(rho, &moved)?;
    Ok(d2 / (2.0 * chi * chi * lambda))
}

/// Variance `tr(rho G^2) - tr(rho G)^2`.
pub fn variance(rho: &DensityMatrix, g: &Observable) -> f64 {
    assert_same_dim(rho.dim(), g.dim());
    let p = mul_raw(rho.raw(), g.raw());
    let second_moment = trace_of_product(&p, g.raw());
    let first_moment = trace_of_product(rho.raw(), g.raw());
    assert!(
        second_moment.im.abs() <= IMAG_RESIDUE_TOL * second_moment.re.abs().max(1.0),
        "imaginary residue beyond roundoff"
    );
    second_moment.re - first_moment.re * first_moment.re
}

/// Anticommutator-weighted companion functional
/// `1/2 sum_{j,k} (g_j + g_k)^2 |<g_k| rho |g_j>|^2`.
pub fn tilde_lambda_sq(rho: &DensityMatrix, g: &Observable) -> Result<f64> {
    assert_same_dim(rho.dim(), g.dim());
    let spec = eigen_hermitian(g.raw())?;
    let transformed = basis_transform(rho.raw(), spec.vectors.raw());
    Ok(weighted_offdiag_sum(&spec.values, &transformed, |gj, gk| {
        (gj + gk) * (gj + gk)
    }))
}

/// Quantum Fisher information
/// `1/2 sum_{j,k} (r_j - r_k)^2 / (r_j + r_k) |<r_j| G |r_k>|^2`,
/// summing only pairs with `r_j + r_k > 1e-12`.
pub fn fisher_info(rho: &DensityMatrix, g: &Observable) -> Result<f64> {
    assert_same_dim(rho.dim(), g.dim());
    let spec = rho.spectrum()?;
    let transformed = basis_transform(g.raw(), spec.vectors.raw());
    let n = spec.values.len();
    let mut acc = 0.0;
    for j in 0..n {
        for k in 0..n {
            let sum = spec.values[j] + spec.values[k];
            if sum > EIGENVALUE_SUM_CUT {
                let diff = spec.values[j] - spec.values[k];
                acc += diff * diff / sum * transformed[(j, k)].norm_sqr();
            }
        }
    }
    Ok(0.5 * acc)
}

/// Squared Bures distance `2 {1 - tr[(rho1^{1/2} rho2 rho1^{1/2})^{1/2}]}`.
pub fn bures_distance_sq(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch {
            left: rho1.dim(),
            right: rho2.dim(),
        });
    }
    let root = psd_sqrt(rho1)?;
    let inner = mul_raw(&mul_raw(root.raw(), rho2.raw()), root.raw());
    let spec = eigen_hermitian(&inner)?;
    let fidelity_root: f64 = spec.values.iter().map(|v| v.max(0.0).sqrt()).sum();
    Ok(2.0 * (1.0 - fidelity_root))
}

/// Hellinger distance `tr[(sqrt(rho1) - sqrt(rho2))^2]`.
pub fn hellinger_distance(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch {
            left: rho1.dim(),
            right: rho2.dim(),
        });
    }
    let s1 = psd_sqrt(rho1)?;
    let s2 = psd_sqrt(rho2)?;
    let mut acc = 0.0;
    for (za, zb) in s1.raw().iter().zip(s2.raw().iter()) {
        acc += (za - zb).norm_sqr();
    }
    Ok(acc)
}

/// Wigner-Yanase skew information: the resolution functional evaluated on
/// sqrt(rho), i.e. `tr(rho G^2) - tr(sqrt(rho) G sqrt(rho) G)`.
pub fn skew_info(rho: &DensityMatrix, g: &Observable) -> Result<f64> {
    assert_same_dim(rho.dim(), g.dim());
    let root = psd_sqrt(rho)?;
    Ok(lambda_sq_raw(root.raw(), g.raw()))
}

/// Local ratio relating the Bures distance to the Fisher information:
/// `d_B^2(rho, rho_chi) / (chi^2 I_F)`. Measured to approach 1 as `chi -> 0`
/// across probe-generator pairs; see the crate tests.
pub fn bures_local_ratio(rho: &DensityMatrix, g: &Observable, chi: f64) -> Result<f64> {
    let fisher = fisher_info(rho, g)?;
    if fisher <= 1e-14 {
        return Err(Error::InvariantProbe);
    }
    let moved = evolve(rho, g, chi);
    let d2 = bures_distance_sq(rho, &moved)?;
    Ok(d2 / (chi * chi * fisher))
}

/// Evaluates both sides of the skew-information product bound for the
/// two-level probe `diag(0.75, 0.25)` with Pauli x/y generators, reporting
/// the violation.
pub fn counterexample_check() -> CounterexampleReport {
    let rho = DensityMatrix::from_probabilities(&[0.75, 0.25]).expect("valid probabilities");
    let sx = Observable::pauli_x();
    let sy = Observable::pauli_y();
    let skew_x = skew_info(&rho, &sx).expect("2x2 eigen");
    let skew_y = skew_info(&rho, &sy).expect("2x2 eigen");
    let left = 4.0 * skew_x * skew_y;
    let comm = commutator(&sx, &sy).expect("same dim");
    let right = trace_of_product(rho.raw(), comm.raw()).norm_sqr();
    CounterexampleReport {
        skew_x,
        skew_y,
        left,
        right,
        violated: left < right,
    }
}

/// Resolution functional, variance, and their ratio for one pair.
pub fn resolution_report(rho: &DensityMatrix, g: &Observable) -> ResolutionReport {
    let lambda = lambda_sq(rho, g);
    let var = variance(rho, g);
    let ratio = if lambda <= 1e-15 && var <= 1e-15 {
        1.0
    } else if var <= 0.0 {
        1.0
    } else {
        (lambda / var).clamp(0.0, 1.0)
    };
    ResolutionReport {
        lambda_sq: lambda,
        variance: var,
        ratio,
    }
}

/// `V^dag M V`, with an index-remap shortcut when `V` is a permutation
/// (as produced by the diagonal eigendecomposition fast path).
fn basis_transform(m: &CMat, v: &CMat) -> CMat {
    let n = m.nrows();
    if let Some(perm) = permutation_columns(v) {
        return CMat::from_fn(n, n, |i, j| m[(perm[i], perm[j])]);
    }
    mul_raw(&mul_raw(&v.adjoint(), m), v)
}

/// If every column of `v` is a standard basis vector, returns the row index
/// of the 1 in each column.
fn permutation_columns(v: &CMat) -> Option<Vec<usize>> {
    let n = v.nrows();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut perm = Vec::with_capacity(n);
    for j in 0..n {
        let mut hit = None;
        for i in 0..n {
            let z = v[(i, j)];
            if z == one {
                if hit.is_some() {
                    return None;
                }
                hit = Some(i);
            } else if z != zero {
                return None;
            }
        }
        perm.push(hit?);
    }
    Some(perm)
}

fn weighted_offdiag_sum(
    values: &[f64],
    transformed: &CMat,
    weight: impl Fn(f64, f64) -> f64,
) -> f64 {
    let n = values.len();
    let mut acc = 0.0;
    for j in 0..n {
        for k in 0..n {
            let w = weight(values[j], values[k]);
            if w != 0.0 {
                acc += w * transformed[(k, j)].norm_sqr();
            }
        }
    }
    0.5 * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{
        coherent_cutoff, coherent_state, number, quadratures, squeezed_cutoff, squeezed_vacuum,
        thermal_state, FockSpace,
    };
    use crate::hermitian::ComplexMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn two_level_probe(q: f64, mu: Complex64) -> DensityMatrix {
        let off = mu * (q * (1.0 - q)).sqrt();
        DensityMatrix::from_row_major(2, &[c(q, 0.0), off, off.conj(), c(1.0 - q, 0.0)]).unwrap()
    }

    #[test]
    fn evolve_identity_cases() {
        let rho = two_level_probe(0.7, c(0.5, 0.2));
        let g = Observable::pauli_x();
        let same = evolve(&rho, &g, 0.0);
        assert!(same.matrix().sub(rho.matrix()).unwrap().max_abs() < 1e-15);

        // Diagonal probe commutes with a diagonal generator.
        let space = FockSpace::new(40).unwrap();
        let (thermal, _) = thermal_state(0.5, space).unwrap();
        let moved = evolve(&thermal, &number(space), 0.37);
        assert!(moved.matrix().sub(thermal.matrix()).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn evolve_phase_rotation_oracle() {
        // exp(i chi N) maps |alpha> to |e^{i chi} alpha>; chi = pi flips the sign.
        let space = FockSpace::new(coherent_cutoff(c(1.0, 0.0))).unwrap();
        let (plus, _) = coherent_state(c(1.0, 0.0), space).unwrap();
        let (minus, _) = coherent_state(c(-1.0, 0.0), space).unwrap();
        let rotated = evolve(&plus, &number(space), std::f64::consts::PI);
        let overlap = trace_of_product(rotated.raw(), minus.raw()).re;
        assert!(overlap > 1.0 - 1e-7, "overlap {overlap}");
        // Trace and purity are preserved.
        assert!((rotated.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!((rotated.purity() - plus.purity()).abs() < 1e-9);
    }

    #[test]
    fn hs_distance_basics() {
        let rho = two_level_probe(0.6, c(0.3, 0.1));
        assert_eq!(hs_distance_sq(&rho, &rho).unwrap(), 0.0);

        let zero = DensityMatrix::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let one = DensityMatrix::from_pure(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((hs_distance_sq(&zero, &one).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn lambda_reference_values() {
        // Coherent probe against a quadrature generator resolves at 1/2.
        for alpha in [c(0.5, 0.0), c(1.0, 0.0), c(0.8, -0.6)] {
            let space = FockSpace::new(coherent_cutoff(alpha)).unwrap();
            let (rho, _) = coherent_state(alpha, space).unwrap();
            let (x, _) = quadratures(space);
            assert!((lambda_sq(&rho, &x) - 0.5).abs() < 1e-6);
        }

        // Commuting pair.
        let space = FockSpace::new(60).unwrap();
        let (thermal, _) = thermal_state(0.5, space).unwrap();
        assert_eq!(lambda_sq(&thermal, &number(space)), 0.0);

        // Pure probes: the functional coincides with variance.
        let rho = DensityMatrix::from_pure(&[c(0.6, 0.2), c(0.5, -0.3)]).unwrap();
        let g = Observable::pauli_z();
        assert!((lambda_sq(&rho, &g) - variance(&rho, &g)).abs() < 1e-10);
    }

    #[test]
    fn all_forms_agree() {
        let rho = two_level_probe(0.3, c(0.4, 0.5));
        let g = Observable::from_row_major(
            2,
            &[c(0.7, 0.0), c(0.2, -0.4), c(0.2, 0.4), c(-0.3, 0.0)],
        )
        .unwrap();
        let direct = lambda_sq(&rho, &g);
        let comm = lambda_sq_commutator(&rho, &g);
        let spec_g = lambda_sq_spectral_g(&rho, &g).unwrap();
        let spec_r = lambda_sq_spectral_rho(&rho, &g).unwrap();
        assert!((direct - comm).abs() < 1e-12);
        assert!((direct - spec_g).abs() < 1e-12);
        assert!((direct - spec_r).abs() < 1e-12);

        // Diagonal pair: every form vanishes.
        let rho = DensityMatrix::from_probabilities(&[0.5, 0.3, 0.2]).unwrap();
        let g = Observable::diagonal(&[1.0, 2.0, 3.0]);
        assert_eq!(lambda_sq(&rho, &g), 0.0);
        assert_eq!(lambda_sq_commutator(&rho, &g), 0.0);
        assert!(lambda_sq_spectral_g(&rho, &g).unwrap() < 1e-15);
        assert!(lambda_sq_spectral_rho(&rho, &g).unwrap() < 1e-15);
    }

    #[test]
    fn two_level_closed_form() {
        // lambda^2 = q(1-q)(g1-g2)^2 |mu|^2 for the generic 2x2 pair.
        let (q, mu) = (0.35, c(0.4, -0.3));
        let (g1, g2) = (1.3, -0.7);
        let rho = two_level_probe(q, mu);
        let g = Observable::diagonal(&[g1, g2]);
        let expect = q * (1.0 - q) * (g1 - g2) * (g1 - g2) * mu.norm_sqr();
        assert!((lambda_sq(&rho, &g) - expect).abs() < 1e-12);
        assert!((lambda_sq_spectral_g(&rho, &g).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn small_signal_limit() {
        let space = FockSpace::new(coherent_cutoff(c(1.0, 0.0))).unwrap();
        let (rho, _) = coherent_state(c(1.0, 0.0), space).unwrap();
        let (x, _) = quadratures(space);
        let ratio = small_signal_ratio(&rho, &x, 1e-3).unwrap();
        assert!((ratio - 1.0).abs() < 1e-5, "ratio {ratio}");

        let space = FockSpace::new(squeezed_cutoff(0.5)).unwrap();
        let (sq, _) = squeezed_vacuum(0.5, space).unwrap();
        let ratio = small_signal_ratio(&sq, &number(space), 1e-3).unwrap();
        assert!((ratio - 1.0).abs() < 1e-4, "ratio {ratio}");

        // Quadratic approach: deviations shrink proportionally to chi^2.
        let mut devs = Vec::new();
        for chi in [1e-2, 1e-3, 1e-4] {
            devs.push((small_signal_ratio(&sq, &number(space), chi).unwrap() - 1.0).abs());
        }
        assert!(devs[0] > devs[1] && devs[1] > devs[2]);
        let shrink = devs[0] / devs[1];
        assert!((50.0..200.0).contains(&shrink), "shrink {shrink}");

        // Invariant probe is rejected.
        let space = FockSpace::new(40).unwrap();
        let (thermal, _) = thermal_state(0.5, space).unwrap();
        assert!(matches!(
            small_signal_ratio(&thermal, &number(space), 1e-3),
            Err(Error::InvariantProbe)
        ));
    }

    #[test]
    fn variance_reference_values() {
        // Poisson photon statistics: Var(N) = |alpha|^2.
        let alpha = c(1.2, 0.4);
        let space = FockSpace::new(coherent_cutoff(alpha)).unwrap();
        let (rho, _) = coherent_state(alpha, space).unwrap();
        assert!((variance(&rho, &number(space)) - alpha.norm_sqr()).abs() < 1e-6);

        // Eigenstates have no spread.
        let rho = DensityMatrix::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(variance(&rho, &Observable::pauli_z()).abs() < 1e-14);

        // Geometric-series moment oracle: sums over the truncated diagonal.
        let xi: f64 = 0.5;
        let space = FockSpace::new(80).unwrap();
        let (thermal, _) = thermal_state(xi, space).unwrap();
        let probs: Vec<f64> = (0..80).map(|n| thermal.raw()[(n, n)].re).collect();
        let mean: f64 = probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
        let second: f64 = probs
            .iter()
            .enumerate()
            .map(|(n, p)| (n * n) as f64 * p)
            .sum();
        let oracle = second - mean * mean;
        let var = variance(&thermal, &number(space));
        assert!((var - oracle).abs() < 1e-12);
        // Closed form from the untruncated geometric distribution.
        assert!((var - xi / ((1.0 - xi) * (1.0 - xi))).abs() < 1e-9);
    }

    #[test]
    fn tilde_lambda_values() {
        // Single eigenprojector: only the (1,1) term survives.
        let g = Observable::diagonal(&[1.7, -0.4]);
        let rho = DensityMatrix::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let expect = 2.0 * 1.7 * 1.7;
        assert!((tilde_lambda_sq(&rho, &g).unwrap() - expect).abs() < 1e-12);

        // Algebraic identity: the sum recombines to tr(rho^2 G^2) + tr(rho G rho G).
        let rho = two_level_probe(0.4, c(0.3, 0.6));
        let g = Observable::from_row_major(
            2,
            &[c(0.9, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(-0.5, 0.0)],
        )
        .unwrap();
        let p = mul_raw(rho.raw(), g.raw());
        let first: f64 = p.iter().map(|z| z.norm_sqr()).sum();
        let second = trace_of_product(&p, &p).re;
        assert!((tilde_lambda_sq(&rho, &g).unwrap() - (first + second)).abs() < 1e-12);

        // Hand-enumerated four-term oracle for diagonal rho with sigma_x:
        // eigenbasis |+->, eigenvalues +-1; matrix elements of rho are
        // (1/2, d/2; d/2, 1/2) with d = q - (1-q).
        let q = 0.8;
        let rho = DensityMatrix::from_probabilities(&[q, 1.0 - q]).unwrap();
        let d = q - (1.0 - q);
        let g = Observable::pauli_x();
        let by_hand = 0.5
            * (4.0 * 0.25 + 0.0 * (d / 2.0) * (d / 2.0) * 2.0 + 4.0 * 0.25);
        assert!((tilde_lambda_sq(&rho, &g).unwrap() - by_hand).abs() < 1e-12);
    }

    #[test]
    fn fisher_reference_values() {
        // Thermal quadrature Fisher information: (1 - xi)/(2 (1 + xi)).
        let xi = 1.0 / 3.0;
        let space = FockSpace::new(crate::fock::thermal_cutoff(xi)).unwrap();
        let (rho, _) = thermal_state(xi, space).unwrap();
        let (x, y) = quadratures(space);
        let fx = fisher_info(&rho, &x).unwrap();
        let fy = fisher_info(&rho, &y).unwrap();
        assert!((fx - 0.25).abs() < 1e-4, "fisher {fx}");
        assert!((fx - fy).abs() < 1e-9);

        // Pure states: Fisher equals variance.
        let rho = DensityMatrix::from_pure(&[c(0.8, 0.0), c(0.36, 0.48)]).unwrap();
        let g = Observable::pauli_y();
        assert!((fisher_info(&rho, &g).unwrap() - variance(&rho, &g)).abs() < 1e-8);

        // Commuting pair.
        let rho = DensityMatrix::from_probabilities(&[0.6, 0.4]).unwrap();
        assert!(fisher_info(&rho, &Observable::pauli_z()).unwrap() < 1e-14);
    }

    #[test]
    fn bures_reference_values() {
        let rho = two_level_probe(0.6, c(0.2, 0.3));
        assert!(bures_distance_sq(&rho, &rho).unwrap().abs() < 1e-9);

        let zero = DensityMatrix::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let one = DensityMatrix::from_pure(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((bures_distance_sq(&zero, &one).unwrap() - 2.0).abs() < 1e-9);

        // Symmetry.
        let sigma = two_level_probe(0.3, c(-0.1, 0.4));
        let ab = bures_distance_sq(&rho, &sigma).unwrap();
        let ba = bures_distance_sq(&sigma, &rho).unwrap();
        assert!((ab - ba).abs() < 1e-8);
    }

    #[test]
    fn bures_local_limit_constant() {
        // Finite-difference limit oracle: the ratio d_B^2 / (chi^2 I_F)
        // converges to the same constant across pairs; measured value 1.
        let space = FockSpace::new(120).unwrap();
        let (thermal, _) = thermal_state(0.5, space).unwrap();
        let (x, _) = quadratures(space);
        let r1 = bures_local_ratio(&thermal, &x, 1e-2).unwrap();
        let r2 = bures_local_ratio(&thermal, &x, 1e-3).unwrap();
        assert!((r1 - 1.0).abs() < 1e-3, "ratio {r1}");
        assert!((r2 - 1.0).abs() < 1e-2, "ratio {r2}");

        let rho = two_level_probe(0.7, c(0.2, 0.1));
        let g = Observable::pauli_x();
        let r3 = bures_local_ratio(&rho, &g, 1e-3).unwrap();
        assert!((r3 - 1.0).abs() < 1e-3, "ratio {r3}");
    }

    #[test]
    fn hellinger_and_skew_values() {
        // Two-level skew information: 1 - sqrt(3)/2 for the 3:1 mixture.
        let rho = DensityMatrix::from_probabilities(&[0.75, 0.25]).unwrap();
        let expect = 1.0 - 3.0f64.sqrt() / 2.0;
        let got = skew_info(&rho, &Observable::pauli_x()).unwrap();
        assert!((got - expect).abs() < 1e-10);
        assert!((got - 0.134).abs() < 1e-3);

        // Thermal quadrature skew information: (1 - sqrt(xi))/(2 (1 + sqrt(xi))).
        let xi: f64 = 0.25;
        let space = FockSpace::new(crate::fock::thermal_cutoff(xi)).unwrap();
        let (thermal, _) = thermal_state(xi, space).unwrap();
        let (x, _) = quadratures(space);
        let expect = (1.0 - xi.sqrt()) / (2.0 * (1.0 + xi.sqrt()));
        let got = skew_info(&thermal, &x).unwrap();
        assert!((got - expect).abs() < 1e-4, "skew {got} vs {expect}");
        assert!((got - 1.0 / 6.0).abs() < 1e-4);

        // Pure states: sqrt(rho) = rho, so skew = variance. The root of a
        // rank-deficient state carries sqrt(eps) eigenvalue noise, so the
        // match is at the 1e-7 scale rather than machine precision.
        let pure = DensityMatrix::from_pure(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let g = Observable::pauli_x();
        assert!((skew_info(&pure, &g).unwrap() - variance(&pure, &g)).abs() < 1e-7);

        // Hellinger of a state with itself vanishes; orthogonal pure states sit at 2.
        assert!(hellinger_distance(&rho, &rho).unwrap() < 1e-14);
        let zero = DensityMatrix::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let one = DensityMatrix::from_pure(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((hellinger_distance(&zero, &one).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn counterexample_values() {
        let report = counterexample_check();
        assert!((report.skew_x - 0.134).abs() < 1e-3);
        assert!((report.skew_y - 0.134).abs() < 1e-3);
        assert!((report.left - 4.0 * 0.134 * 0.134).abs() < 1e-3);
        assert_eq!(report.right, 1.0);
        assert!(report.violated);
    }

    #[test]
    fn resolution_report_ratio_convention() {
        // Commuting pure eigenstate: 0/0 resolves to ratio 1.
        let rho = DensityMatrix::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let report = resolution_report(&rho, &Observable::pauli_z());
        assert_eq!(report.ratio, 1.0);
        assert_eq!(report.lambda_sq, 0.0);

        let rho = two_level_probe(0.4, c(0.5, 0.0));
        let report = resolution_report(&rho, &Observable::pauli_z());
        assert!(report.lambda_sq <= report.variance + 1e-9);
        assert!((0.0..=1.0).contains(&report.ratio));
    }

    #[test]
    fn gaussian_distance_closed_form_cross_check() {
        // Exact displacement-distance formula against the evolved Fock state.
        let r = 0.5;
        let space = FockSpace::new(squeezed_cutoff(r)).unwrap();
        let (rho, _) = squeezed_vacuum(r, space).unwrap();
        let (x, y) = quadratures(space);
        let u = variance(&rho, &x);
        let v = variance(&rho, &y);
        let chi = 0.1;
        let moved = evolve(&rho, &x, chi);
        let d2 = hs_distance_sq(&rho, &moved).unwrap();
        let closed = (1.0 / (u * v).sqrt()) * (1.0 - (-chi * chi / (4.0 * v)).exp());
        assert!((d2 - closed).abs() < 1e-6, "d2 {d2} closed {closed}");
    }

    #[test]
    fn dimension_mismatch_errors() {
        let rho2 = two_level_probe(0.5, c(0.1, 0.0));
        let rho3 = DensityMatrix::from_probabilities(&[0.5, 0.3, 0.2]).unwrap();
        assert!(matches!(
            hs_distance_sq(&rho2, &rho3),
            Err(Error::DimensionMismatch { .. })
        ));
        let m = ComplexMatrix::identity(3);
        let _ = m;
    }
}
