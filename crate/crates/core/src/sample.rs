//! Seeded random ensembles shared by the property tests and the
//! reproduction suite: Ginibre probes, Gaussian-unitary-ensemble generators,
//! Haar vectors, Dirichlet-weighted coherent mixtures, and feasible
//! fixed-energy Gaussian candidates.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::gaussian::AxisAlignedGaussian;
use crate::hermitian::{CMat, DensityMatrix, Observable};
use crate::pmix::CoherentMixture;

/// Deterministic stream for reproducible ensembles.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

/// GUE-style Hermitian generator: `(B + B^dag)/2` with complex normal entries.
pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> Observable {
    let b = CMat::from_fn(dim, dim, |_, _| complex_normal(rng));
    let sym = (&b + b.adjoint()).map(|z| z * 0.5);
    Observable::trusted(sym)
}

/// Ginibre-ensemble mixed probe: `A A^dag / tr(A A^dag)`.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let a = CMat::from_fn(dim, dim, |_, _| complex_normal(rng));
    let m = &a * a.adjoint();
    DensityMatrix::trusted(m)
}

/// Haar-random unit vector.
pub fn random_unit_vector(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
        let norm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr > 1e-12 {
            let norm = norm_sqr.sqrt();
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random pure probe.
pub fn random_pure_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    DensityMatrix::from_pure(&random_unit_vector(rng, dim)).expect("unit vector")
}

/// Dirichlet(1, ..., 1) weights via normalized exponentials.
pub fn dirichlet_weights(rng: &mut impl Rng, count: usize) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = (0..count).map(|_| Exp1.sample(rng)).collect();
        let total: f64 = raw.iter().sum();
        if total > 1e-9 && raw.iter().all(|w| *w > 1e-12) {
            return raw.iter().map(|w| w / total).collect();
        }
    }
}

fn disk_point(rng: &mut impl Rng, max_radius: f64) -> Complex64 {
    let radius = max_radius * rng.random::<f64>().sqrt();
    let angle = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(radius, angle)
}

/// Random classical mixture: 1..=max_components coherent components with
/// Dirichlet weights and amplitudes uniform on the disk of radius `max_amp`.
pub fn random_mixture(
    rng: &mut impl Rng,
    max_components: usize,
    max_amp: f64,
) -> CoherentMixture {
    let count = rng.random_range(1..=max_components);
    let weights = dirichlet_weights(rng, count);
    let amps: Vec<Complex64> = (0..count).map(|_| disk_point(rng, max_amp)).collect();
    CoherentMixture::single_mode(weights, amps).expect("valid generated mixture")
}

/// Random two-mode classical mixture.
pub fn random_two_mode_mixture(
    rng: &mut impl Rng,
    max_components: usize,
    max_amp: f64,
) -> CoherentMixture {
    let count = rng.random_range(1..=max_components);
    let weights = dirichlet_weights(rng, count);
    let amps: Vec<(Complex64, Complex64)> = (0..count)
        .map(|_| (disk_point(rng, max_amp), disk_point(rng, max_amp)))
        .collect();
    CoherentMixture::two_mode(weights, amps).expect("valid generated mixture")
}

/// Random axis-aligned Gaussian with mean photon number exactly `n`: the
/// energy is split between displacement and (anti)squeezing at a random
/// purity, covering both variance orderings.
pub fn random_feasible_gaussian(
    rng: &mut impl Rng,
    n: f64,
    on_axis: bool,
) -> AxisAlignedGaussian {
    let s = 2.0 * n + 1.0;
    let w = rng.random::<f64>() * (s - 1.0);
    let p_max = (s - w) / 2.0;
    let p = 0.5 + rng.random::<f64>() * (p_max - 0.5);
    let m = s - w;
    let disc = (m * m - 4.0 * p * p).max(0.0).sqrt();
    let (big, small) = ((m + disc) / 2.0, (m - disc) / 2.0);
    let (u, v) = if rng.random() { (big, small) } else { (small, big) };
    let (mean_x, mean_y) = if on_axis {
        (w.sqrt(), 0.0)
    } else {
        let angle = rng.random::<f64>() * std::f64::consts::TAU;
        (w.sqrt() * angle.cos(), w.sqrt() * angle.sin())
    };
    AxisAlignedGaussian::new(mean_x, mean_y, u.sqrt(), v.sqrt()).expect("feasible by construction")
}
