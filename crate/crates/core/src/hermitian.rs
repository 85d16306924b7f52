//! Validated complex Hermitian matrix algebra: construction, eigendecomposition,
//! PSD square roots, tensor products, trace polynomials, and the matrix
//! exponential used for signal encoding.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) type CMat = DMatrix<Complex64>;

/// Largest dimension accepted by [`tensor`]; two-mode builds stay well below.
pub const MAX_TENSOR_DIM: usize = 8192;

const EXPM_SERIES_TOL: f64 = 1e-12;
const EIGEN_MAX_ITER: usize = 100_000;

/// Validation tolerances for the domain types. The defaults match desk-scale
/// double precision; truncated Fock constructions may need to loosen them.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Max allowed `|M[j,k] - conj(M[k,j])|` before a matrix is rejected.
    pub hermiticity: f64,
    /// Max allowed `|tr(rho) - 1|`.
    pub trace: f64,
    /// Eigenvalues down to `-psd` are accepted (and clamped where roots are taken).
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-10,
            trace: 1e-10,
            psd: 1e-10,
        }
    }
}

/// Dense square complex matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    data: CMat,
}

impl ComplexMatrix {
    pub fn new(data: DMatrix<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::NotSquare {
                rows: data.nrows(),
                cols: data.ncols(),
            });
        }
        for j in 0..data.ncols() {
            for i in 0..data.nrows() {
                let z = data[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { data })
    }

    /// Builds from entries listed row by row; `entries.len()` must be `dim * dim`.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        let data = CMat::from_fn(dim, dim, |i, j| entries[i * dim + j]);
        Self::new(data)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        Self::new(CMat::from_fn(dim, dim, f))
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: CMat::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            data: CMat::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    /// Entries row by row, matching [`ComplexMatrix::from_row_major`].
    pub fn row_major(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.data[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.adjoint(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.data.diagonal().iter().sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            data: self.data.map(|z| z * factor),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            data: &self.data - &other.data,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            data: mul_raw(&self.data, &other.data),
        })
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(0.0, f64::max)
            .sqrt()
    }

    /// Largest `|M[j,k] - conj(M[k,j])|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = self.data[(i, j)] - self.data[(j, i)].conj();
                worst = worst.max(d.norm_sqr());
            }
        }
        worst.sqrt()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn raw(&self) -> &CMat {
        &self.data
    }

    pub(crate) fn from_raw(data: CMat) -> Self {
        Self { data }
    }
}

/// Hermitian operator: generators of signal-encoding unitaries, quadratures,
/// number operators, Pauli matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, Tolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: Tolerances) -> Result<Self> {
        let dev = matrix.hermiticity_deviation();
        if dev > tol.hermiticity {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: tol.hermiticity,
            });
        }
        Ok(Self {
            matrix: symmetrize(&matrix),
        })
    }

    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_row_major(dim, entries)?)
    }

    /// Real diagonal operator.
    pub fn diagonal(values: &[f64]) -> Self {
        let data = CMat::from_fn(values.len(), values.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self {
            matrix: ComplexMatrix { data },
        }
    }

    pub fn pauli_x() -> Self {
        Self::from_row_major(
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .expect("pauli x is Hermitian")
    }

    pub fn pauli_y() -> Self {
        Self::from_row_major(
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .expect("pauli y is Hermitian")
    }

    pub fn pauli_z() -> Self {
        Self::diagonal(&[1.0, -1.0])
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub(crate) fn raw(&self) -> &CMat {
        self.matrix.raw()
    }

    /// Hermitian by construction (builders, symmetrized products of validated parts).
    pub(crate) fn trusted(data: CMat) -> Self {
        Self {
            matrix: ComplexMatrix { data },
        }
    }
}

/// Unit-trace Hermitian positive semi-definite matrix: the probe state.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, Tolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: Tolerances) -> Result<Self> {
        let dev = matrix.hermiticity_deviation();
        if dev > tol.hermiticity {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: tol.hermiticity,
            });
        }
        let matrix = symmetrize(&matrix);
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::InvalidTrace {
                trace: tr.re,
                tolerance: tol.trace,
            });
        }
        let spectrum = eigen_hermitian(matrix.raw())?;
        let min = spectrum.values.last().copied().unwrap_or(0.0);
        if min < -tol.psd {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix })
    }

    /// Projector onto the (normalized) given amplitude vector.
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr <= 0.0 || !norm_sqr.is_finite() {
            return Err(Error::Domain {
                name: "amplitudes",
                value: norm_sqr,
                domain: "finite nonzero norm",
            });
        }
        let norm = norm_sqr.sqrt();
        let n = amplitudes.len();
        let data = CMat::from_fn(n, n, |i, j| {
            amplitudes[i] * amplitudes[j].conj() / norm_sqr
        });
        let _ = norm;
        Ok(Self {
            matrix: ComplexMatrix { data },
        })
    }

    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_row_major(dim, entries)?)
    }

    /// Diagonal state from a probability vector (renormalized exactly).
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        let total: f64 = probs.iter().sum();
        if probs.iter().any(|p| *p < 0.0 || !p.is_finite()) || total <= 0.0 {
            return Err(Error::Domain {
                name: "probabilities",
                value: total,
                domain: "nonnegative, positive sum",
            });
        }
        let n = probs.len();
        let data = CMat::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(probs[i] / total, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Ok(Self {
            matrix: ComplexMatrix { data },
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `tr(rho^2)`, computed as the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.matrix.raw().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        eigen_hermitian(self.matrix.raw())
    }

    pub(crate) fn raw(&self) -> &CMat {
        self.matrix.raw()
    }

    /// Skips the PSD eigencheck. Only for results that are PSD by construction
    /// (unitary conjugation, convex mixtures of validated states); the matrix
    /// is still symmetrized and trace-renormalized.
    pub(crate) fn trusted(data: CMat) -> Self {
        let m = symmetrize(&ComplexMatrix { data });
        let tr = m.trace().re;
        Self {
            matrix: m.scale(Complex64::new(1.0 / tr, 0.0)),
        }
    }
}

/// Eigenvalues (descending) with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let v = self.vectors.raw();
        (0..v.nrows()).map(|i| v[(i, k)]).collect()
    }

    /// `max |M - V diag(v) V^dag|` against the matrix this spectrum came from.
    pub fn reconstruction_error(&self, m: &ComplexMatrix) -> f64 {
        let v = self.vectors.raw();
        let n = self.dim();
        let mut scaled = v.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] *= Complex64::new(self.values[j], 0.0);
            }
        }
        let rebuilt = mul_raw(&scaled, &v.adjoint());
        (&rebuilt - m.raw())
            .iter()
            .map(|z| z.norm_sqr())
            .fold(0.0, f64::max)
            .sqrt()
    }

    /// `max |V^dag V - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let v = self.vectors.raw();
        let gram = mul_raw(&v.adjoint(), v);
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                let d = gram[(i, j)] - Complex64::new(expect, 0.0);
                worst = worst.max(d.norm_sqr());
            }
        }
        worst.sqrt()
    }
}

/// Eigendecomposition of a Hermitian operator, eigenvalues sorted descending.
/// Degenerate subspaces return an arbitrary orthonormal basis.
pub fn eigendecompose(m: &Observable) -> Result<Spectrum> {
    eigen_hermitian(m.raw())
}

pub(crate) fn eigen_hermitian(m: &CMat) -> Result<Spectrum> {
    let n = m.nrows();
    if is_exactly_diagonal(m) {
        let mut idx: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
        idx.sort_by(|&a, &b| diag[b].partial_cmp(&diag[a]).expect("finite eigenvalues"));
        let values: Vec<f64> = idx.iter().map(|&i| diag[i]).collect();
        let vectors = CMat::from_fn(n, n, |i, j| {
            if i == idx[j] {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        return Ok(Spectrum {
            values,
            vectors: ComplexMatrix { data: vectors },
        });
    }

    // Symmetrize first: downstream formulas assume exact Hermiticity.
    let sym = symmetrize_raw(m);
    let eigen = nalgebra::SymmetricEigen::try_new(sym, f64::EPSILON, EIGEN_MAX_ITER).ok_or(
        Error::EigenNonConvergence {
            iterations: EIGEN_MAX_ITER,
            dim: n,
        },
    )?;
    let mut idx: Vec<usize> = (0..n).collect();
    let vals = &eigen.eigenvalues;
    idx.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).expect("finite eigenvalues"));
    let values: Vec<f64> = idx.iter().map(|&i| vals[i]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| eigen.eigenvectors[(i, idx[j])]);
    Ok(Spectrum {
        values,
        vectors: ComplexMatrix { data: vectors },
    })
}

/// Principal square root of a PSD state; eigenvalues in `[-eps_psd, 0)` are
/// clamped to zero before the root.
pub fn psd_sqrt(rho: &DensityMatrix) -> Result<Observable> {
    let spectrum = rho.spectrum()?;
    let v = spectrum.vectors.raw();
    let n = rho.dim();
    let mut scaled = v.clone();
    for j in 0..n {
        let root = spectrum.values[j].max(0.0).sqrt();
        for i in 0..n {
            scaled[(i, j)] *= Complex64::new(root, 0.0);
        }
    }
    let data = mul_raw(&scaled, &v.adjoint());
    Ok(Observable::trusted(symmetrize_raw(&data)))
}

/// Kronecker product; row index convention `i = i_a * dim(b) + i_b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = a.dim() * b.dim();
    if dim > MAX_TENSOR_DIM {
        return Err(Error::DimensionOverflow {
            dim,
            max: MAX_TENSOR_DIM,
        });
    }
    Ok(ComplexMatrix {
        data: a.raw().kronecker(b.raw()),
    })
}

/// `tr(m1 m2 ... mk)` folding a single accumulator; the final factor is
/// contracted without forming the last product.
pub fn trace_product(ms: &[&ComplexMatrix]) -> Result<Complex64> {
    match ms {
        [] => Err(Error::DimensionMismatch { left: 0, right: 0 }),
        [only] => Ok(only.trace()),
        [init @ .., last] => {
            let dim = ms[0].dim();
            for m in ms {
                if m.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        left: dim,
                        right: m.dim(),
                    });
                }
            }
            let mut acc = init[0].raw().clone();
            for m in &init[1..] {
                acc = mul_raw(&acc, m.raw());
            }
            Ok(trace_of_product(&acc, last.raw()))
        }
    }
}

/// `AB - BA`; anti-Hermitian for Hermitian inputs.
pub fn commutator(a: &Observable, b: &Observable) -> Result<ComplexMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let ab = mul_raw(a.raw(), b.raw());
    let ba = mul_raw(b.raw(), a.raw());
    Ok(ComplexMatrix { data: ab - ba })
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series
/// (term tolerance 1e-12). Diagonal inputs exponentiate elementwise.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix {
        data: expm_raw(a.raw()),
    }
}

pub(crate) fn expm_raw(a: &CMat) -> CMat {
    let n = a.nrows();
    if is_exactly_diagonal(a) {
        return CMat::from_fn(n, n, |i, j| {
            if i == j {
                a[(i, i)].exp()
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
    }

    let norm = inf_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(0.5f64.powi(squarings as i32), 0.0);
    let scaled = a.map(|z| z * scale);

    let mut acc = CMat::identity(n, n);
    let mut term = CMat::identity(n, n);
    for k in 1..200 {
        term = mul_raw(&term, &scaled).map(|z| z / k as f64);
        acc += &term;
        let term_max = term.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max).sqrt();
        let acc_max = acc.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max).sqrt();
        if term_max <= EXPM_SERIES_TOL * acc_max.max(1.0) {
            break;
        }
    }
    for _ in 0..squarings {
        acc = mul_raw(&acc, &acc);
    }
    acc
}

pub(crate) fn symmetrize(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix {
        data: symmetrize_raw(m.raw()),
    }
}

fn symmetrize_raw(m: &CMat) -> CMat {
    let adj = m.adjoint();
    (m + adj).map(|z| z * 0.5)
}

pub(crate) fn is_exactly_diagonal(m: &CMat) -> bool {
    let n = m.nrows();
    for j in 0..n {
        for i in 0..n {
            if i != j && m[(i, j)] != Complex64::new(0.0, 0.0) {
                return false;
            }
        }
    }
    true
}

/// Half-bandwidth of the matrix: max |i - j| over nonzero entries.
pub(crate) fn bandwidth(m: &CMat) -> usize {
    let n = m.nrows();
    let mut bw = 0usize;
    for j in 0..n {
        for i in 0..n {
            if m[(i, j)] != Complex64::new(0.0, 0.0) {
                bw = bw.max(i.abs_diff(j));
            }
        }
    }
    bw
}

/// Dense product that routes through a banded kernel when the right factor has
/// a narrow band (ladder operators, quadratures, diagonal generators).
pub(crate) fn mul_raw(a: &CMat, b: &CMat) -> CMat {
    let n = a.nrows();
    if n >= 64 {
        let bw = bandwidth(b);
        if bw * 8 <= n {
            return mul_banded_right(a, b, bw);
        }
        let bwa = bandwidth(a);
        if bwa * 8 <= n {
            return mul_banded_left(a, b, bwa);
        }
    }
    a * b
}

fn mul_banded_right(a: &CMat, b: &CMat, bw: usize) -> CMat {
    let n = a.nrows();
    let mut out = CMat::zeros(n, n);
    for j in 0..n {
        let lo = j.saturating_sub(bw);
        let hi = (j + bw + 1).min(n);
        for k in lo..hi {
            let bkj = b[(k, j)];
            if bkj == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in 0..n {
                out[(i, j)] += a[(i, k)] * bkj;
            }
        }
    }
    out
}

fn mul_banded_left(a: &CMat, b: &CMat, bw: usize) -> CMat {
    let n = a.nrows();
    let mut out = CMat::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let bkj = b[(k, j)];
            if bkj == Complex64::new(0.0, 0.0) {
                continue;
            }
            let lo = k.saturating_sub(bw);
            let hi = (k + bw + 1).min(n);
            for i in lo..hi {
                out[(i, j)] += a[(i, k)] * bkj;
            }
        }
    }
    out
}

/// `tr(AB)` in O(n^2) without forming the product.
pub(crate) fn trace_of_product(a: &CMat, b: &CMat) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

fn inf_norm(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += m[(i, j)].norm();
        }
        worst = worst.max(row);
    }
    worst
}

/// `U M U^dag`; diagonal `U` is applied elementwise.
pub(crate) fn conjugate_by(u: &CMat, m: &CMat) -> CMat {
    if is_exactly_diagonal(u) {
        let n = m.nrows();
        CMat::from_fn(n, n, |i, j| u[(i, i)] * m[(i, j)] * u[(j, j)].conj())
    } else {
        let um = mul_raw(u, m);
        mul_raw(&um, &u.adjoint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigendecompose_diagonal_probe() {
        let m = Observable::diagonal(&[0.75, 0.25]);
        let s = eigendecompose(&m).unwrap();
        assert_eq!(s.values, vec![0.75, 0.25]);
        assert_eq!(s.vector(0), vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(s.vector(1), vec![c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn eigendecompose_degenerate_identity() {
        let m = Observable::new(ComplexMatrix::identity(3)).unwrap();
        let s = eigendecompose(&m).unwrap();
        for v in &s.values {
            assert!((v - 1.0).abs() < 1e-12);
        }
        assert!(s.orthonormality_error() < 1e-8);
        assert!(s.reconstruction_error(m.matrix()) < 1e-8);
    }

    #[test]
    fn eigendecompose_pauli_x() {
        // 2x2 closed-form oracle: eigenvalues +-1, vectors (1, +-1)/sqrt(2).
        let s = eigendecompose(&Observable::pauli_x()).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-12);
        assert!((s.values[1] + 1.0).abs() < 1e-12);
        let v0 = s.vector(0);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        // Up to a global phase the plus vector has |components| = 1/sqrt(2)
        // and equal entries.
        assert!((v0[0].norm() - inv_sqrt2).abs() < 1e-10);
        assert!((v0[0] - v0[1]).norm() < 1e-10);
        let v1 = s.vector(1);
        assert!((v1[0] + v1[1]).norm() < 1e-10);
        assert!(s.reconstruction_error(Observable::pauli_x().matrix()) < 1e-10);
    }

    #[test]
    fn psd_sqrt_diagonal() {
        let rho = DensityMatrix::from_probabilities(&[0.75, 0.25]).unwrap();
        let root = psd_sqrt(&rho).unwrap();
        assert!((root.matrix().get(0, 0).re - 0.75f64.sqrt()).abs() < 1e-12);
        assert!((root.matrix().get(1, 1).re - 0.5).abs() < 1e-12);
        assert!(root.matrix().get(0, 1).norm() < 1e-14);
    }

    #[test]
    fn psd_sqrt_pure_projector_idempotent() {
        let rho = DensityMatrix::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let root = psd_sqrt(&rho).unwrap();
        let diff = root.matrix().sub(rho.matrix()).unwrap();
        assert!(diff.max_abs() < 1e-10);
    }

    #[test]
    fn tensor_identities() {
        let i2 = ComplexMatrix::identity(2);
        let t = tensor(&i2, &i2).unwrap();
        let diff = t.sub(&ComplexMatrix::identity(4)).unwrap();
        assert!(diff.max_abs() == 0.0);

        let d = Observable::diagonal(&[0.0, 1.0]);
        let t = tensor(d.matrix(), &i2).unwrap();
        for (k, expect) in [0.0, 0.0, 1.0, 1.0].iter().enumerate() {
            assert_eq!(t.get(k, k), c(*expect, 0.0));
        }
    }

    #[test]
    fn tensor_overflow_guard() {
        let big = ComplexMatrix::zeros(100);
        let err = tensor(&big, &big).unwrap_err();
        assert!(matches!(err, Error::DimensionOverflow { .. }));
    }

    #[test]
    fn trace_product_basics() {
        let i2 = ComplexMatrix::identity(2);
        let tr = trace_product(&[&i2, &i2]).unwrap();
        assert!((tr - c(2.0, 0.0)).norm() < 1e-14);

        let sx = Observable::pauli_x();
        let sy = Observable::pauli_y();
        let tr = trace_product(&[sx.matrix(), sy.matrix()]).unwrap();
        assert!(tr.norm() < 1e-14);
    }

    #[test]
    fn commutator_pauli_algebra() {
        // [sx, sy] = 2i sz from the Pauli multiplication table.
        let comm = commutator(&Observable::pauli_x(), &Observable::pauli_y()).unwrap();
        let expect = Observable::pauli_z().matrix().scale(c(0.0, 2.0));
        assert!(comm.sub(&expect).unwrap().max_abs() < 1e-14);

        let sx = Observable::pauli_x();
        let zero = commutator(&sx, &sx).unwrap();
        assert!(zero.max_abs() == 0.0);
    }

    #[test]
    fn expm_diagonal_and_nilpotent() {
        let d = Observable::diagonal(&[1.0, 2.0]);
        let e = expm(d.matrix());
        assert!((e.get(0, 0).re - 1f64.exp()).abs() < 1e-12);
        assert!((e.get(1, 1).re - 2f64.exp()).abs() < 1e-10);

        // exp of a strictly upper triangular 2x2 truncates exactly.
        let n = ComplexMatrix::from_row_major(2, &[c(0.0, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let e = expm(&n);
        assert!((e.get(0, 1).re - 0.3).abs() < 1e-14);
        assert!((e.get(0, 0).re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = ComplexMatrix::from_row_major(
            2,
            &[c(0.6, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.6, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::InvalidTrace { .. })
        ));

        let not_psd = ComplexMatrix::from_row_major(
            2,
            &[c(1.2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.2, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(not_psd),
            Err(Error::NotPsd { .. })
        ));

        let not_herm = ComplexMatrix::from_row_major(
            2,
            &[c(0.5, 0.0), c(0.1, 0.0), c(0.3, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(not_herm),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigendecompose_complex_hermitian_roundtrip() {
        let n = 8;
        // Deterministic complex Hermitian matrix with non-trivial phases.
        let data = CMat::from_fn(n, n, |i, j| {
            let re = ((i * 3 + j * 7) % 11) as f64 * 0.1 - 0.5;
            let im = ((i * 5 + j * 2) % 7) as f64 * 0.1 - 0.3;
            c(re, im)
        });
        let m = Observable::new(symmetrize(&ComplexMatrix::new(data).unwrap())).unwrap();
        let s = eigendecompose(&m).unwrap();
        assert!(s.reconstruction_error(m.matrix()) < 1e-10);
        assert!(s.orthonormality_error() < 1e-10);
        for w in s.values.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn banded_product_matches_dense() {
        let n = 80;
        // Tridiagonal-ish banded factor against a dense one.
        let banded = CMat::from_fn(n, n, |i, j| {
            if i.abs_diff(j) <= 1 {
                c(0.3 + i as f64 * 0.01, 0.1 - j as f64 * 0.005)
            } else {
                c(0.0, 0.0)
            }
        });
        let dense = CMat::from_fn(n, n, |i, j| c((i * 7 % 13) as f64 * 0.1, (j * 5 % 11) as f64 * 0.1));
        let fast = mul_raw(&dense, &banded);
        let slow = &dense * &banded;
        let err = (&fast - &slow).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err < 1e-12);
        let fast = mul_raw(&banded, &dense);
        let slow = &banded * &dense;
        let err = (&fast - &slow).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }
}
