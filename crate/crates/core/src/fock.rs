//! Truncated single- and two-mode Fock-space builders with explicit
//! truncation-quality accounting. Truncated states are renormalized and the
//! lost probability mass is always reported; builders fail hard when the
//! deficit exceeds [`DEFICIT_LIMIT`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::{
    expm_raw, mul_raw, tensor, CMat, ComplexMatrix, DensityMatrix, Observable,
};

/// Hard ceiling on the acceptable truncation deficit.
pub const DEFICIT_LIMIT: f64 = 1e-6;

/// Deficit the default-cutoff helpers aim for (well under the hard limit).
const TARGET_DEFICIT: f64 = 1e-9;

/// Single-mode truncated Fock space `|0> .. |cutoff-1>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    cutoff: usize,
}

impl FockSpace {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::Domain {
                name: "cutoff",
                value: cutoff as f64,
                domain: ">= 2",
            });
        }
        Ok(Self { cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.cutoff
    }
}

/// Probability mass lost above the cutoff, recorded before renormalization.
#[derive(Clone, Copy, Debug)]
pub struct TruncationReport {
    pub trace_deficit: f64,
    pub renormalized: bool,
}

impl TruncationReport {
    fn new(deficit: f64) -> Self {
        Self {
            trace_deficit: deficit.clamp(0.0, 1.0),
            renormalized: true,
        }
    }

    fn check(self, cutoff: usize) -> Result<Self> {
        if self.trace_deficit > DEFICIT_LIMIT {
            return Err(Error::TruncationDeficit {
                deficit: self.trace_deficit,
                limit: DEFICIT_LIMIT,
                cutoff,
            });
        }
        Ok(self)
    }
}

/// Annihilation operator: `a[n-1, n] = sqrt(n)`.
pub fn annihilation(space: FockSpace) -> ComplexMatrix {
    let c = space.cutoff();
    ComplexMatrix::from_fn(c, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .expect("ladder operator entries are finite")
}

/// Creation operator `a^dag`.
pub fn creation(space: FockSpace) -> ComplexMatrix {
    annihilation(space).adjoint()
}

/// Number operator `a^dag a = diag(0, 1, ..., cutoff-1)`.
pub fn number(space: FockSpace) -> Observable {
    let values: Vec<f64> = (0..space.cutoff()).map(|n| n as f64).collect();
    Observable::diagonal(&values)
}

/// Cartesian quadratures `X = (a + a^dag)/sqrt(2)`, `Y = i (a^dag - a)/sqrt(2)`.
pub fn quadratures(space: FockSpace) -> (Observable, Observable) {
    let a = annihilation(space);
    let ad = creation(space);
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let x = a.add(&ad).expect("same dim").scale(inv_sqrt2);
    let y = ad
        .sub(&a)
        .expect("same dim")
        .scale(Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2));
    (
        Observable::trusted(x.raw().clone()),
        Observable::trusted(y.raw().clone()),
    )
}

/// Vacuum projector `|0><0|`.
pub fn vacuum(space: FockSpace) -> DensityMatrix {
    let mut amps = vec![Complex64::new(0.0, 0.0); space.cutoff()];
    amps[0] = Complex64::new(1.0, 0.0);
    DensityMatrix::from_pure(&amps).expect("vacuum amplitudes are unit norm")
}

/// Coherent state `|alpha>` with amplitudes `e^{-|a|^2/2} a^n / sqrt(n!)`.
pub fn coherent_state(
    alpha: Complex64,
    space: FockSpace,
) -> Result<(DensityMatrix, TruncationReport)> {
    let c = space.cutoff();
    let mut amps = Vec::with_capacity(c);
    let mut cur = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..c {
        amps.push(cur);
        cur *= alpha / ((n + 1) as f64).sqrt();
    }
    pure_from_truncated(&amps, space)
}

/// Squeezed vacuum; `r > 0` squeezes `Y` (`dY^2 = e^{-2r}/2`, `dX^2 = e^{2r}/2`).
/// Even-photon amplitudes follow `c_{2(m+1)}/c_{2m} = tanh(r) sqrt((2m+1)/(2m+2))`.
pub fn squeezed_vacuum(r: f64, space: FockSpace) -> Result<(DensityMatrix, TruncationReport)> {
    let c = space.cutoff();
    let t = r.tanh();
    let mut amps = vec![Complex64::new(0.0, 0.0); c];
    let mut cur = 1.0 / r.cosh().sqrt();
    let mut m = 0usize;
    while 2 * m < c {
        amps[2 * m] = Complex64::new(cur, 0.0);
        cur *= t * ((2 * m + 1) as f64 / (2 * m + 2) as f64).sqrt();
        m += 1;
    }
    pure_from_truncated(&amps, space)
}

/// Thermal state with diagonal `(1 - xi) xi^n`; the deficit is `xi^cutoff`.
pub fn thermal_state(xi: f64, space: FockSpace) -> Result<(DensityMatrix, TruncationReport)> {
    if !(0.0..1.0).contains(&xi) {
        return Err(Error::Domain {
            name: "xi",
            value: xi,
            domain: "[0, 1)",
        });
    }
    let c = space.cutoff();
    let probs: Vec<f64> = (0..c).map(|n| (1.0 - xi) * xi.powi(n as i32)).collect();
    let deficit = xi.powi(c as i32);
    let report = TruncationReport::new(deficit).check(c)?;
    Ok((DensityMatrix::from_probabilities(&probs)?, report))
}

/// Displacement operator `exp(alpha a^dag - conj(alpha) a)` on the truncated space.
pub fn displacement(alpha: Complex64, space: FockSpace) -> ComplexMatrix {
    let a = annihilation(space);
    let ad = creation(space);
    let gen = ad.scale(alpha).sub(&a.scale(alpha.conj())).expect("same dim");
    ComplexMatrix::from_raw(expm_raw(gen.raw()))
}

/// Squeeze operator `exp((r/2)(a^dag^2 - a^2))`; positive `r` squeezes `Y`.
pub fn squeeze_operator(r: f64, space: FockSpace) -> ComplexMatrix {
    let a = annihilation(space);
    let a2 = mul_raw(a.raw(), a.raw());
    let ad2 = a2.adjoint();
    let gen = (ad2 - a2).map(|z| z * (r / 2.0));
    ComplexMatrix::from_raw(expm_raw(&gen))
}

/// Pure Gaussian state centered at `(x0, 0)` with `Y` squeezed by `r`: the
/// truncated displacement `exp((x0/sqrt(2))(a^dag - a))` applied to squeezed
/// vacuum, built with working-space margin and renormalized.
pub fn displaced_squeezed(
    x0: f64,
    r: f64,
    space: FockSpace,
) -> Result<(DensityMatrix, TruncationReport)> {
    let c = space.cutoff();
    let work = FockSpace::new(c + work_margin(c))?;
    let (sq, _) = squeezed_vacuum(r, work)?;
    let d = displacement(Complex64::new(x0 / std::f64::consts::SQRT_2, 0.0), work);
    // Squeezed vacuum is pure: recover its amplitude vector from the first
    // column of the projector.
    let sq_raw = sq.raw();
    let norm = sq_raw[(0, 0)].re.sqrt();
    let mut psi = vec![Complex64::new(0.0, 0.0); work.cutoff()];
    for (i, out) in psi.iter_mut().enumerate() {
        *out = sq_raw[(i, 0)] / norm;
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); work.cutoff()];
    for (i, out) in amps.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, amp) in psi.iter().enumerate() {
            acc += d.get(i, k) * amp;
        }
        *out = acc;
    }
    pure_from_truncated(&amps[..c], space)
}

/// Mixed axis-aligned Gaussian state: displaced, squeezed thermal state with
/// the requested first and second moments, built with working-space margin.
pub fn gaussian_state(
    mean_x: f64,
    mean_y: f64,
    dx: f64,
    dy: f64,
    space: FockSpace,
) -> Result<(DensityMatrix, TruncationReport)> {
    if dx <= 0.0 || dy <= 0.0 {
        return Err(Error::Domain {
            name: "dx/dy",
            value: dx.min(dy),
            domain: "> 0",
        });
    }
    let p = dx * dy;
    if p < 0.5 - 1e-12 {
        return Err(Error::Domain {
            name: "purity dx*dy",
            value: p,
            domain: ">= 1/2",
        });
    }
    let c = space.cutoff();
    let work = FockSpace::new(c + work_margin(c))?;
    let xi = ((2.0 * p - 1.0) / (2.0 * p + 1.0)).max(0.0);
    let probs: Vec<f64> = (0..work.cutoff())
        .map(|n| (1.0 - xi) * xi.powi(n as i32))
        .collect();
    let mut rho = CMat::zeros(work.cutoff(), work.cutoff());
    let total: f64 = probs.iter().sum();
    for (n, pr) in probs.iter().enumerate() {
        rho[(n, n)] = Complex64::new(pr / total, 0.0);
    }
    let r = 0.5 * (dx / dy).ln();
    if r.abs() > 1e-15 {
        let s = squeeze_operator(r, work);
        rho = mul_raw(&mul_raw(s.raw(), &rho), &s.raw().adjoint());
    }
    let alpha = Complex64::new(mean_x, mean_y) / std::f64::consts::SQRT_2;
    if alpha.norm_sqr() > 0.0 {
        let d = displacement(alpha, work);
        rho = mul_raw(&mul_raw(d.raw(), &rho), &d.raw().adjoint());
    }
    let block = CMat::from_fn(c, c, |i, j| rho[(i, j)]);
    let kept: f64 = (0..c).map(|i| block[(i, i)].re).sum();
    let report = TruncationReport::new(1.0 - kept).check(c)?;
    Ok((DensityMatrix::trusted(block), report))
}

/// Two-mode product state `rho1 (x) rho2`.
pub fn two_mode(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<DensityMatrix> {
    let prod = tensor(rho1.matrix(), rho2.matrix())?;
    Ok(DensityMatrix::trusted(prod.raw().clone()))
}

/// Photon-number difference `J_z = N (x) 1 - 1 (x) N`.
pub fn jz(space1: FockSpace, space2: FockSpace) -> Result<Observable> {
    let n1 = tensor(
        number(space1).matrix(),
        &ComplexMatrix::identity(space2.dim()),
    )?;
    let n2 = tensor(
        &ComplexMatrix::identity(space1.dim()),
        number(space2).matrix(),
    )?;
    Ok(Observable::trusted(n1.sub(&n2)?.raw().clone()))
}

/// Total photon number `N (x) 1 + 1 (x) N` (witness threshold operator).
pub fn number_sum(space1: FockSpace, space2: FockSpace) -> Result<Observable> {
    let n1 = tensor(
        number(space1).matrix(),
        &ComplexMatrix::identity(space2.dim()),
    )?;
    let n2 = tensor(
        &ComplexMatrix::identity(space1.dim()),
        number(space2).matrix(),
    )?;
    Ok(Observable::trusted(n1.add(&n2)?.raw().clone()))
}

/// Baseline cutoff heuristic for Gaussian-tailed photon statistics:
/// `max(20, ceil(n + 8 sqrt(n + 1) + 10))`.
pub fn cutoff_for_mean_photon(mean_photon: f64) -> usize {
    let n = mean_photon.max(0.0);
    20usize.max((n + 8.0 * (n + 1.0).sqrt() + 10.0).ceil() as usize)
}

/// Default cutoff for a coherent state.
pub fn coherent_cutoff(alpha: Complex64) -> usize {
    cutoff_for_mean_photon(alpha.norm_sqr())
}

/// Default cutoff for a thermal state. Geometric tails are heavier than the
/// Gaussian baseline, so the deficit bound `xi^c` drives the choice.
pub fn thermal_cutoff(xi: f64) -> usize {
    let base = cutoff_for_mean_photon(if xi < 1.0 { xi / (1.0 - xi) } else { 0.0 });
    if xi <= 0.0 || xi >= 1.0 {
        return base;
    }
    let tail = (TARGET_DEFICIT.ln() / xi.ln()).ceil() as usize;
    base.max(tail + 2)
}

/// Default cutoff for squeezed vacuum: exact even-amplitude tail scan.
pub fn squeezed_cutoff(r: f64) -> usize {
    let n_mean = r.sinh().powi(2);
    let base = cutoff_for_mean_photon(n_mean);
    base.max(squeezed_tail_cutoff(r, TARGET_DEFICIT))
}

/// Default cutoff for a displaced squeezed state.
pub fn displaced_squeezed_cutoff(x0: f64, r: f64) -> usize {
    squeezed_cutoff(r) + displacement_margin(x0 * x0 / 2.0)
}

/// Default cutoff for a general axis-aligned Gaussian state.
pub fn gaussian_cutoff(mean_x: f64, mean_y: f64, dx: f64, dy: f64) -> usize {
    let u = dx * dx;
    let v = dy * dy;
    let p = dx * dy;
    let _ = p;
    let mean_n = 0.5 * (u + v + mean_x * mean_x + mean_y * mean_y - 1.0);
    let base = cutoff_for_mean_photon(mean_n.max(0.0));
    // Exact per-photon tail ratio of a zero-mean Gaussian state, from the
    // singularity of tr(rho z^N) = 2 / sqrt(A_u(z) A_v(z)) with
    // A_w(z) = (2w + 1) - z (2w - 1): kappa = (2w - 1)/(2w + 1) at the larger
    // variance. Reduces to xi for thermal states and tanh(r) for squeezed
    // vacuum.
    let big = u.max(v);
    let kappa = ((2.0 * big - 1.0) / (2.0 * big + 1.0)).clamp(0.0, 1.0 - 1e-12);
    let tail = if kappa > 0.0 {
        (1.15 * TARGET_DEFICIT.ln() / kappa.ln()).ceil() as usize
    } else {
        0
    };
    let disp = displacement_margin(0.5 * (mean_x * mean_x + mean_y * mean_y));
    base.max(tail + disp + 8)
}

fn squeezed_tail_cutoff(r: f64, target: f64) -> usize {
    let t2 = r.tanh().powi(2);
    if t2 == 0.0 {
        return 2;
    }
    let mut p = 1.0 / r.cosh();
    let mut cum = p;
    let mut m = 0usize;
    while 1.0 - cum > target && m < 10_000 {
        p *= t2 * (2 * m + 1) as f64 / (2 * m + 2) as f64;
        cum += p;
        m += 1;
    }
    2 * m + 6
}

fn displacement_margin(mean_photons: f64) -> usize {
    if mean_photons <= 0.0 {
        0
    } else {
        (mean_photons + 8.0 * (mean_photons + 1.0).sqrt()).ceil() as usize
    }
}

fn work_margin(cutoff: usize) -> usize {
    (cutoff / 2).max(16)
}

fn pure_from_truncated(
    amps: &[Complex64],
    space: FockSpace,
) -> Result<(DensityMatrix, TruncationReport)> {
    let kept: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    let report = TruncationReport::new(1.0 - kept).check(space.cutoff())?;
    let trimmed = &amps[..space.cutoff().min(amps.len())];
    Ok((DensityMatrix::from_pure(trimmed)?, report))
}
