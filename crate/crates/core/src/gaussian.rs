//! Closed forms for axis-aligned Gaussian probes: exact Hilbert-Schmidt
//! distances under displacement and phase rotation, the small-signal
//! resolution formulas, and constrained optimization at fixed mean photon
//! number.
//!
//! All formulas are written in quadrature variances `u = dx^2`, `v = dy^2`
//! with purity parameter `p = dx dy` (`tr(rho^2) = 1/(2p)`, `p = 1/2` pure).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{self, FockSpace, TruncationReport};
use crate::hermitian::DensityMatrix;

/// Axis-aligned Gaussian phase-space state: means and standard deviations of
/// the two quadratures, with `dx * dy >= 1/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisAlignedGaussian {
    mean_x: f64,
    mean_y: f64,
    dx: f64,
    dy: f64,
}

/// Result of a constrained Gaussian optimization: the optimal state, the
/// exact resolution value from the closed form (with the energy constraint
/// kept at `2n + 1`), and the large-`n` asymptotic target for comparison.
#[derive(Clone, Copy, Debug)]
pub struct GaussianOptimum {
    pub state: AxisAlignedGaussian,
    pub lambda_sq: f64,
    pub asymptotic_lambda_sq: f64,
}

impl AxisAlignedGaussian {
    pub fn new(mean_x: f64, mean_y: f64, dx: f64, dy: f64) -> Result<Self> {
        if !(dx > 0.0 && dy > 0.0 && dx.is_finite() && dy.is_finite()) {
            return Err(Error::Domain {
                name: "dx/dy",
                value: dx.min(dy),
                domain: "> 0",
            });
        }
        if dx * dy < 0.5 - 1e-12 {
            return Err(Error::Domain {
                name: "dx*dy",
                value: dx * dy,
                domain: ">= 1/2",
            });
        }
        Ok(Self {
            mean_x,
            mean_y,
            dx,
            dy,
        })
    }

    pub fn vacuum() -> Self {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            mean_x: 0.0,
            mean_y: 0.0,
            dx: w,
            dy: w,
        }
    }

    /// Coherent state: vacuum widths displaced to `(sqrt(2) Re a, sqrt(2) Im a)`.
    pub fn coherent(alpha: Complex64) -> Self {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            mean_x: std::f64::consts::SQRT_2 * alpha.re,
            mean_y: std::f64::consts::SQRT_2 * alpha.im,
            dx: w,
            dy: w,
        }
    }

    /// Squeezed vacuum: `dx = e^r / sqrt(2)`, `dy = e^{-r} / sqrt(2)`.
    pub fn squeezed_vacuum(r: f64) -> Self {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            mean_x: 0.0,
            mean_y: 0.0,
            dx: w * r.exp(),
            dy: w * (-r).exp(),
        }
    }

    /// Thermal state widths `dx^2 = dy^2 = (1 + xi) / (2 (1 - xi))`.
    pub fn thermal(xi: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&xi) {
            return Err(Error::Domain {
                name: "xi",
                value: xi,
                domain: "[0, 1)",
            });
        }
        let w = ((1.0 + xi) / (2.0 * (1.0 - xi))).sqrt();
        Ok(Self {
            mean_x: 0.0,
            mean_y: 0.0,
            dx: w,
            dy: w,
        })
    }

    pub fn mean_x(&self) -> f64 {
        self.mean_x
    }

    pub fn mean_y(&self) -> f64 {
        self.mean_y
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    /// Purity parameter `p = dx dy`; `tr(rho^2) = 1/(2p)`.
    pub fn purity(&self) -> f64 {
        self.dx * self.dy
    }

    /// Mean photon number `(dx^2 + dy^2 + <X>^2 + <Y>^2 - 1) / 2`.
    pub fn mean_photon(&self) -> f64 {
        let n = 0.5
            * (self.dx * self.dx + self.dy * self.dy + self.mean_x * self.mean_x
                + self.mean_y * self.mean_y
                - 1.0);
        n.max(0.0)
    }

    /// Exact squared Hilbert-Schmidt distance between the state and its
    /// `Y`-displacement by `chi`: `(1/p)(1 - exp(-chi^2 / (4 dy^2)))`.
    pub fn hs_displacement_sq(&self, chi: f64) -> f64 {
        let v = self.dy * self.dy;
        (1.0 / self.purity()) * (1.0 - (-chi * chi / (4.0 * v)).exp())
    }

    /// Small-signal resolution for the `X` generator: `1 / (8 dx dy^3)`.
    pub fn lambda_sq_x(&self) -> f64 {
        1.0 / (8.0 * self.dx * self.dy.powi(3))
    }

    /// Small-signal resolution for the `Y` generator: `1 / (8 dy dx^3)`.
    pub fn lambda_sq_y(&self) -> f64 {
        1.0 / (8.0 * self.dy * self.dx.powi(3))
    }

    /// Exact squared Hilbert-Schmidt distance between the state (centered at
    /// `(x0, 0)`) and its rotation by `chi`.
    pub fn hs_phase_sq(&self, chi: f64) -> Result<f64> {
        self.require_on_axis()?;
        let u = self.dx * self.dx;
        let v = self.dy * self.dy;
        let x0 = self.mean_x;
        let half = chi / 2.0;
        let s2 = half.sin() * half.sin();
        let c2 = half.cos() * half.cos();
        let a = -x0 * x0 * s2 / (u * s2 + v * c2);
        let b = (u * u + v * v + 6.0 * u * v
            - (u - v) * (u - v) * (2.0 * chi).cos())
            / (8.0 * u * v);
        Ok((1.0 / self.purity()) * (1.0 - a.exp() / b.sqrt()))
    }

    /// Closed-form rotation resolution
    /// `[(dx^2 - dy^2)^2 + 2 x0^2 dx^2] / (16 dx^2 dy^2)` for states centered
    /// at `(x0, 0)`.
    ///
    /// For mixed states this expression equals the purity parameter `p` times
    /// the trace functional `lambda_sq(rho, N)`; the crate tests pin that
    /// measured relation against Fock numerics.
    pub fn lambda_sq_n(&self) -> Result<f64> {
        self.require_on_axis()?;
        let u = self.dx * self.dx;
        let v = self.dy * self.dy;
        let x0 = self.mean_x;
        Ok(((u - v) * (u - v) + 2.0 * x0 * x0 * u) / (16.0 * u * v))
    }

    /// Builds the truncated Fock-space density matrix with these moments.
    pub fn to_fock(&self, space: FockSpace) -> Result<(DensityMatrix, TruncationReport)> {
        fock::gaussian_state(self.mean_x, self.mean_y, self.dx, self.dy, space)
    }

    /// Family-aware default cutoff for [`AxisAlignedGaussian::to_fock`].
    pub fn default_cutoff(&self) -> usize {
        fock::gaussian_cutoff(self.mean_x, self.mean_y, self.dx, self.dy)
    }

    fn require_on_axis(&self) -> Result<()> {
        if self.mean_y != 0.0 {
            return Err(Error::Domain {
                name: "mean_y",
                value: self.mean_y,
                domain: "= 0 for rotation formulas",
            });
        }
        Ok(())
    }
}

/// Optimal Gaussian probe for `Y`-displacement signals at fixed mean photon
/// number: all energy goes into squeezing (`x0 = y0 = 0`, `p = 1/2`,
/// `dy^2 = [2n+1 - sqrt((2n+1)^2 - 1)]/2`). The analytic optimum is verified
/// against a dense feasible grid with golden-section refinement.
pub fn optimize_displacement(n: f64) -> Result<GaussianOptimum> {
    if n <= 0.0 || !n.is_finite() {
        return Err(Error::Domain {
            name: "n",
            value: n,
            domain: "> 0",
        });
    }
    let s = 2.0 * n + 1.0;
    let root = (s * s - 1.0).sqrt();
    let u = (s + root) / 2.0;
    // Conjugate form of (s - root)/2; avoids cancellation for large n.
    let v = 1.0 / (4.0 * u);
    let state = AxisAlignedGaussian::new(0.0, 0.0, u.sqrt(), v.sqrt())?;
    let best = state.lambda_sq_x();

    let grid_best = grid_search(s, |w, p| {
        let (u, v) = split_variances(s - w, p);
        let direct = lambda_x_from(u, v);
        let swapped = lambda_x_from(v, u);
        direct.max(swapped)
    });
    let refine = golden_max(
        |p| {
            let (u, v) = split_variances(s, p);
            lambda_x_from(u, v)
        },
        0.5,
        s / 2.0,
    );
    let verified = grid_best.max(refine);
    debug_assert!(
        best >= verified - 1e-9 * best.abs().max(1.0),
        "analytic displacement optimum {best} beaten by search {verified}"
    );

    Ok(GaussianOptimum {
        state,
        lambda_sq: best,
        asymptotic_lambda_sq: 2.0 * n,
    })
}

/// Optimal Gaussian probe for phase-shift signals at fixed mean photon
/// number: the same squeezed vacuum (`x0 = 0`, `p = 1/2`), evaluated with the
/// closed-form rotation resolution.
pub fn optimize_phase(n: f64) -> Result<GaussianOptimum> {
    if n <= 0.0 || !n.is_finite() {
        return Err(Error::Domain {
            name: "n",
            value: n,
            domain: "> 0",
        });
    }
    let s = 2.0 * n + 1.0;
    let root = (s * s - 1.0).sqrt();
    let u = (s + root) / 2.0;
    // Conjugate form of (s - root)/2; avoids cancellation for large n.
    let v = 1.0 / (4.0 * u);
    let state = AxisAlignedGaussian::new(0.0, 0.0, u.sqrt(), v.sqrt())?;
    let best = state.lambda_sq_n()?;

    let grid_best = grid_search(s, |w, p| {
        let (u, v) = split_variances(s - w, p);
        let direct = lambda_n_from(u, v, w);
        let swapped = lambda_n_from(v, u, w);
        direct.max(swapped)
    });
    let refine_p = golden_max(
        |p| {
            let (u, v) = split_variances(s, p);
            lambda_n_from(u, v, 0.0)
        },
        0.5,
        s / 2.0,
    );
    let refine_w = golden_max(
        |w| {
            let (u, v) = split_variances(s - w, 0.5);
            lambda_n_from(u, v, w)
        },
        0.0,
        s - 1.0,
    );
    let verified = grid_best.max(refine_p).max(refine_w);
    debug_assert!(
        best >= verified - 1e-9 * best.abs().max(1.0),
        "analytic phase optimum {best} beaten by search {verified}"
    );

    Ok(GaussianOptimum {
        state,
        lambda_sq: best,
        asymptotic_lambda_sq: n * n,
    })
}

/// Variance pair with sum `m` and product `p^2`, small component second.
fn split_variances(m: f64, p: f64) -> (f64, f64) {
    let disc = (m * m - 4.0 * p * p).max(0.0).sqrt();
    ((m + disc) / 2.0, (m - disc) / 2.0)
}

fn lambda_x_from(u: f64, v: f64) -> f64 {
    if u <= 0.0 || v <= 0.0 {
        return f64::NEG_INFINITY;
    }
    1.0 / (8.0 * u.sqrt() * v.powf(1.5))
}

fn lambda_n_from(u: f64, v: f64, w: f64) -> f64 {
    if u <= 0.0 || v <= 0.0 {
        return f64::NEG_INFINITY;
    }
    ((u - v) * (u - v) + 2.0 * w * u) / (16.0 * u * v)
}

/// Best value over a 200 x 200 grid of (mean-square budget w, purity p).
fn grid_search(s: f64, eval: impl Fn(f64, f64) -> f64) -> f64 {
    const STEPS: usize = 200;
    let mut best = f64::NEG_INFINITY;
    for i in 0..STEPS {
        let w = (s - 1.0) * i as f64 / (STEPS - 1) as f64;
        let p_max = (s - w) / 2.0;
        if p_max < 0.5 {
            continue;
        }
        for j in 0..STEPS {
            let p = 0.5 + (p_max - 0.5) * j as f64 / (STEPS - 1) as f64;
            best = best.max(eval(w, p));
        }
    }
    best
}

/// Golden-section maximization on [a, b].
fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..120 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    f(lo).max(f(hi)).max(f1).max(f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{number, quadratures, squeezed_cutoff, squeezed_vacuum, FockSpace};
    use crate::measures;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mean_photon_examples() {
        assert!(AxisAlignedGaussian::vacuum().mean_photon() < 1e-15);

        let alpha = c(0.8, -0.6);
        let g = AxisAlignedGaussian::coherent(alpha);
        assert!((g.mean_photon() - alpha.norm_sqr()).abs() < 1e-12);

        // Hyperbolic identity oracle: (e^{2r} + e^{-2r})/4 - 1/2 = sinh^2(r).
        let r: f64 = 0.7;
        let g = AxisAlignedGaussian::squeezed_vacuum(r);
        assert!((g.mean_photon() - r.sinh() * r.sinh()).abs() < 1e-12);
    }

    #[test]
    fn displacement_distance_closed_form() {
        let g = AxisAlignedGaussian::coherent(c(0.3, 0.1));
        assert_eq!(g.hs_displacement_sq(0.0), 0.0);
        // Coherent widths at chi = 1: 2 (1 - e^{-1/2}).
        let expect = 2.0 * (1.0 - (-0.5f64).exp());
        assert!((g.hs_displacement_sq(1.0) - expect).abs() < 1e-12);

        // Truncated-Fock oracle at squeezed widths.
        let r = 0.5;
        let space = FockSpace::new(squeezed_cutoff(r)).unwrap();
        let (rho, _) = squeezed_vacuum(r, space).unwrap();
        let (x, _) = quadratures(space);
        let moved = measures::evolve(&rho, &x, 0.1);
        let numeric = measures::hs_distance_sq(&rho, &moved).unwrap();
        let closed = AxisAlignedGaussian::squeezed_vacuum(r).hs_displacement_sq(0.1);
        assert!((numeric - closed).abs() < 1e-6, "{numeric} vs {closed}");
    }

    #[test]
    fn quadrature_lambda_closed_forms() {
        let g = AxisAlignedGaussian::coherent(c(1.0, 0.0));
        assert!((g.lambda_sq_x() - 0.5).abs() < 1e-12);
        assert!((g.lambda_sq_y() - 0.5).abs() < 1e-12);

        // Pure-state variance oracle: lambda^2(X) = dX^2 = e^{2r}/2.
        let r: f64 = 0.5;
        let g = AxisAlignedGaussian::squeezed_vacuum(r);
        assert!((g.lambda_sq_x() - (2.0 * r).exp() / 2.0).abs() < 1e-12);
        assert!((g.lambda_sq_y() - (-2.0 * r).exp() / 2.0).abs() < 1e-12);
        // Product identity: sqrt(lx^2 ly^2) = 1 / (8 dx^2 dy^2).
        let prod = (g.lambda_sq_x() * g.lambda_sq_y()).sqrt();
        let expect = 1.0 / (8.0 * g.dx() * g.dx() * g.dy() * g.dy());
        assert!((prod - expect).abs() < 1e-12);

        // Thermal widths against the Fock-matrix functional.
        let xi = 0.5;
        let g = AxisAlignedGaussian::thermal(xi).unwrap();
        let space = FockSpace::new(crate::fock::thermal_cutoff(xi)).unwrap();
        let (rho, _) = crate::fock::thermal_state(xi, space).unwrap();
        let (x, _) = quadratures(space);
        let numeric = measures::lambda_sq(&rho, &x);
        assert!((g.lambda_sq_x() - numeric).abs() < 1e-5);
        // Closed thermal form (1 - xi)^2 / (2 (1 + xi)^2).
        let expect = (1.0 - xi) * (1.0 - xi) / (2.0 * (1.0 + xi) * (1.0 + xi));
        assert!((g.lambda_sq_x() - expect).abs() < 1e-9);
    }

    #[test]
    fn phase_distance_closed_form() {
        let g = AxisAlignedGaussian::new(1.0, 0.0, 1.2, 0.6).unwrap();
        assert!(g.hs_phase_sq(0.0).unwrap().abs() < 1e-15);

        // Isotropic centered Gaussians are rotation invariant.
        let iso = AxisAlignedGaussian::thermal(0.4).unwrap();
        for chi in [0.1, 0.7, 2.0] {
            assert!(iso.hs_phase_sq(chi).unwrap().abs() < 1e-14);
        }

        // Truncated-Fock oracle: displaced squeezed state under rotation.
        let (x0, r, chi) = (1.0, 0.5, 0.2);
        let space = FockSpace::new(crate::fock::displaced_squeezed_cutoff(x0, r)).unwrap();
        let (rho, _) = crate::fock::displaced_squeezed(x0, r, space).unwrap();
        let moved = measures::evolve(&rho, &number(space), chi);
        let numeric = measures::hs_distance_sq(&rho, &moved).unwrap();
        let gauss = AxisAlignedGaussian::new(
            x0,
            0.0,
            ((2.0f64 * r).exp() / 2.0).sqrt(),
            ((-2.0f64 * r).exp() / 2.0).sqrt(),
        )
        .unwrap();
        let closed = gauss.hs_phase_sq(chi).unwrap();
        assert!((numeric - closed).abs() < 1e-5, "{numeric} vs {closed}");
        // Frozen independent oracle for this configuration.
        assert!((closed - 0.1491080943).abs() < 1e-8);

        // Off-axis states are rejected.
        let off = AxisAlignedGaussian::new(0.0, 0.4, 1.0, 1.0).unwrap();
        assert!(off.hs_phase_sq(0.1).is_err());
    }

    #[test]
    fn rotation_lambda_closed_form() {
        // Coherent widths carrying all energy in displacement: n/2.
        let n = 3.0f64;
        let w = std::f64::consts::FRAC_1_SQRT_2;
        let g = AxisAlignedGaussian::new((2.0 * n).sqrt(), 0.0, w, w).unwrap();
        assert!((g.lambda_sq_n().unwrap() - n / 2.0).abs() < 1e-12);

        // Centered isotropic states are rotation-blind.
        let iso = AxisAlignedGaussian::thermal(0.3).unwrap();
        assert_eq!(iso.lambda_sq_n().unwrap(), 0.0);

        // Fock cross-check: the closed form carries the purity factor
        // relative to the trace functional; for pure squeezed vacuum the
        // factor is exactly 1/2.
        let r = 1.0;
        let space = FockSpace::new(squeezed_cutoff(r)).unwrap();
        let (rho, _) = squeezed_vacuum(r, space).unwrap();
        let numeric = measures::lambda_sq(&rho, &number(space));
        let g = AxisAlignedGaussian::squeezed_vacuum(r);
        let closed = g.lambda_sq_n().unwrap();
        assert!(
            (closed - g.purity() * numeric).abs() < 1e-5,
            "closed {closed} vs p * numeric {}",
            g.purity() * numeric
        );
        // The trace functional itself equals the pure-state number variance.
        let expect = 0.5 * (2.0f64 * r).sinh().powi(2);
        assert!((numeric - expect).abs() < 1e-5);
    }

    #[test]
    fn small_signal_consistency_displacement() {
        let g = AxisAlignedGaussian::squeezed_vacuum(0.8);
        let dev = |chi: f64| {
            (g.hs_displacement_sq(chi) / (2.0 * chi * chi * g.lambda_sq_x()) - 1.0).abs()
        };
        assert!(dev(1e-3) < 1e-5);
        assert!(dev(1e-3) < dev(1e-2));
    }

    #[test]
    fn optimizer_displacement_targets() {
        let opt = optimize_displacement(50.0).unwrap();
        // Exact closed-form optimum (s + sqrt(s^2 - 1))/2 with s = 101.
        assert!((opt.lambda_sq - 100.99752469).abs() < 1e-6);
        // Within 1% of the asymptotic 2n.
        assert!((opt.lambda_sq - 100.0).abs() / 100.0 < 0.01);
        assert_eq!(opt.state.mean_x(), 0.0);
        assert_eq!(opt.state.mean_y(), 0.0);
        assert!((opt.state.purity() - 0.5).abs() < 1e-12);

        // Scaling laws at n = 100: dy^2 ~ 1/(8n), dx^2 ~ 2n within 5%.
        let opt = optimize_displacement(100.0).unwrap();
        let dy2 = opt.state.dy() * opt.state.dy();
        let dx2 = opt.state.dx() * opt.state.dx();
        assert!((dy2 - 1.0 / 800.0).abs() / (1.0 / 800.0) < 0.05);
        assert!((dx2 - 200.0).abs() / 200.0 < 0.05);

        assert!(optimize_displacement(0.0).is_err());
        assert!(optimize_displacement(-1.0).is_err());
    }

    #[test]
    fn optimizer_phase_targets() {
        let opt = optimize_phase(50.0).unwrap();
        // Closed form (s^2 - 1)/4 = 2550; within 5% of n^2.
        assert!((opt.lambda_sq - 2550.0).abs() < 1e-9);
        assert!((opt.lambda_sq - 2500.0).abs() / 2500.0 < 0.05);
        assert_eq!(opt.state.mean_x(), 0.0);
        assert!((opt.state.purity() - 0.5).abs() < 1e-12);

        // The coherent candidate with the same energy is strictly dominated.
        let w = std::f64::consts::FRAC_1_SQRT_2;
        let coherent = AxisAlignedGaussian::new(10.0, 0.0, w, w).unwrap();
        let coherent_value = coherent.lambda_sq_n().unwrap();
        assert!((coherent_value - 25.0).abs() < 1e-12);
        assert!(opt.lambda_sq > coherent_value * 50.0);

        assert!(optimize_phase(0.0).is_err());
    }

    #[test]
    fn optimizers_beat_random_candidates() {
        use rand::Rng;
        let mut rng = crate::sample::rng(42);
        let n = 20.0;
        let disp = optimize_displacement(n).unwrap();
        let phase = optimize_phase(n).unwrap();
        for _ in 0..2000 {
            let on_axis: bool = rng.random();
            let g = crate::sample::random_feasible_gaussian(&mut rng, n, on_axis);
            assert!((g.mean_photon() - n).abs() < 1e-9);
            assert!(disp.lambda_sq >= g.lambda_sq_x() - 1e-9);
            if g.mean_y() == 0.0 {
                assert!(phase.lambda_sq >= g.lambda_sq_n().unwrap() - 1e-9);
            }
        }
    }
}
