//! Transverse-wavevector modes of a spin-wave memory.
//!
//! Stored excitations occupy Gaussian modes u(𝐊) in the transverse-wavevector
//! plane. A mode shifted by Δ𝐊 overlaps its parent with amplitude
//! τ = exp(−|Δ𝐊|²/(8σ²)), and the part of the shifted mode not captured by
//! the parent defines the orthogonal complement used by the beamsplitter
//! network picture. Only equal-σ overlaps arise here, and for pure
//! translations of real Gaussians the overlap is real and positive.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WavespaceError {
    #[error("mode field radius must be positive, got {0}")]
    NonPositiveSigma(f64),
    #[error("only equal-sigma overlaps are supported ({0} vs {1} rad/mm)")]
    SigmaMismatch(f64, f64),
    #[error("wavevector components must be finite")]
    NonFinite,
}

/// Transverse wavevector (kx, ky) in rad/mm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TransverseWavevector {
    pub kx: f64,
    pub ky: f64,
}

impl TransverseWavevector {
    pub fn new(kx: f64, ky: f64) -> Self {
        Self { kx, ky }
    }

    pub fn norm(self) -> f64 {
        self.kx.hypot(self.ky)
    }

    pub fn is_finite(self) -> bool {
        self.kx.is_finite() && self.ky.is_finite()
    }
}

impl std::ops::Add for TransverseWavevector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.kx + rhs.kx, self.ky + rhs.ky)
    }
}

impl std::ops::Sub for TransverseWavevector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.kx - rhs.kx, self.ky - rhs.ky)
    }
}

/// Gaussian mode function u(𝐊) = (2πσ²)^{−1/2} exp(−|𝐊−𝐜|²/(4σ²)).
///
/// Normalized so that ∫|u|² d²K = 1. `sigma` is the mode field radius in
/// rad/mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMode {
    pub center: TransverseWavevector,
    pub sigma: f64,
}

impl GaussianMode {
    pub fn new(center: TransverseWavevector, sigma: f64) -> Result<Self, WavespaceError> {
        if !center.is_finite() || !sigma.is_finite() {
            return Err(WavespaceError::NonFinite);
        }
        if sigma <= 0.0 {
            return Err(WavespaceError::NonPositiveSigma(sigma));
        }
        Ok(Self { center, sigma })
    }

    /// Mode amplitude at a wavevector.
    pub fn eval(&self, k: TransverseWavevector) -> f64 {
        let d = k - self.center;
        let s2 = self.sigma * self.sigma;
        let norm = (2.0 * std::f64::consts::PI * s2).sqrt().recip();
        norm * (-(d.kx * d.kx + d.ky * d.ky) / (4.0 * s2)).exp()
    }

    /// The same mode translated by `shift`.
    pub fn shifted(&self, shift: TransverseWavevector) -> Self {
        Self {
            center: self.center + shift,
            sigma: self.sigma,
        }
    }
}

/// Overlap amplitude τ = ⟨a|b⟩ of two equal-σ Gaussian modes.
///
/// τ = exp(−|Δ𝐊|²/(8σ²)); real and positive for pure translations, which is
/// the only case representable here.
pub fn overlap(a: &GaussianMode, b: &GaussianMode) -> Result<f64, WavespaceError> {
    if a.sigma <= 0.0 || b.sigma <= 0.0 {
        return Err(WavespaceError::NonPositiveSigma(a.sigma.min(b.sigma)));
    }
    if (a.sigma - b.sigma).abs() > 1e-12 * a.sigma.abs() {
        return Err(WavespaceError::SigmaMismatch(a.sigma, b.sigma));
    }
    let d = b.center - a.center;
    let dk2 = d.kx * d.kx + d.ky * d.ky;
    Ok((-dk2 / (8.0 * a.sigma * a.sigma)).exp())
}

/// Uniform sampling grid for quadrature checks: `n`×`n` points spanning
/// ±`span_sigmas`·σ in each direction.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub n: usize,
    pub span_sigmas: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n: 256,
            span_sigmas: 5.0,
        }
    }
}

/// Overlap evaluated by trapezoidal quadrature on a sampled grid.
///
/// Centered on the midpoint of the two mode centers; the ±5σ default span
/// truncates the Gaussian tail at the few-1e−6 level, which is the accuracy
/// floor of this route. The analytic [`overlap`] is the reference; this exists
/// to validate it.
pub fn overlap_quadrature(
    a: &GaussianMode,
    b: &GaussianMode,
    grid: &GridSpec,
) -> Result<f64, WavespaceError> {
    if (a.sigma - b.sigma).abs() > 1e-12 * a.sigma.abs() {
        return Err(WavespaceError::SigmaMismatch(a.sigma, b.sigma));
    }
    let mid = TransverseWavevector::new(
        0.5 * (a.center.kx + b.center.kx),
        0.5 * (a.center.ky + b.center.ky),
    );
    let half = grid.span_sigmas * a.sigma;
    let n = grid.n;
    let h = 2.0 * half / (n as f64 - 1.0);
    let mut sum = 0.0;
    for i in 0..n {
        let kx = mid.kx - half + h * i as f64;
        let wx = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        for j in 0..n {
            let ky = mid.ky - half + h * j as f64;
            let wy = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
            let k = TransverseWavevector::new(kx, ky);
            sum += wx * wy * a.eval(k) * b.eval(k);
        }
    }
    Ok(sum * h * h)
}

/// Unit-norm complement of a proper mode: the part of a shifted mode the
/// proper mode does not capture.
#[derive(Debug, Clone, Copy)]
pub enum OrthogonalMode {
    /// (shifted − τ·proper)/√(1−τ²), the Gram–Schmidt residual.
    Residual {
        proper: GaussianMode,
        shifted: GaussianMode,
        tau: f64,
    },
    /// First Hermite–Gauss mode ((𝐊−𝐜)·ê/σ)·u(𝐊), the zero-shift limit of the
    /// residual; `axis` is the unit vector ê along the vanishing shift.
    HermiteGauss {
        base: GaussianMode,
        axis: TransverseWavevector,
    },
}

impl OrthogonalMode {
    pub fn eval(&self, k: TransverseWavevector) -> f64 {
        match *self {
            OrthogonalMode::Residual {
                proper,
                shifted,
                tau,
            } => (shifted.eval(k) - tau * proper.eval(k)) / (1.0 - tau * tau).sqrt(),
            OrthogonalMode::HermiteGauss { base, axis } => {
                let d = k - base.center;
                (d.kx * axis.kx + d.ky * axis.ky) / base.sigma * base.eval(k)
            }
        }
    }
}

/// A proper mode together with the orthogonal complement spanned by a shifted
/// copy: shifted = τ·proper + √(1−τ²)·orthogonal.
#[derive(Debug, Clone, Copy)]
pub struct ModePair {
    pub proper: GaussianMode,
    pub shifted: GaussianMode,
    /// Overlap ⟨proper|shifted⟩; real and positive.
    pub tau: f64,
    pub orthogonal: OrthogonalMode,
}

impl ModePair {
    /// τ·proper + √(1−τ²)·orthogonal evaluated pointwise; equals the shifted
    /// mode by construction.
    pub fn reconstruct_shifted(&self, k: TransverseWavevector) -> f64 {
        self.tau * self.proper.eval(k) + (1.0 - self.tau * self.tau).sqrt() * self.orthogonal.eval(k)
    }
}

/// Decompose a shifted copy of `m` into `m` itself plus a unit-norm orthogonal
/// mode.
///
/// For shifts below 1e−6·σ the Gram–Schmidt residual is numerically
/// indeterminate (0/0); the construction's limit, the first Hermite–Gauss mode
/// along the shift axis, is returned instead (along +x̂ for an exactly zero
/// shift).
pub fn make_mode_pair(
    m: &GaussianMode,
    shift: TransverseWavevector,
) -> Result<ModePair, WavespaceError> {
    if !shift.is_finite() {
        return Err(WavespaceError::NonFinite);
    }
    let proper = GaussianMode::new(m.center, m.sigma)?;
    let shifted = proper.shifted(shift);
    let tau = overlap(&proper, &shifted)?;
    let orthogonal = if shift.norm() < 1e-6 * m.sigma {
        let axis = if shift.norm() == 0.0 {
            TransverseWavevector::new(1.0, 0.0)
        } else {
            TransverseWavevector::new(shift.kx / shift.norm(), shift.ky / shift.norm())
        };
        OrthogonalMode::HermiteGauss {
            base: proper,
            axis,
        }
    } else {
        OrthogonalMode::Residual {
            proper,
            shifted,
            tau,
        }
    };
    Ok(ModePair {
        proper,
        shifted,
        tau,
        orthogonal,
    })
}
