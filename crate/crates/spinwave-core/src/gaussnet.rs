//! Gaussian bosonic networks: Bogoliubov transformations on N modes and
//! photon-number moments via Wick's theorem.
//!
//! Operators are ordered interleaved, (a₁, a₁†, a₂, a₂†, …), so a transform is
//! a 2N×2N complex matrix M acting as â′ = M·â. Physical transforms preserve
//! the canonical commutators, M·Ω·Mᵀ = Ω with Ω the block-diagonal form
//! [[0,1],[−1,0]] per mode. The three-way splitter is deliberately
//! non-symplectic at its edge rows (the stored-excitation ladder is cut off on
//! both sides); it carries `truncated = true` and can be made physical with
//! [`unitary_completion`], which rebuilds only the undetected rows.
//!
//! Moments ⟨∏ n_i⟩ (order ≤ 4) are evaluated exactly for Gaussian inputs by
//! expanding every output operator over the input ladder operators and summing
//! Wick pairings of the fluctuation parts, with displacement terms for
//! coherent inputs. Moments of detected modes are meaningful even under the
//! truncated splitter, because they touch only its well-formed rows.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GaussnetError {
    #[error("pair-generation amplitude must satisfy 0 ≤ p < 1, got {0}")]
    SqueezeAmplitudeOutOfRange(f64),
    #[error("beamsplitter transmission must lie in [0, 1], got {0}")]
    TransmissionOutOfRange(f64),
    #[error("mode indices must be distinct")]
    RepeatedModes,
    #[error("mode index {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },
    #[error("thermal occupation must be non-negative, got {0}")]
    NegativeOccupation(f64),
    #[error("moment order {0} unsupported (maximum is 4 number operators)")]
    OrderTooHigh(usize),
    #[error("transform dimensions do not match ({0} vs {1} modes)")]
    DimensionMismatch(usize, usize),
    #[error("unitary completion requires a transform flagged truncated")]
    NotTruncated,
    #[error("unitary completion failed: {0}")]
    CompletionFailed(String),
}

/// A linear transformation â′ = M·â of the interleaved mode-operator vector.
///
/// `truncated` marks transforms that knowingly violate the symplectic
/// condition on some rows; `detected_modes` lists the modes whose rows are
/// exact and must survive [`unitary_completion`] verbatim.
#[derive(Debug, Clone)]
pub struct BogoliubovTransform {
    pub n_modes: usize,
    pub matrix: DMatrix<Complex64>,
    pub truncated: bool,
    pub detected_modes: Vec<usize>,
}

impl BogoliubovTransform {
    pub fn identity(n_modes: usize) -> Self {
        Self {
            n_modes,
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
            truncated: false,
            detected_modes: Vec::new(),
        }
    }

    /// self ∘ earlier: `earlier` acts first on the operator vector.
    pub fn compose(&self, earlier: &Self) -> Result<Self, GaussnetError> {
        if self.n_modes != earlier.n_modes {
            return Err(GaussnetError::DimensionMismatch(
                self.n_modes,
                earlier.n_modes,
            ));
        }
        let mut detected = self.detected_modes.clone();
        detected.extend_from_slice(&earlier.detected_modes);
        detected.sort_unstable();
        detected.dedup();
        Ok(Self {
            n_modes: self.n_modes,
            matrix: &self.matrix * &earlier.matrix,
            truncated: self.truncated || earlier.truncated,
            detected_modes: detected,
        })
    }

    /// Deviation from the symplectic condition: max |(M·Ω·Mᵀ − Ω)_{ij}|.
    pub fn symplectic_defect(&self) -> f64 {
        let n2 = 2 * self.n_modes;
        let mut omega = DMatrix::zeros(n2, n2);
        for i in 0..self.n_modes {
            omega[(2 * i, 2 * i + 1)] = Complex64::new(1.0, 0.0);
            omega[(2 * i + 1, 2 * i)] = Complex64::new(-1.0, 0.0);
        }
        let lhs = &self.matrix * &omega * self.matrix.transpose();
        (lhs - omega).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_symplectic(&self, tol: f64) -> bool {
        self.symplectic_defect() < tol
    }

    /// Row-major CSV dump (Re, Im pairs) for debugging.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..2 * self.n_modes {
            let row: Vec<String> = (0..2 * self.n_modes)
                .map(|j| format!("{:.6e},{:.6e}", self.matrix[(i, j)].re, self.matrix[(i, j)].im))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn check_mode(&self, mode: usize) -> Result<(), GaussnetError> {
        if mode >= self.n_modes {
            return Err(GaussnetError::ModeOutOfRange {
                mode,
                n_modes: self.n_modes,
            });
        }
        Ok(())
    }
}

fn check_modes_distinct(modes: &[usize], n_modes: usize) -> Result<(), GaussnetError> {
    for (i, &m) in modes.iter().enumerate() {
        if m >= n_modes {
            return Err(GaussnetError::ModeOutOfRange { mode: m, n_modes });
        }
        if modes[i + 1..].contains(&m) {
            return Err(GaussnetError::RepeatedModes);
        }
    }
    Ok(())
}

/// Two-mode squeezer with pair-generation amplitude p on (w, r).
///
/// S_r ← c·S_r + s·S_w†, S_w ← s·S_r† + c·S_w with c = 1/√(1−p²),
/// s = p/√(1−p²); identity on every other mode. On vacuum this produces a
/// two-mode squeezed state with ⟨n⟩ = p²/(1−p²) in each arm.
pub fn squeezer(
    n_modes: usize,
    p: f64,
    modes: (usize, usize),
) -> Result<BogoliubovTransform, GaussnetError> {
    if !(0.0..1.0).contains(&p) {
        return Err(GaussnetError::SqueezeAmplitudeOutOfRange(p));
    }
    let (w, r) = modes;
    check_modes_distinct(&[w, r], n_modes)?;
    let mut t = BogoliubovTransform::identity(n_modes);
    let c = Complex64::new(1.0 / (1.0 - p * p).sqrt(), 0.0);
    let s = Complex64::new(p / (1.0 - p * p).sqrt(), 0.0);
    let m = &mut t.matrix;
    m[(2 * r, 2 * r)] = c;
    m[(2 * r, 2 * w + 1)] = s;
    m[(2 * r + 1, 2 * r + 1)] = c;
    m[(2 * r + 1, 2 * w)] = s;
    m[(2 * w, 2 * w)] = c;
    m[(2 * w, 2 * r + 1)] = s;
    m[(2 * w + 1, 2 * w + 1)] = c;
    m[(2 * w + 1, 2 * r)] = s;
    Ok(t)
}

/// Beamsplitter with real transmission τ on (x, y).
///
/// a_x ← τ·a_x + √(1−τ²)·a_y, a_y ← −√(1−τ²)·a_x + τ·a_y; the reflected path
/// carries the −1 sign.
pub fn beamsplitter(
    n_modes: usize,
    tau: f64,
    modes: (usize, usize),
) -> Result<BogoliubovTransform, GaussnetError> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(GaussnetError::TransmissionOutOfRange(tau));
    }
    let (x, y) = modes;
    check_modes_distinct(&[x, y], n_modes)?;
    let mut t = BogoliubovTransform::identity(n_modes);
    let c = Complex64::new(tau, 0.0);
    let s = Complex64::new((1.0 - tau * tau).sqrt(), 0.0);
    let m = &mut t.matrix;
    for (a, b, sgn) in [(x, y, 1.0), (y, x, -1.0)] {
        m[(2 * a, 2 * a)] = c;
        m[(2 * a, 2 * b)] = s * sgn;
        m[(2 * a + 1, 2 * a + 1)] = c;
        m[(2 * a + 1, 2 * b + 1)] = s * sgn;
    }
    Ok(t)
}

/// The three-way splitter on the mode ladder (vb, rb, ra, va), ordered by
/// increasing K_y in steps of the grating wavevector.
///
/// Each stored excitation maps to (S_K + e^{iϑ}·S_{K+k_g} − e^{−iϑ}·S_{K−k_g})/√3,
/// with ladder neighbors outside the quadruple dropped. The interior rows
/// (rb, ra) have unit norm; the edge rows (vb, va) have norm √(2/3), so the
/// returned transform is flagged `truncated` and exempt from the symplectic
/// invariant. Detected-mode moments remain exact.
pub fn threeway_splitter(
    n_modes: usize,
    theta: f64,
    quadruple: (usize, usize, usize, usize),
) -> Result<BogoliubovTransform, GaussnetError> {
    let ladder = [quadruple.0, quadruple.1, quadruple.2, quadruple.3];
    check_modes_distinct(&ladder, n_modes)?;
    let mut t = BogoliubovTransform::identity(n_modes);
    let inv3 = 1.0 / 3f64.sqrt();
    let up = Complex64::from_polar(inv3, theta);
    let down = -Complex64::from_polar(inv3, -theta);
    for (i, &m) in ladder.iter().enumerate() {
        let row = &mut t.matrix;
        row[(2 * m, 2 * m)] = Complex64::new(inv3, 0.0);
        row[(2 * m + 1, 2 * m + 1)] = Complex64::new(inv3, 0.0);
        if i + 1 < 4 {
            let next = ladder[i + 1];
            row[(2 * m, 2 * next)] = up;
            row[(2 * m + 1, 2 * next + 1)] = up.conj();
        }
        if i > 0 {
            let prev = ladder[i - 1];
            row[(2 * m, 2 * prev)] = down;
            row[(2 * m + 1, 2 * prev + 1)] = down.conj();
        }
    }
    t.truncated = true;
    t.detected_modes = vec![quadruple.1, quadruple.2];
    Ok(t)
}

/// Complete a truncated passive transform into a symplectic one.
///
/// The rows of `detected_modes` are kept verbatim (they must already be
/// orthonormal); the remaining rows are rebuilt by Gram–Schmidt from their
/// truncated versions, falling back to canonical basis vectors on rank
/// deficiency. No auxiliary modes are required for the three-way splitter:
/// its detected rows plus rebuilt edge rows already span the quadruple.
/// Moments of detected modes are unchanged for any input state.
pub fn unitary_completion(
    t: &BogoliubovTransform,
) -> Result<BogoliubovTransform, GaussnetError> {
    if !t.truncated {
        return Err(GaussnetError::NotTruncated);
    }
    let n = t.n_modes;
    // Completion is defined for passive transforms: annihilation rows must not
    // touch creation columns.
    for i in 0..n {
        for j in 0..n {
            if t.matrix[(2 * i, 2 * j + 1)].norm() > 1e-14 {
                return Err(GaussnetError::CompletionFailed(
                    "active (a†-mixing) truncated transforms are not supported".into(),
                ));
            }
        }
    }
    // Work on the N×N annihilation block.
    let block = |i: usize, j: usize| t.matrix[(2 * i, 2 * j)];
    let mut rows: Vec<Vec<Complex64>> = vec![Vec::new(); n];
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    for &m in &t.detected_modes {
        let r: Vec<Complex64> = (0..n).map(|j| block(m, j)).collect();
        let nrm = dot(&r, &r).re.sqrt();
        if (nrm - 1.0).abs() > 1e-10 {
            return Err(GaussnetError::CompletionFailed(format!(
                "detected row {m} has norm {nrm}, expected 1"
            )));
        }
        for b in &basis {
            if dot(b, &r).norm() > 1e-10 {
                return Err(GaussnetError::CompletionFailed(format!(
                    "detected rows are not mutually orthogonal at mode {m}"
                )));
            }
        }
        rows[m] = r.clone();
        basis.push(r);
    }
    for m in 0..n {
        if t.detected_modes.contains(&m) {
            continue;
        }
        // Candidate: the truncated row itself, then canonical unit vectors.
        let mut candidates: Vec<Vec<Complex64>> = Vec::with_capacity(n + 1);
        candidates.push((0..n).map(|j| block(m, j)).collect());
        for k in 0..n {
            let mut e = vec![Complex64::ZERO; n];
            e[k] = Complex64::new(1.0, 0.0);
            candidates.push(e);
        }
        let mut placed = false;
        for mut cand in candidates {
            for b in &basis {
                let ov = dot(b, &cand);
                for (c, bb) in cand.iter_mut().zip(b) {
                    *c -= ov * bb;
                }
            }
            let nrm = dot(&cand, &cand).re.sqrt();
            if nrm > 1e-8 {
                for c in cand.iter_mut() {
                    *c /= Complex64::new(nrm, 0.0);
                }
                rows[m] = cand.clone();
                basis.push(cand);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(GaussnetError::CompletionFailed(format!(
                "no orthogonal complement found for row {m}"
            )));
        }
    }
    let mut out = BogoliubovTransform::identity(n);
    for i in 0..n {
        for j in 0..n {
            out.matrix[(2 * i, 2 * j)] = rows[i][j];
            out.matrix[(2 * i + 1, 2 * j + 1)] = rows[i][j].conj();
            if i != j {
                out.matrix[(2 * i, 2 * j + 1)] = Complex64::ZERO;
                out.matrix[(2 * i + 1, 2 * j)] = Complex64::ZERO;
            }
        }
        // Clear the identity diagonal left on the cross blocks.
        out.matrix[(2 * i, 2 * i + 1)] = Complex64::ZERO;
        out.matrix[(2 * i + 1, 2 * i)] = Complex64::ZERO;
    }
    out.detected_modes = t.detected_modes.clone();
    Ok(out)
}

/// Initial condition of a single mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeInput {
    Vacuum,
    Thermal { nbar: f64 },
    Coherent { amplitude: Complex64 },
}

/// Per-mode initial conditions for a network.
#[derive(Debug, Clone, PartialEq)]
pub struct InputSpec {
    pub modes: Vec<ModeInput>,
}

impl InputSpec {
    pub fn vacuum(n_modes: usize) -> Self {
        Self {
            modes: vec![ModeInput::Vacuum; n_modes],
        }
    }

    pub fn with(mut self, mode: usize, input: ModeInput) -> Self {
        self.modes[mode] = input;
        self
    }

    pub fn validate(&self) -> Result<(), GaussnetError> {
        for m in &self.modes {
            if let ModeInput::Thermal { nbar } = m {
                if *nbar < 0.0 {
                    return Err(GaussnetError::NegativeOccupation(*nbar));
                }
            }
        }
        Ok(())
    }

    fn nbar(&self, mode: usize) -> f64 {
        match self.modes[mode] {
            ModeInput::Thermal { nbar } => nbar,
            _ => 0.0,
        }
    }

    fn mean(&self, mode: usize) -> Complex64 {
        match self.modes[mode] {
            ModeInput::Coherent { amplitude } => amplitude,
            _ => Complex64::ZERO,
        }
    }
}

/// Complex second-moment blocks A_ij = ⟨δa_i δa_j⟩, B_ij = ⟨δa_i† δa_j⟩ and
/// the mean vector ⟨a_i⟩ of the state after a network.
#[derive(Debug, Clone)]
pub struct SecondMoments {
    pub a: DMatrix<Complex64>,
    pub b: DMatrix<Complex64>,
    pub mean: Vec<Complex64>,
}

impl SecondMoments {
    pub fn from_network(
        t: &BogoliubovTransform,
        inputs: &InputSpec,
    ) -> Result<Self, GaussnetError> {
        if inputs.modes.len() != t.n_modes {
            return Err(GaussnetError::DimensionMismatch(
                inputs.modes.len(),
                t.n_modes,
            ));
        }
        inputs.validate()?;
        let n = t.n_modes;
        let mut a = DMatrix::zeros(n, n);
        let mut b = DMatrix::zeros(n, n);
        let mut mean = vec![Complex64::ZERO; n];
        for i in 0..n {
            for k in 0..n {
                let alpha = inputs.mean(k);
                mean[i] +=
                    t.matrix[(2 * i, 2 * k)] * alpha + t.matrix[(2 * i, 2 * k + 1)] * alpha.conj();
            }
            for j in 0..n {
                for k in 0..n {
                    let nb = inputs.nbar(k);
                    // ⟨δa_k δa_k†⟩ = n̄+1, ⟨δa_k† δa_k⟩ = n̄; cross terms vanish.
                    a[(i, j)] += t.matrix[(2 * i, 2 * k)]
                        * t.matrix[(2 * j, 2 * k + 1)]
                        * Complex64::new(nb + 1.0, 0.0)
                        + t.matrix[(2 * i, 2 * k + 1)]
                            * t.matrix[(2 * j, 2 * k)]
                            * Complex64::new(nb, 0.0);
                    b[(i, j)] += t.matrix[(2 * i + 1, 2 * k)]
                        * t.matrix[(2 * j, 2 * k + 1)]
                        * Complex64::new(nb + 1.0, 0.0)
                        + t.matrix[(2 * i + 1, 2 * k + 1)]
                            * t.matrix[(2 * j, 2 * k)]
                            * Complex64::new(nb, 0.0);
                }
            }
        }
        Ok(Self { a, b, mean })
    }
}

/// Photon-number moment ⟨∏ n_m⟩ over the listed modes (with multiplicity),
/// total order ≤ 4.
///
/// Output operators are expanded over the input ladder operators; the
/// expectation is the sum over Wick pairings of the fluctuation parts times
/// displacement means, memoized over operator subsets. Exact for Gaussian
/// inputs, including under the truncated splitter as long as the listed modes
/// are detected (well-formed) rows.
pub fn moments(
    t: &BogoliubovTransform,
    inputs: &InputSpec,
    modes: &[usize],
) -> Result<f64, GaussnetError> {
    if modes.len() > 4 {
        return Err(GaussnetError::OrderTooHigh(modes.len()));
    }
    if inputs.modes.len() != t.n_modes {
        return Err(GaussnetError::DimensionMismatch(
            inputs.modes.len(),
            t.n_modes,
        ));
    }
    inputs.validate()?;
    for &m in modes {
        t.check_mode(m)?;
    }
    // n_m = a†_m a_m: row 2m+1 then row 2m, in product order.
    let mut op_rows = Vec::with_capacity(2 * modes.len());
    for &m in modes {
        op_rows.push(2 * m + 1);
        op_rows.push(2 * m);
    }
    let val = ordered_expectation(t, inputs, &op_rows);
    debug_assert!(
        val.im.abs() < 1e-9 * val.re.abs().max(1.0),
        "number moment should be real, got {val}"
    );
    Ok(val.re)
}

/// Expectation of an ordered product of output operators, each given by its
/// row index in the transform matrix (2m for a_m, 2m+1 for a†_m).
fn ordered_expectation(
    t: &BogoliubovTransform,
    inputs: &InputSpec,
    op_rows: &[usize],
) -> Complex64 {
    let n_ops = op_rows.len();
    assert!(n_ops <= 10, "Wick expansion limited to 10 operators");
    let n = t.n_modes;
    // Mean of each operator and pairwise ordered covariances.
    let mut mu = vec![Complex64::ZERO; n_ops];
    for (idx, &row) in op_rows.iter().enumerate() {
        for k in 0..n {
            let alpha = inputs.mean(k);
            mu[idx] += t.matrix[(row, 2 * k)] * alpha + t.matrix[(row, 2 * k + 1)] * alpha.conj();
        }
    }
    let mut cov = vec![vec![Complex64::ZERO; n_ops]; n_ops];
    for i in 0..n_ops {
        for j in 0..n_ops {
            let (ri, rj) = (op_rows[i], op_rows[j]);
            let mut c = Complex64::ZERO;
            for k in 0..n {
                let nb = inputs.nbar(k);
                c += t.matrix[(ri, 2 * k)]
                    * t.matrix[(rj, 2 * k + 1)]
                    * Complex64::new(nb + 1.0, 0.0)
                    + t.matrix[(ri, 2 * k + 1)] * t.matrix[(rj, 2 * k)] * Complex64::new(nb, 0.0);
            }
            cov[i][j] = c;
        }
    }
    // F(mask) = ⟨∏_{i ∈ mask} (δX_i + μ_i)⟩, recursing on the first operator.
    let full = (1u32 << n_ops) - 1;
    let mut memo = vec![None; 1 << n_ops];
    fn rec(
        mask: u32,
        mu: &[Complex64],
        cov: &[Vec<Complex64>],
        memo: &mut [Option<Complex64>],
    ) -> Complex64 {
        if mask == 0 {
            return Complex64::new(1.0, 0.0);
        }
        if let Some(v) = memo[mask as usize] {
            return v;
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut acc = mu[first] * rec(rest, mu, cov, memo);
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as usize;
            others &= !(1 << j);
            let c = cov[first][j];
            if c != Complex64::ZERO {
                acc += c * rec(rest & !(1 << j), mu, cov, memo);
            }
        }
        memo[mask as usize] = Some(acc);
        acc
    }
    rec(full, &mu, &cov, &mut memo)
}
