//! Simulation of wavevector-multiplexed spin-wave quantum memories driven by
//! ac Stark phase gratings.
//!
//! A spin-wave memory stores collective atomic excitations labelled by a
//! transverse wavevector K. Imprinting a periodic ac Stark phase φ_S(y) onto
//! the ensemble redistributes each stored excitation over diffraction orders
//! K + m·k_g·ŷ, which realizes programmable beamsplitter networks directly in
//! wavevector space. The crate models this pipeline end to end:
//!
//! * [`wavespace`] — Gaussian transverse modes, overlaps and orthogonal
//!   complements,
//! * [`grating`] — phase patterns and their diffraction-order amplitudes,
//! * [`gaussnet`] — Bogoliubov transformations and Wick-expansion moments,
//! * [`fockoracle`] — a brute-force truncated Fock-space reference,
//! * [`correlations`] — heralded g² statistics, closed forms and Monte Carlo,
//! * [`atomphys`] — ac Stark shifts, phase matching, noise-mode estimates,
//! * [`multiplex`] — multiplexed-source rate formulas and the repeater
//!   protocol Monte Carlo.
//!
//! Gaussian-network results are verified against the Fock oracle throughout
//! the test suite; the two routes share no numerical machinery.

pub mod grating;
pub mod special;
pub mod wavespace;
