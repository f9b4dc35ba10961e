//! Flat tori `ℝ^n/Γ` for rational lattices `Γ`: dual lattices, norm shells,
//! the spectrum, and trigonometric polynomials with exact `Δ`, `κ` and `∫`.
//!
//! Eigenvalues carry the factor `Π = 4π²` symbolically, so `-4π²‖k‖²` is the
//! exact value `-‖k‖²·Π`.

mod classify;
mod lattice;
mod trig;

pub use classify::{classify_on, classify_shell, smallest_nonzero_shell, ShellClassification, DEFAULT_SAMPLES, DEFAULT_SEED};
pub use lattice::{ceil_sqrt, dual_lattice, norm_shell, spectrum_up_to, Lattice, SpectrumValue};
pub use trig::{trig_integrate, trig_kappa, trig_laplacian, Torus, TrigPoly};
