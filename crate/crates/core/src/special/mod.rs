pub mod dilog;
pub mod phi;
pub mod quadrature;
pub mod quantum;

pub use dilog::{bloch_wigner, clausen2, dilog, dilog_flagged, lobachevsky, whitehead_volume, CutFlag};
pub use phi::{phi, phi_n, ContourSpec, PhiValue};
pub use quantum::{brace, brace_factorial, pochhammer_t, quantum_integer, QuantumLevel};
