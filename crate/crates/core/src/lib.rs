//! Non-perturbative Unruh–DeWitt qubit channels and their field-side
//! counterparts.
//!
//! The crate is organised bottom-up:
//!
//! - [`qmatrix`]: 2×2 / 4×4 Hermitian linear algebra, entropies, fidelity,
//!   partial transpose and majorization.
//! - [`channel`]: the rotated-Pauli qubit channel built from `ν = ω(e^{2iφ(f)})`
//!   and a monopole axis, with Kraus/Choi forms and structural tests.
//! - [`field`]: smeared Wightman quadrature, field-state data (coherent,
//!   squeezed, thermal) and the complementary field channel.
//! - [`recovery`]: Petz recovery maps and data-processing recovery gaps.
//! - [`oracle`]: a truncated single bosonic mode that reproduces all of the
//!   above by brute-force matrix exponentiation.
//! - [`par`]: grid evaluation, data-parallel when the `parallel` feature is on.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod field;
pub mod oracle;
pub mod par;
pub mod qmatrix;
pub mod recovery;

pub use error::{Error, Result};
pub use qmatrix::{ComplexMatrix, DensityMatrix, C64};
