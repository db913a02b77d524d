//! Models of a Cooper-pair box coupled to a harmonic mode (nanomechanical
//! beam, lumped LC circuit or coplanar cavity).
//!
//! The crate is `no_std` + `alloc`. It covers
//!
//! - [`qubit`]: the charge-basis Cooper-pair-box Hamiltonian, its spectrum and
//!   flux-dependent transition energies,
//! - [`composite`]: the qubit ⊗ oscillator Hamiltonian, avoided crossings and
//!   dispersive shifts,
//! - [`spectroscopy`]: linear-response single-tone maps, two-tone transition
//!   overlays and resonance fitting,
//! - [`mechanics`]: closed-form beam, coupling, pull-in, damping and thermal
//!   occupation formulas.
//!
//! Energies and frequencies are expressed in Hz (`E/h`, `ω/2π`) throughout;
//! SI constants live in [`constants`].
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod composite;
pub mod constants;
mod error;
pub mod fit;
pub mod linalg;
pub mod mechanics;
mod optimize;
pub mod qubit;
pub mod spectroscopy;

pub use error::{Error, Result};
