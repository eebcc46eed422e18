//! Localized wave propagation in a one-dimensional diatomic crystal.
//!
//! The lattice `h² ü₂ₖ = γ₁(v₂ₖ₋₁ - 2u₂ₖ + v₂ₖ₊₁)`,
//! `h² v̈₂ₖ₊₁ = γ₂(u₂ₖ - 2v₂ₖ₊₁ + u₂ₖ₊₂)` with a localized initial
//! displacement `W(x/μ)` is solved three independent ways:
//!
//! * [`oracles::lattice`]: direct velocity-Verlet integration of the chain;
//! * [`oracles::brillouin`]: quadrature of the Brillouin-zone integral
//!   solution and its acoustic/optical parts;
//! * [`longwave`] and [`shortwave`]: closed-form Airy asymptotics for
//!   `δ = h/μ ≪ 1` and `δ = 1`.
//!
//! [`oracles::field`] compares the resulting [`oracles::field::WaveField`]s.

pub mod airy;
pub mod dispersion;
pub mod error;
pub mod initial_data;
pub mod jet;
pub mod longwave;
pub mod oracles;
pub mod quadrature;
pub mod roots;
pub mod shortwave;

pub use dispersion::{Branch, Dispersion, LatticeParams};
pub use error::{Error, Result};
pub use initial_data::{InitialProfile, SpectralData};
pub use oracles::field::{Method, WaveField};
