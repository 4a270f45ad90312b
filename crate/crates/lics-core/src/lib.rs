//! Steady-state density-matrix spectra and coupled-wave propagation for
//! laser-induced continuum structures (LICS).
//!
//! Two coupling schemes are implemented in closed form:
//!
//! * a **ladder** scheme, where strong fields dress a discrete two-photon
//!   chain and two overlapping continuum structures, giving the absorption,
//!   refraction and four-wave-mixing susceptibilities of a weak fundamental
//!   and of the sum-frequency wave it generates;
//! * a **folded** scheme, where two bound states share a dissociation
//!   continuum; quasi-stationary populations, the dissociation rate and the
//!   weak-field difference-frequency mixing coefficients come out.
//!
//! Spectra feed the scaled coupled-wave solution in [`propagation`], which
//! maps them to quantum conversion efficiencies along an absorbing medium.
//! Everything is cross-validated by brute-force back ends in [`oracle`].

pub mod config;
pub mod dispersion;
pub mod doppler;
pub mod emit;
pub mod error;
pub mod folded;
pub mod ladder;
pub mod oracle;
pub mod params;
pub mod presets;
pub mod propagation;
pub mod sweep;

pub use error::{LicsError, Result};
pub use params::{ComplexResponse, FanoSet, LadderParams};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
