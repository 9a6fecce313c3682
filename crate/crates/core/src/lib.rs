//! Input–output propagation of biphoton joint spectra through a cavity
//! coupled to material excitations.
//!
//! The pipeline takes an input joint spectral amplitude, embeds it in the
//! covariance matrix of the full mode vector (signal, idler, cavity,
//! materials), solves the time-integrated Lyapunov equation, and maps the
//! result through the scattering matrix to the asymptotic output covariance.
//! The output joint spectral intensity and its Schmidt entropy are read off
//! the signal–idler block.

pub mod model;
pub mod numkit;
pub mod observables;
pub mod oracle;
pub mod pipeline;
pub mod scattering;
pub mod states;

pub use num_complex::Complex64;
