//! Numerical toolkit for deformed and fractional calculi.
//!
//! The crate implements three families of deformed one-dimensional calculus
//! together with the spectral and quantum-potential machinery built on them:
//!
//! * symmetric q-calculus: brackets `[x] = (q^x - q^-x)/(q - q^-1)`,
//!   difference quotients, series exponentials and the geometric-grid
//!   integral ([`qcalc`]);
//! * one-sided Q-calculus: `[x] = (Q^x - 1)/(Q - 1)` with its own product,
//!   quotient and n-fold derivative rules ([`qcalc`]);
//! * fractional calculus: Caputo and Riesz/Feller operators, the
//!   Mittag-Leffler eigenfunction of the Caputo derivative and the
//!   modified-Riemann-Liouville scale factor ([`fractional`]);
//! * reflection-deformed (Dunkl) calculus on the line: deformed derivative
//!   with a literal reflection term, ladder operators, Gaussian-polynomial
//!   eigenfunctions kept in exact rational arithmetic ([`dcalc`],
//!   [`polygauss`]);
//! * oscillator and free-particle spectra for each deformation together
//!   with quantum-potential extractors ([`spectral`], [`qpotential`]).
//!
//! Every algebraic identity the operators rely on is checked at runtime by
//! [`verify`], which the `deforma` CLI exposes as `deforma verify`.

pub mod dcalc;
pub mod error;
pub mod expr;
pub mod fractional;
pub mod func;
pub mod grid;
pub mod polygauss;
pub mod qcalc;
pub mod qpotential;
pub mod special;
pub mod spectral;
pub mod verify;

mod quad;

pub use error::{Error, Result};
pub use func::{FunctionHandle, Parity};
pub use grid::{Grid, Profile};
pub use polygauss::{DPoly, PolyGauss};
