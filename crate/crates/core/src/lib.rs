//! Exact-arithmetic toolkit for the differential and boomerang behaviour of
//! Niho power functions x^(s(2^m - 1) + 1) over GF(2^(2m)).
//!
//! The crate brute-forces DDT rows, differential spectra, locally-APN
//! classification and BCT rows (via an inverse-free fiber decomposition),
//! checks them against the known closed forms for the family with
//! s = (2^k + 1)^(-1) mod 2^m + 1, and runs the exhaustive coverage and
//! negative-instance sweeps. Everything is exact integer arithmetic; the
//! extension degree is capped at 30 so every loop stays desk-scale.

pub mod closed_forms;
pub mod error;
pub mod field;
pub mod lemmas;
pub mod niho;
pub mod report;
pub mod spectra;
pub mod survey;

pub use error::{Error, Result};
pub use field::{Elt, FieldCtx};
pub use niho::NihoParams;
pub use spectra::{BoomSpectrum, DiffSpectrum, PowerFunction};
