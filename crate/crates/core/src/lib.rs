//! Symbolic engine for equivariant Grothendieck-ring classes: normal forms,
//! convolution products, motivic nearby and vanishing cycles from resolution
//! data, and Euler-characteristic / E-polynomial realizations.

pub mod a1;
pub mod catalog;
pub mod class;
pub mod convolution;
pub mod epoly;
pub mod error;
pub mod field;
pub mod json;
pub mod laurent;
pub mod realize;
pub mod vanishing;

pub use a1::{a1_star, a1_unit, epsilon_push, A1Class, BasePoint};
pub use class::{normalize, Atom, AtomFactor, MuClass, Opaque, RawClass, RawFactor, RawTerm};
pub use convolution::{assoc_check, psi_pair, star, star_power, AssocReport, BiClass, SymbolicVerdict};
pub use epoly::EPoly;
pub use error::{Error, Result};
pub use laurent::LaurentInt;
pub use realize::{chi_c, chi_of_a1, e_polynomial, point_count_oracle, DEFAULT_ORACLE_BUDGET};
pub use vanishing::{
    nearby_fiber, phi_generator, phi_measure, ts_check, validate_datum, vanishing_cycles, Generator,
    Locus, Presentation, SncDatum, Stratum, TsReport, VanishingCycles,
};
