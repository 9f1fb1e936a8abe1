//! Bigraded Ext via minimal resolutions, with a bar-complex cross-check, and
//! the Koszul-type deciders built on it.

pub mod bar;
pub mod decide;
pub mod les;
pub mod module;
pub mod resolution;

pub use bar::{bar_ext_oracle, DEFAULT_BAR_CAP};
pub use decide::{
    ext_of_quotient, hilbert_series, is_bloch_kato, is_koszul, is_universally_koszul, koszul_series_check,
    BlochKatoReport, KoszulCertificate, SubspaceWitness, UniversalReport,
};
pub use module::{GradedModule, LeftAction, ModuleMap};
pub use resolution::{minimal_resolution, BettiEntry, BettiTable};
