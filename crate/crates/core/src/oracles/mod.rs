//! Independent engines used to cross-check the linear computations: set
//! species with explicit relabelling actions, and truncated exponential
//! generating series.

pub mod series;
pub mod species;

pub use series::{egf_compose, egf_fixed_point, FixedPointEquation, FormalSeries};
pub use species::{fixed_point_character, perm_rep_of, species_circ, SetSpeciesCollection};
