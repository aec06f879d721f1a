//! Relative-motion s-wave spectrum of two atoms in an isotropic trap with a
//! contact interaction.
//!
//! Energies are in trap quanta and lengths in relative-motion oscillator
//! lengths.

mod condition;
mod eigenstate;
mod shooting;

pub use condition::{
    branch_energy_interval, branch_kummer_interval, energy_of_kummer_a, inv_a_of_energy,
    inv_a_of_kummer_a, kummer_a, CONDITION_VARIANT,
};
pub use eigenstate::{energy_of_inv_a, energy_of_inv_a_with, EigenState, SolverOptions};
pub use shooting::{outward_profile, shooting_oracle};
