//! Klein-Gordon bound states of a spin-0 particle in a spherical Woods-Saxon
//! well, solved in closed form with the Nikiforov-Uvarov method under the
//! Pekeris approximation, plus a shooting eigensolver that checks them.

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod model;
pub mod nu;
pub mod oracle;
pub mod output;
pub mod pekeris;
pub mod reference;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, ExistenceCondition, Result};
