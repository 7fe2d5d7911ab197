//! Optimal addition chains and their generalization to assembly addition
//! chains over strings, edge-coloured graphs and coloured polyominoes.

pub mod addition_chains;
pub mod assembly_core;
pub mod bounds;
pub mod error;
pub mod space_graphs;
pub mod space_polyominoes;
pub mod space_strings;

pub use error::{Error, Result};
