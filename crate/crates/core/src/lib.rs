//! Exact solver toolkit for the multi-trip drone routing problem (DRP).
//!
//! The pipeline is: build or load an [`instance::Instance`], pick an
//! [`energy::EnergyModel`], expand the instance into a load-indexed graph
//! ([`graphgen::build_generated_graph`]), translate the graph into a
//! mixed-integer *linear* program ([`formulation::build_milp`]) and solve it
//! with the built-in branch-and-bound ([`solver::solve_milp`]) or export it
//! for an external solver. Every solve path ends in the independent
//! [`solver::validate_solution`] check, and [`solver::brute_force_solve`]
//! provides a ground-truth oracle at small sizes.

pub mod energy;
pub mod instance;
pub mod solver;

pub use energy::{ConvexModel, EnergyModel, LegGeometry, LinearModel, PhaseModel};
pub use instance::{Instance, ObjectiveSetting, Request, TravelTables};
