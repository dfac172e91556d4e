//! Exact-arithmetic workbench for the cluster algebras attached to
//! Hernandez–Leclerc quivers.

pub mod exactalg;
pub mod quiver;
pub mod seeds;
pub mod invariants;
pub mod clusterauto;
pub mod autpoly;
pub mod presentations;
