//! Classification engine for isolated singularity configurations: ADE
//! Dynkin diagrams and their induced-subgraph order, the carrier graphs and
//! tables of the cubic threefold classification, exact lattice arithmetic
//! with discriminant forms, divisor classes on the Hirzebruch surface F2,
//! and a verification suite tying them together.

pub mod catalog;
pub mod deformation;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod picard;
pub mod singularity;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use graph::SimpleGraph;
pub use lattice::IntLattice;
pub use picard::DivisorClass;
pub use singularity::{parse_config, Configuration, SingularityType};
