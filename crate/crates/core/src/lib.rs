//! Combinatorial maps on surfaces, the eleven vertex-transitive plane
//! tilings, their toroidal quotients, and tools for analysing symmetry,
//! vertex orbits and local growth of such maps.

pub mod auxgraphs;
pub mod diskcounts;
pub mod error;
pub mod growth;
pub mod mapcore;
pub mod symbols;
pub mod quotients;
pub mod sublattice_props;
pub mod symmetry;
pub mod tilings;

pub use error::{Error, Result};
pub use mapcore::{FlagMap, MapJson, PolyhedralReport, PolyhedralViolation};
pub use symbols::VertexSymbol;
