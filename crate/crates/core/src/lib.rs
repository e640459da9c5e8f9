//! Curved-region partitioning into Coons patches, robust winding numbers and
//! global bounds over Bézier patches.

pub mod geom;
pub mod predicates;
pub mod roots;
pub mod winding;
pub mod bezulate;
pub mod partition;
pub mod coons;
pub mod bounds;
pub mod quadric;
pub mod pipeline;
pub mod cli;
