//! Orbit-type analysis for finite groups acting simplicially on finite
//! simplicial complexes: fixed-point groupoids with level structure, database
//! categories of orbit types, the orbit category, and the stratification of
//! the quotient with its frontier order.

pub mod action;
pub mod checks;
pub mod complex;
pub mod error;
pub mod export;
pub mod group;
pub mod groupoid;
pub mod level;
pub mod orbit_cat;
pub mod report;
pub mod scenario;
pub mod strata;

pub use action::{product_action, Point, QuotientSpace, SimplicialAction};
pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use group::{FiniteGroup, Group, GroupHom, HomClass, IsoClassKey, Subgroup};
pub use groupoid::FiniteGroupoid;
pub use level::{LevelGroupoid, Phi0Category};
pub use orbit_cat::{BoldPhi0, OrbitCategory};
pub use strata::{PartitionMode, StrataWhere, StratumPoset};
