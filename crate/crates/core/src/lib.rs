//! Exact Seshadri regions, multigraded regularity and set-convergence checks
//! on smooth projective toric varieties.

pub mod blowup;
pub mod coxalg;
pub mod error;
pub mod exactgeom;
pub mod io;
pub mod limits;
pub mod regularity;
pub mod seshadri;
pub mod toric;

pub use coxalg::{FreeComplex, MonomialIdeal};
pub use error::{Error, Result};
pub use exactgeom::{Distance, Polyhedron, Rational, RegionUnion, Window};
pub use limits::{ConvergenceReport, RegionSequence};
pub use regularity::Verdict;
pub use seshadri::{SeshadriRegion, SplitBundle};
pub use toric::{Fan, ToricVariety};
