pub mod dd;
pub mod hausdorff;
pub mod intmatrix;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod rational;
pub mod region;

pub use hausdorff::{windowed_hausdorff, Distance};
pub use intmatrix::{smith_normal_form, IntMatrix};
pub use polyhedron::{dual_cone, ConeRep, Ineq, Polyhedron, Window};
pub use rational::Rational;
pub use region::RegionUnion;
