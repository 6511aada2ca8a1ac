mod cohomology;
mod complex;
mod ideal;

pub use cohomology::{cohomology_table, contributing_degrees, fine_nonvanishing, globally_generated, section_basis, sheaf_cohomology, CohomologyRow};
pub use complex::{en_complex, taylor_complex, ComplexStep, FreeComplex, MonomialEntry};
pub use ideal::{power, MonomialIdeal};
