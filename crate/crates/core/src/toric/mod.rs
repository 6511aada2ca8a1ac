pub mod builtins;
pub mod fan;
pub mod variety;

pub use builtins::builtin;
pub use fan::{validate, walls, Fan, FanFlags};
pub use variety::{class, make_variety, CohomologyVector, DivisorClass, FineDegree, ToricVariety};
