pub mod algebra;
pub mod check;
pub mod cohomology;
pub mod description;
pub mod dg;
pub mod error;
pub mod families;
pub mod field;
pub mod graded;
pub mod hdet;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod resolution;
