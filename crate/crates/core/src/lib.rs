//! Edge-colored complete graphs: Gallai partitions, witness constructions,
//! closed-form Gallai-Ramsey values, and exhaustive small-case search.

pub mod catalog;
pub mod construct;
pub mod detect;
pub mod facts;
pub mod formulas;
pub mod gallai;
pub mod gcg;
pub mod graph;
pub mod pattern;
pub mod search;

mod bits;
