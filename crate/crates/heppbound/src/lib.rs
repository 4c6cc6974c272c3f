//! Exact computation of Hepp bounds (tropicalized Feynman periods) of
//! graphs and matroids: evaluation by several independent algorithms,
//! pole/residue structure, the Derksen and Crapo invariants, improved
//! period bounds, period-symmetry surgeries, and the Newton/polar polytope
//! geometry behind it all.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod engine;
pub mod invariants;
pub mod io;
pub(crate) mod linalg;
pub mod matroid;
pub mod polytope;
pub mod symmetry;

pub use arith::{ArithError, Rational, UniPoly, UniRatFunc};
pub use cli::run_cli;
pub use engine::{
    hepp, hepp_cyclic_flats, hepp_flag_recursion, hepp_flats_recursion, hepp_in_dimension,
    hepp_line, hepp_position, hepp_sector_oracle, Algorithm, EngineError, HeppValue, IndexLine,
    IndexVector,
};
pub use matroid::{EdgeSubset, Graph, Matroid, MatroidError};
