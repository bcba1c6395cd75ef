//! Determinants as generating functions of nonintersecting lattice paths.
//!
//! Skew Schur polynomials are computed two ways (tableau sums and Jacobi–Trudi
//! determinants), the Lindström–Gessel–Viennot involution is implemented on explicit
//! path tuples, and the classical determinantal identities (Dodgson, Plücker,
//! Laplace, Cauchy–Binet, Muir) are checked symbolically and by seeded integer fuzzing.

pub mod error;
pub mod identities;
pub mod jacobitrudi;
pub mod linalg;
pub mod overlays;
pub mod paths;
pub mod poly;
pub mod shapes;
pub mod svg;
pub mod tableaux;

pub use error::{Error, Result};
pub use linalg::{IndexSet, Matrix};
pub use paths::{LatticePath, PathTuple, Point, Step};
pub use poly::{Monomial, MultiPoly, Var};
pub use shapes::{Semipartition, Shape};
pub use tableaux::Tableau;
