//! Exact computation of Witt-group-valued degrees of polynomial
//! endomorphisms of affine space, with the supporting algebra: polynomials
//! over `Q` and `F_p`, Gröbner bases, symmetric bilinear forms and their
//! Witt classes, Koszul duality signs and unimodular rows.
//!
//! Start from [`degree::degree_of`]; the `examples/` directory has one
//! runnable program per capability.

pub mod cli;
pub mod degree;
pub mod det;
pub mod error;
pub mod field;
pub mod groebner;
pub mod job;
pub mod koszul;
pub mod numtheory;
pub mod parse;
pub mod poly;
pub mod umrow;
pub mod witt;

pub use degree::{degree_of, DegreeReport, Endo};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar, SquareClass};
pub use poly::{Poly, Ring};
pub use witt::{DiagForm, GramForm};
