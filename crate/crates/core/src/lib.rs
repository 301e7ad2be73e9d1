//! Exact arithmetic and counting machinery for cubic extensions of F_q(T).
//!
//! The crate is organised around a census pipeline: finite field and
//! polynomial arithmetic ([`ffpoly`]), binary cubic forms and their rings
//! ([`forms`]), the local classification at the place at infinity
//! ([`infinity`]), finite Fourier transforms of root-counting functions
//! ([`fourier`]), exhaustive field censuses ([`census`]), L-polynomials and
//! zero statistics ([`zeta`], [`onelevel`]), and closed-form count
//! predictions ([`predict`]).
//!
//! All counting results are exact: censuses are integer counts, table values
//! live in the ring Q[q^(1/6)] ([`qsixth`]), and floating point enters only
//! when rendering reports or locating zeros of L-polynomials numerically.

pub mod census;
pub mod error;
pub mod exec;
pub mod ffpoly;
pub mod forms;
pub mod fourier;
pub mod infinity;
pub mod onelevel;
pub mod predict;
pub mod qsixth;
pub mod ring;
pub mod zeta;

pub use error::{Error, Result};
pub use ffpoly::fq::{Fq, FqElem};
pub use ffpoly::laurent::LaurentElem;
pub use ffpoly::poly::Poly;
pub use forms::{CubicForm, CubicRing, Gl2Elem, SplittingType};
// pub use infinity::SigmaClass; (enabled once infinity lands)
pub use qsixth::QSixth;
