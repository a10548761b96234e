//! chevlab: exact computational toolkit for exceptional Chevalley groups.
//!
//! The crate builds root systems with reproducible structure constants,
//! parabolic level/shape filtrations of unipotent radicals, faithful
//! parametrized matrix representations (the 26-dimensional F4 module and the
//! 7-dimensional G2 module via diagram folding), MeatAxe-style module analysis
//! over small finite fields, the SL2 cohomology calculus for pre-cocycle
//! spaces, and a complement laboratory that builds and verifies explicit
//! cocycle families inside parabolic subgroups.

pub mod chevrep;
pub mod complab;
pub mod ff;
pub mod modax;
pub mod parab;
pub mod rootsys;
pub mod sl2coh;

pub use ff::{FMatrix, Fq, PMatrix, Poly, VarSet};
pub use chevrep::{GroupWord, Rep, RepSpec, build_rep};
pub use rootsys::RootSystem;
