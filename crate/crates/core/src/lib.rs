//! Exact computations with π-systems of symmetrizable Kac–Moody algebras.
//!
//! The crate works with generalized Cartan matrices ([`Gcm`]), their root
//! systems ([`roots::RootContext`]), π-systems and their types, constructive
//! embeddings, necessary conditions for embeddings, the catalog of
//! hyperbolic diagrams in ranks 3 to 10 and the maximality analysis of that
//! catalog. All arithmetic is exact.

mod canon;
pub mod catalog;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod families;
pub mod gcm;
pub mod io;
pub mod linalg;
pub mod maximality;
pub mod pisystem;
pub mod principles;
pub mod roots;
pub mod search;

pub use error::{Error, Result};
pub use gcm::{validate_gcm, DiagramClass, Gcm, Kind, Symmetrizer};
