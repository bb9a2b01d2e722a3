//! Exact computation in modular Yangians and their shifted subalgebras.

pub mod center;
pub mod current;
pub mod engine;
pub mod error;
pub mod field;
pub mod gauss;
pub mod maps;
pub mod pbw;
pub mod presentation;
pub mod report;
pub mod rewrite;
pub mod roots;
pub mod series;
pub mod shift;
pub mod suite;

pub use error::{Error, Result};
pub use pbw::{AlgebraContext, Element, GeneratorIndex};
