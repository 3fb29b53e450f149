//! Exact scalar rings and dense matrix algebra.

pub mod bipoly;
pub mod codec;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod ring;

pub use bipoly::BiPoly;
pub use codec::{parse_rational, AnyMatrix, EntryCodec};
pub use laurent::Laurent;
pub use linalg::{charpoly, minor_sums, rank_exact, Determinant, Invertible};
pub use matrix::Matrix;
pub use ring::{rat, ExactDiv, RealScalar, Ring};
