//! Segre numbers, polar multiplicities and Lê numbers of polynomial ideals at
//! the origin, and the equisingularity tests built on them.
//!
//! The crate is layered bottom-up:
//!
//! - [`ring`]: exact sparse polynomials over `Q` or `F_p`, monomial orders,
//!   seeded random data standing in for generic choices.
//! - [`basis`]: Buchberger for global orders, Mora's tangent-cone algorithm
//!   for the local order.
//! - [`ideal`]: quotients, saturation, elimination, Hilbert data, local
//!   colength, tangent cones.
//! - [`mult`]: multiplicity at the origin and Samuel multiplicity.
//! - [`segre`]: the polar/Segre pipeline.
//! - [`analyze`]: expansion and slicing identities, Rees test, limiting
//!   tangent hyperplanes, Lê numbers, families, tangent-cone deformation.
//! - [`cli`]: job files and JSON reports.

pub mod analyze;
pub mod basis;
pub mod cli;
pub mod error;
pub mod ideal;
pub mod mult;
pub mod ring;
pub mod segre;

pub use error::{Error, Result};
