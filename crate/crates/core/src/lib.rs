//! Exact A-polynomial algebra: polynomial arithmetic over the integers,
//! Newton polygons, structural checks, surgery-line replay, two-bridge
//! elimination and batch verification of polynomial tables.

pub mod db;
pub mod error;
pub mod knots;
pub mod newton;
pub mod poly;
pub mod structure;
pub mod theorem;

pub use error::{Error, Result};
pub use poly::{BivarPoly, UnivarPoly};
