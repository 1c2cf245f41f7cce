//! Exact real rank computations for real binary forms.
//!
//! The crate is organised bottom-up: rational and polynomial arithmetic,
//! binary forms and linear algebra, apolarity, coincident root loci and
//! their duals, the real-rootedness decision procedure, and real rank.

pub mod error;
pub mod num;
pub mod poly;
pub mod ring;
pub mod zpoly;
pub mod upoly;
pub mod binform;
pub mod partition;
pub mod matrix;
pub mod apolarity;
pub mod expr;
pub mod crl;
pub mod numeric;
pub mod dual;
pub mod decide;
pub mod rank;

pub use error::{Error, Result};
pub use num::Q;
