//! Dimension polynomials of difference-differential modules and of
//! intermediate difference-differential field extensions.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the command
//! line tool and report rendering live in the `dimpoly` companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chains;
pub mod error;
pub mod kaehler;
pub mod linalg;
pub mod monoid;
pub mod numpoly;
pub mod opalg;
pub mod oracle;
pub mod poly;
pub mod ratfun;
pub mod staircase;

pub use error::{Error, Result};
