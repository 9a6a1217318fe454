//! Exact computations with finite-dimensional symmetric collections and operads
//! over the rationals.

pub mod axioms;
pub mod collections;
pub mod error;
pub mod format;
pub mod free;
pub mod hopf;
pub mod linalg;
pub mod linrep;
pub mod modalg;
pub mod operads;
pub mod oracles;
pub mod symgrp;

mod blocks;

pub use error::{Error, Result};
