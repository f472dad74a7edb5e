//! Nonrepetitive sequences and nonrepetitive edge-colorings of k-ary trees.

pub mod checkpoint;
pub mod control;
pub mod error;
pub mod format;
pub mod kspecial;
pub mod sequences;
pub mod table;
pub mod trees;

pub use error::{Error, Result};
