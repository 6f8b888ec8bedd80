//! Lusternik-Schnirelmann category in a pointed category with fibrations,
//! cofibrations and weak equivalences, with an exact rational chain complex
//! instance.

pub mod chain;
pub mod engine;
pub mod error;
pub mod instance;
pub mod jcat;
pub mod linalg;

pub use error::{Error, Result};
