//! Decoy-document toolkit: generate plausible fake variants of a real text
//! document, keep real and fakes together in a vault where the real one is
//! recoverable only by combining two secret shares, and score a corpus with
//! the statistical detectors an adversary would run against it.

pub mod error;
pub mod faker;
pub mod lexicon;
pub mod detector;
pub mod par;
pub mod text;
pub mod vault;

pub use error::{Error, Result};
