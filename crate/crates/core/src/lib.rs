//! Insertion/deletion list decoding: the linear-piece list-decoding bound,
//! the cover-count identities behind it, classical insdel codes, and
//! exhaustive oracles that check the bound on concrete codes.

pub mod bounds;
pub mod codes;
pub mod combinatorics;
pub mod error;
pub mod figures;
pub mod rational;
pub mod regression;
pub mod verify;
pub mod words;

pub use codes::Code;
pub use error::{Error, Result};
pub use rational::{parse_rational, Rational};
pub use verify::{Verdict, Witness};
pub use words::{InsdelPair, Symbol, Word};
