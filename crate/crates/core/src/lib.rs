//! Entropy, independence entropy and conjugacy recoding for
//! one-dimensional shifts of finite type and sofic shifts.

pub mod alphabet;
pub mod bitset;
pub mod boost;
pub mod choice;
pub mod cli;
pub mod code;
pub mod entropy;
pub mod error;
pub mod graph;
pub mod independence;
pub mod io;
pub mod language;
pub mod spec;
pub mod verify;

pub use alphabet::{Alphabet, Sym, Word};
pub use error::{Error, Result};
pub use graph::{Edge, LabeledGraph};
pub use spec::{catalog, Caps, SftSpec, ShiftSpec};
