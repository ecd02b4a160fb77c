//! Amplified regression test oracles.
//!
//! A test driver records the readouts of a class's observer methods after
//! every call of a test sequence. Comparing such snapshots between two
//! versions of a class flags behavior changes that the called methods' own
//! return values never reveal. A built-in mutation experiment measures how
//! much this adds over plain return-value assertions.

pub mod adapter;
pub mod cli;
pub mod corpus;
pub mod diff;
pub mod lab;
pub mod mutants;
pub mod sequence;
pub mod snapshot;
pub mod value;

pub use value::Value;
