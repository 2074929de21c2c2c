//! Pseudo-Boolean proof checking.
//!
//! This crate parses OPB formulas and VeriPB kernel-format proofs, replays
//! each proof rule against a constraint database, and ships encoders for a
//! handful of combinatorial problems together with brute-force oracles that
//! act as ground truth on small instances.
//!
//! - [`pbcore`]: constraints, valuations and the cutting-planes operations.
//! - [`opb`]: the OPB input format.
//! - [`proofast`]: kernel proof tokenizer and streaming parser.
//! - [`checker`]: proof replay and verdicts.
//! - [`encodings`]: problem encoders and native witness checks.
//! - [`oracle`]: exhaustive satisfiability and independence-number search.
//! - [`prover`]: small proof generators used for fixtures and stress tests.

pub mod checker;
pub mod encodings;
pub mod opb;
pub mod oracle;
pub mod pbcore;
pub mod proofast;
pub mod prover;
