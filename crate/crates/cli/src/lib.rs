//! Command-line front end for operator means: computing means, seeded
//! verification sweeps, fuzzing unproven noncommutative variants and the
//! scalar oracle.

#![forbid(unsafe_code)]

pub mod commands;
pub mod matrix_file;
pub mod report;
pub mod suite;
