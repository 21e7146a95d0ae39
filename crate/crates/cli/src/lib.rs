//! Command-line front end for `lawson-core`: record files, rendering and
//! the `lawson` verbs.

mod commands;
pub mod expr;
pub mod formats;
pub mod render;

pub use commands::{
    run, run_with_env, Outcome, ATOM_PATH_VAR, EXIT_BOUNDED, EXIT_INVALID, EXIT_KUNNETH, EXIT_OK,
    EXIT_VERIFY_FAILED,
};
