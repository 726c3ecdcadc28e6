pub mod cli;
pub mod config;
pub mod error;
pub mod extendability;
pub mod gamma;
pub mod generators;
pub mod par;
pub mod repetition;
mod search;
pub mod transition;
pub mod words;
