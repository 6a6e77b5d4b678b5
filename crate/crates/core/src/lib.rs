//! Knot concordance toolkit: diagrams, Seifert forms, classical obstructions,
//! Casson tower bookkeeping and filtration deduction.

#![allow(clippy::needless_range_loop)]

pub mod builder;
pub mod certificate;
pub mod cli;
pub mod diagram;
pub mod engine;
pub mod error;
pub mod factor;
pub mod families;
pub mod invariants;
pub mod matrix;
pub mod moves;
pub mod poly;
pub mod regression;
pub mod seifert;
pub mod tower;
