#![allow(clippy::needless_range_loop)]

pub mod bochner;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod highorder;
pub mod numcheck;
pub mod operator;
pub mod selftest;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
