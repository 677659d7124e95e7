//! Exact analysis of multiplayer games and their parallel repetitions.
//!
//! * [`game`]: games, product strategies, exact values, repetition.
//! * [`structure`]: connection graphs and the binary 3-player classifier.
//! * [`zoo`]: named games, the canonical HW1 family, random 3-CNF games.
//! * [`lp`]: exact rational simplex and the non-signaling value.
//! * [`lab`]: sampling, heuristic search, and distribution diagnostics.

pub mod error;
pub mod game;
pub mod lab;
pub mod lp;
pub mod rational;
pub mod rng;
pub mod structure;
pub mod zoo;

pub use error::{Error, Result};
pub use game::{Game, ProductStrategy};
pub use rational::Rational;

/// Version of the game and strategy JSON formats.
pub const FORMAT_VERSION: &str = "1";
