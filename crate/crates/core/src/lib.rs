//! Engine, solver and analysis tools for the Gourds sliding-block puzzle on
//! hexagonal boards.

pub mod board;
pub mod hex;
pub mod puzzle;

pub use board::{Board, Label, PropernessReport};
pub use hex::HexCoord;
pub use puzzle::{Configuration, Gourd, Move, MoveKind, OracleMode};
pub mod hamilton;
pub mod generate;
pub mod solver;
pub mod fixtures;
pub mod placement;
