//! Berlekamp's switching game played on finite geometries.
//!
//! Bulbs sit on the points of an incidence structure (the square grid, or a
//! projective or affine space over a finite field) and each line is a switch
//! that toggles its bulbs. The crate builds the boards ([`geometry`], over
//! fields from [`gf`]), plays the game ([`game`]), runs the constructive
//! reductions available for odd orders ([`reduce`]), and computes exact
//! worst cases as covering radii of the GF(2) switch code ([`search`]).

pub mod bits;
pub mod error;
pub mod game;
pub mod geometry;
pub mod gf;
pub mod reduce;
pub mod rng;
pub mod search;

pub use bits::BitVec;
pub use error::{Error, Result};
pub use game::{Configuration, Parity, SwitchPlan};
pub use geometry::{IncidenceStructure, Kind};
pub use gf::FiniteField;
