//! Finite-type Artin monoids, dihedral foldings and chain-of-curves Dehn twist
//! relations.
//!
//! The crate decides equality of positive words in Artin monoids of type
//! `A_n`, `D_n` and `I_2(m)` through left-greedy normal forms, computes
//! least common multiples, builds the LCM-homomorphisms attached to dihedral
//! foldings, and models curve systems on surfaces (regular neighbourhood
//! topology and the homological action of Dehn twists). The [`harness`]
//! module assembles these into verdict tables for Artin relations between
//! products of Dehn twists.

pub mod artin;
pub mod coxeter;
pub mod error;
pub mod folding;
pub mod harness;
pub mod surface;

pub use artin::{NormalForm, PositiveWord};
pub use coxeter::{CoxeterElement, CoxeterGraph, GraphSpec, Label};
pub use error::{Error, Result};
pub use folding::{Folding, Orientation};
pub use surface::{CurveGraph, SurfaceType, TransvectionRep};
