//! Computation with the origami monoids `O_n` and the Jones monoids `J_n`.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`words`]: generators, shortlex-ordered words and the two presentation builders;
//! * [`rewrite`]: shortlex Knuth-Bendix completion and normalisation;
//! * [`congruence`]: Todd-Coxeter style enumeration of the finite quotient
//!   into a [`congruence::MonoidTable`] with left and right Cayley tables;
//! * [`jones`]: planar diagrams, the faithful model of `J_n`, and Jones normal forms;
//! * [`origami`]: projections, cores, regular forms and the candidate normal forms;
//! * [`greens`]: Green's relations, egg boxes, the D-class order and the
//!   structural checks tying `O_n` back to `J_n x J_n`.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod congruence;
pub mod error;
pub mod greens;
pub mod jones;
pub mod origami;
pub mod report;
pub mod rewrite;
pub mod words;

pub use congruence::{tc_enumerate, ElementId, MonoidTable, TcOptions};
pub use error::{Error, Result};
pub use report::Report;
pub use rewrite::{kb_complete, Budget, RewriteRule, RewriteSystem};
pub use words::{
    build_jones_presentation, build_origami_presentation, shortlex_compare, Alphabet, Family,
    Generator, Kind, Presentation, Word,
};
