//! Minimum dilatations of pseudo-Anosov maps with orientable foliations.
//!
//! The crate enumerates reciprocal polynomials with small Perron root,
//! filters them through Lefschetz fixed-point accounting against strata, and
//! certifies realizations through Rauzy–Veech loops and Dehn-twist words.
//! It is `no_std` with `alloc`; the `std` feature only forwards to the
//! dependencies.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod factor;
pub mod lefschetz;
pub mod matrix;
pub mod numfield;
pub mod poly;
pub mod polycore;
pub mod rauzy;
pub mod roots;
pub mod search;
pub mod twist;

pub use matrix::IntMatrix;
pub use poly::{IntPoly, QPoly};
pub use polycore::{
    coeffs_from_traces, has_root_of_unity, mahler_measure, perron_analysis,
    symplectically_irreducible, trace_bound, traces_from_coeffs, PerronConfig, PerronError,
    PolyError, ReciprocalPolynomial, RootProfile,
};
