//! Exact-arithmetic toolkit for a family of rank-3 oriented matroids on 13
//! points whose realization spaces are disconnected (two sign patterns) or
//! connected but split into two intersecting sheets (the third).
//!
//! The pieces, bottom up:
//!
//! * [`exact`]: rationals, polynomials in `s, t, u`, 3-vectors, determinants.
//! * [`configuration`]: the 13-column matrix `X(s,t,u)`, built from a closed
//!   form and independently from a join/meet construction sequence.
//! * [`chirotope`]: sign maps on triples, axiom checks, the flip that defines
//!   the three matroids.
//! * [`classification`]: which matroid (if any) a parameter point realizes,
//!   decided both from a short inequality system and from all 286 signs.
//! * [`topology`]: lattice sampling of the parameter regions, component
//!   counting and the separation certificate on `s = 1/2`.
//! * [`render`]: SVG drawings of affine images.

pub mod chirotope;
pub mod classification;
pub mod configuration;
pub mod exact;
pub mod render;
pub mod topology;

pub use chirotope::{Chirotope, Triple};
pub use classification::{classify, Label};
pub use configuration::{closed_form, Configuration, ParamPoint};
pub use exact::{parse_rational, rat, Rational, Sign};
