//! Curvature integrals of convex hypersurfaces in the three space forms.
//!
//! The library represents closed star-shaped hypersurfaces as radial graphs
//! over `S^n`, extracts principal curvatures spectrally, and integrates the
//! normalized mean curvatures `p_k` into the quermassintegral vector
//! `w_k = ∫_Σ p_k dμ`. On top of that sit:
//!
//! - [`parallel`]: exact area/volume expansions of the parallel hypersurfaces
//!   `Σ_t` and direct geometric parallel maps for cross-validation,
//! - [`inequality`]: Alexandrov-Fenchel-type gap functionals in Euclidean,
//!   hyperbolic, and spherical space, including the trigonometric `E(s)/F(s)`
//!   decomposition of the spherical area expansion,
//! - [`flow`]: inverse mean curvature flow for axisymmetric strictly convex
//!   hypersurfaces in the sphere, with the monotone quantity `Q(t)` tracked
//!   along the run.
//!
//! The `curvint` binary exposes the whole pipeline as a CLI; see the README.

pub mod error;
pub mod flow;
pub mod geometry;
pub mod grid;
pub mod inequality;
pub mod io;
pub mod numeric;
pub mod parallel;
pub mod quad;
pub mod spaceform;
pub mod spectral;
pub mod symfunc;

pub use error::{Error, Result};
pub use spaceform::{Curvature, SpaceForm};
