//! Tau constants and resistance invariants of metrized graphs.
//!
//! A metrized graph is a connected multigraph whose edges are segments of
//! positive length. Everything here is computed from the Moore–Penrose
//! pseudo-inverse `L⁺` of the discrete Laplacian: effective resistances
//! `r(p,q)`, voltages `j_p(q,s)`, the Kirchhoff index `v·tr(L⁺)` and the tau
//! constant `τ(Γ) = ¼∫(d/dx r(x,p))² dx`.
//!
//! | module | contents |
//! |--------|----------|
//! | [`graph`] | data model, adequation, bridges, edge connectivity, CSV I/O |
//! | [`laplacian`] | Laplacian, dense/spectral pseudo-inverse, stochastic trace |
//! | [`tau`] | tau by fixed-point, trace and regular-graph formulas; bounds |
//! | [`families`] | hexagonal tori, `MM(a,b)`, `TT(a,b,c)`, cycles, complete graphs |
//! | [`analytic`] | closed forms for the hexagonal torus spectrum and tau |

pub mod analytic;
pub mod error;
pub mod families;
pub mod graph;
pub mod laplacian;
pub mod sum;
pub mod tau;

pub use error::{Error, Result};
pub use graph::{Edge, MetrizedGraph, StructureReport};
pub use laplacian::{DiscreteLaplacian, PseudoInverse};
pub use tau::{TauMethod, TauResult};
