//! Nakajima lattice polytopes, basic coherent triangulations and Ehrhart
//! data, all in exact arithmetic.

pub mod cone;
pub mod corpus;
pub mod ehrhart;
pub mod error;
pub mod io;
pub mod lattice;
pub mod nakajima;
pub mod polytope;
pub mod triangulation;

pub use cone::{cone_over, DualDescription, RationalCone};
pub use ehrhart::EhrhartData;
pub use error::{Error, Result};
pub use nakajima::FreeParameterSequence;
pub use lattice::{AffineLatticeBasis, IntMatrix, IntVector, RatMatrix, RatVector};
pub use polytope::{hull_vertices, Facet, Halfspace, LatticePolytope};
pub use triangulation::{CertifiedTriangulation, HeightFunction, PullOrder, Subdivision, Triangulation};
