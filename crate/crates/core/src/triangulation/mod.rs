//! Subdivisions and triangulations of point configurations: regular
//! subdivisions from heights, pulling refinements that keep a coherence
//! certificate, the prism construction that resolves Nakajima polytopes,
//! and the verifiers.
//!
//! Cells and simplices are index lists into the configuration's point list.
//! All geometry happens in coordinates of the affine lattice spanned by the
//! points, so configurations on a slice `x_1 = 1` behave like full-dimensional
//! ones.

mod config;
mod nonface;
mod pulling;
mod regular;
mod resolve;
mod special;
mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::lattice::IntVector;
use crate::polytope::{hull_vertices, LatticePolytope};

pub use nonface::{koszul_check, minimal_nonfaces};
pub use pulling::{pull, pull_all, pull_heights};
pub use regular::regular_subdivision;
pub use resolve::{prism_subdivision, resolve, resolve_with, PullOrder};
pub use special::{fano_canonical, full_flag_triangulation, hd_triangulation, is_basic_simplex, is_elementary_simplex};
pub use verify::{uses_all_points, verify_basic, verify_coherent, verify_covering, verify_maximal};

/// Exact height `ω(v)` for every point, indexed like the configuration.
pub type HeightFunction = Vec<BigRational>;

/// A polytopal subdivision of `conv(points)`; each cell is the sorted list of
/// its vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub points: Vec<IntVector>,
    pub cells: Vec<Vec<usize>>,
}

impl Subdivision {
    /// The one-cell subdivision of `conv(points)`.
    pub fn trivial(points: Vec<IntVector>) -> Result<Self> {
        let hull = hull_vertices(&points)?;
        let mut cell: Vec<usize> =
            hull.vertices().iter().map(|v| points.iter().position(|p| p == v).expect("vertex is a point")).collect();
        cell.sort_unstable();
        Ok(Subdivision { points, cells: vec![cell] })
    }

    pub fn cell_polytopes(&self) -> Vec<LatticePolytope> {
        self.cells
            .iter()
            .map(|c| LatticePolytope::from_vertices_unchecked(c.iter().map(|&i| self.points[i].clone()).collect()))
            .collect()
    }
}

/// A subdivision all of whose cells are simplices, listed in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub points: Vec<IntVector>,
    pub simplices: Vec<Vec<usize>>,
}

impl Triangulation {
    pub fn new(points: Vec<IntVector>, simplices: Vec<Vec<usize>>) -> Self {
        let mut simplices: Vec<Vec<usize>> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        simplices.sort();
        Triangulation { points, simplices }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex_points(&self, i: usize) -> Vec<IntVector> {
        self.simplices[i].iter().map(|&j| self.points[j].clone()).collect()
    }

    pub fn to_subdivision(&self) -> Subdivision {
        Subdivision { points: self.points.clone(), cells: self.simplices.clone() }
    }

    /// Sum of the normalized volumes of the simplices, measured in the
    /// affine lattice of the whole configuration.
    pub fn volume(&self) -> Result<BigInt> {
        verify::simplex_volumes(self).map(|v| v.into_iter().sum())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub maximal: bool,
    pub basic: bool,
    pub coherent: bool,
}

/// A triangulation with the heights that certify its coherence and the
/// outcome of the verifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedTriangulation {
    pub triangulation: Triangulation,
    pub heights: HeightFunction,
    pub flags: Flags,
}

impl CertifiedTriangulation {
    /// Runs the verifiers and records their verdicts.
    pub fn certify(triangulation: Triangulation, heights: HeightFunction) -> Self {
        let flags = Flags {
            maximal: verify_maximal(&triangulation),
            basic: verify_basic(&triangulation),
            coherent: verify_coherent(&triangulation, &heights),
        };
        CertifiedTriangulation { triangulation, heights, flags }
    }

    /// Maximal, basic and coherent.
    pub fn is_bc(&self) -> bool {
        self.flags.maximal && self.flags.basic && self.flags.coherent
    }
}
