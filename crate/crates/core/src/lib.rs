//! Exact triangulation of 3D polyhedra into tetrahedra without Steiner
//! points: minimum, maximum and constrained triangulations by complete
//! search, plus the starring heuristic and generators for the classic
//! examples.
//!
//! Everything runs on exact rationals. The crate is `no_std` with `alloc`;
//! the `std` feature only adds wall-clock time limits to the solver.
#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod bitset;
pub mod candidates;
pub mod generators;
pub mod geometry;
pub mod polygon;
pub mod polyhedron;
pub mod rational;
pub mod solver;

pub use candidates::{enumerate_candidates, point_in_polyhedron, tet_in_polyhedron, CandidateSet};
pub use geometry::{orient3d, point_in_simplex, simplices_properly_intersect, Location, Point3, Sign};
pub use polyhedron::{validate, Polyhedron, Tet, Triangle, Triangulation};
pub use rational::Rat;
pub use solver::{
    best_star, check_triangulation, max_triangulation, min_triangulation, solve, star_triangulation, Edge, Mode,
    SolveResult, SolveSpec, Status,
};
