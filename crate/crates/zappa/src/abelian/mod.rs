//! Exact integer linear algebra: sparse matrices, Smith normal form,
//! lattices, homology groups and induced maps.

pub mod homology;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use homology::{homology_of, induced_hom, middle_homology, AbelianGroup, GroupHom, Subquotient};
pub use lattice::{kernel, rank, Lattice};
pub use matrix::{IntMatrix, SparseVec};
pub use snf::{smith_normal_form, solve_integer, solve_mod1, solve_mod_n, Smith, Solve};
