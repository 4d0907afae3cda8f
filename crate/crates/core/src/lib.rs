//! Finite-dimensional and graded representations of the fermionic and
//! bosonic ladder algebras, with numerical verification throughout.
//!
//! The crate builds, relates, and checks several concrete realizations of
//! the canonical (anti)commutation relations:
//!
//! * [`car`] — Clifford-algebra generators constructed recursively and the
//!   fermionic ladder operators they induce, alongside the direct
//!   Jordan–Wigner string construction; the two must agree entrywise.
//! * [`fock`] — bosonic ladder operators on a truncated Fock space in the
//!   occupation-number basis, the derivative/multiplication representation
//!   on monomials, and the diagonal intertwiner connecting the two.
//! * [`sym`] — symmetric subspaces of qubit tensor powers: symmetrizer,
//!   isometric embeddings, induced SU(2) rotations, and ladder maps between
//!   grades.
//! * [`stellar`] — the correspondence between symmetric qubit states,
//!   homogeneous polynomials in two variables, and unordered point
//!   configurations on the Riemann sphere.
//! * [`tape`] — a graded container over variable qubit counts with an
//!   append-a-blank-cell isometry and symmetrization onto counted states.
//! * [`oscillator`] — a two-mode cross-check: the truncated pair of modes
//!   reproduces the 2D harmonic-oscillator degeneracy ladder.
//!
//! Supporting layers: [`sparse`] (CSR complex operators and Matrix Market
//! export), [`linalg`] (dense rank and Hessenberg eigenvalues),
//! [`roots`] (polynomial roots via balanced companion matrices),
//! [`report`] (machine-readable verification reports), [`random`]
//! (seeded sampling for property checks), and [`suites`] (the bundled
//! per-module verification runs used by the CLI).

pub mod car;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod oscillator;
pub mod random;
pub mod report;
pub mod roots;
pub mod sparse;
pub mod stellar;
pub mod suites;
pub mod sym;
pub mod tape;

pub use error::{Budget, Error, Result};
pub use report::{RelationCheck, VerificationReport};
pub use sparse::{anticommutator, commutator, SparseOp};
