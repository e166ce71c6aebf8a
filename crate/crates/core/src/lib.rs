//! Workbench for exhaustive verification of finite medial, graded and
//! polyadic algebraic structures.
//!
//! The crate is organised around executable laws: every algebraic identity it
//! knows about can be checked exhaustively on a finite structure, and every
//! check produces a [`VerificationReport`] carrying the first counterexample
//! in lexicographic scan order.
//!
//! The main layers are:
//!
//! * [`nary`] — finite carriers, n-ary operation tables, matrix polyads and
//!   the structural predicates (associativity, mediality, cancellativity,
//!   quasigroup, querelements);
//! * [`group`], [`scalar`], [`factor`] — finite abelian grading groups, exact
//!   unit scalars (prime field or formal root of unity) and the
//!   commutation/cocycle/mediality factor laws;
//! * [`algebra`], [`bracket`] — graded n-ary algebras given by structure
//!   constants, twisted and tensor products, almost commutativity/mediality,
//!   and the bracket towers measuring their failure;
//! * [`toyoda`] — linear presentations of medial quasigroups and the
//!   structure theorems for almost medial algebras;
//! * [`tree`], [`coherence`] — bracketing trees, position maps, and concrete
//!   finite models of polyadic tensor-category coherence diagrams;
//! * [`docs`], [`suite`] — document formats and the batch law runner used by
//!   the command line front end.

pub mod algebra;
pub mod bracket;
pub mod coherence;
pub mod docs;
pub mod error;
pub mod factor;
pub mod fp;
pub mod group;
pub mod latin;
pub mod models;
pub mod nary;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod toyoda;
pub mod tree;
pub(crate) mod tuples;

pub use algebra::{Element, GradedAlgebra, GradingKind, Homog};
pub use error::Error;
pub use factor::FactorMap;
pub use group::AbelianGroup;
pub use nary::{Carrier, MatrixPolyad, NaryOp};
pub use report::{Budget, LawStatus, ReportSet, RunConfig, VerificationReport, Witness};
pub use scalar::{ScalarBackend, UnitScalar};
pub use toyoda::LinearPresentation;
pub use tree::{BracketTree, PosMap, WordObject};
