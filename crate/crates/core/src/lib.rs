//! Exact decision procedures for quadratic forms over henselian valued field
//! towers with residue characteristic different from 2.
//!
//! The library is organised around a tower model: a base field (finite of odd
//! order, real closed, quadratically closed, or an odd-prime p-adic bottom)
//! together with a stack of Laurent- or Puiseux-series levels. Elements are
//! exact rational functions in the tower variables; verdicts about quadratic
//! forms (isotropy, hyperbolicity, torsion, Witt decomposition, representation)
//! are computed by splitting a form along square classes of entry values and
//! recursing through residue forms, level by level, down to the base.
//!
//! Supporting modules provide exact computations in the value groups
//! ([`valgroup`]), u-invariant bookkeeping ([`invariants`]), a search for
//! 2-adically tame binary subforms over the rationals ([`dyadic`]),
//! brute-force verifiers used to cross-check every decision path ([`oracle`]),
//! and a small text grammar for fields, elements and forms ([`dsl`]).

pub mod dsl;
pub mod dyadic;
pub mod invariants;
pub mod oracle;
pub mod qform;
pub mod tower;
pub mod valgroup;

pub use qform::{CosetDecomp, DiagForm, GramForm, Trace, Verdict, WittData};
pub use tower::{BaseKind, Element, Field, FieldDesc, LevelKind, SquareClass, ValueVec};
