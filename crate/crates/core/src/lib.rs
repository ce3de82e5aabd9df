//! Finite-model semantics of two computational effects, global state and
//! exceptions, and the duality between them.
//!
//! A [`FamilySignature`] fixes a family of finite carriers. Its product is
//! the state space, read by `lookup` and written by `update`; its sum is
//! the exception space, built by the constructors and taken apart by the
//! recovery operations. [`terms`] provides a small typed language over
//! these primitives whose equations are decided by exhaustive enumeration,
//! and [`duality`] maps the state equations onto the exception equations
//! by swapping products and sums.

pub mod duality;
pub mod error;
pub mod semantics;
pub mod signature;
pub mod suite;
pub mod terms;

pub use error::{Error, Result};
pub use signature::{Elem, Entry, ExcVal, FamilySignature, Ix, State, SumVal};
pub use terms::{equiv, eval, parse, type_of, Arrow, Labeler, Law, Obj, Term, Value, Verdict};
