//! Exact integration of algebraic functions.
//!
//! The crate decides whether an element `f` of an algebraic function field
//! `A = K(x)[y]/⟨m⟩` has an antiderivative in `A`, and computes telescopers
//! for functions depending on a parameter `t`. It never computes an integral
//! basis up front: Hermite reduction runs on a *suitable* basis that is
//! enlarged only when the reduction's linear system degenerates, and a
//! polynomial reduction against a basis that is suitable at infinity turns
//! the remainder into a certificate of (non-)integrability.
//!
//! Layers, bottom up:
//!
//! * [`field`], [`poly`], [`ratfunc`], [`matrix`], [`solve_mod`]: exact
//!   arithmetic over ℚ or ℚ(t), linear algebra over `K[x]` and `K[x]/⟨v⟩`;
//! * [`curve`], [`basis`]: the function field, its derivations, integrality
//!   oracles and `K[x]`-modules of integral elements;
//! * [`hermite`]: lazy Hermite reduction;
//! * [`polyred`]: bases suitable at infinity, polynomial reduction and the
//!   additive decomposition;
//! * [`telescoper`]: reduction-based creative telescoping.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod basis;
pub mod curve;
pub mod error;
pub mod field;
pub mod hermite;
pub mod matrix;
pub mod poly;
pub mod polyred;
pub mod ratfunc;
pub mod solve_mod;
pub mod telescoper;

pub use basis::BasisW;
pub use curve::{AlgElem, Curve};
pub use error::{Error, Result};
pub use field::{Field, Qt, Rat};
pub use hermite::{lazy_hermite_reduce, HermiteResult, Remainder};
pub use matrix::Matrix;
pub use poly::Poly;
pub use polyred::{additive_decompose, antiderivative, AdditiveDecomp, InfinityBasis};
pub use ratfunc::RatFunc;
pub use telescoper::{telescope, verify_telescoper, Certificate, Telescoper};
