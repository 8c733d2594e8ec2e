//! Combinatorics of boundary actions on trees and two-dimensional affine
//! buildings, and K-theory of the associated Cuntz-Krieger algebras.
//!
//! The pipeline goes: a triangle presentation (or a finite graph) yields a
//! transition system — a tile alphabet with two {0,1}-matrices in rank 2,
//! a directed-edge alphabet with one matrix in rank 1. The H-conditions
//! are verified on that system, and the K-groups together with the order
//! of the identity class are computed by exact integer linear algebra.
//!
//! - [`plane`]: finite projective planes and point-line correspondences
//! - [`presentation`]: triangle presentations, validation, and search
//! - [`tiles`]: tile alphabets and their transition matrices
//! - [`words`]: two-dimensional words and the H-condition checker
//! - [`rank1`]: edge systems of finite graphs and the simplicity test
//! - [`zlin`]: Smith normal form, cokernels, abelian group arithmetic
//! - [`ktheory`]: K-groups, identity class, divisibility diagnostics

#![forbid(unsafe_code)]

pub mod ktheory;
pub mod mat01;
pub mod plane;
pub mod presentation;
pub mod rank1;
pub mod scc;
pub mod system;
pub mod textio;
pub mod tiles;
pub mod words;
pub mod zlin;
