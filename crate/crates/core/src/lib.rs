//! Exact Chern invariants of Galois covers of generic projections.
//!
//! A generic projection of degree `n` of a smooth projective surface onto the
//! plane is described by its branch curve: degree `m`, class `mu`, `rho`
//! cusps and `d` nodes. From these five numbers this crate computes
//! `c1^2(X_k)` and `c2(X_k)` for every intermediate cover `X_k`, `1 <= k <= n`,
//! twice: once by closed form and once by walking the recursion from
//! `X_0 = CP^2` upward. Every public result carries both.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`).

pub mod arith;
pub mod branch;
pub mod cli;
pub mod cover;
pub mod error;
pub mod evaluate;
pub mod families;
pub mod geography;
pub mod par;
pub mod published;
pub mod scan;
pub mod verify;

pub use branch::{derive_branch, validate_branch, BranchData, SurfaceIntrinsics, ValidationReport};
pub use cover::{chern, chern_all, galois_chern, ChernPair, CrossCheckedChern};
pub use error::{Error, Result};
pub use evaluate::{evaluate, evaluate_all, Evaluation};
pub use geography::{geography, GeographyReport};
pub use par::Execution;
