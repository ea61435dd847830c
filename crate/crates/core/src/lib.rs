//! Complete motivic decompositions of generalized Severi–Brauer varieties
//! `X(p^m, D)` for a division algebra `D` of degree `p^n`, computed from the
//! subring of rational cycles in `Ch(X(1, D) × X(p^m, D))` over `F_p`.
//!
//! The pieces, bottom-up:
//!
//! * [`gflin`]: exact linear algebra over `F_p`.
//! * [`schur`]: `Ch(G(k, n); F_p)` in the Schubert basis.
//! * [`chowprod`]: `Ch(P^d × G)` and the Chern classes of the generating bundle.
//! * [`subring`]: the rational subring and its pushforwards `V_k`.
//! * [`motives`]: Poincaré polynomials and the decomposition report.
//! * [`expr`]: a small expression language for classes.
//! * [`verify`]: the worked examples, as executable checks.

pub mod chowprod;
pub mod error;
pub mod expr;
pub mod gflin;
pub mod motives;
pub mod schur;
pub mod subring;
pub mod verify;

pub use chowprod::{GeometrySpec, ProdClass, ProdRing};
pub use error::{Error, Result};
pub use gflin::{EchelonSpan, FpVector, PrimeField};
pub use motives::{decompose, DecompositionReport, PoincarePoly};
pub use schur::{GrassBox, GrassClass, GrassRing, Partition, Strip};
