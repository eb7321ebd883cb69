//! Exact symbolic computation of the inhomogeneous quantum Serre relations
//! that define quantum symmetric pair coideal subalgebras, including the
//! generalized q-Onsager algebras of the split case.
//!
//! The crate is organized in five layers:
//! - [`qring`]: exact arithmetic in ℚ(q) (Laurent polynomials, reduced
//!   rational functions) and the scalar q-combinatorial quantities the
//!   closed formulas are built from,
//! - [`combinat`]: binary-tuple index machinery (partial sums, the ζ
//!   statistic, constrained tuple enumerators, the N-vector data),
//! - [`ncoracle`]: a brute-force verification path through free
//!   noncommutative polynomials over the rank-two quantum group fragment,
//!   normal ordering, and counit-projection extraction,
//! - [`relations`]: the closed-form structure constants and assembly of the
//!   complete relation tables for all non-trivial index configurations,
//! - [`onsager`]: ι-divided powers, the free-algebra resummation identity,
//!   and the classical (q→1) coefficients.
//!
//! All values are immutable and all operations are pure, so everything here
//! can be evaluated from concurrent workers with no shared mutable state.

pub mod combinat;
pub mod ncoracle;
pub mod onsager;
pub mod qring;
pub mod relations;
