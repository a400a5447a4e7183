//! Exact symbolic computation in the rational Cherednik algebra `H_{t,c}`
//! tensored with a Clifford algebra, for the reflection groups of types A,
//! B, D and `A1^d`.
//!
//! Scalars live in `ℚ(i, √2)(s, c1, …, c7)` with `t = s²/2`. On top of the
//! PBW product sit the `osp(1|2)` realisation, the generators of its
//! centraliser and their relations, the Dirac element, admissible elements
//! of the pin cover's twisted group algebra, and polyspinor modules with
//! Dirac cohomology. [`suites`] bundles these into reproducible checks that
//! the `verify` binary reports as JSON.

pub mod numfield;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod roots;
pub mod clifford;
pub mod pin;
pub mod cherednik;
pub mod hc;
pub mod osp;
pub mod polyspinor;
pub mod admissible;
pub mod linalg;
pub mod report;
pub mod tama;
pub mod suites;
