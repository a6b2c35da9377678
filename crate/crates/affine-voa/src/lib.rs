//! Exact computational algebra for affine vertex algebras over sl_n.
//!
//! Everything here is exact: scalars are arbitrary-precision rationals, linear
//! algebra is fraction-free, and every randomized check is seeded.  The crate
//! covers, bottom to top:
//!
//! * [`lie`] — sl_n in a Chevalley basis with the normalized invariant form;
//! * [`weyl`] — affine weights, the shifted Weyl action, translations, and
//!   integral root subsystems;
//! * [`vertex`] — graded weight spaces of the vacuum module V^k(sl_n), exact
//!   mode action, and PBW normal ordering;
//! * [`singular`] — singular-vector nullspace solving and coefficient reports;
//! * [`sugawara`] — the Sugawara conformal vector, L₀, and the central charge;
//! * [`ideal`] — weight-space dimensions of vertex-algebra ideals and their
//!   graded quotients;
//! * [`c2`] — the C₂ (Zhu Poisson) algebra, symbols, Jordan-class membership
//!   predicates, and associated-variety certificates;
//! * [`slodowy`] — sl₂-triples, centralizers, Slodowy slices, and slice
//!   intersection constraints;
//! * [`character`] — truncated characters from the closed Weyl-translation
//!   formula, cross-checked against brute-force quotient dimensions;
//! * [`zhu`] — Zhu-algebra images, Harish-Chandra projection, and
//!   characteristic-variety tests;
//! * [`report`] — deterministic JSON reports with reproducibility manifests;
//! * [`driver`] — certified end-to-end runs shared by the command line and
//!   the C interface.

pub mod rat;
pub mod poly;
pub mod mat;
pub mod lie;
pub mod weyl;
pub mod linalg;
pub mod vertex;
pub mod singular;
pub mod sugawara;
pub mod ideal;
pub mod c2;
pub mod slodowy;
pub mod character;
pub mod zhu;
pub mod report;
pub mod driver;

pub use rat::Q;
