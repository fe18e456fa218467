//! Exact verification of finite-dimensional Hopf algebras: integrals,
//! modular data, duality and Radford's formula for `S⁴`.

pub mod duality;
pub mod error;
pub mod gns;
pub mod grouplike;
pub mod hopf;
pub mod integrals;
pub mod linalg;
pub mod morphism;
pub mod radford;
pub mod report;
pub mod scalar;
pub mod zoo;

pub use duality::DualPair;
pub use error::{Error, Result};
pub use hopf::{Elem, Functional, HopfData, Tensor2};
pub use integrals::ModularData;
pub use linalg::{Mat, Tensor3};
pub use report::{Check, Report, Status};
pub use scalar::CycScalar;
