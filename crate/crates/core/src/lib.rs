//! Involutions of the symmetric group, braid moves on their reduced
//! I*-expressions, the Iwahori–Hecke algebra, the Lusztig–Vogan module `M`,
//! and the module map `M -> H X_∅`.

pub mod braid;
pub mod coeff;
pub mod error;
pub mod eta;
pub mod hecke;
pub mod istar;
pub mod laurent;
pub mod lvmodule;
pub mod modp;
pub mod perm;
pub mod rsk;

pub use braid::{BraidGraph, ConnectivityReport, MoveKind, Trichotomy};
pub use coeff::Coefficient;
pub use error::{Error, Result};
pub use eta::{RankCertificate, StepKind, ThetaPlan, VerifyOptions, VerifyReport};
pub use hecke::{x_empty, HeckeElement};
pub use istar::{IStarWord, Involution};
pub use laurent::LaurentPoly;
pub use lvmodule::{LvBasisElement, LvTable, MElement};
pub use perm::{Permutation, Word};
pub use rsk::{Partition, StandardTableau};
