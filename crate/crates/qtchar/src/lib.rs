//! Exact interpolating (q,t)-characters of Kirillov-Reshetikhin modules.
//!
//! The crate computes characters in three exact sparse polynomial rings:
//! the interpolating ring of a scheme (an algebra plus a direction), the
//! q-specialized ring, and the twisted ring of the Langlands dual. The
//! specializations of an interpolating character are a q-character and a
//! twisted t-character of Langlands-dual modules, and the `langlands`
//! module verifies the duality statements on concrete examples.

pub mod coeff;
pub mod engine;
pub mod error;
pub mod export;
pub mod fixture;
pub mod langlands;
pub mod lie;
pub mod monomial;
pub mod poly;
pub mod render;
pub mod ring;
pub mod verify;
pub mod verify_props;

pub use coeff::Coeff;
pub use engine::{Caps, CharResult, Engine, KernelCheck, Provenance};
pub use error::{Error, Result};
pub use lie::{build_algebra, parse_algebra_id, phi_coloring, project_weight, AlgebraSpec};
pub use monomial::{Monomial, SpectralIndex, VarKey};
pub use poly::{compare_partial, dominant_in_d, CharPoly, Comparison};
pub use ring::{Direction, GenKind, Ring, Scheme, Side};
