//! Exact operator algebra on the maximal torus and the radial-part engine.

pub mod coeff;
pub mod diffop;
pub mod hamiltonian;
pub mod laurent;
pub mod lie;
pub mod radial;

pub use coeff::RationalCoeff;
pub use diffop::{apply, commutator, compose, DiffOp, FourierSection, RationalSection};
pub use hamiltonian::{cm_hamiltonian, gauge_compare, integral_hn, Difference, Gauge, GaugeReport};
pub use laurent::LaurentPoly;
pub use lie::{LieAlgebra, Side, UElement};
pub use radial::RadialEngine;
