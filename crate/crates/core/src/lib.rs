//! Exact renormalized multiple zeta values.
//!
//! The pipeline regularizes `ζ(s⃗)` by exponential damping along a direction,
//! expands the result as a Laurent series in the regulator with coefficients
//! in `ℚ(δ)`, removes poles by the Birkhoff decomposition of the quasi-shuffle
//! Hopf algebra under minimal subtraction, and takes `δ → 0`.

pub mod birkhoff;
pub mod coeff;
pub mod dseries;
pub mod error;
pub mod exact;
pub mod hopf;
pub mod laurent;
pub mod ratfunc;
pub mod renorm;
pub mod zreg;

pub use birkhoff::{ordered_partitions, zeta_directional, Birkhoff, BirkhoffResult, OrderedPartition};
pub use coeff::Coefficient;
pub use dseries::DeltaSeries;
pub use error::{Error, Result};
pub use exact::{bernoulli, int, mzv_numeric, rat, to_f64, zeta_nonpositive, Composition, Rational};
pub use hopf::{
    deconcat, quasi_shuffle, reduced_deconcat, stuffle_oracle, stuffle_triples, symmetrization_group,
    Direction, HopfElement, LetterPair, StuffleTriple, Word, ZeroClusters,
};
pub use laurent::LaurentSeries;
pub use ratfunc::{Poly, RatFunc};
pub use renorm::{
    gzeta, gzeta_nonpos, gzeta_positive, gzeta_symmetrized, numeric_value, parity_identity, signature,
    symbolic_mul, z2_closed_form, GzetaValue, MzvSymbol, Renormalizer, Signature, SymbolicValue,
};
pub use zreg::{z_depth1, z_depth1_in, RegularizedZ, Window, WindowPolicy};
