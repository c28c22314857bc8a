//! Root counts of sparse polynomials over finite fields, with the coset
//! structure that governs them.
//!
//! A t-nomial `f = c_1 x^{a_1} + ... + c_t x^{a_t}` over `F_q` is treated as a
//! function on `F_q^*`, so exponents live in `Z/(q-1)`. The crate counts its
//! distinct nonzero roots `R(f)`, finds the largest coset of a multiplicative
//! subgroup on which it vanishes `C(f)`, and bounds `R(f)` in terms of `C(f)`
//! through an explicit degree reduction.
//!
//! ```
//! use fq_sparse::{FieldSpec, TNomial, largest_vanishing_coset};
//!
//! let f7 = FieldSpec::prime(7).unwrap();
//! let f = TNomial::parse(&f7, "x^3 + 1").unwrap();
//! assert_eq!(f.count_roots_bruteforce().unwrap(), 3);
//! assert_eq!(largest_vanishing_coset(&f).unwrap(), 3);
//! ```

pub mod arith;
pub mod coset;
pub mod dense;
pub mod error;
pub mod experiment;
pub mod field;
pub mod lattice;
pub mod params;
pub mod report;
pub mod tnomial;

pub use coset::{
    h1_coset_decomposition, largest_vanishing_coset, vanishes_on_coset, vanishes_on_coset_direct, vanishing_cosets,
    CosetWitness, H1Decomposition,
};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use lattice::{
    baseline_bound, coset_bound, coset_bound_for, degree_reduce, find_small_multiple, CosetBound, ReductionBranch,
    ReductionCertificate, SmallMultiple,
};
pub use params::ParamReport;
pub use report::AnalysisReport;
pub use tnomial::{TNomial, Term};
