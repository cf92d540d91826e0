//! Exact-arithmetic toolkit for maximal Cohen-Macaulay modules over the
//! homogeneous coordinate ring of a smooth plane cubic.
//!
//! The crate has three layers:
//!
//! * [`charge`]: the numerical Grothendieck lattice of the curve, the
//!   Euler form, the degree-shift automorphism and its fundamental
//!   domains.
//! * [`betti`] / [`hilbert`]: closed-form graded Betti tables, complete
//!   resolution diagrams, Hilbert series and numerical invariants
//!   (multiplicity, generators, rank, Ulrich detection) for the four
//!   families of indecomposable MCM modules.
//! * [`scalar`] / [`poly`] / [`matrix`] / [`matfac`]: exact sparse
//!   multivariate polynomials over the rationals and prime fields,
//!   graded polynomial matrices, and the explicit matrix factorizations
//!   of the Hesse cubic (Koszul, Moore, skyscraper) together with
//!   verification and Betti-data extraction.
//!
//! Everything is exact: no floating point anywhere.

pub mod betti;
pub mod charge;
pub mod hilbert;
pub mod matfac;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use betti::{
    betti_general, betti_table, complete_resolution, descriptor_syzygy, h0, h1, BettiError,
    BettiTable, ObjectDescriptor, Variant,
};
pub use charge::{
    euler_form, in_domain3, in_domain6, orbit_v, reduce3, reduce6, sigma_power, Charge,
    LatticeAuto, LatticeError,
};
pub use hilbert::{
    hilbert_coefficients, hilbert_data, is_ulrich, is_ulrich_charge, HilbertData, IntPoly,
};
pub use matfac::{
    betti_from_mf, hesse, koszul_mf, koszul_reference, moore_matrix, moore_mf, point_search,
    skyscraper_explicit, skyscraper_mf, standard_decomposition, tensor_mf, verify_mf, CurvePoint,
    HesseCubic, MatFacError, MatrixFactorization, Side, VerifyReport,
};
pub use matrix::{grading_infer, solve_linear, PolyMatrix};
pub use poly::{MultiPoly, PolyError};
pub use scalar::{Field, Scalar};
