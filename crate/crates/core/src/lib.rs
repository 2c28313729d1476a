//! Mixed Cayley graphs over finite abelian groups: exact spectra of the
//! 0/1 adjacency matrix and of the Hermitian adjacency matrix of the second
//! kind, and integrality classification.
//!
//! The number-theoretic core is generic over an exact coefficient scalar
//! ([`ExactScalar`]); the aliases below fix it to `Ratio<i64>`, with
//! `Big*` variants on arbitrary-precision rationals. The floating-point
//! eigenvalue oracle in [`jacobi`] is generic over `num_traits::Float`.
//!
//! ```
//! use mixcay::{classify, parse_set, GroupSpec, Rational};
//!
//! let g = GroupSpec::parse("3x3").unwrap();
//! let s = parse_set("(0,1),(1,0),(2,0)", &g, false).unwrap();
//! let report = classify::<Rational>(&g, s).unwrap();
//! assert!(report.hs_verdict_spectral && report.consistency);
//! ```

pub mod atoms;
pub mod cayley;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod integrality;
pub mod jacobi;
pub mod parse;
pub mod report;
pub mod scalar;

pub use atoms::{
    atom_of, divisors_mod3, divisors_not3, eclass_of, g_units, g_units_mod3, in_boolean_algebra, in_skew_family,
    AtomDecomposition, DecompositionKind,
};
pub use cayley::{
    a_eigenvalue, build_matrices, exact_spectrum, hs_eigenvalue, numeric_hermitian_eigenvalues,
    simple_part_eigenvalue, skew_part_eigenvalue, to_dot, ConnectionSet, ExactSpectrum, HermitianEntry,
    MixedGraphMatrices, SpectrumKind,
};
pub use cyclotomic::{cyclotomic_poly, phi3_factors, totient, CycloNum, CycloPolynomial, Polynomial};
pub use error::{Error, Result};
pub use group::{ElementSet, GroupElement, GroupSpec, DEFAULT_MAX_ORDER};
pub use integrality::{
    certificate, check_t_case_law, classify, enumerate_hs_integral, f_g_values, verify_theorems,
    CertificateValues, ClassificationReport, HsIntegralSets, VerificationReport, VerifyOptions,
};
pub use parse::parse_set;
pub use scalar::ExactScalar;

/// Default exact scalar.
pub type Rational = num_rational::Rational64;
pub type BigRational = num_rational::BigRational;

pub type Cyclo = CycloNum<Rational>;
pub type BigCyclo = CycloNum<BigRational>;
pub type IntPolynomial = Polynomial<Rational>;
pub type Spectrum = ExactSpectrum<Rational>;
pub type Report = ClassificationReport<Rational>;
pub type Certificate = CertificateValues<Rational>;
