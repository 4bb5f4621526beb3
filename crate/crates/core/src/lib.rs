//! Arithmetic progressions in Lucas sequences.
//!
//! Core types live at the crate root: [`SeqParams`], [`Kind`], [`SurdValue`],
//! [`APTriple`], [`APFamily`] and [`BivarPoly`].

pub mod apsearch;
pub mod certify;
pub mod error;
pub mod params;
pub mod poly;
pub mod sequence;
pub(crate) mod serde_bigint;
pub mod smallcase;
pub mod special;
pub mod surd;
pub mod tables;

pub use apsearch::{detect_families, find_aps, is_ap, verify_family, APFamily, APTriple, IndexForm};
pub use certify::{certified_enumerate, check_certificate, growth_exception, CertifyConfig, CompletenessCertificate, Enumeration};
pub use error::{CertifyError, FamilyError, ParamError, SolveError, TableError};
pub use params::{classify, classify_pair, new_params, Classification, Kind, SeqParams};
pub use poly::{BivarPoly, UniPoly};
pub use sequence::{closed_form_check, term, LucasSequence, Recurrence};
pub use smallcase::{case_equations, poly_term, solve_all, solve_case, CaseEquation, DomainFilter, SolutionSet};
pub use special::{
    companion_candidates_complex, mult_independence_check, multiplicity, quad_factors, sunit_constant, MultiplicityReport,
    SUnitConstant, Shape, TrinomialSpec,
};
pub use surd::SurdValue;
pub use tables::{infinite_pairs, verify_tables, TableReport, Tables};

/// Version string embedded in serialized certificates.
pub const TOOL_VERSION: &str = concat!("lucasap ", env!("CARGO_PKG_VERSION"));
