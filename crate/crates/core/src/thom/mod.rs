//! K-theoretic Thom polynomials of `Σ^r`, `A_2` and `A_3`.
//!
//! Domain roots live in the `ε` family throughout, target roots in `β`.

mod coeff;
mod cohomology;
mod expansions;
mod forms;
mod localization;

pub use coeff::{d3_table, d_coeff, d_oracle, d_table, CoeffTable, D_coeff, D_table};
pub use forms::{
    g_inverted, ktp_a2, ktp_a2_swapped, ktp_a3, ktp_sigma_r, t_substitution_constant, ThomInstance, A3_BOUND,
};
pub use expansions::{
    evaluate_inverted, ktp_a2_minimal, ktp_a2_stable, remainder_identity_check, remainder_p, remainder_q, sign_report,
    RemainderReport, SignReport, REMAINDER_BOUND,
};
pub use cohomology::{
    a2_leading_term_matches, a3_tp_equidimensional, calibrate, cohomological_values, leading_term, leading_term_with, ronga_tp, root_values, t_expansion,
    LeadingTermConvention, LEADING_TERM_CONVENTION,
};
pub use localization::{localization_vs_residue, monomial_symmetric, monomial_test_functions, LocalizationReport};
