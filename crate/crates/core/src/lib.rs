//! Weighted trees, their edge ideals, and the regularity of those ideals and
//! their powers: combinatorial closed forms checked against an exact Betti
//! number oracle.

pub mod betti;
pub mod formulas;
pub mod harness;
pub mod linalg;
pub mod matchings;
pub mod monomial;
pub mod wgraph;

pub use betti::{betti_table, betti_table_with, regularity, regularity_with, BettiError, BettiTable, OracleLimits};
pub use formulas::{
    power_regularity, reg_closed_form, reg_path_closed_form, reg_power_exact, reg_power_trivial,
    reg_power_upper_bound, FormulaError, PowerCase, PowerRegResult, RegCase, RegFormulaResult,
};
pub use harness::{
    generate_instance, run_suite, verify_instance, HarnessError, SuiteConfig, SuiteSummary, Verdict, VerificationReport,
    VerifyOptions,
};
pub use matchings::{constrained_matching_number, induced_matching_number, nu, s_value, MatchingResult};
pub use monomial::{edge_ideal, Monomial, MonomialError, MonomialIdeal};
pub use wgraph::{is_integrally_closed, non_trivial_spine, GraphError, SpineData, WeightedGraph};
