//! The arithmetic of K(F_q) and the verifiers that tie the other modules to
//! concrete statements about its topological Hochschild homology.

mod classify;
mod fg;
pub mod presets;
mod scenarios;

pub use classify::{
    bockstein_torsion_table, classify, homotopy, v0_of_k, v0_presentation, v1_of_k, v1_presentation,
    valuation_of_power_minus_one, BocksteinRow, CaseParams, HomotopyGroup,
};
pub use fg::{fg_operator_check, fg_operator_check_with_unit, FgOperators};
pub use presets::{preset, PresetInfo, PRESETS};
pub use scenarios::{
    applicable, long_exact_sequence_table, run_scenario, scenario_info, suite_jobs, ScenarioInfo, REFERENCE_PAIRS,
    SCENARIOS,
};
