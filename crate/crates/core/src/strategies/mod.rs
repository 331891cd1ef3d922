//! Strategy families, the solution-vector solver and configuration search.

mod generators;
mod search;
mod solver;

pub use generators::{
    gen_divisibility, gen_indiscreet_piles, gen_linear_combination, gen_shapovalov, gen_shapovalov_for,
    gen_three_family, gen_three_family_augmented, interior_condition, Family, LinCombConfig,
};
pub use search::{
    augmented_expected, augmented_sweep, search_lincomb, RankedConfig, SearchLimits, SearchOutcome, SweepRow,
};
pub use solver::{solve_solution_vectors, SolutionVector};
