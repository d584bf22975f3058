//! Workloads shared by the benchmarks. Each builds its inputs once and
//! returns a closure-friendly value so setup stays out of the timing.

use std::sync::Arc;

use thh_engine::algebra::{Algebra, Presentation};
use thh_engine::ktheory::presets;
use thh_engine::steenrod::{v1_thh_comodule, Comodule, DualSteenrod};
use thh_engine::{FpMatrix, PrimeField, Scalar};

pub fn f5() -> PrimeField {
    PrimeField::new(5).expect("5 is prime")
}

/// A dense n×n matrix over F_5 from a linear congruential fill.
pub fn pseudo_random_matrix(n: usize, seed: u64) -> FpMatrix {
    let mut state = seed;
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % 5) as Scalar
                })
                .collect()
        })
        .collect();
    FpMatrix::from_rows(f5(), n, &rows)
}

/// E(x_3) ⊗ P(y_4), the smallest V(0)_*K in the reference pairs.
pub fn small_v0() -> Presentation {
    Presentation::builder(f5()).ext("x", 3).poly("y", 4).build().expect("valid presentation")
}

pub fn case_one_answer(max_degree: u32) -> Algebra {
    Algebra::new(presets::v1_thh_case1(5).expect("preset"), max_degree).expect("basis")
}

pub fn case_one_comodule(max_degree: u32) -> Comodule {
    let a = Arc::new(DualSteenrod::new(f5(), max_degree).expect("A_*"));
    v1_thh_comodule(a, max_degree).expect("comodule")
}
