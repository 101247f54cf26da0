//! Property suites shared by the `properties` and `acceptance` targets.

use std::fmt::Debug;

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub mod energy;
pub mod interfaces;
pub mod model;
pub mod profiles;
pub mod quadrature;
pub mod solver;
pub mod waves;

pub type Check = fn() -> Result<(), String>;

/// Runs `test` on `cases` random inputs drawn from `strategy`, shrinking on failure.
pub fn check<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every suite, grouped by module.
pub fn all() -> Vec<(&'static str, &'static [(&'static str, Check)])> {
    vec![
        ("model", model::SUITE),
        ("quadrature", quadrature::SUITE),
        ("waves", waves::SUITE),
        ("profiles", profiles::SUITE),
        ("energy", energy::SUITE),
        ("solver", solver::SUITE),
        ("interfaces", interfaces::SUITE),
    ]
}
