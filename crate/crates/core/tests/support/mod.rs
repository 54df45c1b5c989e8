//! Numerical oracles shared by the integration and acceptance tests. Neither
//! uses the closed-form ideal or the comparison criterion.
#![allow(dead_code)]

pub mod integrability;
pub mod probe;
