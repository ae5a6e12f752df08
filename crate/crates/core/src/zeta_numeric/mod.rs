//! Local zeta functions and zeta distributions on the catalog cones, and
//! end-to-end checks of their functional equations.

pub mod chart;
pub mod functional_equation;
pub mod invariance;
pub mod local_zeta;
pub mod test_function;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use chart::{Chart, GroupElement};
pub use functional_equation::{completion_residual, fe_distribution_residual, fe_residual};
pub use invariance::{invariance_deviation, measure_invariance_check};
pub use local_zeta::{
    local_zeta, local_zeta_closed, local_zeta_quadrature, local_zeta_vector, zeta_distribution, zeta_distribution_direct,
};
pub use test_function::{TestFunction, Term};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Sign(Vec<i8>),
    Digit(Vec<u8>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalZetaValue {
    pub value: Complex64,
    pub component: Component,
    pub s: Vec<Complex64>,
    pub method: Method,
    pub error_estimate: f64,
}
