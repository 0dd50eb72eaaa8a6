//! Gamma and real-order Bessel-family functions.

mod bessel;
mod gamma;

pub use bessel::{
    bessel_i, bessel_i_log_derivative, bessel_i_prime, bessel_i_with, bessel_j, bessel_j_orders,
    bessel_j_prime, bessel_j_with, bessel_k, bessel_k_log_derivative, bessel_k_prime,
    bessel_k_scaled, bessel_k_with, bessel_n, bessel_n_prime, bessel_n_with, EvalPolicy,
};
#[allow(unused_imports)]
pub(crate) use gamma::{cos_pi, sin_pi};
pub use gamma::{gamma, ln_gamma, rgamma};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },
    #[error("gamma has a pole at {x}")]
    GammaPole { x: f64 },
    #[error("{function}({nu}, {x}) underflows")]
    Underflow {
        function: &'static str,
        nu: f64,
        x: f64,
    },
    #[error("{function}({nu}, {x}) overflows")]
    Overflow {
        function: &'static str,
        nu: f64,
        x: f64,
    },
    #[error("{function}({nu}, {x}) did not converge in {terms} terms")]
    NoConvergence {
        function: &'static str,
        nu: f64,
        x: f64,
        terms: usize,
    },
    #[error("invalid evaluation policy: {0}")]
    InvalidPolicy(String),
}

impl SpecFunError {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Self::Domain {
            function,
            detail: detail.into(),
        }
    }
}
