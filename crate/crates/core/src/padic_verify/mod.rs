//! p-adic checks of the integral equations, the Witt formulas and the
//! unnormalized corollary sum, on truncated fermionic q-integrals.

mod identities;
mod integral;

pub use identities::{
    cauchy_profile, corollary4_probe, corollary4_sum, verify_integral_equation, verify_witt, verify_witt_chi,
    Corollary4Report, IntegralEquationReport, LevelResidual, ProbeVerdict, WittChiReport, WittReport,
};
pub use integral::{
    padic_context, summation_length, truncated_integral, CycEmbedding, IntegrandKind, IntegrandSpec, Measure,
};
