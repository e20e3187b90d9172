//! Entropy bounds for the half-space evaporation/condensation problem of a
//! polyatomic gas with `δ` internal degrees of freedom.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // negated comparisons reject NaN on purpose

pub mod admissibility;
pub mod entropy;
pub mod error;
pub mod explorer;
pub mod gas;
pub mod min_flux;
pub mod numerics;
mod scalar;
pub mod special;

pub use entropy::{lambda, lambda_direct, lambda_recast, upsilon, LambdaBreakdown, LambdaForm};
pub use error::{Error, Result};
pub use scalar::Real;

pub use admissibility::{
    check_all, check_condensation, check_evaporation, check_overall, check_stationary, AdmissibilityReport,
    ConditionResult, EvaporationConditions,
};
pub use explorer::{
    boundary_surface, condensation_surface, evaporation_curve, max_positive_mach, maximize_lambda_p,
    maximize_lambda_pt, BoundarySample, CurvePoint, ExplorerOptions, SearchBox, SurfaceSample,
};
pub use gas::{
    boundary_half_moments, classify_regime, flux_moments, heat_capacity_ratio, incoming_half_moments,
    FarFieldState, FluxMoments, GasParams, HalfMoments, MomentKind, Regime, RegimeReport,
};
pub use min_flux::{
    maxwellian_from_moments, min_flux, min_flux_reduced, psi_plus_quadrature, solve_shape_parameter,
    DriftedMaxwellian, MaxwellianMixture, MinFluxValue, PsiPlus, ShapeSolution,
};
pub use special::{
    half_gauss_moment, moment_ratio, shape_function, theta, HalfGaussMoments, ScaledMoment, ShapeFunctionValue,
};

pub type Gas = GasParams<f64>;
pub type State = FarFieldState<f64>;
pub type Moments = HalfMoments<f64>;
