//! Necessary conditions on the far-field state, as signed margins.

use crate::error::{Error, Result};
use crate::gas::{classify_regime, FarFieldState, GasParams, RegimeReport};
use crate::scalar::{lit, Real};

/// Absolute tolerance for the equilibrium test at zero Mach number.
pub const STATIONARY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionResult<T> {
    pub satisfied: bool,
    /// Positive strictly inside the admissible set.
    pub margin: T,
}

impl<T: Real> ConditionResult<T> {
    pub fn from_margin(margin: T) -> Self {
        Self { satisfied: margin >= T::zero(), margin }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaporationConditions<T> {
    /// Equivalent to `N1⁻ ≥ 0`.
    pub flux: ConditionResult<T>,
    /// Equivalent to `N5⁻ ≥ 0`.
    pub energy: ConditionResult<T>,
    pub pressure: ConditionResult<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityReport<T> {
    pub overall: ConditionResult<T>,
    pub evap_flux: Option<ConditionResult<T>>,
    pub evap_energy: Option<ConditionResult<T>>,
    pub evap_pressure: Option<ConditionResult<T>>,
    pub condensation: Option<ConditionResult<T>>,
    pub stationary: Option<ConditionResult<T>>,
    pub regime: RegimeReport,
    pub admissible: bool,
}

impl<T: Real> AdmissibilityReport<T> {
    /// `(name, result)` for every condition that applies to the state.
    pub fn conditions(&self) -> Vec<(&'static str, ConditionResult<T>)> {
        let mut out = vec![("overall", self.overall)];
        let named = [
            ("evap_flux", self.evap_flux),
            ("evap_energy", self.evap_energy),
            ("evap_pressure", self.evap_pressure),
            ("condensation", self.condensation),
            ("stationary", self.stationary),
        ];
        out.extend(named.into_iter().filter_map(|(n, c)| c.map(|c| (n, c))));
        out
    }
}

/// `p ≥ 1 / (2 (1 + γ M^2))`, equivalent to `N2⁻ ≥ 0`.
pub fn check_overall<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> ConditionResult<T> {
    let m2 = state.mach * state.mach;
    ConditionResult::from_margin(state.p - T::one() / (lit::<T>(2.0) * (T::one() + gas.gamma * m2)))
}

/// The three evaporation conditions; requires `mach > 0`.
pub fn check_evaporation<T: Real>(
    state: &FarFieldState<T>,
    gas: &GasParams<T>,
) -> Result<EvaporationConditions<T>> {
    if !(state.mach > T::zero()) {
        return Err(Error::Precondition("evaporation conditions require mach > 0".into()));
    }
    let FarFieldState { p, t, mach } = *state;
    let g = gas.gamma;
    let d = gas.delta;
    let root = (T::TAU() * g).sqrt();
    let flux = t.sqrt() / (root * p) - mach;
    let energy = (lit::<T>(4.0) + d) / (g * root * p * t.sqrt()) - mach * (lit::<T>(3.0) + d + mach * mach);
    let pressure = pressure_bound(mach, d) - p;
    Ok(EvaporationConditions {
        flux: ConditionResult::from_margin(flux),
        energy: ConditionResult::from_margin(energy),
        pressure: ConditionResult::from_margin(pressure),
    })
}

/// `(1 + M^2/(3+δ))^{-(5+δ)/2}`; also the supremum over `T` of the
/// condensation bound.
pub fn pressure_bound<T: Real>(mach: T, delta: T) -> T {
    let x = T::one() + mach * mach / (lit::<T>(3.0) + delta);
    x.powf(-(lit::<T>(5.0) + delta) / lit(2.0))
}

/// Right-hand side of the condensation condition `p ≥ bound(T, M)`.
pub fn condensation_bound<T: Real>(t: T, mach: T, delta: T) -> T {
    let k = (lit::<T>(5.0) + delta) / lit(2.0);
    let x = T::one() + mach * mach / (lit::<T>(3.0) + delta);
    (k * (t.ln() + T::one() - x * t)).exp()
}

/// Requires `mach < 0`.
pub fn check_condensation<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> Result<ConditionResult<T>> {
    if !(state.mach < T::zero()) {
        return Err(Error::Precondition("condensation condition requires mach < 0".into()));
    }
    Ok(ConditionResult::from_margin(state.p - condensation_bound(state.t, state.mach, gas.delta)))
}

/// At zero Mach number the only admissible state is `p = T = 1`.
pub fn check_stationary<T: Real>(state: &FarFieldState<T>) -> Result<ConditionResult<T>> {
    if state.mach != T::zero() {
        return Err(Error::Precondition("stationary condition requires mach = 0".into()));
    }
    let dev = (state.p - T::one()).abs().max((state.t - T::one()).abs());
    Ok(ConditionResult::from_margin(lit::<T>(STATIONARY_TOLERANCE) - dev))
}

pub fn check_all<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> AdmissibilityReport<T> {
    let overall = check_overall(state, gas);
    let regime = classify_regime(state.mach);
    let mut report = AdmissibilityReport {
        overall,
        evap_flux: None,
        evap_energy: None,
        evap_pressure: None,
        condensation: None,
        stationary: None,
        regime,
        admissible: overall.satisfied,
    };
    if state.mach > T::zero() {
        let e = check_evaporation(state, gas).expect("mach > 0");
        report.evap_flux = Some(e.flux);
        report.evap_energy = Some(e.energy);
        report.evap_pressure = Some(e.pressure);
        report.admissible &= e.flux.satisfied && e.energy.satisfied && e.pressure.satisfied;
    } else if state.mach < T::zero() {
        let c = check_condensation(state, gas).expect("mach < 0");
        report.condensation = Some(c);
        report.admissible &= c.satisfied;
    } else {
        let s = check_stationary(state).expect("mach = 0");
        report.stationary = Some(s);
        report.admissible &= s.satisfied;
    }
    report
}
