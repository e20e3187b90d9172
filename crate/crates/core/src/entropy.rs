//! The entropy-production bound `Λ(p, T, M)`.
//!
//! Each of the three terms of `Λ` contains `ln Γ(δ/2)` with coefficients
//! that sum to zero. All terms below are reported with that contribution
//! removed, which keeps the monatomic case finite.

use crate::error::{Error, Result};
use crate::gas::{incoming_half_moments, inv_sqrt_2pi, FarFieldState, GasParams, HalfMoments, MomentKind};
use crate::min_flux::{shape_solution_at, solve_shape_parameter};
use crate::scalar::{lit, to_f64, Real};

/// Cross-check tolerances of [`LambdaForm::Checked`].
pub const CHECK_ABS: f64 = 1e-10;
pub const CHECK_REL: f64 = 1e-8;
/// Below this magnitude the absolute tolerance applies.
pub const CHECK_NEAR_ZERO: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambdaForm {
    /// Through the minimal flux of the incoming half moments.
    Direct,
    /// Moment integrals eliminated in favour of `s` and `Υ`.
    Recast,
    /// Both, compared; the direct value is returned.
    Checked,
}

impl LambdaForm {
    pub fn name(&self) -> &'static str {
        match self {
            LambdaForm::Direct => "direct",
            LambdaForm::Recast => "recast",
            LambdaForm::Checked => "checked",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaBreakdown<T> {
    pub value: T,
    pub boundary_term: T,
    pub far_field_term: T,
    pub min_flux_term: T,
    pub upsilon: T,
    pub s: T,
    pub form: LambdaForm,
    /// Cancellation factor of the evaluation; 1 for the direct form.
    pub condition: T,
    /// Whether a checked evaluation actually compared both forms.
    pub cross_checked: bool,
}

/// `N1⁻ N5⁻ / N2⁻²` from the far-field state.
pub fn upsilon<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> Result<T> {
    let FarFieldState { p, t, mach } = *state;
    let (g, d) = (gas.gamma, gas.delta);
    let two = lit::<T>(2.0);
    let tau = T::TAU();
    let den = two * p * (T::one() + g * mach * mach) - T::one();
    if den == T::zero() {
        return Err(Error::InfeasibleState { moment: MomentKind::N2, value: 0.0 });
    }
    let a = T::one() - p * (tau * g / t).sqrt() * mach;
    let b = lit::<T>(4.0) + d - p * (tau * g * t).sqrt() * mach * (lit::<T>(5.0) + d + g * mach * mach);
    Ok(two * a * b / (T::PI() * den * den))
}

fn feasible_moments<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> Result<(HalfMoments<T>, T)> {
    let n = incoming_half_moments(state, gas);
    if let Some((moment, value)) = n.first_nonpositive() {
        return Err(Error::InfeasibleState { moment, value: to_f64(value) });
    }
    let u = n.upsilon();
    if !(u > T::one()) {
        return Err(Error::InfeasibleMoments { upsilon: to_f64(u) });
    }
    Ok((n, u))
}

pub fn lambda_direct<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> Result<LambdaBreakdown<T>> {
    let (n, u) = feasible_moments(state, gas)?;
    let s = solve_shape_parameter(u, gas)?;
    Ok(direct_at(state, gas, &n, u, s))
}

fn direct_at<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>, n: &HalfMoments<T>, u: T, s: T) -> LambdaBreakdown<T> {
    let FarFieldState { p, t, mach } = *state;
    let (g, d) = (gas.gamma, gas.delta);
    let two = lit::<T>(2.0);
    let ln_2pi = T::TAU().ln();
    let c = lit::<T>(1.5) * ln_2pi;
    let flux = p * (g / t).sqrt() * mach;
    let far_field_term =
        flux * (c + (lit::<T>(3.0) + d) / two + (lit::<T>(5.0) + d) / two * t.ln() - p.ln());
    let boundary_term = -inv_sqrt_2pi::<T>() * (c + two + d / two);
    let shape = shape_solution_at(s, n, gas);
    let min_flux_term = n.n1 * shape.log_f_argument;
    LambdaBreakdown {
        value: far_field_term + boundary_term - min_flux_term,
        boundary_term,
        far_field_term,
        min_flux_term,
        upsilon: u,
        s,
        form: LambdaForm::Direct,
        condition: T::one(),
        cross_checked: false,
    }
}

/// `θ̃(s) = θ(s) - 1/2 - s^2`, written in terms of `s` and `Υ = Φ(s)`.
pub fn theta_tilde<T: Real>(s: T, upsilon: T, delta: T) -> T {
    let two = lit::<T>(2.0);
    lit::<T>(0.5) - s * shifted_root(s, upsilon, delta) / (two * upsilon)
}

/// `I_0(s) e^{s^2}` in terms of `s` and `Υ = Φ(s)`.
pub fn scaled_i0_from_upsilon<T: Real>(s: T, upsilon: T, delta: T) -> T {
    let two = lit::<T>(2.0);
    let q = (s * s + two * (lit::<T>(4.0) + delta) * upsilon).sqrt();
    let d1 = upsilon + s * s * (two * upsilon - T::one()) - s * q;
    (q + (T::one() - two * upsilon) * s) / (two * d1)
}

// s + sqrt(s^2 + 2(4+δ)Υ), rationalized for negative s.
fn shifted_root<T: Real>(s: T, upsilon: T, delta: T) -> T {
    let k = lit::<T>(2.0) * (lit::<T>(4.0) + delta) * upsilon;
    let q = (s * s + k).sqrt();
    if s >= T::zero() {
        s + q
    } else {
        k / (q - s)
    }
}

pub fn lambda_recast<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> Result<LambdaBreakdown<T>> {
    let (_, u) = feasible_moments(state, gas)?;
    let s = solve_shape_parameter(u, gas)?;
    recast_at(state, gas, u, s)
}

fn recast_at<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>, u: T, s: T) -> Result<LambdaBreakdown<T>> {
    let FarFieldState { p, t, mach } = *state;
    let (g, d) = (gas.gamma, gas.delta);
    let one = T::one();
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let four_d = lit::<T>(4.0) + d;
    let five_d = lit::<T>(5.0) + d;
    let tau = T::TAU();

    let q = (s * s + two * four_d * u).sqrt();
    let r = shifted_root(s, u, d);
    let d1 = u + s * s * (two * u - one) - s * q;
    let kappa = (u + s * s * (two * u - one).abs() + s.abs() * q) / d1.abs();
    if !(d1 > T::zero()) {
        return Err(Error::IllConditioned { kappa: f64::INFINITY });
    }
    let theta_tilde = half - s * r / (two * u);
    let n2 = p * (one + g * mach * mach) - half;
    let energy = four_d - p * (tau * g * t).sqrt() * mach * (five_d + g * mach * mach);
    let inner = two.ln() + (lit::<T>(6.0) + d) * (half * T::PI().ln() + n2.ln()) + five_d / two * t.ln() + d1.ln()
        + four_d * r.ln()
        - theta_tilde
        - p.ln()
        - five_d * energy.ln();
    let boundary_term = inv_sqrt_2pi::<T>() * (five_d / two * t.ln() - p.ln() - half);
    let coef = ((tau * g).sqrt() * p * mach - t.sqrt()) / (tau * t).sqrt();
    let min_flux_term = -coef * inner;
    Ok(LambdaBreakdown {
        value: boundary_term - min_flux_term,
        boundary_term,
        far_field_term: T::zero(),
        min_flux_term,
        upsilon: u,
        s,
        form: LambdaForm::Recast,
        condition: kappa,
        cross_checked: false,
    })
}

/// Absolute error the recast value can carry in working precision.
pub fn recast_error_estimate<T: Real>(b: &LambdaBreakdown<T>) -> T {
    let scale = b.min_flux_term.abs().max(b.boundary_term.abs()).max(T::one());
    lit::<T>(16.0) * T::epsilon() * (b.condition * scale)
}

/// Tolerance for comparing two evaluations of magnitude `value`.
pub fn check_tolerance<T: Real>(value: T) -> T {
    if value.abs() < lit(CHECK_NEAR_ZERO) {
        lit(CHECK_ABS)
    } else {
        lit::<T>(CHECK_REL) * value.abs()
    }
}

/// `Λ` in the requested form.
///
/// The checked form compares against the recast value wherever the recast is
/// numerically meaningful; where its cancellation factor makes the expected
/// error exceed the tolerance, the direct value is returned with
/// `cross_checked = false`.
pub fn lambda<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>, form: LambdaForm) -> Result<LambdaBreakdown<T>> {
    let (n, u) = feasible_moments(state, gas)?;
    let s = solve_shape_parameter(u, gas)?;
    match form {
        LambdaForm::Direct => Ok(direct_at(state, gas, &n, u, s)),
        LambdaForm::Recast => recast_at(state, gas, u, s),
        LambdaForm::Checked => {
            let mut direct = direct_at(state, gas, &n, u, s);
            let tol = check_tolerance(direct.value);
            match recast_at(state, gas, u, s) {
                Ok(rec) if recast_error_estimate(&rec) <= tol => {
                    if (rec.value - direct.value).abs() > tol {
                        return Err(Error::CrossCheck { direct: to_f64(direct.value), recast: to_f64(rec.value) });
                    }
                    direct.cross_checked = true;
                    direct.condition = rec.condition;
                }
                Ok(rec) => direct.condition = rec.condition,
                Err(Error::IllConditioned { kappa }) => direct.condition = lit(kappa),
                Err(e) => return Err(e),
            }
            Ok(direct)
        }
    }
}

/// `Λ` value only, direct form.
pub fn lambda_value<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> Result<T> {
    lambda_direct(state, gas).map(|b| b.value)
}
