//! The constrained Maxwellian matching given half moments, and the minimal
//! entropy flux `F(N1, N2, N5)` it attains.

use crate::error::{Error, Result};
use crate::gas::{GasParams, HalfMoments};
use crate::numerics::quadrature::{integrate, Tolerance};
use crate::numerics::roots::{brent, RootError};
use crate::scalar::{lit, to_f64, Real};
use crate::special::HalfGaussMoments;

/// Smallest bracket half-width searched for the shape root.
pub const MIN_BRACKET: f64 = 60.0;

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    lit(libm::lgamma(to_f64(x)))
}

fn residual_tolerance<T: Real>() -> T {
    lit::<T>(1e-12).max(lit::<T>(256.0) * T::epsilon())
}

/// Root `s` of `Φ(s) = upsilon`.
pub fn solve_shape_parameter<T: Real>(upsilon: T, gas: &GasParams<T>) -> Result<T> {
    if upsilon.is_nan() || upsilon <= T::one() {
        return Err(Error::InfeasibleMoments { upsilon: to_f64(upsilon) });
    }
    if !upsilon.is_finite() {
        return Err(Error::NumericalFailure("moment ratio is not finite".into()));
    }
    let delta = gas.delta;
    let ln_u = upsilon.ln();
    // Φ is decreasing, so g > 0 left of the root
    let g = |s: T| HalfGaussMoments::new(s).shape_function(delta).ln() - ln_u;
    let g0 = g(T::zero());
    if g0 == T::zero() {
        return Ok(T::zero());
    }
    let two = lit::<T>(2.0);
    let (seed, sign) = if g0 > T::zero() {
        (((lit::<T>(3.0) + delta) / two).sqrt() / (upsilon - T::one()).sqrt(), T::one())
    } else {
        (-(two * upsilon / (two + delta)).sqrt(), -T::one())
    };
    let limit = lit::<T>(MIN_BRACKET).max(lit::<T>(4.0) * seed.abs());
    let mut inner = T::zero();
    let mut outer = seed.abs().max(lit(0.5)).min(limit);
    loop {
        let go = g(sign * outer);
        if go.is_nan() {
            return Err(Error::NumericalFailure(format!("shape function undefined at s = {}", sign * outer)));
        }
        if (go > T::zero()) != (g0 > T::zero()) || go == T::zero() {
            break;
        }
        if outer >= limit {
            return Err(Error::NumericalFailure(format!(
                "no sign change of the shape equation within |s| <= {limit}"
            )));
        }
        inner = outer;
        outer = (outer * two).min(limit);
    }
    let (a, b) = if sign > T::zero() { (inner, outer) } else { (-outer, -inner) };
    let root = brent(g, a, b, lit(1e-300), 400).map_err(|e| match e {
        RootError::NotBracketed => Error::NumericalFailure("shape equation not bracketed".into()),
        RootError::MaxIterations => Error::NumericalFailure("shape root did not converge".into()),
    })?;
    let s = root.x;
    let phi = HalfGaussMoments::new(s).shape_function(delta);
    if ((phi - upsilon) / upsilon).abs() > residual_tolerance() {
        return Err(Error::NumericalFailure(format!(
            "shape residual {:e} at s = {s}",
            to_f64((phi - upsilon) / upsilon)
        )));
    }
    Ok(s)
}

/// Drifted Maxwellian
/// `f = 2^{δ/2} a β^{3+δ} / (Γ(δ/2) π) · I^{δ/2-1} exp(-β^2 (|z-w|^2 + r^2 + 2I))`
/// with `a` stored as its logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftedMaxwellian<T> {
    pub ln_a: T,
    pub beta: T,
    pub w: T,
}

impl<T: Real> DriftedMaxwellian<T> {
    /// Half moments in closed form.
    pub fn moments(&self, delta: T) -> HalfMoments<T> {
        let s = self.beta * self.w;
        let m = HalfGaussMoments::new(s);
        let lb = self.beta.ln();
        let base = self.ln_a + m.log_scale;
        let c = T::one() + delta * lit(0.5);
        HalfMoments {
            n1: (base - lb + m.scaled[1].ln()).exp(),
            n2: (base - lit::<T>(2.0) * lb + m.scaled[2].ln()).exp(),
            n5: (base - lit::<T>(3.0) * lb + (m.scaled[3] + c * m.scaled[1]).ln()).exp(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeSolution<T> {
    pub s: T,
    pub ln_a: T,
    pub beta: T,
    pub w: T,
    pub theta: T,
    /// `F / N1 + ln Γ(δ/2)`: the bracket of the minimal flux without the
    /// gamma-function term, finite for every `δ ≥ 0`.
    pub log_f_argument: T,
}

impl<T: Real> ShapeSolution<T> {
    pub fn a(&self) -> T {
        self.ln_a.exp()
    }

    pub fn maxwellian(&self) -> DriftedMaxwellian<T> {
        DriftedMaxwellian { ln_a: self.ln_a, beta: self.beta, w: self.w }
    }

    pub fn moments(&self, delta: T) -> HalfMoments<T> {
        self.maxwellian().moments(delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinFluxValue<T> {
    pub f_value: T,
    pub shape: ShapeSolution<T>,
}

fn check_positive<T: Real>(moments: &HalfMoments<T>) -> Result<()> {
    match moments.first_nonpositive() {
        Some((moment, value)) => Err(Error::InfeasibleState { moment, value: to_f64(value) }),
        None => Ok(()),
    }
}

/// Inverts the moment equations for the unique matching Maxwellian.
pub fn maxwellian_from_moments<T: Real>(moments: &HalfMoments<T>, gas: &GasParams<T>) -> Result<ShapeSolution<T>> {
    check_positive(moments)?;
    let s = solve_shape_parameter(moments.upsilon(), gas)?;
    Ok(shape_solution_at(s, moments, gas))
}

pub(crate) fn shape_solution_at<T: Real>(s: T, moments: &HalfMoments<T>, gas: &GasParams<T>) -> ShapeSolution<T> {
    let HalfMoments { n1, n2, .. } = *moments;
    let d = gas.delta;
    let m = HalfGaussMoments::new(s);
    let (j1, j2) = (m.scaled[1], m.scaled[2]);
    let two = lit::<T>(2.0);
    let (ln_n1, ln_n2) = (n1.ln(), n2.ln());
    let ln_a = two * ln_n1 - ln_n2 + j2.ln() - two * j1.ln() - m.log_scale;
    let beta = n1 / n2 * (j2 / j1);
    let w = n2 / n1 * s * (j1 / j2);
    let four = lit::<T>(4.0);
    let five = lit::<T>(5.0);
    let log_f_argument = (five + d) * ln_n1 - (four + d) * ln_n2 + d / two * two.ln() + (four + d) * j2.ln()
        - (five + d) * j1.ln()
        - T::PI().ln()
        - (T::one() + d / two)
        - m.theta_plus_log_scale();
    ShapeSolution { s, ln_a, beta, w, theta: m.theta(), log_f_argument }
}

/// `F + N1 ln Γ(δ/2)`, defined for every `δ ≥ 0`.
pub fn min_flux_reduced<T: Real>(moments: &HalfMoments<T>, gas: &GasParams<T>) -> Result<MinFluxValue<T>> {
    let shape = maxwellian_from_moments(moments, gas)?;
    Ok(MinFluxValue { f_value: moments.n1 * shape.log_f_argument, shape })
}

/// Minimal entropy flux over all half-space distributions with the given
/// half moments. Diverges for a monatomic gas, which is rejected.
pub fn min_flux<T: Real>(moments: &HalfMoments<T>, gas: &GasParams<T>) -> Result<MinFluxValue<T>> {
    if gas.is_monatomic() {
        return Err(Error::MonatomicUnsupported);
    }
    let mut v = min_flux_reduced(moments, gas)?;
    v.f_value = v.f_value - moments.n1 * ln_gamma(gas.delta / lit(2.0));
    Ok(v)
}

/// Convex combination of drifted Maxwellians.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxwellianMixture<T> {
    pub components: Vec<(T, DriftedMaxwellian<T>)>,
}

impl<T: Real> MaxwellianMixture<T> {
    pub fn single(m: DriftedMaxwellian<T>) -> Self {
        Self { components: vec![(T::one(), m)] }
    }

    /// Half moments in closed form (they are linear in the distribution).
    pub fn moments(&self, delta: T) -> HalfMoments<T> {
        self.components.iter().fold(HalfMoments::new(T::zero(), T::zero(), T::zero()), |acc, (wt, m)| {
            let h = m.moments(delta);
            HalfMoments::new(acc.n1 + *wt * h.n1, acc.n2 + *wt * h.n2, acc.n5 + *wt * h.n5)
        })
    }
}

/// Entropy flux and half moments of a mixture, both by quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiPlus<T> {
    pub psi: T,
    pub moments: HalfMoments<T>,
}

/// Entropy flux `Ψ₊(f) = ∫_{ξ1>0} ξ1 f ln(I^{1-δ/2} f)` by nested adaptive
/// quadrature.
///
/// The transverse speed and internal energy enter only through
/// `v = r^2 + 2I`, which reduces the integral to two dimensions with weight
/// `(v/2)^{δ/2} / δ`. Requires `δ > 0`.
pub fn psi_plus_quadrature<T: Real>(mixture: &MaxwellianMixture<T>, gas: &GasParams<T>) -> Result<PsiPlus<T>> {
    if gas.is_monatomic() {
        return Err(Error::MonatomicUnsupported);
    }
    if mixture.components.is_empty() {
        return Err(Error::InvalidParameter("empty mixture".into()));
    }
    for (wt, m) in &mixture.components {
        if !(*wt > T::zero() && m.beta > T::zero() && m.ln_a.is_finite() && m.w.is_finite()) {
            return Err(Error::InvalidParameter("mixture components need positive weight and beta".into()));
        }
    }
    let d = gas.delta;
    let half_d = d / lit(2.0);
    let ln_norm = half_d * lit::<T>(2.0).ln() - ln_gamma(half_d) - T::PI().ln();
    let terms: Vec<(T, T, T)> = mixture
        .components
        .iter()
        .map(|(wt, m)| (wt.ln() + m.ln_a + (lit::<T>(3.0) + d) * m.beta.ln() + ln_norm, m.beta * m.beta, m.w))
        .collect();
    let nine = lit::<T>(9.0);
    let z_max = mixture
        .components
        .iter()
        .map(|(_, m)| m.w.max(T::zero()) + nine / m.beta)
        .fold(T::zero(), T::max);
    let v_max = mixture
        .components
        .iter()
        .map(|(_, m)| lit::<T>(80.0) / (m.beta * m.beta))
        .fold(T::zero(), T::max);

    let ln_h = |z: T, v: T| {
        let mut top = T::neg_infinity();
        for &(c, b2, w) in &terms {
            top = top.max(c - b2 * ((z - w) * (z - w) + v));
        }
        if top == T::neg_infinity() {
            return top;
        }
        let sum = terms.iter().fold(T::zero(), |acc, &(c, b2, w)| acc + (c - b2 * ((z - w) * (z - w) + v) - top).exp());
        top + sum.ln()
    };
    // ln h never exceeds this, so h (ln h - ln_top) keeps one sign
    let ln_top = {
        let top = terms.iter().map(|t| t.0).fold(T::neg_infinity(), T::max);
        top + terms.iter().fold(T::zero(), |acc, t| acc + (t.0 - top).exp()).ln()
    };
    let inner_tol = Tolerance { abs: 1e-300, rel: 1e-13, max_intervals: 400 };
    let outer_tol = Tolerance { abs: 1e-13, rel: 1e-12, max_intervals: 400 };
    let mut failed = false;
    let outer = integrate(
        |z: T| {
            let inner = integrate(
                |v: T| {
                    let lh = ln_h(z, v);
                    let h = lh.exp();
                    if h == T::zero() {
                        return [T::zero(); 3];
                    }
                    let wgt = (v / lit(2.0)).powf(half_d) / d;
                    [wgt * h, wgt * h * (lh - ln_top), wgt * h * v]
                },
                T::zero(),
                v_max,
                inner_tol,
            );
            if !inner.converged {
                failed = true;
            }
            let [g0, g1, g2] = inner.value;
            [z * g1, z * g0, z * z * g0, z * (z * z * g0 + g2)]
        },
        T::zero(),
        z_max,
        outer_tol,
    );
    if failed || !outer.converged {
        return Err(Error::NumericalFailure("entropy-flux quadrature did not converge".into()));
    }
    let tau = T::TAU();
    let [shifted, n1, n2, n5] = outer.value;
    Ok(PsiPlus { psi: tau * (shifted + ln_top * n1), moments: HalfMoments::new(tau * n1, tau * n2, tau * n5) })
}
