//! Gas parameters, normalized far-field states and half-moment bookkeeping.
//!
//! Units: `m = k_B = T_0 = p_0 = n_0 = 1`, so every state is a ratio to the
//! boundary Maxwellian.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// `γ = (5 + δ) / (3 + δ)`.
///
/// # Panics
/// If `delta` is negative or NaN.
pub fn heat_capacity_ratio<T: Real>(delta: T) -> T {
    assert!(delta >= T::zero(), "delta must be nonnegative");
    (lit::<T>(5.0) + delta) / (lit::<T>(3.0) + delta)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasParams<T> {
    pub delta: T,
    pub gamma: T,
}

impl<T: Real> GasParams<T> {
    pub fn new(delta: T) -> Result<Self> {
        if !(delta.is_finite() && delta >= T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "internal degrees of freedom must be finite and >= 0, got {delta}"
            )));
        }
        Ok(Self { delta, gamma: heat_capacity_ratio(delta) })
    }

    pub fn is_monatomic(&self) -> bool {
        self.delta == T::zero()
    }
}

/// Far-field pressure and temperature ratios and Mach number.
///
/// Positive Mach means evaporation, negative condensation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldState<T> {
    pub p: T,
    pub t: T,
    pub mach: T,
}

impl<T: Real> FarFieldState<T> {
    pub fn new(p: T, t: T, mach: T) -> Result<Self> {
        if !(p.is_finite() && p > T::zero()) {
            return Err(Error::InvalidParameter(format!("pressure ratio must be positive, got {p}")));
        }
        if !(t.is_finite() && t > T::zero()) {
            return Err(Error::InvalidParameter(format!("temperature ratio must be positive, got {t}")));
        }
        if !mach.is_finite() {
            return Err(Error::InvalidParameter("mach number must be finite".into()));
        }
        Ok(Self { p, t, mach })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentKind {
    N1,
    N2,
    N5,
}

impl fmt::Display for MomentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MomentKind::N1 => "N1",
            MomentKind::N2 => "N2",
            MomentKind::N5 => "N5",
        })
    }
}

/// Half-space fluxes of mass, normal momentum and energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfMoments<T> {
    pub n1: T,
    pub n2: T,
    pub n5: T,
}

impl<T: Real> HalfMoments<T> {
    pub fn new(n1: T, n2: T, n5: T) -> Self {
        Self { n1, n2, n5 }
    }

    /// `N1 N5 / N2^2`.
    pub fn upsilon(&self) -> T {
        self.n1 * self.n5 / (self.n2 * self.n2)
    }

    pub fn scale(&self, lambda: T) -> Self {
        Self { n1: lambda * self.n1, n2: lambda * self.n2, n5: lambda * self.n5 }
    }

    /// First moment that is not strictly positive, if any.
    pub fn first_nonpositive(&self) -> Option<(MomentKind, T)> {
        [(MomentKind::N1, self.n1), (MomentKind::N2, self.n2), (MomentKind::N5, self.n5)]
            .into_iter()
            .find(|(_, v)| !(*v > T::zero()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxMoments<T> {
    pub l1: T,
    pub l2: T,
    pub l3: T,
    pub l4: T,
    pub l5: T,
}

/// Outgoing half moments of the normalized boundary Maxwellian.
pub fn boundary_half_moments<T: Real>(gas: &GasParams<T>) -> HalfMoments<T> {
    let inv = inv_sqrt_2pi::<T>();
    HalfMoments { n1: inv, n2: lit(0.5), n5: (lit::<T>(4.0) + gas.delta) * inv }
}

pub fn flux_moments<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> FluxMoments<T> {
    let FarFieldState { p, t, mach } = *state;
    let g = gas.gamma;
    let five = lit::<T>(5.0);
    FluxMoments {
        l1: p * (g / t).sqrt() * mach,
        l2: p * (T::one() + g * mach * mach),
        l3: T::zero(),
        l4: T::zero(),
        l5: p * (g * t).sqrt() * mach * (five + gas.delta + g * mach * mach),
    }
}

/// Half moments the boundary must absorb, `N⁻ = N⁺ ∓ L`.
///
/// No sign is enforced; negative entries mark inadmissible states.
pub fn incoming_half_moments<T: Real>(state: &FarFieldState<T>, gas: &GasParams<T>) -> HalfMoments<T> {
    let b = boundary_half_moments(gas);
    let l = flux_moments(state, gas);
    HalfMoments { n1: b.n1 - l.l1, n2: l.l2 - b.n2, n5: b.n5 - l.l5 }
}

#[inline]
pub(crate) fn inv_sqrt_2pi<T: Real>() -> T {
    T::one() / (T::TAU()).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    SupersonicEvaporation,
    SubsonicEvaporation,
    Rest,
    SubsonicCondensation,
    SupersonicCondensation,
    SonicEvaporation,
    SonicCondensation,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::SupersonicEvaporation => "supersonic_evaporation",
            Regime::SubsonicEvaporation => "subsonic_evaporation",
            Regime::Rest => "rest",
            Regime::SubsonicCondensation => "subsonic_condensation",
            Regime::SupersonicCondensation => "supersonic_condensation",
            Regime::SonicEvaporation => "sonic_evaporation",
            Regime::SonicCondensation => "sonic_condensation",
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Regime::Rest | Regime::SonicEvaporation | Regime::SonicCondensation)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign structure of the characteristic speeds `{u-c, u, u, u, u+c}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeReport {
    pub regime: Regime,
    pub k_plus: u32,
    pub l_zero: u32,
    pub k_minus: u32,
    /// `None` for the degenerate rest and sonic cases.
    pub free_parameters: Option<u32>,
}

/// # Panics
/// If `mach` is not finite.
pub fn classify_regime<T: Real>(mach: T) -> RegimeReport {
    assert!(mach.is_finite(), "mach number must be finite");
    let m = to_f64(mach);
    // speeds divided by c
    let speeds = [m - 1.0, m, m, m, m + 1.0];
    let k_plus = speeds.iter().filter(|v| **v > 0.0).count() as u32;
    let l_zero = speeds.iter().filter(|v| **v == 0.0).count() as u32;
    let k_minus = 5 - k_plus - l_zero;
    let (regime, free) = if m > 1.0 {
        (Regime::SupersonicEvaporation, Some(0))
    } else if m == 1.0 {
        (Regime::SonicEvaporation, None)
    } else if m > 0.0 {
        (Regime::SubsonicEvaporation, Some(1))
    } else if m == 0.0 {
        (Regime::Rest, None)
    } else if m > -1.0 {
        (Regime::SubsonicCondensation, Some(2))
    } else if m == -1.0 {
        (Regime::SonicCondensation, None)
    } else {
        (Regime::SupersonicCondensation, Some(3))
    };
    RegimeReport { regime, k_plus, l_zero, k_minus, free_parameters: free }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_values() {
        assert_relative_eq!(heat_capacity_ratio(0.0_f64), 5.0 / 3.0);
        assert_relative_eq!(heat_capacity_ratio(2.0_f64), 7.0 / 5.0);
        assert!(heat_capacity_ratio(1e6_f64) - 1.0 <= 3e-6);
        assert!(GasParams::new(-0.5_f64).is_err());
        assert!(GasParams::new(0.0_f64).unwrap().is_monatomic());
    }

    #[test]
    #[should_panic]
    fn negative_delta_panics() {
        heat_capacity_ratio(-1.0_f64);
    }

    #[test]
    fn boundary_moments() {
        let b = boundary_half_moments(&GasParams::new(0.0_f64).unwrap());
        assert_relative_eq!(b.n1, 0.3989422804014327, max_relative = 1e-15);
        assert_eq!(b.n2, 0.5);
        assert_relative_eq!(b.n5, 1.5957691216057308, max_relative = 1e-15);
        let b2 = boundary_half_moments(&GasParams::new(2.0_f64).unwrap());
        assert_relative_eq!(b2.n5, 6.0 / std::f64::consts::TAU.sqrt(), max_relative = 1e-15);
        assert_eq!(b2.n1, b.n1);
    }

    #[test]
    fn fluxes() {
        let g = GasParams::new(0.0_f64).unwrap();
        let l = flux_moments(&FarFieldState::new(1.0, 1.0, 0.0).unwrap(), &g);
        assert_eq!((l.l1, l.l2, l.l3, l.l4, l.l5), (0.0, 1.0, 0.0, 0.0, 0.0));
        let l = flux_moments(&FarFieldState::new(1.0, 1.0, 1.0).unwrap(), &g);
        assert_relative_eq!(l.l1, (5.0_f64 / 3.0).sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn incoming() {
        let g = GasParams::new(0.0_f64).unwrap();
        let n = incoming_half_moments(&FarFieldState::new(1.0, 1.0, 0.0).unwrap(), &g);
        let r = std::f64::consts::TAU.sqrt();
        assert_relative_eq!(n.n1, 1.0 / r);
        assert_relative_eq!(n.n2, 0.5);
        assert_relative_eq!(n.n5, 4.0 / r);
        let n = incoming_half_moments(&FarFieldState::new(0.25, 1.0, 0.0).unwrap(), &g);
        assert_relative_eq!(n.n2, -0.25);
        assert_eq!(n.first_nonpositive().map(|x| x.0), Some(MomentKind::N2));
        let n = incoming_half_moments(&FarFieldState::new(1.0, 1.0, 3.0).unwrap(), &g);
        assert!(n.n1 < 0.0);
    }

    #[test]
    fn regimes() {
        let r = classify_regime(1.2_f64);
        assert_eq!((r.regime, r.k_plus, r.free_parameters), (Regime::SupersonicEvaporation, 5, Some(0)));
        let r = classify_regime(-0.5_f64);
        assert_eq!((r.regime, r.k_plus, r.free_parameters), (Regime::SubsonicCondensation, 1, Some(2)));
        let r = classify_regime(-2.0_f64);
        assert_eq!((r.regime, r.k_plus, r.free_parameters), (Regime::SupersonicCondensation, 0, Some(3)));
        let r = classify_regime(0.5_f64);
        assert_eq!((r.k_plus, r.free_parameters), (4, Some(1)));
        let r = classify_regime(0.0_f64);
        assert_eq!((r.regime, r.l_zero, r.k_plus, r.free_parameters), (Regime::Rest, 3, 1, None));
        let r = classify_regime(1.0_f64);
        assert_eq!((r.regime, r.l_zero, r.k_plus), (Regime::SonicEvaporation, 1, 4));
        let r = classify_regime(-1.0_f64);
        assert_eq!((r.regime, r.l_zero, r.k_plus), (Regime::SonicCondensation, 1, 0));
    }
}
