//! Half-Gaussian moment integrals `I_n(s) = ∫_0^∞ z^n exp(-(z-s)^2) dz`,
//! the shape function `Φ(s)` and `θ(s)`.
//!
//! For `s < 0` every moment carries the common factor `exp(-s^2)`, which is
//! kept out of the stored values so that ratios and logarithms stay finite
//! deep in the tail.

mod erf;

pub use erf::{erf, erfc, erfcx};

use crate::gas::GasParams;
use crate::scalar::{lit, Real};

/// Highest moment order supported.
pub const MAX_ORDER: usize = 5;

// Below this the forward recursion loses too many digits and the moment
// ratios are obtained by backward (Miller) recursion instead.
const MILLER_SWITCH: f64 = -2.0;
const MILLER_START: usize = 80;

/// A positive number stored as `mantissa * exp(log_scale)`.
///
/// `log_scale` is integer valued and `mantissa` lies in `[1, e)`, or is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledMoment<T> {
    pub mantissa: T,
    pub log_scale: T,
}

impl<T: Real> ScaledMoment<T> {
    /// Normalizes `value * exp(log_scale)`.
    pub fn from_scaled(value: T, log_scale: T) -> Self {
        if value == T::zero() {
            return Self { mantissa: T::zero(), log_scale: T::zero() };
        }
        let k = (log_scale + value.ln()).floor();
        let mut mantissa = value * (log_scale - k).exp();
        let mut k = k;
        let e = T::E();
        while mantissa >= e {
            mantissa = mantissa / e;
            k = k + T::one();
        }
        while mantissa < T::one() {
            mantissa = mantissa * e;
            k = k - T::one();
        }
        Self { mantissa, log_scale: k }
    }

    pub fn value(&self) -> T {
        self.mantissa * self.log_scale.exp()
    }

    pub fn ln(&self) -> T {
        self.mantissa.ln() + self.log_scale
    }
}

/// All moments `I_0..=I_5` at one `s`, sharing a common log scale.
///
/// `I_n(s) = scaled[n] * exp(log_scale)`, with `log_scale = -s^2` for
/// negative `s` and zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfGaussMoments<T> {
    pub s: T,
    pub scaled: [T; MAX_ORDER + 1],
    pub log_scale: T,
}

impl<T: Real> HalfGaussMoments<T> {
    pub fn new(s: T) -> Self {
        let half = lit::<T>(0.5);
        let root_pi_2 = T::PI().sqrt() * half;
        let mut j = [T::zero(); MAX_ORDER + 1];
        let log_scale;
        if s >= T::zero() {
            log_scale = T::zero();
            j[0] = root_pi_2 * (T::one() + erf(s));
            j[1] = s * j[0] + half * (-s * s).exp();
            forward(&mut j, s);
        } else if s >= lit(MILLER_SWITCH) {
            log_scale = -s * s;
            j[0] = root_pi_2 * erfcx(-s);
            j[1] = s * j[0] + half;
            forward(&mut j, s);
        } else {
            log_scale = -s * s;
            let t = -s;
            let two = lit::<T>(2.0);
            let mut ratio = [T::zero(); MAX_ORDER + 1];
            let mut r = T::zero();
            for k in (1..=MILLER_START).rev() {
                r = lit::<T>(k as f64) / (two * (r + t));
                if k <= MAX_ORDER {
                    ratio[k] = r;
                }
            }
            j[0] = root_pi_2 * erfcx(t);
            for k in 1..=MAX_ORDER {
                j[k] = j[k - 1] * ratio[k];
            }
        }
        Self { s, scaled: j, log_scale }
    }

    pub fn moment(&self, n: usize) -> ScaledMoment<T> {
        ScaledMoment::from_scaled(self.scaled[n], self.log_scale)
    }

    /// `ln I_n(s)`.
    pub fn ln(&self, n: usize) -> T {
        self.scaled[n].ln() + self.log_scale
    }

    /// `I_num(s) / I_den(s)`.
    pub fn ratio(&self, num: usize, den: usize) -> T {
        self.scaled[num] / self.scaled[den]
    }

    pub fn theta(&self) -> T {
        let s = self.s;
        let half = lit::<T>(0.5);
        if s >= T::zero() {
            half + (-s * s).exp() / (lit::<T>(4.0) * self.scaled[1])
        } else {
            T::one() - s * self.scaled[0] / (lit::<T>(2.0) * self.scaled[1])
        }
    }

    /// `θ(s) + log_scale`, which for negative `s` equals `1 - s I_2/I_1`
    /// and avoids the cancellation between `θ ≈ s^2` and `-s^2`.
    pub(crate) fn theta_plus_log_scale(&self) -> T {
        if self.s >= T::zero() {
            self.theta()
        } else {
            T::one() - self.s * self.ratio(2, 1)
        }
    }

    pub fn shape_function(&self, delta: T) -> T {
        let x = self.ratio(1, 2);
        let y = self.ratio(3, 2);
        x * y + (T::one() + delta * lit(0.5)) * x * x
    }
}

fn forward<T: Real>(j: &mut [T; MAX_ORDER + 1], s: T) {
    for n in 2..=MAX_ORDER {
        j[n] = s * j[n - 1] + lit::<T>((n as f64 - 1.0) * 0.5) * j[n - 2];
    }
}

/// `I_n(s)` in scaled form.
///
/// # Panics
/// If `n > 5` or `s` is not finite.
pub fn half_gauss_moment<T: Real>(n: usize, s: T) -> ScaledMoment<T> {
    assert!(n <= MAX_ORDER, "moment order {n} out of range 0..=5");
    assert!(s.is_finite(), "non-finite shape parameter");
    HalfGaussMoments::new(s).moment(n)
}

/// `I_num(s) / I_den(s)` with the common tail factor cancelled.
pub fn moment_ratio<T: Real>(num_n: usize, den_n: usize, s: T) -> T {
    assert!(num_n <= MAX_ORDER && den_n <= MAX_ORDER, "moment order out of range 0..=5");
    assert!(s.is_finite(), "non-finite shape parameter");
    HalfGaussMoments::new(s).ratio(num_n, den_n)
}

/// `θ(s) = (s I_0 + e^{-s^2}) / (2 s I_0 + e^{-s^2})`.
pub fn theta<T: Real>(s: T) -> T {
    assert!(s.is_finite(), "non-finite shape parameter");
    HalfGaussMoments::new(s).theta()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeFunctionValue<T> {
    pub phi: T,
}

/// `Φ(s) = I_1 (I_3 + I_1 (1 + δ/2)) / I_2^2`.
pub fn shape_function<T: Real>(s: T, gas: &GasParams<T>) -> ShapeFunctionValue<T> {
    assert!(s.is_finite(), "non-finite shape parameter");
    ShapeFunctionValue { phi: HalfGaussMoments::new(s).shape_function(gas.delta) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn values_at_zero() {
        let m = HalfGaussMoments::new(0.0_f64);
        let rp = std::f64::consts::PI.sqrt();
        let expect = [rp / 2.0, 0.5, rp / 4.0, 0.5, 3.0 * rp / 8.0, 1.0];
        for n in 0..=5 {
            assert_relative_eq!(m.moment(n).value(), expect[n], max_relative = 1e-15);
        }
        assert_relative_eq!(moment_ratio(1, 0, 0.0), 1.0 / rp, max_relative = 1e-15);
        assert_relative_eq!(theta(0.0), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn scaled_moment_normalization() {
        for s in [-40.0, -12.5, -3.0, -0.3, 0.0, 2.0, 40.0_f64] {
            for n in 0..=5 {
                let m = half_gauss_moment(n, s);
                assert!(m.mantissa >= 1.0 && m.mantissa < std::f64::consts::E);
                assert_eq!(m.log_scale, m.log_scale.round());
                assert!(m.ln().is_finite());
            }
        }
        // I_0(-40) ~ exp(-1600)/80 underflows f64 but not the scaled form
        let m = half_gauss_moment(0, -40.0_f64);
        assert!(m.log_scale < -1600.0);
    }

    #[test]
    fn miller_switch_is_continuous() {
        let a = HalfGaussMoments::new(-2.0_f64 + 1e-12);
        let b = HalfGaussMoments::new(-2.0_f64 - 1e-12);
        for n in 0..=5 {
            assert_relative_eq!(a.scaled[n], b.scaled[n], max_relative = 1e-11);
        }
    }

    #[test]
    fn theta_limits() {
        assert!(theta(30.0_f64) - 0.5 <= 1e-6);
        assert!((theta(-10.0_f64) / 100.0 - 1.0).abs() < 0.02);
        let m = HalfGaussMoments::new(-7.0_f64);
        assert_relative_eq!(m.theta_plus_log_scale() - m.log_scale, m.theta(), max_relative = 1e-13);
    }

    #[test]
    fn shape_function_anchors() {
        let g0 = GasParams::new(0.0_f64).unwrap();
        let g2 = GasParams::new(2.0_f64).unwrap();
        assert_relative_eq!(shape_function(0.0, &g0).phi, 8.0 / std::f64::consts::PI, max_relative = 1e-15);
        let big = shape_function(30.0, &g0).phi;
        assert!((big / (1.0 + 3.0 / 1800.0) - 1.0).abs() < 0.01);
        let neg = shape_function(-30.0, &g2).phi;
        assert!((neg / 1800.0 - 1.0).abs() < 0.02);
    }

    #[test]
    fn single_precision() {
        let m = HalfGaussMoments::new(-5.0_f32);
        let d = HalfGaussMoments::new(-5.0_f64);
        for n in 0..=5 {
            assert!((m.scaled[n] as f64 / d.scaled[n] - 1.0).abs() < 1e-5);
        }
    }
}
