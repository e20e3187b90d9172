//! Cody's rational Chebyshev approximations for erf, erfc and erfcx.

#![allow(clippy::excessive_precision)] // published coefficients, kept verbatim

use crate::scalar::{lit, Real};

const A: [f64; 5] = [
    3.1611237438705656,
    113.864154151050156,
    377.485237685302021,
    3209.37758913846947,
    0.185777706184603153,
];
const B: [f64; 4] = [
    23.6012909523441209,
    244.024637934444173,
    1282.61652607737228,
    2844.23683343917062,
];
const C: [f64; 9] = [
    0.564188496988670089,
    8.88314979438837594,
    66.1191906371416295,
    298.635138197400131,
    881.95222124176909,
    1712.04761263407058,
    2051.07837782607147,
    1230.33935479799725,
    2.15311535474403846e-8,
];
const D: [f64; 8] = [
    15.7449261107098347,
    117.693950891312499,
    537.181101862009858,
    1621.38957456669019,
    3290.79923573345963,
    4362.61909014324716,
    3439.36767414372164,
    1230.33935480374942,
];
const P: [f64; 6] = [
    0.305326634961232344,
    0.360344899949804439,
    0.125781726111229246,
    0.0160837851487422766,
    6.58749161529837803e-4,
    0.0163153871373020978,
];
const Q: [f64; 5] = [
    2.56852019228982242,
    1.87295284992346047,
    0.527905102951428412,
    0.0605183413124413191,
    0.00233520497626869185,
];

const THRESHOLD: f64 = 0.46875;
const XBIG: f64 = 26.543;

fn ab<T: Real>(z: T) -> T {
    let mut num = lit::<T>(A[4]) * z;
    let mut den = z;
    for i in 0..3 {
        num = (num + lit(A[i])) * z;
        den = (den + lit(B[i])) * z;
    }
    (num + lit(A[3])) / (den + lit(B[3]))
}

fn cd<T: Real>(y: T) -> T {
    let mut num = lit::<T>(C[8]) * y;
    let mut den = y;
    for i in 0..7 {
        num = (num + lit(C[i])) * y;
        den = (den + lit(D[i])) * y;
    }
    (num + lit(C[7])) / (den + lit(D[7]))
}

fn pq<T: Real>(z: T) -> T {
    let mut num = lit::<T>(P[5]) * z;
    let mut den = z;
    for i in 0..4 {
        num = (num + lit(P[i])) * z;
        den = (den + lit(Q[i])) * z;
    }
    z * (num + lit(P[4])) / (den + lit(Q[4]))
}

// exp(-y^2) split so the rounding error of y*y is not amplified.
fn exp_neg_square<T: Real>(y: T) -> T {
    let sixteen = lit::<T>(16.0);
    let yt = (y * sixteen).trunc() / sixteen;
    (-yt * yt).exp() * (-(y - yt) * (y + yt)).exp()
}

fn exp_pos_square<T: Real>(x: T) -> T {
    let sixteen = lit::<T>(16.0);
    let xt = (x * sixteen).trunc() / sixteen;
    (xt * xt).exp() * ((x - xt) * (x + xt)).exp()
}

// erfcx(y) for y > THRESHOLD.
fn erfcx_large<T: Real>(y: T) -> T {
    if y <= lit(4.0) {
        cd(y)
    } else {
        (T::FRAC_2_SQRT_PI() / lit(2.0) - pq(T::one() / (y * y))) / y
    }
}

fn erfc_abs<T: Real>(y: T) -> T {
    if y >= lit(XBIG) {
        T::zero()
    } else {
        erfcx_large(y) * exp_neg_square(y)
    }
}

pub fn erf<T: Real>(x: T) -> T {
    let y = x.abs();
    if y <= lit(THRESHOLD) {
        return x * ab(y * y);
    }
    let e = erfc_abs(y);
    if x < T::zero() {
        e - T::one()
    } else {
        T::one() - e
    }
}

pub fn erfc<T: Real>(x: T) -> T {
    let y = x.abs();
    if y <= lit(THRESHOLD) {
        return T::one() - x * ab(y * y);
    }
    let e = erfc_abs(y);
    if x < T::zero() {
        lit::<T>(2.0) - e
    } else {
        e
    }
}

/// Scaled complementary error function `exp(x^2) * erfc(x)`.
///
/// Overflows to infinity for very negative `x`.
pub fn erfcx<T: Real>(x: T) -> T {
    let y = x.abs();
    if y <= lit(THRESHOLD) {
        let z = y * y;
        return z.exp() * (T::one() - x * ab(z));
    }
    let r = erfcx_large(y);
    if x < T::zero() {
        lit::<T>(2.0) * exp_pos_square(x) - r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // mpmath, 30 digits
        let cases = [
            (0.3, 0.328626759459127416189617985318_f64, 0.671373240540872583810382014682),
            (1.0, 0.842700792949714869341220635083, 0.157299207050285130658779364917),
            (2.5, 0.999593047982555041060435784260, 4.06952017444958939564215739975e-4),
            (-1.7, -0.983790458590774560841312945809, 1.98379045859077456084131294581),
        ];
        for (x, e, c) in cases {
            assert!((erf(x) - e).abs() < 2e-16, "erf({x})");
            assert!((erfc(x) - c).abs() / c < 1e-15, "erfc({x})");
        }
    }

    #[test]
    fn erfcx_tail() {
        // erfcx(10) and erfcx(30), mpmath
        assert!((erfcx(10.0_f64) / 0.0561409927438225858 - 1.0).abs() < 1e-13);
        assert!((erfcx(30.0_f64) / 0.0187958888614167515 - 1.0).abs() < 1e-13);
        assert!((erfcx(0.2_f64) - 0.2_f64.powi(2).exp() * erfc(0.2)).abs() < 1e-15);
    }

    #[test]
    fn works_in_single_precision() {
        assert!((erf(1.0_f32) - 0.842_700_8).abs() < 1e-6);
        assert!((erfcx(5.0_f32) - 0.110_704_64).abs() < 1e-6);
    }
}
