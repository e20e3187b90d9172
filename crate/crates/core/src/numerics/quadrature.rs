//! Adaptive 21-point Gauss-Kronrod quadrature for vector-valued integrands.

#![allow(clippy::excessive_precision)] // published abscissae and weights, kept verbatim

use crate::scalar::{lit, Real};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077557213929270,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-12, rel: 1e-12, max_intervals: 2000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T, const N: usize> {
    pub value: [T; N],
    pub error: [T; N],
    pub intervals: usize,
    pub converged: bool,
}

struct Piece<T, const N: usize> {
    a: T,
    b: T,
    value: [T; N],
    error: [T; N],
}

fn gk21<T: Real, const N: usize, F: FnMut(T) -> [T; N]>(f: &mut F, a: T, b: T) -> Piece<T, N> {
    let half = lit::<T>(0.5);
    let center = half * (a + b);
    let h = half * (b - a);
    let fc = f(center);
    let mut kron = [T::zero(); N];
    let mut gauss = [T::zero(); N];
    let mut absk = [T::zero(); N];
    let mut fvals = Vec::with_capacity(21);
    for k in 0..N {
        kron[k] = fc[k] * lit(WGK[10]);
        absk[k] = fc[k].abs() * lit(WGK[10]);
    }
    fvals.push((fc, lit::<T>(WGK[10])));
    for j in 0..10 {
        let dx = h * lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let wk = lit::<T>(WGK[j]);
        for k in 0..N {
            kron[k] = kron[k] + wk * (f1[k] + f2[k]);
            absk[k] = absk[k] + wk * (f1[k].abs() + f2[k].abs());
            if j % 2 == 1 {
                gauss[k] = gauss[k] + lit::<T>(WG[j / 2]) * (f1[k] + f2[k]);
            }
        }
        fvals.push((f1, wk));
        fvals.push((f2, wk));
    }
    let mut value = [T::zero(); N];
    let mut error = [T::zero(); N];
    for k in 0..N {
        let mean = kron[k] * half;
        let asc = fvals.iter().fold(T::zero(), |acc, (v, w)| acc + *w * (v[k] - mean).abs());
        let resasc = asc * h.abs();
        let resabs = absk[k] * h.abs();
        let mut err = ((kron[k] - gauss[k]) * h).abs();
        if resasc != T::zero() && err != T::zero() {
            err = resasc * T::one().min((lit::<T>(200.0) * err / resasc).powf(lit(1.5)));
        }
        let floor = lit::<T>(50.0) * T::epsilon() * resabs;
        if resabs > T::min_positive_value() / (lit::<T>(50.0) * T::epsilon()) {
            err = err.max(floor);
        }
        value[k] = kron[k] * h;
        error[k] = err;
    }
    Piece { a, b, value, error }
}

/// Integrates `f` over `[a, b]`, bisecting the worst interval until every
/// component satisfies `error <= max(abs, rel * |value|)`.
pub fn integrate<T: Real, const N: usize, F: FnMut(T) -> [T; N]>(
    mut f: F,
    a: T,
    b: T,
    tol: Tolerance,
) -> Integral<T, N> {
    let mut pieces = vec![gk21(&mut f, a, b)];
    loop {
        let mut value = [T::zero(); N];
        let mut error = [T::zero(); N];
        for p in &pieces {
            for k in 0..N {
                value[k] = value[k] + p.value[k];
                error[k] = error[k] + p.error[k];
            }
        }
        let target: Vec<T> = (0..N).map(|k| lit::<T>(tol.abs).max(lit::<T>(tol.rel) * value[k].abs())).collect();
        let done = (0..N).all(|k| error[k] <= target[k]);
        if done || pieces.len() >= tol.max_intervals {
            return Integral { value, error, intervals: pieces.len(), converged: done };
        }
        let score = |p: &Piece<T, N>| (0..N).fold(T::zero(), |acc, k| acc + p.error[k] / target[k]);
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .map(|(i, p)| (i, score(p)))
            .fold((0, T::neg_infinity()), |best, cur| if cur.1 > best.1 { cur } else { best });
        let p = pieces.swap_remove(worst);
        let mid = (p.a + p.b) * lit(0.5);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            pieces.push(p);
            let mut value = [T::zero(); N];
            let mut error = [T::zero(); N];
            for p in &pieces {
                for k in 0..N {
                    value[k] = value[k] + p.value[k];
                    error[k] = error[k] + p.error[k];
                }
            }
            return Integral { value, error, intervals: pieces.len(), converged: false };
        }
        pieces.push(gk21(&mut f, p.a, mid));
        pieces.push(gk21(&mut f, mid, p.b));
    }
}

/// Scalar convenience wrapper.
pub fn integrate_scalar<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, tol: Tolerance) -> Integral<T, 1> {
    integrate(|x| [f(x)], a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate_scalar(|x: f64| x.powi(19) + 3.0 * x * x, 0.0, 1.0, Tolerance::default());
        assert_eq!(r.intervals, 1);
        assert!((r.value[0] - (1.0 / 20.0 + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn peaked_and_vector() {
        let tol = Tolerance { abs: 0.0, rel: 1e-12, max_intervals: 5000 };
        let r = integrate(|x: f64| [(-(x - 0.5).powi(2) * 1e4).exp(), x.sqrt()], 0.0, 1.0, tol);
        assert!(r.converged);
        let g = std::f64::consts::PI.sqrt() / 100.0;
        assert!((r.value[0] / g - 1.0).abs() < 1e-11);
        assert!((r.value[1] / (2.0 / 3.0) - 1.0).abs() < 1e-11);
    }
}
