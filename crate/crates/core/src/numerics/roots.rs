use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<T> {
    pub x: T,
    pub fx: T,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootError {
    NotBracketed,
    MaxIterations,
}

/// Brent's method on a bracket with `f(a)` and `f(b)` of opposite sign.
///
/// Stops when the bracket is narrower than `xtol` (plus a few ulps of the
/// iterate) or an exact zero is hit.
pub fn brent<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    xtol: T,
    max_iter: usize,
) -> Result<Root<T>, RootError> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == T::zero() {
        return Ok(Root { x: a, fx: fa, iterations: 0 });
    }
    if fb == T::zero() {
        return Ok(Root { x: b, fx: fb, iterations: 0 });
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return Err(RootError::NotBracketed);
    }
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for it in 1..=max_iter {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + half * xtol;
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Ok(Root { x: b, fx: fb, iterations: it });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qq * (qq - r) - (b - a) * (r - T::one()));
                q = (qq - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            if two * p < (lit::<T>(3.0) * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol { b + d } else if m > T::zero() { b + tol } else { b - tol };
        fb = f(b);
    }
    Err(RootError::MaxIterations)
}

/// Plain bisection; keeps the endpoint with the smaller `|f|`.
pub fn bisect<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    xtol: T,
    max_iter: usize,
) -> Result<Root<T>, RootError> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if (fa > T::zero()) == (fb > T::zero()) && fa != T::zero() && fb != T::zero() {
        return Err(RootError::NotBracketed);
    }
    let mut it = 0;
    while (b - a).abs() > xtol && it < max_iter {
        it += 1;
        let m = a + (b - a) * lit(0.5);
        if m == a || m == b {
            break;
        }
        let fm = f(m);
        if fm == T::zero() {
            return Ok(Root { x: m, fx: fm, iterations: it });
        }
        if (fm > T::zero()) == (fa > T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    Ok(if fa.abs() <= fb.abs() {
        Root { x: a, fx: fa, iterations: it }
    } else {
        Root { x: b, fx: fb, iterations: it }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_cubic() {
        let r = brent(|x: f64| x * x * x - 2.0 * x - 5.0, 2.0, 3.0, 1e-15, 100).unwrap();
        assert!((r.x - 2.0945514815423265).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        assert_eq!(brent(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, 50), Err(RootError::NotBracketed));
    }

    #[test]
    fn brent_flat_then_steep() {
        let r = brent(|x: f64| (x - 1.0).powi(9), -3.0, 4.0, 1e-12, 500).unwrap();
        assert!((r.x - 1.0).abs() < 1e-1);
        let r = brent(|x: f64| x.exp() - 1e-300, -800.0, 0.0, 1e-13, 200).unwrap();
        assert!((r.x - (1e-300_f64).ln()).abs() < 1e-10);
    }

    #[test]
    fn bisection() {
        let r = bisect(|x: f32| x.cos() - x, 0.0, 1.0, 1e-6, 100).unwrap();
        assert!((r.x - 0.739_085_1).abs() < 1e-5);
    }
}
