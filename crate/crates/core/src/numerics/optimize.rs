use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<T, const N: usize> {
    pub x: [T; N],
    pub fx: T,
    pub evaluations: usize,
    pub converged: bool,
}

/// Nelder-Mead simplex minimization.
///
/// `f` may return `+inf` for infeasible points; such vertices are simply
/// never accepted. Converges when every vertex is within `xtol` of the best
/// one in every coordinate.
pub fn nelder_mead<T: Real, const N: usize, F: FnMut(&[T; N]) -> T>(
    mut f: F,
    start: [T; N],
    step: [T; N],
    xtol: T,
    max_evals: usize,
) -> Minimum<T, N> {
    let (alpha, gamma, rho, sigma) = (T::one(), lit::<T>(2.0), lit::<T>(0.5), lit::<T>(0.5));
    let mut simplex: Vec<([T; N], T)> = Vec::with_capacity(N + 1);
    simplex.push((start, f(&start)));
    for i in 0..N {
        let mut x = start;
        x[i] = x[i] + step[i];
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut evals = N + 1;
    let order = |s: &mut Vec<([T; N], T)>| {
        s.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    };
    let mut converged = false;
    while evals < max_evals {
        order(&mut simplex);
        let best = simplex[0].0;
        let diam = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(best.iter()).map(|(a, b)| (*a - *b).abs()))
            .fold(T::zero(), T::max);
        if diam < xtol {
            converged = true;
            break;
        }
        let mut centroid = [T::zero(); N];
        for (x, _) in &simplex[..N] {
            for k in 0..N {
                centroid[k] = centroid[k] + x[k];
            }
        }
        let n = lit::<T>(N as f64);
        for c in centroid.iter_mut() {
            *c = *c / n;
        }
        let worst = simplex[N];
        let toward = |t: T| {
            let mut y = [T::zero(); N];
            for k in 0..N {
                y[k] = centroid[k] + t * (worst.0[k] - centroid[k]);
            }
            y
        };
        let xr = toward(-alpha);
        let fr = f(&xr);
        evals += 1;
        if fr < simplex[0].1 {
            let xe = toward(-gamma);
            let fe = f(&xe);
            evals += 1;
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[N - 1].1 {
            simplex[N] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = toward(-rho);
            (xc, f(&xc))
        } else {
            let xc = toward(rho);
            (xc, f(&xc))
        };
        evals += 1;
        if fc < worst.1.min(fr) {
            simplex[N] = (xc, fc);
            continue;
        }
        let x0 = simplex[0].0;
        for v in simplex.iter_mut().skip(1) {
            for k in 0..N {
                v.0[k] = x0[k] + sigma * (v.0[k] - x0[k]);
            }
            v.1 = f(&v.0);
            evals += 1;
        }
    }
    order(&mut simplex);
    Minimum { x: simplex[0].0, fx: simplex[0].1, evaluations: evals, converged }
}

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
///
/// Returns `(x, f(x))` once the bracket is narrower than `xtol`.
pub fn golden_max<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, xtol: T) -> (T, T) {
    let inv_phi = (lit::<T>(5.0).sqrt() - T::one()) / lit(2.0);
    let (mut a, mut b) = (a, b);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..300 {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
