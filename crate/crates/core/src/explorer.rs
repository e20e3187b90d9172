//! Maps of the region where the entropy-production bound is nonnegative:
//! its zero-level boundary, maximal-production curves and surfaces, and the
//! largest evaporation Mach number that still allows `Λ ≥ 0`.

use rayon::prelude::*;

use crate::admissibility::check_all;
use crate::entropy::lambda_value;
use crate::error::{Error, Result};
use crate::gas::{FarFieldState, GasParams};
use crate::numerics::optimize::{golden_max, nelder_mead};
use crate::numerics::roots::{bisect, brent};
use crate::scalar::{lit, to_f64, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox<T> {
    pub p_min: T,
    pub p_max: T,
    pub t_min: T,
    pub t_max: T,
}

impl<T: Real> SearchBox<T> {
    pub fn evaporation() -> Self {
        Self { p_min: lit(1e-3), p_max: lit(1.2), t_min: lit(0.05), t_max: lit(3.0) }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.p_min > T::zero() && self.p_max > self.p_min && self.t_min > T::zero() && self.t_max > self.t_min;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("search box must be positive and nonempty".into()))
        }
    }
}

/// Tuning of the explorer; the defaults are what the CLI uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExplorerOptions<T> {
    /// Probes violating the necessary admissibility conditions score `-inf`.
    pub respect_admissibility: bool,
    /// Points per axis of the coarse 2D scan.
    pub coarse_points: usize,
    /// Points of the coarse 1D pressure scan.
    pub p_scan_points: usize,
    /// Points of the pressure scan used for zero-level extraction.
    pub boundary_points: usize,
    pub simplex_tol: T,
    pub golden_tol: T,
    pub zero_tol: T,
    /// Relative drop between neighbouring grid cells that triggers a rescan.
    pub restart_drop: T,
}

impl<T: Real> Default for ExplorerOptions<T> {
    fn default() -> Self {
        Self {
            respect_admissibility: true,
            coarse_points: 40,
            p_scan_points: 200,
            boundary_points: 400,
            simplex_tol: lit(1e-8),
            golden_tol: lit(1e-10),
            zero_tol: lit(1e-10),
            restart_drop: lit(0.1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<T> {
    pub mach: T,
    pub p_sharp: T,
    pub t_sharp: T,
    pub lambda_max: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample<T> {
    pub mach: T,
    pub temperature: T,
    pub p_star: T,
    pub lambda_max: T,
    /// The maximizer sits on the edge of the admissible pressure range.
    pub boundary_flag: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndpointKind {
    /// `Λ = 0`.
    Zero,
    /// An admissibility or feasibility wall cuts the positive interval.
    Cut,
    /// The end of the scanned pressure range.
    Range,
}

impl EndpointKind {
    pub fn name(&self) -> &'static str {
        match self {
            EndpointKind::Zero => "zero",
            EndpointKind::Cut => "cut",
            EndpointKind::Range => "range",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample<T> {
    pub mach: T,
    pub temperature: T,
    pub p_lower: T,
    pub p_upper: T,
    pub lower_kind: EndpointKind,
    pub upper_kind: EndpointKind,
}

/// Grid point with no admissible maximizer or a negative maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcludedPoint<T> {
    pub mach: T,
    pub temperature: Option<T>,
    /// Best value found, when any admissible point existed.
    pub lambda_max: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaporationCurve<T> {
    pub points: Vec<CurvePoint<T>>,
    pub excluded: Vec<ExcludedPoint<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CondensationSurface<T> {
    pub samples: Vec<SurfaceSample<T>>,
    pub missing: Vec<ExcludedPoint<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxMach<T> {
    /// Largest Mach number with `max Λ ≥ 0`.
    pub mach: T,
    /// Mach number beyond which no state in the search box satisfies the
    /// admissibility conditions at all (scan resolution), if below the
    /// probe bound.
    pub cut_region_empty_mach: Option<T>,
}

/// Upper Mach number probed by [`max_positive_mach`].
pub const MACH_PROBE_MAX: f64 = 3.0;
const MACH_PROBE_MIN: f64 = 0.01;
const MACH_TOL: f64 = 1e-3;

/// `Λ` where defined and admissible, otherwise `None`.
pub fn admissible_lambda<T: Real>(p: T, t: T, mach: T, gas: &GasParams<T>, options: &ExplorerOptions<T>) -> Option<T> {
    let state = FarFieldState::new(p, t, mach).ok()?;
    if options.respect_admissibility && !check_all(&state, gas).admissible {
        return None;
    }
    lambda_value(&state, gas).ok()
}

fn log_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                (a + (b - a) * lit::<T>(i as f64) / lit::<T>((n - 1) as f64)).exp()
            }
        })
        .collect()
}

fn score<T: Real>(v: Option<T>) -> T {
    v.unwrap_or(T::neg_infinity())
}

/// Maximizes `Λ(p, T, M)` over `(p, T)` for a fixed evaporation Mach number.
pub fn maximize_lambda_pt<T: Real>(
    mach: T,
    gas: &GasParams<T>,
    search_box: &SearchBox<T>,
    options: &ExplorerOptions<T>,
) -> Result<CurvePoint<T>> {
    maximize_pt_from(mach, gas, search_box, options, None)
}

fn maximize_pt_from<T: Real>(
    mach: T,
    gas: &GasParams<T>,
    bx: &SearchBox<T>,
    options: &ExplorerOptions<T>,
    warm: Option<(T, T)>,
) -> Result<CurvePoint<T>> {
    if !(mach >= T::zero()) {
        return Err(Error::Precondition("maximal-production curve requires mach >= 0".into()));
    }
    bx.validate()?;
    if mach == T::zero() && options.respect_admissibility {
        // only the equilibrium state is admissible at rest
        let one = T::one();
        return match admissible_lambda(one, one, mach, gas, options) {
            Some(v) => Ok(CurvePoint { mach, p_sharp: one, t_sharp: one, lambda_max: v }),
            None => Err(Error::NoFeasiblePoint),
        };
    }
    let (lp0, lp1, lt0, lt1) = (bx.p_min.ln(), bx.p_max.ln(), bx.t_min.ln(), bx.t_max.ln());
    let objective = |x: &[T; 2]| -> T {
        if x[0] < lp0 || x[0] > lp1 || x[1] < lt0 || x[1] > lt1 {
            return T::infinity();
        }
        -score(admissible_lambda(x[0].exp(), x[1].exp(), mach, gas, options))
    };
    let n = options.coarse_points.max(3);
    let hp = (lp1 - lp0) / lit::<T>((n - 1) as f64);
    let ht = (lt1 - lt0) / lit::<T>((n - 1) as f64);

    let mut starts: Vec<([T; 2], T)> = Vec::new();
    if let Some((p, t)) = warm {
        let x = [p.ln(), t.ln()];
        let f = objective(&x);
        if f.is_finite() {
            starts.push((x, f));
        }
    }
    if starts.is_empty() {
        let ps = log_grid(bx.p_min, bx.p_max, n);
        let ts = log_grid(bx.t_min, bx.t_max, n);
        let mut cells: Vec<([T; 2], T)> = ts
            .iter()
            .flat_map(|t| ps.iter().map(move |p| [p.ln(), t.ln()]))
            .map(|x| (x, objective(&x)))
            .filter(|(_, f)| f.is_finite())
            .collect();
        if cells.is_empty() {
            return Err(Error::NoFeasiblePoint);
        }
        cells.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        starts.extend(cells.into_iter().take(3));
    }
    let step_scale = if warm.is_some() && starts.len() == 1 { lit::<T>(0.05) } else { T::one() };
    let mut best: Option<([T; 2], T)> = None;
    for (x0, f0) in starts {
        let m = nelder_mead(objective, x0, [hp * step_scale, ht * step_scale], options.simplex_tol, 20_000);
        let (x, f) = if m.fx <= f0 { (m.x, m.fx) } else { (x0, f0) };
        if best.is_none_or(|b| f < b.1) {
            best = Some((x, f));
        }
    }
    let (x, f) = best.ok_or(Error::NoFeasiblePoint)?;
    Ok(CurvePoint { mach, p_sharp: x[0].exp(), t_sharp: x[1].exp(), lambda_max: -f })
}

/// Maximal-production curve `(p#(M), T#(M))`, warm-started along the grid.
pub fn evaporation_curve<T: Real>(
    gas: &GasParams<T>,
    mach_grid: &[T],
    search_box: &SearchBox<T>,
    options: &ExplorerOptions<T>,
) -> Result<EvaporationCurve<T>> {
    check_grid(mach_grid, "mach")?;
    if mach_grid.iter().any(|m| !(*m >= T::zero())) {
        return Err(Error::Precondition("evaporation grid must have mach >= 0".into()));
    }
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    let mut prev: Option<CurvePoint<T>> = None;
    for &mach in mach_grid {
        let warm = prev.filter(|p| p.mach > T::zero()).map(|p| (p.p_sharp, p.t_sharp));
        let mut found = maximize_pt_from(mach, gas, search_box, options, warm);
        if let (Some(pp), Ok(cur)) = (prev, &found) {
            if warm.is_some() && dropped(pp.lambda_max, cur.lambda_max, options.restart_drop) {
                if let Ok(fresh) = maximize_pt_from(mach, gas, search_box, options, None) {
                    if fresh.lambda_max > cur.lambda_max {
                        found = Ok(fresh);
                    }
                }
            }
        }
        match found {
            Ok(pt) if pt.lambda_max >= T::zero() => {
                points.push(pt);
                prev = Some(pt);
            }
            Ok(pt) => {
                excluded.push(ExcludedPoint { mach, temperature: None, lambda_max: Some(pt.lambda_max) });
                prev = Some(pt);
            }
            Err(Error::NoFeasiblePoint) => {
                excluded.push(ExcludedPoint { mach, temperature: None, lambda_max: None });
                prev = None;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(EvaporationCurve { points, excluded })
}

fn dropped<T: Real>(prev: T, cur: T, frac: T) -> bool {
    prev.abs() > lit(1e-12) && cur < prev - frac * prev.abs()
}

fn check_grid<T: Real>(grid: &[T], name: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter(format!("{name} grid is empty")));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(format!("{name} grid must be finite and strictly ascending")));
    }
    Ok(())
}

/// Largest evaporation Mach number at which `max Λ ≥ 0` in the search box,
/// by bisection to `1e-3`.
pub fn max_positive_mach<T: Real>(
    gas: &GasParams<T>,
    search_box: &SearchBox<T>,
    options: &ExplorerOptions<T>,
) -> Result<MaxMach<T>> {
    let positive = |m: T| -> Result<bool> {
        match maximize_lambda_pt(m, gas, search_box, options) {
            Ok(pt) => Ok(pt.lambda_max >= T::zero()),
            Err(Error::NoFeasiblePoint) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let (mut lo, mut hi) = (lit::<T>(MACH_PROBE_MIN), lit::<T>(MACH_PROBE_MAX));
    if positive(hi)? {
        return Err(Error::SearchBound(MACH_PROBE_MAX));
    }
    if !positive(lo)? {
        return Err(Error::NoFeasiblePoint);
    }
    while hi - lo > lit(MACH_TOL) {
        let mid = (lo + hi) * lit(0.5);
        if positive(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(MaxMach { mach: lo, cut_region_empty_mach: cut_region_empty_mach(gas, search_box, options) })
}

fn cut_region_nonempty<T: Real>(mach: T, gas: &GasParams<T>, bx: &SearchBox<T>, options: &ExplorerOptions<T>) -> bool {
    let n = options.coarse_points.max(3);
    let ps = log_grid(bx.p_min, bx.p_max, n);
    let ts = log_grid(bx.t_min, bx.t_max, n);
    ts.iter().any(|t| {
        ps.iter().any(|p| {
            FarFieldState::new(*p, *t, mach).is_ok_and(|s| check_all(&s, gas).admissible)
        })
    })
}

fn cut_region_empty_mach<T: Real>(gas: &GasParams<T>, bx: &SearchBox<T>, options: &ExplorerOptions<T>) -> Option<T> {
    let (mut lo, mut hi) = (lit::<T>(MACH_PROBE_MIN), lit::<T>(MACH_PROBE_MAX));
    if cut_region_nonempty(hi, gas, bx, options) || !cut_region_nonempty(lo, gas, bx, options) {
        return None;
    }
    while hi - lo > lit(MACH_TOL) {
        let mid = (lo + hi) * lit(0.5);
        if cut_region_nonempty(mid, gas, bx, options) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

// samples and missing cells of one temperature row
type SurfaceRow<T> = (Vec<SurfaceSample<T>>, Vec<ExcludedPoint<T>>);

/// Default pressure range for condensation surfaces.
pub fn condensation_p_bounds<T: Real>() -> (T, T) {
    (lit(1e-3), lit(7.0))
}

/// Maximizes `Λ` over `p` at fixed `(T, M)` with `M < 0`.
pub fn maximize_lambda_p<T: Real>(
    temperature: T,
    mach: T,
    gas: &GasParams<T>,
    p_bounds: (T, T),
    options: &ExplorerOptions<T>,
) -> Result<SurfaceSample<T>> {
    if !(mach < T::zero()) {
        return Err(Error::Precondition("condensation surface requires mach < 0".into()));
    }
    if !(temperature > T::zero()) {
        return Err(Error::InvalidParameter("temperature must be positive".into()));
    }
    let (lo, hi) = p_bounds;
    if !(lo > T::zero() && hi > lo) {
        return Err(Error::InvalidParameter("pressure bounds must be positive and ascending".into()));
    }
    maximize_p_on(temperature, mach, gas, &log_grid(lo, hi, options.p_scan_points.max(3)), options)
}

fn maximize_p_on<T: Real>(
    temperature: T,
    mach: T,
    gas: &GasParams<T>,
    grid: &[T],
    options: &ExplorerOptions<T>,
) -> Result<SurfaceSample<T>> {
    let f = |p: T| admissible_lambda(p, temperature, mach, gas, options);
    let values: Vec<Option<T>> = grid.iter().map(|&p| f(p)).collect();
    let (i, _) = values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .fold(None, |best: Option<(usize, T)>, cur| match best {
            Some(b) if b.1 >= cur.1 => Some(b),
            _ => Some(cur),
        })
        .ok_or(Error::NoFeasiblePoint)?;
    let left_open = i > 0 && values[i - 1].is_some();
    let right_open = i + 1 < grid.len() && values[i + 1].is_some();
    // edge of the admissible set: pin the wall first
    let left = if i == 0 {
        grid[0]
    } else if left_open {
        grid[i - 1]
    } else {
        locate_wall(&f, grid[i - 1], grid[i])
    };
    let right = if i + 1 == grid.len() {
        grid[i]
    } else if right_open {
        grid[i + 1]
    } else {
        locate_wall(&f, grid[i + 1], grid[i])
    };
    let (p, v) = golden_max(|p| score(f(p)), left, right, options.golden_tol);
    let (p, v) = if v >= score(values[i]) { (p, v) } else { (grid[i], score(values[i])) };
    let edge = options.golden_tol * lit(10.0);
    let boundary_flag = (!left_open && p - left <= edge) || (!right_open && right - p <= edge);
    Ok(SurfaceSample { mach, temperature, p_star: p, lambda_max: v, boundary_flag })
}

// Last admissible point between an inadmissible `outside` and admissible `inside`.
fn locate_wall<T: Real, F: Fn(T) -> Option<T>>(f: &F, outside: T, inside: T) -> T {
    let tol = (outside - inside).abs() * lit(1e-13);
    let (mut a, mut b) = (inside, outside);
    for _ in 0..200 {
        let m = (a + b) * lit(0.5);
        if m == a || m == b || (b - a).abs() <= tol {
            break;
        }
        if f(m).is_some() {
            a = m;
        } else {
            b = m;
        }
    }
    a
}

/// `p*(T, M)` on a `(T, M)` grid; rows (fixed `T`) run in parallel, and
/// each row is warm-started along increasing `M`.
pub fn condensation_surface<T: Real>(
    gas: &GasParams<T>,
    t_grid: &[T],
    mach_grid: &[T],
    p_bounds: (T, T),
    options: &ExplorerOptions<T>,
) -> Result<CondensationSurface<T>> {
    check_grid(t_grid, "temperature")?;
    check_grid(mach_grid, "mach")?;
    if mach_grid.iter().any(|m| !(*m < T::zero())) {
        return Err(Error::Precondition("condensation grid must have mach < 0".into()));
    }
    if t_grid[0] <= T::zero() {
        return Err(Error::InvalidParameter("temperatures must be positive".into()));
    }
    let (lo, hi) = p_bounds;
    if !(lo > T::zero() && hi > lo) {
        return Err(Error::InvalidParameter("pressure bounds must be positive and ascending".into()));
    }
    let full = log_grid(lo, hi, options.p_scan_points.max(3));
    let rows: Vec<Result<SurfaceRow<T>>> = t_grid
        .par_iter()
        .map(|&t| {
            let mut samples = Vec::new();
            let mut missing = Vec::new();
            let mut prev: Option<SurfaceSample<T>> = None;
            for &mach in mach_grid {
                let mut cell = match prev.filter(|s| !s.boundary_flag) {
                    Some(s) => {
                        let window = log_grid((s.p_star / lit(1.25)).max(lo), (s.p_star * lit(1.25)).min(hi), 25);
                        match maximize_p_on(t, mach, gas, &window, options) {
                            Ok(c) if !c.boundary_flag && !dropped(s.lambda_max, c.lambda_max, options.restart_drop) => {
                                Ok(c)
                            }
                            _ => maximize_p_on(t, mach, gas, &full, options),
                        }
                    }
                    None => maximize_p_on(t, mach, gas, &full, options),
                };
                if let (Some(s), Ok(c)) = (prev, &cell) {
                    if dropped(s.lambda_max, c.lambda_max, options.restart_drop) {
                        if let Ok(fresh) = maximize_p_on(t, mach, gas, &full, options) {
                            if fresh.lambda_max > c.lambda_max {
                                cell = Ok(fresh);
                            }
                        }
                    }
                }
                match cell {
                    Ok(c) => {
                        samples.push(c);
                        prev = Some(c);
                    }
                    Err(Error::NoFeasiblePoint) => {
                        missing.push(ExcludedPoint { mach, temperature: Some(t), lambda_max: None });
                        prev = None;
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok((samples, missing))
        })
        .collect();
    let mut out = CondensationSurface { samples: Vec::new(), missing: Vec::new() };
    for row in rows {
        let (s, m) = row?;
        out.samples.extend(s);
        out.missing.extend(m);
    }
    Ok(out)
}

/// Pressure intervals with `Λ > 0` on a `(T, M)` grid.
pub fn boundary_surface<T: Real>(
    gas: &GasParams<T>,
    t_grid: &[T],
    mach_grid: &[T],
    p_bounds: (T, T),
    options: &ExplorerOptions<T>,
) -> Result<Vec<BoundarySample<T>>> {
    check_grid(t_grid, "temperature")?;
    check_grid(mach_grid, "mach")?;
    let (lo, hi) = p_bounds;
    if !(lo > T::zero() && hi > lo && t_grid[0] > T::zero()) {
        return Err(Error::InvalidParameter("pressure bounds and temperatures must be positive".into()));
    }
    let grid = log_grid(lo, hi, options.boundary_points.max(3));
    let cells: Vec<(T, T)> = t_grid.iter().flat_map(|&t| mach_grid.iter().map(move |&m| (t, m))).collect();
    let rows: Vec<Vec<BoundarySample<T>>> =
        cells.par_iter().map(|&(t, m)| boundary_cell(gas, t, m, &grid, options)).collect();
    Ok(rows.into_iter().flatten().collect())
}

fn boundary_cell<T: Real>(gas: &GasParams<T>, t: T, mach: T, grid: &[T], options: &ExplorerOptions<T>) -> Vec<BoundarySample<T>> {
    let one = T::one();
    if mach == T::zero() && options.respect_admissibility {
        // the admissible set at rest is the single equilibrium state
        return match admissible_lambda(one, t, mach, gas, options) {
            Some(v) if v.abs() <= options.zero_tol => vec![BoundarySample {
                mach,
                temperature: t,
                p_lower: one,
                p_upper: one,
                lower_kind: EndpointKind::Zero,
                upper_kind: EndpointKind::Zero,
            }],
            _ => Vec::new(),
        };
    }
    let f = |p: T| admissible_lambda(p, t, mach, gas, options);
    let values: Vec<Option<T>> = grid.iter().map(|&p| f(p)).collect();
    let positive = |v: &Option<T>| v.is_some_and(|x| x > T::zero());
    let mut out = Vec::new();
    let mut i = 0;
    while i < grid.len() {
        if !positive(&values[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < grid.len() && positive(&values[i + 1]) {
            i += 1;
        }
        let end = i;
        let (p_lower, lower_kind) = endpoint(&f, grid, &values, start, start.checked_sub(1), options);
        let (p_upper, upper_kind) = endpoint(&f, grid, &values, end, Some(end + 1).filter(|j| *j < grid.len()), options);
        out.push(BoundarySample { mach, temperature: t, p_lower, p_upper, lower_kind, upper_kind });
        i += 1;
    }
    out
}

fn endpoint<T: Real, F: Fn(T) -> Option<T>>(
    f: &F,
    grid: &[T],
    values: &[Option<T>],
    inside: usize,
    outside: Option<usize>,
    options: &ExplorerOptions<T>,
) -> (T, EndpointKind) {
    let Some(j) = outside else {
        return (grid[inside], EndpointKind::Range);
    };
    let (a, b) = (grid[inside], grid[j]);
    match values[j] {
        Some(_) => (refine_zero(f, a, b, options.zero_tol), EndpointKind::Zero),
        None => {
            let wall = locate_wall(f, b, a);
            // Λ may still cross zero between the last grid point and the wall
            match f(wall) {
                Some(v) if v <= T::zero() => (refine_zero(f, a, wall, options.zero_tol), EndpointKind::Zero),
                _ => (wall, EndpointKind::Cut),
            }
        }
    }
}

fn refine_zero<T: Real, F: Fn(T) -> Option<T>>(f: &F, inside: T, outside: T, zero_tol: T) -> T {
    let g = |p: T| score(f(p));
    let first = brent(g, inside, outside, T::zero(), 300).map(|r| r.x).unwrap_or(inside);
    if g(first).abs() <= zero_tol {
        return first;
    }
    bisect(g, inside, outside, T::zero(), 2000).map(|r| r.x).unwrap_or(first)
}

/// Evenly spaced grid from `min` to `max` inclusive.
pub fn linear_grid<T: Real>(min: T, max: T, step: T) -> Result<Vec<T>> {
    if !(step > T::zero()) || !(max >= min) || !min.is_finite() || !max.is_finite() {
        return Err(Error::InvalidParameter("grid needs min <= max and a positive step".into()));
    }
    let n = to_f64((max - min) / step + lit(1e-9)).floor() as usize + 1;
    Ok((0..n).map(|i| min + step * lit::<T>(i as f64)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gas(d: f64) -> GasParams<f64> {
        GasParams::new(d).unwrap()
    }

    #[test]
    fn grids() {
        let g = linear_grid(0.0, 1.0, 0.25).unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(linear_grid(-2.5, -0.01, 0.01).unwrap().len(), 250);
        assert!(linear_grid(1.0, 0.0, 0.1).is_err());
        let l = log_grid(1e-3_f64, 7.0, 400);
        assert_eq!(l.len(), 400);
        assert_eq!(l[399], 7.0);
        assert!((l[0] - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn rest_point_is_equilibrium() {
        let o = ExplorerOptions::default();
        let pt = maximize_lambda_pt(0.0, &gas(0.0), &SearchBox::evaporation(), &o).unwrap();
        assert_eq!((pt.p_sharp, pt.t_sharp), (1.0, 1.0));
        assert!(pt.lambda_max.abs() < 1e-12);
        assert!(maximize_lambda_pt(-0.1, &gas(0.0), &SearchBox::evaporation(), &o).is_err());
    }

    #[test]
    fn small_mach_near_equilibrium() {
        let o = ExplorerOptions::default();
        let pt = maximize_lambda_pt(0.01, &gas(0.0), &SearchBox::evaporation(), &o).unwrap();
        assert!((pt.p_sharp - 1.0).abs() <= 0.05 && (pt.t_sharp - 1.0).abs() <= 0.05, "{pt:?}");
    }

    #[test]
    fn condensation_small_mach() {
        let o = ExplorerOptions::default();
        let s = maximize_lambda_p(1.0, -0.01, &gas(0.0), condensation_p_bounds(), &o).unwrap();
        assert!((0.95..=1.05).contains(&s.p_star), "{s:?}");
        assert!(!s.boundary_flag);
        assert!(maximize_lambda_p(1.0, 0.1, &gas(0.0), condensation_p_bounds(), &o).is_err());
    }

    #[test]
    fn rest_boundary_pinch() {
        let o = ExplorerOptions::default();
        let b = boundary_surface(&gas(0.0), &[0.5, 1.0, 2.0], &[0.0], (1e-3, 7.0), &o).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].temperature, b[0].p_lower, b[0].p_upper), (1.0, 1.0, 1.0));
    }
}
