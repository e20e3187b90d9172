use std::path::PathBuf;

use evapcond_core::explorer::{condensation_p_bounds, linear_grid};
use evapcond_core::{
    boundary_surface, check_all, classify_regime, condensation_surface, evaporation_curve, lambda, max_positive_mach,
    ExplorerOptions, FarFieldState, Gas, LambdaForm, SearchBox,
};

use crate::args::{ClassifyArgs, Command, CommonArgs, CompareArgs, Form, Format, GridArgs, MachGrid, StateArgs};
use crate::compare::{compare, CsvData, JoinOptions};
use crate::config::ConfigFile;
use crate::output::{emit, format_float, Cell, Table};
use crate::CliError;

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Lambda(a) => cmd_lambda(&a),
        Command::Admissible(a) => cmd_admissible(&a),
        Command::Classify(a) => cmd_classify(&a),
        Command::EvaporationCurve(a) => cmd_evaporation_curve(&a),
        Command::CondensationSurface(a) => cmd_condensation_surface(&a),
        Command::BoundarySurface(a) => cmd_boundary_surface(&a),
        Command::MaxMach(a) => cmd_max_mach(&a),
        Command::Compare(a) => cmd_compare(&a),
    }
}

struct Common {
    config: ConfigFile,
    deltas: Vec<f64>,
    out: Option<PathBuf>,
    format: Format,
}

impl Common {
    fn resolve(args: &CommonArgs, default_delta: Option<f64>) -> Result<Self, CliError> {
        let config = ConfigFile::load(args.config.as_deref())?;
        let mut deltas = if args.delta.is_empty() { config.get_list("delta")? } else { args.delta.clone() };
        if deltas.is_empty() {
            match default_delta {
                Some(d) => deltas.push(d),
                None => return Err(CliError::Args("--delta is required".into())),
            }
        }
        if let Some(d) = deltas.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
            return Err(CliError::Args(format!("delta must be finite and >= 0, got {d}")));
        }
        let out = match &args.out {
            Some(p) => Some(p.clone()),
            None => config.get::<String>("out")?.map(PathBuf::from),
        };
        let format = match args.format {
            Some(f) => f,
            None => match config.get::<String>("format")?.as_deref() {
                None | Some("csv") => Format::Csv,
                Some("json") => Format::Json,
                Some(other) => return Err(CliError::Args(format!("unknown format {other:?}"))),
            },
        };
        Ok(Self { config, deltas, out, format })
    }

    fn table(&self, command: &str, columns: &[&'static str]) -> Table {
        let mut t = Table::new(command, columns);
        let deltas: Vec<String> = self.deltas.iter().map(|d| d.to_string()).collect();
        t.meta("delta", deltas.join(","));
        t
    }

    fn finish(&self, table: &Table) -> Result<(), CliError> {
        emit(&table.render(self.format), self.out.as_deref())
    }

    fn require(&self, flag: Option<f64>, key: &str) -> Result<f64, CliError> {
        self.config.pick(flag, key)?.ok_or_else(|| CliError::Args(format!("--{key} is required")))
    }
}

fn gas(delta: f64) -> Result<Gas, CliError> {
    Ok(Gas::new(delta)?)
}

/// Inclusive grid with values snapped to ten decimals, so that `0` and
/// `±1` land exactly on the grid.
fn grid(min: f64, max: f64, step: f64, name: &str) -> Result<Vec<f64>, CliError> {
    let g = linear_grid(min, max, step).map_err(|e| CliError::Args(format!("{name} grid: {e}")))?;
    Ok(g.into_iter()
        .map(|x| {
            let r = (x * 1e10).round() / 1e10;
            if (r - x).abs() < 1e-12 { r } else { x }
        })
        .collect())
}

fn describe_grid(values: &[f64]) -> String {
    match values {
        [x] => format_float(*x),
        [a, .., b] => format!("{}..{} ({} points)", format_float(*a), format_float(*b), values.len()),
        [] => String::new(),
    }
}

fn mach_grid(g: &MachGrid, cfg: &ConfigFile, default: (f64, f64, f64)) -> Result<Vec<f64>, CliError> {
    if let Some(m) = cfg.pick(g.mach, "mach")? {
        return Ok(vec![m]);
    }
    let min = cfg.pick(g.mach_min, "mach-min")?.unwrap_or(default.0);
    let max = cfg.pick(g.mach_max, "mach-max")?.unwrap_or(default.1);
    let step = cfg.pick(g.mach_step, "mach-step")?.unwrap_or(default.2);
    grid(min, max, step, "mach")
}

fn t_grid(a: &GridArgs, cfg: &ConfigFile, default: (f64, f64, f64)) -> Result<Vec<f64>, CliError> {
    if let Some(t) = cfg.pick(a.t, "T")? {
        return Ok(vec![t]);
    }
    let min = cfg.pick(a.t_min, "T-min")?.unwrap_or(default.0);
    let max = cfg.pick(a.t_max, "T-max")?.unwrap_or(default.1);
    let step = cfg.pick(a.t_step, "T-step")?.unwrap_or(default.2);
    grid(min, max, step, "T")
}

fn p_range(a: &GridArgs, cfg: &ConfigFile, default: (f64, f64)) -> Result<(f64, f64), CliError> {
    let lo = cfg.pick(a.p_min, "p-min")?.unwrap_or(default.0);
    let hi = cfg.pick(a.p_max, "p-max")?.unwrap_or(default.1);
    if !(lo > 0.0 && hi > lo) {
        return Err(CliError::Args(format!("pressure range must satisfy 0 < p-min < p-max, got [{lo}, {hi}]")));
    }
    Ok((lo, hi))
}

fn explorer_options(a: &GridArgs, cfg: &ConfigFile) -> Result<ExplorerOptions<f64>, CliError> {
    let mut o = ExplorerOptions {
        respect_admissibility: !(a.no_admissibility || cfg.get_bool("no-admissibility")?),
        ..ExplorerOptions::default()
    };
    if let Some(v) = cfg.pick(a.zero_tol, "zero-tol")? {
        o.zero_tol = v;
    }
    if let Some(v) = cfg.pick(a.simplex_tol, "simplex-tol")? {
        o.simplex_tol = v;
    }
    if let Some(v) = cfg.pick(a.golden_tol, "golden-tol")? {
        o.golden_tol = v;
    }
    for (name, v) in [("zero-tol", o.zero_tol), ("simplex-tol", o.simplex_tol), ("golden-tol", o.golden_tol)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Args(format!("{name} must be positive")));
        }
    }
    Ok(o)
}

fn p_points(a: &GridArgs, cfg: &ConfigFile) -> Result<Option<usize>, CliError> {
    let n = cfg.pick(a.p_points, "p-points")?;
    if n.is_some_and(|n| n < 3) {
        return Err(CliError::Args("p-points must be at least 3".into()));
    }
    Ok(n)
}

fn state_of(a: &StateArgs, c: &Common) -> Result<FarFieldState<f64>, CliError> {
    let p = c.require(a.p, "p")?;
    let t = c.require(a.t, "T")?;
    let mach = c.require(a.mach, "mach")?;
    FarFieldState::new(p, t, mach).map_err(|e| CliError::Args(e.to_string()))
}

fn cmd_lambda(a: &StateArgs) -> Result<(), CliError> {
    let c = Common::resolve(&a.common, None)?;
    let state = state_of(a, &c)?;
    let form = match a.form {
        Some(f) => f,
        None => match c.config.get::<String>("form")?.as_deref() {
            None | Some("checked") => Form::Checked,
            Some("direct") => Form::Direct,
            Some("recast") => Form::Recast,
            Some(other) => return Err(CliError::Args(format!("unknown form {other:?}"))),
        },
    };
    let form = match form {
        Form::Direct => LambdaForm::Direct,
        Form::Recast => LambdaForm::Recast,
        Form::Checked => LambdaForm::Checked,
    };
    let mut table = c.table(
        "lambda",
        &[
            "delta",
            "p",
            "T",
            "mach",
            "form",
            "value",
            "boundary_term",
            "far_field_term",
            "min_flux_term",
            "upsilon",
            "s",
            "condition",
            "cross_checked",
        ],
    );
    for &d in &c.deltas {
        let b = lambda(&state, &gas(d)?, form).map_err(|e| CliError::Numerical(format!("delta = {d}: {e}")))?;
        table.push(vec![
            d.into(),
            state.p.into(),
            state.t.into(),
            state.mach.into(),
            form.name().into(),
            b.value.into(),
            b.boundary_term.into(),
            b.far_field_term.into(),
            b.min_flux_term.into(),
            b.upsilon.into(),
            b.s.into(),
            b.condition.into(),
            b.cross_checked.into(),
        ]);
    }
    c.finish(&table)
}

fn cmd_admissible(a: &StateArgs) -> Result<(), CliError> {
    let c = Common::resolve(&a.common, None)?;
    let state = state_of(a, &c)?;
    let mut table = c.table("admissible", &["delta", "condition", "satisfied", "margin"]);
    table.meta("p", format_float(state.p));
    table.meta("T", format_float(state.t));
    table.meta("mach", format_float(state.mach));
    table.meta("regime", classify_regime(state.mach).regime.name());
    let mut verdicts = Vec::new();
    for &d in &c.deltas {
        let report = check_all(&state, &gas(d)?);
        for (name, r) in report.conditions() {
            table.push(vec![d.into(), name.into(), r.satisfied.into(), r.margin.into()]);
        }
        verdicts.push(format!("{d}:{}", report.admissible));
    }
    table.meta("admissible", verdicts.join(","));
    c.finish(&table)
}

fn cmd_classify(a: &ClassifyArgs) -> Result<(), CliError> {
    let c = Common::resolve(&a.common, Some(0.0))?;
    let machs = mach_grid(&a.grid, &c.config, (-2.5, 1.75, 0.05))?;
    let mut table = Table::new("classify", &["mach", "regime", "k_plus", "l_zero", "free_parameters"]);
    table.meta("mach_grid", describe_grid(&machs));
    for m in machs {
        if !m.is_finite() {
            return Err(CliError::Args("mach must be finite".into()));
        }
        let r = classify_regime(m);
        table.push(vec![
            m.into(),
            r.regime.name().into(),
            Cell::Int(r.k_plus.into()),
            Cell::Int(r.l_zero.into()),
            r.free_parameters.map_or(Cell::Empty, |n| Cell::Int(n.into())),
        ]);
    }
    c.finish(&table)
}

fn cmd_evaporation_curve(a: &GridArgs) -> Result<(), CliError> {
    let c = Common::resolve(&a.common, Some(0.0))?;
    let machs = mach_grid(&a.mach, &c.config, (0.0, 1.75, 0.01))?;
    let bx = evaporation_box(a, &c.config)?;
    let mut opts = explorer_options(a, &c.config)?;
    if let Some(n) = p_points(a, &c.config)? {
        opts.coarse_points = n;
    }
    let mut table = c.table("evaporation-curve", &["delta", "mach", "p_sharp", "T_sharp", "lambda_max"]);
    table.meta("mach_grid", describe_grid(&machs));
    table.meta("search_box", describe_box(&bx));
    table.meta("admissibility", opts.respect_admissibility.to_string());
    for &d in &c.deltas {
        let curve = evaporation_curve(&gas(d)?, &machs, &bx, &opts)
            .map_err(|e| CliError::Numerical(format!("delta = {d}: {e}")))?;
        for pt in &curve.points {
            table.push(vec![d.into(), pt.mach.into(), pt.p_sharp.into(), pt.t_sharp.into(), pt.lambda_max.into()]);
        }
        if !curve.excluded.is_empty() {
            let ms: Vec<String> = curve.excluded.iter().map(|e| e.mach.to_string()).collect();
            table.meta(&format!("excluded_mach[delta={d}]"), ms.join(","));
        }
    }
    c.finish(&table)
}

fn evaporation_box(a: &GridArgs, cfg: &ConfigFile) -> Result<SearchBox<f64>, CliError> {
    let d = SearchBox::<f64>::evaporation();
    let (p_min, p_max) = p_range(a, cfg, (d.p_min, d.p_max))?;
    let t_min = cfg.pick(a.t_min, "T-min")?.unwrap_or(d.t_min);
    let t_max = cfg.pick(a.t_max, "T-max")?.unwrap_or(d.t_max);
    if !(t_min > 0.0 && t_max > t_min) {
        return Err(CliError::Args(format!("temperature range must satisfy 0 < T-min < T-max, got [{t_min}, {t_max}]")));
    }
    Ok(SearchBox { p_min, p_max, t_min, t_max })
}

fn describe_box(b: &SearchBox<f64>) -> String {
    format!("p=[{}, {}] T=[{}, {}]", b.p_min, b.p_max, b.t_min, b.t_max)
}

fn cmd_condensation_surface(a: &GridArgs) -> Result<(), CliError> {
    let c = Common::resolve(&a.common, Some(0.0))?;
    let machs = mach_grid(&a.mach, &c.config, (-2.5, -0.01, 0.01))?;
    let temps = t_grid(a, &c.config, (0.1, 3.0, 0.05))?;
    let p_bounds = p_range(a, &c.config, condensation_p_bounds())?;
    let mut opts = explorer_options(a, &c.config)?;
    if let Some(n) = p_points(a, &c.config)? {
        opts.p_scan_points = n;
    }
    let mut table =
        c.table("condensation-surface", &["delta", "T", "mach", "p_star", "lambda_max", "boundary_flag"]);
    table.meta("mach_grid", describe_grid(&machs));
    table.meta("T_grid", describe_grid(&temps));
    table.meta("p_range", format!("[{}, {}]", p_bounds.0, p_bounds.1));
    table.meta("admissibility", opts.respect_admissibility.to_string());
    for &d in &c.deltas {
        let surface = condensation_surface(&gas(d)?, &temps, &machs, p_bounds, &opts)
            .map_err(|e| CliError::Numerical(format!("delta = {d}: {e}")))?;
        for s in &surface.samples {
            table.push(vec![
                d.into(),
                s.temperature.into(),
                s.mach.into(),
                s.p_star.into(),
                s.lambda_max.into(),
                s.boundary_flag.into(),
            ]);
        }
        if !surface.missing.is_empty() {
            let cells: Vec<String> = surface
                .missing
                .iter()
                .map(|m| format!("({},{})", m.temperature.map_or(String::new(), |t| t.to_string()), m.mach))
                .collect();
            table.meta(&format!("missing_cells[delta={d}]"), cells.join(" "));
        }
    }
    c.finish(&table)
}

fn cmd_boundary_surface(a: &GridArgs) -> Result<(), CliError> {
    let c = Common::resolve(&a.common, Some(0.0))?;
    let machs = mach_grid(&a.mach, &c.config, (-2.5, 1.75, 0.05))?;
    let temps = t_grid(a, &c.config, (0.1, 3.0, 0.05))?;
    let p_bounds = p_range(a, &c.config, condensation_p_bounds())?;
    let mut opts = explorer_options(a, &c.config)?;
    if let Some(n) = p_points(a, &c.config)? {
        opts.boundary_points = n;
    }
    let mut table = c.table(
        "boundary-surface",
        &["delta", "T", "mach", "p_lower", "p_upper", "lower_kind", "upper_kind"],
    );
    table.meta("mach_grid", describe_grid(&machs));
    table.meta("T_grid", describe_grid(&temps));
    table.meta("p_range", format!("[{}, {}]", p_bounds.0, p_bounds.1));
    table.meta("admissibility", opts.respect_admissibility.to_string());
    for &d in &c.deltas {
        let samples = boundary_surface(&gas(d)?, &temps, &machs, p_bounds, &opts)
            .map_err(|e| CliError::Numerical(format!("delta = {d}: {e}")))?;
        for s in &samples {
            table.push(vec![
                d.into(),
                s.temperature.into(),
                s.mach.into(),
                s.p_lower.into(),
                s.p_upper.into(),
                s.lower_kind.name().into(),
                s.upper_kind.name().into(),
            ]);
        }
    }
    c.finish(&table)
}

fn cmd_max_mach(a: &GridArgs) -> Result<(), CliError> {
    let c = Common::resolve(&a.common, Some(0.0))?;
    let bx = evaporation_box(a, &c.config)?;
    let mut opts = explorer_options(a, &c.config)?;
    if let Some(n) = p_points(a, &c.config)? {
        opts.coarse_points = n;
    }
    let mut table = c.table("max-mach", &["delta", "max_mach", "cut_region_empty_mach"]);
    table.meta("search_box", describe_box(&bx));
    table.meta("admissibility", opts.respect_admissibility.to_string());
    for &d in &c.deltas {
        let m = max_positive_mach(&gas(d)?, &bx, &opts).map_err(|e| CliError::Numerical(format!("delta = {d}: {e}")))?;
        table.push(vec![d.into(), m.mach.into(), m.cut_region_empty_mach.into()]);
    }
    c.finish(&table)
}

fn cmd_compare(a: &CompareArgs) -> Result<(), CliError> {
    let config = ConfigFile::load(a.common.config.as_deref())?;
    let path = |flag: &Option<PathBuf>, key: &str| -> Result<PathBuf, CliError> {
        match flag {
            Some(p) => Ok(p.clone()),
            None => config
                .get::<String>(key)?
                .map(PathBuf::from)
                .ok_or_else(|| CliError::Args(format!("--{key} is required"))),
        }
    };
    let reference = CsvData::load(&path(&a.reference, "reference")?)?;
    let computed = CsvData::load(&path(&a.computed, "computed")?)?;
    let c = Common::resolve(&a.common, Some(0.0))?;
    let delta = match (a.common.delta.as_slice(), config.get_list("delta")?.as_slice()) {
        ([d], _) | ([], [d]) => Some(*d),
        ([], []) => None,
        _ => return Err(CliError::Args("compare takes at most one --delta".into())),
    };
    let key = match config.pick(a.key.clone(), "key")? {
        Some(k) => k,
        None if reference.column(&["T"]).is_some() => "mach,T".to_string(),
        None => "mach".to_string(),
    };
    let by_temperature = match key.replace(' ', "").as_str() {
        "mach" => false,
        "mach,T" => true,
        other => return Err(CliError::Args(format!("unknown join key {other:?}; use mach or mach,T"))),
    };
    let join_tol = config.pick(a.join_tol, "join-tol")?.unwrap_or(0.01);
    if join_tol.is_nan() || join_tol < 0.0 {
        return Err(CliError::Args("join-tol must be nonnegative".into()));
    }
    let result = compare(&reference, &computed, &JoinOptions { by_temperature, join_tol, delta })?;

    let mut table = Table::new("compare", &["mach", "T", "quantity", "reference", "computed", "residual", "interpolated"]);
    if let Some(d) = delta {
        table.meta("delta", d.to_string());
    }
    table.meta("key", key);
    table.meta("join_tol", join_tol.to_string());
    table.meta("n_points", result.pressure.n_points.to_string());
    table.meta("rms_deviation", format_float(result.pressure.rms_deviation));
    table.meta("max_deviation", format_float(result.pressure.max_deviation));
    if let Some(t) = &result.temperature {
        table.meta("T_n_points", t.n_points.to_string());
        table.meta("T_rms_deviation", format_float(t.rms_deviation));
        table.meta("T_max_deviation", format_float(t.max_deviation));
    }
    let all = result.pressure.residuals.iter().chain(result.temperature.iter().flat_map(|t| t.residuals.iter()));
    for r in all {
        table.push(vec![
            r.mach.into(),
            r.temperature.into(),
            r.quantity.into(),
            r.reference.into(),
            r.computed.into(),
            r.residual.into(),
            r.interpolated.into(),
        ]);
    }
    c.finish(&table)
}
