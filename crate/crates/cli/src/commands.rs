//! One function per subcommand. Each returns the rendered artifacts and
//! leaves file handling to the caller.

use dressed_core::bipartite::{
    binary_entropy, impurity, impurity_identical, reduced_pair_matrix, single_atom_reduced,
    von_neumann_entropy,
};
use dressed_core::coupling::build_matrix;
use dressed_core::dynamics::{
    amplitude_row, discrete_trace, f00_sq_small_cavity, free_space_trace, small_cavity_trace,
};
use dressed_core::oracle::cross_check;
use dressed_core::spectrum::{closed_form_sides, solve_eigenfrequencies};
use dressed_core::{
    DressedAtomParams, Error, FreeSpaceParams, ModeIndex, QuadratureConfig, SecularForm,
    SolverConfig, TransformMatrix,
};
use num_complex::Complex64 as C64;

use crate::config::{Regime, RunConfig};
use crate::output::{line_plot, num, Series, Table};
use crate::UsageError;

/// Tolerance on the drift of the entropy trace.
pub const ENTROPY_TOL: f64 = 1e-8;

/// Terms kept in the small-cavity series.
pub const SERIES_TERMS: usize = 10_000;

/// Mode counts compared by `oracle-check` unless one is configured.
pub const ORACLE_SIZES: [usize; 3] = [10, 50, 200];

/// What a subcommand produced.
#[derive(Debug, Default)]
pub struct Artifacts {
    pub csv: String,
    pub svg: Option<String>,
    /// Human-readable summary lines for stderr.
    pub notes: Vec<String>,
    /// Set when the output was written but an invariant failed.
    pub violation: Option<String>,
}

fn cavity_matrix(params: &DressedAtomParams) -> anyhow::Result<TransformMatrix> {
    let spectrum =
        solve_eigenfrequencies(params, SecularForm::Truncated, &SolverConfig::default())?;
    Ok(build_matrix(&spectrum)?)
}

/// Cotangent branches, the right-hand line and their intersections.
pub fn spectrum(cfg: &RunConfig) -> anyhow::Result<Artifacts> {
    if cfg.k_max < cfg.k_min {
        return Err(UsageError(format!("empty mode range {}..={}", cfg.k_min, cfg.k_max)).into());
    }
    let params = cfg.params()?.with_n_modes(cfg.k_max.max(1))?;
    let spectrum =
        solve_eigenfrequencies(&params, SecularForm::ClosedForm, &SolverConfig::default())?;
    let dw = params.delta_omega();
    const PER_BRANCH: usize = 200;

    let roots: Vec<(f64, f64)> = (cfg.k_min..=cfg.k_max)
        .map(|r| {
            let w = spectrum.bigomegas()[r];
            (w, closed_form_sides(&params, w).1)
        })
        .collect();
    let lo = cfg.k_min as f64 * dw;
    let hi = (cfg.k_max + 1) as f64 * dw;
    let x_of = |j: usize, i: usize| (j as f64 + (i as f64 + 0.5) / PER_BRANCH as f64) * dw;
    let y_lim = (cfg.k_min..=cfg.k_max)
        .flat_map(|j| [x_of(j, 0), x_of(j, PER_BRANCH - 1)])
        .map(|x| closed_form_sides(&params, x).1.abs())
        .chain(roots.iter().map(|r| r.1.abs()))
        .fold(1.0, f64::max)
        * 1.2;

    let mut table = Table::new(["series", "x", "y"]);
    let mut cot_segments = Vec::new();
    let mut rhs_line = Vec::new();
    for j in cfg.k_min..=cfg.k_max {
        let mut seg = Vec::new();
        for i in 0..PER_BRANCH {
            let x = x_of(j, i);
            let (cot, rhs) = closed_form_sides(&params, x);
            if cot.abs() <= y_lim {
                table.push(vec!["cot".into(), num(x), num(cot)]);
                seg.push((x, cot));
            }
            if rhs.abs() <= y_lim {
                rhs_line.push((x, rhs));
            }
        }
        cot_segments.push(seg);
    }
    for &(x, y) in &rhs_line {
        table.push(vec!["rhs".into(), num(x), num(y)]);
    }
    for &(x, y) in &roots {
        table.push(vec!["root".into(), num(x), num(y)]);
    }

    let svg = line_plot(
        &format!("eigenfrequency condition, Omega in [{lo:.3}, {hi:.3}]"),
        "Omega",
        "cot(R Omega / c)",
        &[
            Series {
                name: "cot".into(),
                segments: cot_segments,
                markers: false,
            },
            Series {
                name: "rhs".into(),
                segments: vec![rhs_line],
                markers: false,
            },
            Series {
                name: "roots".into(),
                segments: vec![roots.clone()],
                markers: true,
            },
        ],
    );
    Ok(Artifacts {
        csv: table.render(),
        svg: Some(svg),
        notes: vec![format!("lowest root in range: {:.10}", roots[0].0)],
        violation: None,
    })
}

/// `f_{mu nu}(t)` on the configured grid.
pub fn amplitude(cfg: &RunConfig) -> anyhow::Result<Artifacts> {
    let times = cfg.times()?;
    let params = cfg.params()?;
    let trace = match cfg.regime {
        Regime::Cavity => {
            let tm = cavity_matrix(&params)?;
            if cfg.mu.row() >= tm.dim() || cfg.nu.row() >= tm.dim() {
                return Err(UsageError(format!(
                    "mode index beyond n_modes = {}",
                    params.n_modes()
                ))
                .into());
            }
            discrete_trace(&tm, cfg.mu, cfg.nu, &times)
        }
        Regime::FreeSpace | Regime::SmallCavity
            if cfg.mu != ModeIndex::Atom || cfg.nu != ModeIndex::Atom =>
        {
            return Err(UsageError(format!("regime {} only provides f_00", cfg.regime)).into());
        }
        Regime::FreeSpace => {
            let fs = FreeSpaceParams::try_from(&params)?;
            free_space_trace(&fs, &times, &QuadratureConfig::default())?
        }
        Regime::SmallCavity => small_cavity_trace(
            &params,
            &times,
            params.n_modes(),
            SolverConfig::default().delta_threshold,
        )?,
    };
    trace.check()?;

    let mut table = Table::new(["t", "re_f", "im_f", "abs2_f", "method"]);
    for (&t, f) in trace.times.iter().zip(&trace.values) {
        table.push(vec![
            num(t),
            num(f.re),
            num(f.im),
            num(f.norm_sqr()),
            trace.method.tag().into(),
        ]);
    }
    let curve: Vec<(f64, f64)> = trace.times.iter().copied().zip(trace.abs2()).collect();
    let svg = line_plot(
        &format!("|f_{}{}(t)|^2, {}", cfg.mu, cfg.nu, trace.method.tag()),
        "t",
        "|f|^2",
        &[Series {
            name: trace.method.tag().into(),
            segments: vec![curve],
            markers: false,
        }],
    );
    Ok(Artifacts {
        csv: table.render(),
        svg: Some(svg),
        ..Artifacts::default()
    })
}

/// Degree of impurity of two identical atoms in free space and in the cavity.
pub fn impurity_curves(cfg: &RunConfig) -> anyhow::Result<Artifacts> {
    let times = cfg.times()?;
    let params = cfg.params()?;
    let spec = cfg.superposition()?;
    let fs = FreeSpaceParams::try_from(&params)?;
    let quad = QuadratureConfig::default();
    let tm = cavity_matrix(&params)?;
    let threshold = SolverConfig::default().delta_threshold;
    let mut notes = Vec::new();
    let series_ok = params.delta() < threshold;
    if !series_ok {
        notes.push(format!(
            "delta = {} outside the small-cavity series regime; D_small_series left as nan",
            params.delta()
        ));
    }

    let free = free_space_trace(&fs, &times, &quad)?;
    let cavity = discrete_trace(&tm, ModeIndex::Atom, ModeIndex::Atom, &times);
    free.check()?;
    cavity.check()?;

    let mut table = Table::new(["t", "D_free_space", "D_small_cavity", "D_small_series"]);
    let (mut free_curve, mut cavity_curve) = (Vec::new(), Vec::new());
    for (i, &t) in times.iter().enumerate() {
        let d_free = pair_impurity(free.values[i], spec, t)?;
        let d_cav = pair_impurity(cavity.values[i], spec, t)?;
        let d_series = if series_ok {
            let p = f00_sq_small_cavity(t, &params, SERIES_TERMS, threshold)?.value;
            2.0 * p * (1.0 - p)
        } else {
            f64::NAN
        };
        table.push(vec![num(t), num(d_free), num(d_cav), num(d_series)]);
        free_curve.push((t, d_free));
        cavity_curve.push((t, d_cav));
    }
    let svg = line_plot(
        &format!(
            "degree of impurity, g={}, delta={}, omega_bar={}",
            params.g(),
            params.delta(),
            params.omega_bar()
        ),
        "t",
        "D",
        &[
            Series {
                name: "free space".into(),
                segments: vec![free_curve],
                markers: false,
            },
            Series {
                name: "small cavity".into(),
                segments: vec![cavity_curve],
                markers: false,
            },
        ],
    );
    Ok(Artifacts {
        csv: table.render(),
        svg: Some(svg),
        notes,
        violation: None,
    })
}

/// `D` from the checked pair matrix, cross-checked with the identical-atom form.
fn pair_impurity(f00: C64, spec: dressed_core::SuperpositionSpec, t: f64) -> anyhow::Result<f64> {
    let m = reduced_pair_matrix(f00, f00, spec, t)?;
    m.check()?;
    let d = impurity(&m)?;
    let direct = impurity_identical(f00, spec);
    if (d - direct).abs() > 1e-9 {
        return Err(Error::InvariantViolation(format!(
            "t={t}: impurity {d} vs identical-atom form {direct}"
        ))
        .into());
    }
    Ok(d)
}

/// Reduced two-atom elements, impurity and single-atom entropy over time.
pub fn entropy(cfg: &RunConfig) -> anyhow::Result<Artifacts> {
    if cfg.regime != Regime::Cavity {
        return Err(UsageError(format!(
            "entropy needs full amplitude rows; regime {} provides only f_00",
            cfg.regime
        ))
        .into());
    }
    let spec = cfg.superposition()?;
    let times = cfg.times()?;
    let tm = cavity_matrix(&cfg.params()?)?;
    let closed = binary_entropy(spec.xi());

    let mut table = Table::new([
        "t", "rho00", "rho0101", "rho1010", "re_coh", "im_coh", "D", "E",
    ]);
    let mut e0 = None;
    let (mut drift, mut from_closed): (f64, f64) = (0.0, 0.0);
    let mut curve = Vec::new();
    for &t in &times {
        let row = amplitude_row(&tm, ModeIndex::Atom, t);
        let m = reduced_pair_matrix(row[0], row[0], spec, t)?;
        m.check()?;
        let d = impurity(&m)?;
        let e = von_neumann_entropy(&single_atom_reduced(&row, spec, t)?);
        let e0 = *e0.get_or_insert(e);
        drift = drift.max((e - e0).abs());
        from_closed = from_closed.max((e - closed).abs());
        table.push(vec![
            num(t),
            num(m.rho_00_00),
            num(m.rho_01_01),
            num(m.rho_10_10),
            num(m.coh_10_01.re),
            num(m.coh_10_01.im),
            num(d),
            num(e),
        ]);
        curve.push((t, e));
    }
    let svg = line_plot(
        &format!("von Neumann entropy, xi={}", spec.xi()),
        "t",
        "E",
        &[Series {
            name: "E".into(),
            segments: vec![curve],
            markers: false,
        }],
    );
    let worst = drift.max(from_closed);
    Ok(Artifacts {
        csv: table.render(),
        svg: Some(svg),
        notes: vec![
            format!("max |E(t) - E(0)| = {drift:e}"),
            format!("max |E(t) - E_closed| = {from_closed:e} (E_closed = {closed:.12})"),
        ],
        violation: (worst > ENTROPY_TOL)
            .then(|| format!("entropy deviation {worst:e} exceeds {ENTROPY_TOL:e}")),
    })
}

/// `Omega_r` and the full transformation matrix, one row per normal mode.
pub fn matrix_dump(cfg: &RunConfig) -> anyhow::Result<Artifacts> {
    let params = cfg.params()?;
    let tm = cavity_matrix(&params)?;
    let n = params.n_modes();
    let mut header = vec!["r".to_string(), "Omega_r".into(), "t_atom_r".into()];
    header.extend((1..=n).map(|k| format!("t_{k}_r")));
    let mut table = Table::new(header);
    for (r, &w) in tm.spectrum().bigomegas().iter().enumerate() {
        let mut row = vec![r.to_string(), num(w)];
        row.extend((0..=n).map(|mu| num(tm.matrix()[[mu, r]])));
        table.push(row);
    }
    Ok(Artifacts {
        csv: table.render(),
        notes: vec![format!(
            "orthogonality residual {:e}",
            tm.orthogonality_residual()
        )],
        ..Artifacts::default()
    })
}

/// Root-finding pipeline against dense diagonalization.
pub fn oracle_check(cfg: &RunConfig) -> anyhow::Result<Artifacts> {
    let sizes: Vec<usize> = cfg.n_modes.map_or(ORACLE_SIZES.to_vec(), |n| vec![n]);
    let mut table = Table::new(["check", "deviation", "tolerance", "status"]);
    let mut failed = Vec::new();
    for n in sizes {
        let params = cfg.params()?.with_n_modes(n)?;
        for c in cross_check(&params, &SolverConfig::default())? {
            let status = if c.passed() { "pass" } else { "fail" };
            if !c.passed() {
                failed.push(c.name.clone());
            }
            table.push(vec![
                c.name,
                num(c.deviation),
                num(c.tolerance),
                status.into(),
            ]);
        }
    }
    Ok(Artifacts {
        csv: table.render(),
        notes: vec![format!("{} checks, {} failed", table.len(), failed.len())],
        violation: (!failed.is_empty()).then(|| format!("oracle mismatch: {}", failed.join("; "))),
        ..Artifacts::default()
    })
}
