//! Normal-mode frequencies of the coupled atom–field system.
//!
//! Every normal frequency lies strictly between two neighbouring field
//! frequencies (or between 0 and the first one), so each root is found inside
//! its own asymptote interval. Roots are solved for their offset `s` above the
//! lower asymptote rather than for the absolute frequency: near a pole the
//! secular function is steep, and working in `s` keeps both the root and its
//! residual accurate to a few ulps even for mode indices in the thousands.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::DressedAtomParams;
use crate::roots::{brent, BracketError};

/// Which eigenfrequency condition the roots satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SecularForm {
    /// Renormalized condition with the field truncated at `N` modes. This is
    /// the exact eigencondition of the finite quadratic Hamiltonian whose bare
    /// atom frequency carries the counterterm, so its roots coincide with the
    /// oracle's eigenfrequencies and the resulting transformation is exactly
    /// orthogonal.
    Truncated,
    /// The `N -> infinity` closed form `cot(R W / c) = W/(2g) + (c/(R W))(1 - R wbar^2/(2 g c))`.
    /// The first `N + 1` of its infinitely many roots are returned.
    ClosedForm,
}

/// Provenance of a [`ModeSpectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumMethod {
    ExactRoots(SecularForm),
    SmallCavityApprox,
    Oracle,
}

impl SpectrumMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            SpectrumMethod::ExactRoots(SecularForm::Truncated) => "exact-roots-truncated",
            SpectrumMethod::ExactRoots(SecularForm::ClosedForm) => "exact-roots-closed-form",
            SpectrumMethod::SmallCavityApprox => "small-cavity-approx",
            SpectrumMethod::Oracle => "oracle",
        }
    }
}

/// Tolerances for the root solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relative residual accepted at each root.
    pub residual_tol: f64,
    /// Iteration cap for the bracketed solver.
    pub max_iter: usize,
    /// First bracket offset from the asymptotes, in units of the mode spacing.
    pub initial_offset: f64,
    /// Number of times the asymptote offset is shrunk (by 1e-2 each) before
    /// giving up on a bracket.
    pub max_offset_shrinks: usize,
    /// Largest `delta` accepted by the small-cavity approximations.
    pub delta_threshold: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            max_iter: 200,
            initial_offset: 1e-9,
            max_offset_shrinks: 20,
            delta_threshold: 0.2,
        }
    }
}

/// The `N` field frequencies and `N + 1` normal frequencies of one atom.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    params: DressedAtomParams,
    omegas: Vec<f64>,
    bigomegas: Vec<f64>,
    offsets: Vec<f64>,
    method: SpectrumMethod,
}

/// Field frequencies `omega_k = k pi c / R`, `k = 1..=N`.
pub fn field_frequencies(params: &DressedAtomParams) -> Vec<f64> {
    (1..=params.n_modes())
        .map(|k| params.field_frequency(k))
        .collect()
}

/// Both sides of the closed-form eigenfrequency condition at `omega`:
/// `(cot(R omega / c), omega/(2g) + (c/(R omega))(1 - R wbar^2/(2 g c)))`.
pub fn closed_form_sides(params: &DressedAtomParams, omega: f64) -> (f64, f64) {
    let x = params.radius() * omega / params.c();
    (1.0 / x.tan(), closed_form_rhs(params, omega))
}

fn closed_form_rhs(p: &DressedAtomParams, omega: f64) -> f64 {
    let (r, c, g) = (p.radius(), p.c(), p.g());
    omega / (2.0 * g) + c / (r * omega) * (1.0 - r * p.omega_bar().powi(2) / (2.0 * g * c))
}

/// `cot(pi v)` for `v` in `(0, 1)`, reflected so the argument never sits
/// next to `pi`.
fn cot_pi(v: f64) -> f64 {
    if v <= 0.5 {
        1.0 / (PI * v).tan()
    } else {
        -1.0 / (PI * (1.0 - v)).tan()
    }
}

/// Secular function evaluated at offset `s` above the asymptote of interval
/// `j`. Returns `(lhs - rhs, residual scale)`; the difference is positive just
/// above the lower asymptote and negative just below the upper one.
fn secular(p: &DressedAtomParams, form: SecularForm, j: usize, s: f64) -> (f64, f64) {
    let dw = p.delta_omega();
    let v = s / dw;
    let omega = j as f64 * dw + s;
    match form {
        SecularForm::ClosedForm => {
            let lhs = cot_pi(v.min(1.0));
            let rhs = closed_form_rhs(p, omega);
            (lhs - rhs, 1.0 + rhs.abs())
        }
        SecularForm::Truncated => {
            // dimensionless: dw^2 (wbar^2 - W^2)/(eta^2 W^2) = sum_k 1/(k^2 - u^2)
            let u = j as f64 + v;
            let lhs =
                dw * dw * (p.omega_bar().powi(2) - omega * omega) / (p.eta_sq() * omega * omega);
            let mut rhs = 0.0;
            let mut scale = 1.0 + lhs.abs();
            for k in 1..=p.n_modes() {
                let below = (k as f64 - j as f64) - v;
                let term = 1.0 / (below * (k as f64 + u));
                rhs += term;
                scale += term.abs();
            }
            (lhs - rhs, scale)
        }
    }
}

fn solve_interval(
    p: &DressedAtomParams,
    form: SecularForm,
    j: usize,
    cfg: &SolverConfig,
) -> Result<f64> {
    let dw = p.delta_omega();
    let f = |s: f64| secular(p, form, j, s).0;
    let unbounded = form == SecularForm::Truncated && j == p.n_modes();

    let mut eps = cfg.initial_offset * dw;
    let mut bracket = None;
    for _ in 0..=cfg.max_offset_shrinks {
        let lo = eps;
        let flo = f(lo);
        let (hi, fhi) = if unbounded {
            let mut hi = dw;
            let mut fhi = f(hi);
            let mut grow = 0;
            while fhi > 0.0 && grow < 200 {
                hi *= 2.0;
                fhi = f(hi);
                grow += 1;
            }
            (hi, fhi)
        } else {
            let hi = dw - eps;
            (hi, f(hi))
        };
        if flo > 0.0 && fhi < 0.0 {
            bracket = Some((lo, hi, flo, fhi));
            break;
        }
        eps *= 1e-2;
    }
    let (lo, hi, flo, fhi) = bracket.ok_or_else(|| Error::ConvergenceFailure {
        interval: j,
        reason: "no sign change after shrinking the asymptote offset".into(),
    })?;

    let s = brent(f, lo, hi, flo, fhi, 0.0, cfg.max_iter).map_err(|e| {
        let reason = match e {
            BracketError::NoSignChange { .. } => "lost sign change".to_string(),
            BracketError::NotFinite { x } => format!("non-finite secular function at offset {x:e}"),
            BracketError::MaxIter => format!("no convergence within {} iterations", cfg.max_iter),
        };
        Error::ConvergenceFailure {
            interval: j,
            reason,
        }
    })?;

    let (h, scale) = secular(p, form, j, s);
    if h.abs() > cfg.residual_tol * scale {
        return Err(Error::ConvergenceFailure {
            interval: j,
            reason: format!("residual {:e} exceeds tolerance", h.abs() / scale),
        });
    }
    Ok(s)
}

/// Solves for the `N + 1` normal frequencies, one per asymptote interval.
pub fn solve_eigenfrequencies(
    params: &DressedAtomParams,
    form: SecularForm,
    cfg: &SolverConfig,
) -> Result<ModeSpectrum> {
    let n = params.n_modes();
    let dw = params.delta_omega();
    let mut offsets = Vec::with_capacity(n + 1);
    for j in 0..=n {
        offsets.push(solve_interval(params, form, j, cfg)?);
    }
    let bigomegas = offsets
        .iter()
        .enumerate()
        .map(|(j, s)| j as f64 * dw + s)
        .collect();
    Ok(ModeSpectrum {
        params: *params,
        omegas: field_frequencies(params),
        bigomegas,
        offsets,
        method: SpectrumMethod::ExactRoots(form),
    })
}

/// Leading-order small-cavity spectrum: `Omega_0 = wbar (1 - pi delta / 3)`,
/// `Omega_k = (g/delta)(k + 2 delta/(pi k))`.
pub fn approx_small_cavity_spectrum(
    params: &DressedAtomParams,
    cfg: &SolverConfig,
) -> Result<ModeSpectrum> {
    check_small_cavity(params, cfg.delta_threshold)?;
    let delta = params.delta();
    let g = params.g();
    let dw = params.delta_omega();
    let omega0 = params.omega_bar() * (1.0 - PI * delta / 3.0);
    if omega0 >= dw {
        return Err(Error::RegimeViolation(format!(
            "approximate Omega_0 = {omega0} does not lie below the first field frequency {dw}"
        )));
    }
    let mut offsets = vec![omega0];
    offsets.extend((1..=params.n_modes()).map(|k| 2.0 * g / (PI * k as f64)));
    let bigomegas = offsets
        .iter()
        .enumerate()
        .map(|(k, s)| k as f64 * dw + s)
        .collect();
    Ok(ModeSpectrum {
        params: *params,
        omegas: field_frequencies(params),
        bigomegas,
        offsets,
        method: SpectrumMethod::SmallCavityApprox,
    })
}

pub(crate) fn check_small_cavity(params: &DressedAtomParams, threshold: f64) -> Result<()> {
    if params.delta() >= threshold {
        Err(Error::RegimeViolation(format!(
            "small-cavity formulas need delta < {threshold}, got {}",
            params.delta()
        )))
    } else {
        Ok(())
    }
}

impl ModeSpectrum {
    /// Wraps externally computed normal frequencies (e.g. from the oracle).
    pub fn from_frequencies(
        params: &DressedAtomParams,
        bigomegas: Vec<f64>,
        method: SpectrumMethod,
    ) -> Result<Self> {
        if bigomegas.len() != params.n_modes() + 1 {
            return Err(Error::InvalidParameter {
                name: "bigomegas",
                value: bigomegas.len() as f64,
                reason: "expected N + 1 normal frequencies",
            });
        }
        let dw = params.delta_omega();
        let offsets = bigomegas
            .iter()
            .enumerate()
            .map(|(r, w)| w - r as f64 * dw)
            .collect();
        let s = Self {
            params: *params,
            omegas: field_frequencies(params),
            bigomegas,
            offsets,
            method,
        };
        s.check_interlacing()?;
        Ok(s)
    }

    pub fn params(&self) -> &DressedAtomParams {
        &self.params
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn bigomegas(&self) -> &[f64] {
        &self.bigomegas
    }

    /// Distance of each normal frequency above its lower asymptote.
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn method(&self) -> SpectrumMethod {
        self.method
    }

    /// Number of normal modes, `N + 1`.
    pub fn len(&self) -> usize {
        self.bigomegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bigomegas.is_empty()
    }

    /// `omega_k - Omega_r` for field mode `k` (1-based), computed from the
    /// stored offset without cancellation.
    pub fn gap(&self, k: usize, r: usize) -> f64 {
        (k as f64 - r as f64) * self.params.delta_omega() - self.offsets[r]
    }

    /// Relative residual of root `r` in the secular condition it was solved
    /// from (closed form for approximate spectra, truncated for the oracle).
    pub fn residual(&self, r: usize) -> f64 {
        let form = match self.method {
            SpectrumMethod::ExactRoots(form) => form,
            SpectrumMethod::SmallCavityApprox => SecularForm::ClosedForm,
            SpectrumMethod::Oracle => SecularForm::Truncated,
        };
        let (h, scale) = secular(&self.params, form, r, self.offsets[r]);
        h.abs() / scale
    }

    /// Checks that the roots are positive, increasing, and interlace with
    /// the field frequencies.
    pub fn check_interlacing(&self) -> Result<()> {
        let last_bounded = matches!(
            self.method,
            SpectrumMethod::ExactRoots(SecularForm::ClosedForm) | SpectrumMethod::SmallCavityApprox
        );
        let dw = self.params.delta_omega();
        for (r, &w) in self.bigomegas.iter().enumerate() {
            let lo = r as f64 * dw;
            let hi = (r + 1) as f64 * dw;
            let upper_ok = w < hi || (r == self.omegas.len() && !last_bounded);
            if !(w > lo && upper_ok) {
                return Err(Error::InvariantViolation(format!(
                    "normal frequency {r} = {w} outside its asymptote interval ({lo}, {hi})"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_params(n: usize) -> DressedAtomParams {
        DressedAtomParams::from_delta(1.0, 0.5, 0.1, 1.0, n).unwrap()
    }

    #[test]
    fn field_frequencies_examples() {
        let p = DressedAtomParams::new(1.0, 0.5, PI, 1.0, 3).unwrap();
        let w = field_frequencies(&p);
        for (a, b) in w.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-15);
        }
        let p = DressedAtomParams::new(1.0, 0.5, 1.0, 1.0, 2).unwrap();
        assert_eq!(field_frequencies(&p), vec![PI, 2.0 * PI]);
        // omega_1 = g / delta
        let w = field_frequencies(&fig_params(1));
        assert!((w[0] - 5.0).abs() < 1e-14);
    }

    #[test]
    fn closed_form_roots_near_small_cavity_values() {
        let s = solve_eigenfrequencies(
            &fig_params(10),
            SecularForm::ClosedForm,
            &SolverConfig::default(),
        )
        .unwrap();
        let w = s.bigomegas();
        // leading-order values 0.895280 and 5.318310; corrections are O(delta^2)
        assert!((w[0] - 0.895_280).abs() / 0.895_280 < 0.02);
        assert!((w[1] - 5.318_310).abs() / 5.318_310 < 0.01);
        for r in 0..s.len() {
            assert!(s.residual(r) < 1e-10, "root {r}: {}", s.residual(r));
        }
        s.check_interlacing().unwrap();
    }

    #[test]
    fn truncated_roots_converge_to_closed_form() {
        let cfg = SolverConfig::default();
        let closed = solve_eigenfrequencies(&fig_params(4), SecularForm::ClosedForm, &cfg).unwrap();
        let trunc =
            solve_eigenfrequencies(&fig_params(2000), SecularForm::Truncated, &cfg).unwrap();
        for r in 0..3 {
            let rel = (trunc.bigomegas()[r] - closed.bigomegas()[r]).abs() / closed.bigomegas()[r];
            assert!(rel < 1e-4, "root {r}: {rel:e}");
        }
    }

    #[test]
    fn last_truncated_root_is_above_last_field_frequency() {
        let p = fig_params(5);
        let s =
            solve_eigenfrequencies(&p, SecularForm::Truncated, &SolverConfig::default()).unwrap();
        assert!(s.bigomegas()[5] > s.omegas()[4]);
        assert!(s.residual(5) < 1e-10);
    }

    #[test]
    fn small_cavity_examples() {
        let s = approx_small_cavity_spectrum(&fig_params(3), &SolverConfig::default()).unwrap();
        assert!((s.bigomegas()[0] - 0.895_280_244_880_340_2).abs() < 1e-12);
        assert!((s.bigomegas()[2] - 10.159_154_943_091_895).abs() < 1e-10);
        assert_eq!(s.method(), SpectrumMethod::SmallCavityApprox);

        // decoupling limit
        let p = DressedAtomParams::from_delta(1.0, 0.5, 1e-8, 1.0, 1).unwrap();
        let s = approx_small_cavity_spectrum(&p, &SolverConfig::default()).unwrap();
        assert!((s.bigomegas()[0] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn small_cavity_rejects_large_delta() {
        let p = DressedAtomParams::from_delta(1.0, 0.5, 0.3, 1.0, 3).unwrap();
        assert!(matches!(
            approx_small_cavity_spectrum(&p, &SolverConfig::default()),
            Err(Error::RegimeViolation(_))
        ));
    }

    #[test]
    fn interlacing_check_flags_misplaced_root() {
        let p = fig_params(2);
        let bad = ModeSpectrum::from_frequencies(&p, vec![0.9, 4.0, 11.0], SpectrumMethod::Oracle);
        assert!(matches!(bad, Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn exhausted_bracket_reports_interval() {
        let cfg = SolverConfig {
            max_iter: 2,
            ..SolverConfig::default()
        };
        match solve_eigenfrequencies(&fig_params(3), SecularForm::ClosedForm, &cfg) {
            Err(Error::ConvergenceFailure { interval, .. }) => assert_eq!(interval, 0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
