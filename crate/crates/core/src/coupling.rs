//! The orthogonal matrix `t_mu^r` taking the bare coordinates (atom and field
//! modes) to the normal modes.
//!
//! Rows are indexed by [`ModeIndex`] (row 0 is the atom, row `k` is field mode
//! `k`), columns by the normal mode `r = 0..=N`.

use std::f64::consts::PI;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::params::DressedAtomParams;
use crate::spectrum::{check_small_cavity, ModeSpectrum, SecularForm, SpectrumMethod};

/// Column-norm deviation above which [`build_matrix`] rejects a spectrum.
pub const NORMALIZATION_TOL: f64 = 1e-6;

/// Label of a bare (row) coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeIndex {
    Atom,
    /// Field mode `k`, 1-based.
    Field(usize),
}

impl ModeIndex {
    pub fn row(self) -> usize {
        match self {
            ModeIndex::Atom => 0,
            ModeIndex::Field(k) => k,
        }
    }

    pub fn from_row(row: usize) -> Self {
        if row == 0 {
            ModeIndex::Atom
        } else {
            ModeIndex::Field(row)
        }
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModeIndex::Atom => write!(f, "atom"),
            ModeIndex::Field(k) => write!(f, "{k}"),
        }
    }
}

impl std::str::FromStr for ModeIndex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "atom" | "0" => Ok(ModeIndex::Atom),
            other => other
                .parse::<usize>()
                .map(ModeIndex::Field)
                .map_err(|_| format!("expected `atom` or a field-mode number, got `{other}`")),
        }
    }
}

/// Atom component of normal mode `omega_r` in the renormalized (`N -> infinity`)
/// form:
///
/// `eta W / sqrt((W^2 - wbar^2)^2 + (eta^2/2)(3 W^2 - wbar^2) + 4 g^2 W^2)`.
pub fn atom_element(omega_r: f64, params: &DressedAtomParams) -> Result<f64> {
    if !(omega_r > 0.0) {
        return Err(Error::DomainError(format!(
            "normal frequency must be positive, got {omega_r}"
        )));
    }
    let w2 = omega_r * omega_r;
    let wb2 = params.omega_bar().powi(2);
    let eta2 = params.eta_sq();
    let radicand =
        (w2 - wb2).powi(2) + 0.5 * eta2 * (3.0 * w2 - wb2) + 4.0 * params.g().powi(2) * w2;
    if !(radicand > 0.0) {
        return Err(Error::DomainError(format!(
            "non-positive radicand {radicand:e} at Omega = {omega_r}"
        )));
    }
    Ok(params.eta() * omega_r / radicand.sqrt())
}

/// Atom component from the finite-`N` normalization
/// `[1 + sum_k eta^2 w_k^2 / (w_k^2 - W_r^2)^2]^(-1/2)`.
fn atom_element_truncated(spectrum: &ModeSpectrum, r: usize) -> f64 {
    let p = spectrum.params();
    let omega_r = spectrum.bigomegas()[r];
    let mut sum = 0.0;
    for (i, &wk) in spectrum.omegas().iter().enumerate() {
        let d = spectrum.gap(i + 1, r) * (wk + omega_r);
        sum += (wk / d).powi(2);
    }
    (1.0 + p.eta_sq() * sum).powf(-0.5)
}

/// Field component `t_k^r = eta w_k / (w_k^2 - W_r^2) t_atom^r`.
pub fn field_element(
    omega_k: f64,
    omega_r: f64,
    t_atom_r: f64,
    params: &DressedAtomParams,
) -> Result<f64> {
    let diff = omega_k * omega_k - omega_r * omega_r;
    if diff.abs() < 1e-12 * omega_k * omega_k {
        return Err(Error::DivisionHazard {
            omega_k,
            gap: diff.abs(),
        });
    }
    Ok(params.eta() * omega_k / diff * t_atom_r)
}

/// Dense transformation matrix together with its normalization diagnostics.
#[derive(Debug, Clone)]
pub struct TransformMatrix {
    spectrum: ModeSpectrum,
    t: Array2<f64>,
    tail_deficit: Vec<f64>,
    column_deficit: Vec<f64>,
}

/// Assembles `t_mu^r` for every bare coordinate and normal mode.
///
/// Spectra from the truncated condition (or the oracle) use the finite-`N`
/// normalization, which makes the matrix orthogonal to root accuracy; the
/// columns are then required to be normalized to [`NORMALIZATION_TOL`].
/// Closed-form and approximate spectra use the renormalized atom element;
/// their rows and columns miss the part of the norm carried by modes above
/// `N`, which is reported through [`TransformMatrix::tail_deficit`] and
/// [`TransformMatrix::column_deficit`].
pub fn build_matrix(spectrum: &ModeSpectrum) -> Result<TransformMatrix> {
    let p = spectrum.params();
    let n = p.n_modes();
    let eta = p.eta();
    let finite = matches!(
        spectrum.method(),
        SpectrumMethod::ExactRoots(SecularForm::Truncated) | SpectrumMethod::Oracle
    );

    let mut t = Array2::<f64>::zeros((n + 1, n + 1));
    for (r, &omega_r) in spectrum.bigomegas().iter().enumerate() {
        let t_atom = if finite {
            atom_element_truncated(spectrum, r)
        } else {
            atom_element(omega_r, p)?
        };
        t[[0, r]] = t_atom;
        for (i, &wk) in spectrum.omegas().iter().enumerate() {
            let diff = spectrum.gap(i + 1, r) * (wk + omega_r);
            if diff.abs() < 1e-12 * wk * wk {
                return Err(Error::DivisionHazard {
                    omega_k: wk,
                    gap: diff.abs(),
                });
            }
            t[[i + 1, r]] = eta * wk / diff * t_atom;
        }
    }

    let column_deficit: Vec<f64> = t
        .columns()
        .into_iter()
        .map(|col| 1.0 - col.iter().map(|x| x * x).sum::<f64>())
        .collect();
    if finite {
        if let Some((column, &dev)) = column_deficit
            .iter()
            .enumerate()
            .find(|(_, d)| d.abs() > NORMALIZATION_TOL)
        {
            return Err(Error::NormalizationFailure {
                column,
                deviation: dev,
            });
        }
    }
    let tail_deficit = t
        .rows()
        .into_iter()
        .map(|row| 1.0 - row.iter().map(|x| x * x).sum::<f64>())
        .collect();

    Ok(TransformMatrix {
        spectrum: spectrum.clone(),
        t,
        tail_deficit,
        column_deficit,
    })
}

/// Leading-order squared atom-row elements of the lowest normal mode:
/// `[(t_0^0)^2, (t_1^0)^2, ..., (t_kmax^0)^2]` with
/// `(t_0^0)^2 = (1 + 2 pi delta / 3)^-1` and `(t_k^0)^2 = (4/k^2)(delta/pi)(t_0^0)^2`.
pub fn approx_small_cavity_elements(
    params: &DressedAtomParams,
    k_max: usize,
    delta_threshold: f64,
) -> Result<Vec<f64>> {
    check_small_cavity(params, delta_threshold)?;
    let delta = params.delta();
    let t00 = 1.0 / (1.0 + 2.0 * PI * delta / 3.0);
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(t00);
    out.extend((1..=k_max).map(|k| 4.0 / (k * k) as f64 * delta / PI * t00));
    Ok(out)
}

impl TransformMatrix {
    pub fn spectrum(&self) -> &ModeSpectrum {
        &self.spectrum
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.t
    }

    pub fn get(&self, mu: ModeIndex, r: usize) -> f64 {
        self.t[[mu.row(), r]]
    }

    /// Number of rows (and columns), `N + 1`.
    pub fn dim(&self) -> usize {
        self.t.nrows()
    }

    /// `1 - sum_r (t_mu^r)^2` per row.
    pub fn tail_deficit(&self) -> &[f64] {
        &self.tail_deficit
    }

    /// `1 - sum_mu (t_mu^r)^2` per column.
    pub fn column_deficit(&self) -> &[f64] {
        &self.column_deficit
    }

    /// `max_{mu, nu} |sum_r t_mu^r t_nu^r - delta_{mu nu}|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let gram = self.t.dot(&self.t.t());
        let mut worst: f64 = 0.0;
        for ((i, j), &v) in gram.indexed_iter() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
        worst
    }

    /// `T diag(Omega^2) T^T`, the quadratic form in bare coordinates.
    pub fn quadratic_form(&self) -> Array2<f64> {
        let mut scaled = self.t.clone();
        for (mut col, &w) in scaled
            .columns_mut()
            .into_iter()
            .zip(self.spectrum.bigomegas())
        {
            col *= w * w;
        }
        scaled.dot(&self.t.t())
    }
}
