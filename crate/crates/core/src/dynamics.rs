//! Probability amplitudes `f_{mu nu}(t)` for the single-excitation dressed
//! states.
//!
//! Three routes are provided:
//!
//! * the exact finite sum over normal modes, `sum_s t_mu^s t_nu^s e^{-i W_s t}`;
//! * the free-space (`R -> infinity`) closed form for `f_00`, whose imaginary
//!   part is the Fourier sine integral computed by [`g_integral`];
//! * the small-cavity series built from the leading-order spectrum and
//!   matrix elements.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::coupling::{approx_small_cavity_elements, ModeIndex, TransformMatrix};
use crate::error::{Error, Result};
use crate::params::DressedAtomParams;
use crate::quadrature::{integrate, sine_tail, QuadratureConfig};
use crate::spectrum::check_small_cavity;

/// How an [`AmplitudeTrace`] was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmplitudeMethod {
    DiscreteSum,
    FreeSpaceClosedForm,
    SmallCavitySeries,
}

impl AmplitudeMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            AmplitudeMethod::DiscreteSum => "discrete-sum",
            AmplitudeMethod::FreeSpaceClosedForm => "free-space-closed-form",
            AmplitudeMethod::SmallCavitySeries => "small-cavity-series",
        }
    }
}

/// Time series of one amplitude `f_{mu nu}(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeTrace {
    pub times: Vec<f64>,
    pub values: Vec<C64>,
    pub mu: ModeIndex,
    pub nu: ModeIndex,
    pub method: AmplitudeMethod,
}

impl AmplitudeTrace {
    /// Checks `|f| <= 1 + 1e-9` everywhere and, for the discrete sum,
    /// `f(0) = delta_{mu nu}` within 1e-9.
    pub fn check(&self) -> Result<()> {
        for (t, f) in self.times.iter().zip(&self.values) {
            if f.norm() > 1.0 + 1e-9 {
                return Err(Error::InvariantViolation(format!(
                    "|f_{}{}({t})| = {} exceeds 1",
                    self.mu,
                    self.nu,
                    f.norm()
                )));
            }
            if *t == 0.0 && self.method == AmplitudeMethod::DiscreteSum {
                let target = if self.mu == self.nu { 1.0 } else { 0.0 };
                if (f - target).norm() > 1e-9 {
                    return Err(Error::InvariantViolation(format!(
                        "f_{}{}(0) = {f} differs from {target}",
                        self.mu, self.nu
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn abs2(&self) -> Vec<f64> {
        self.values.iter().map(|f| f.norm_sqr()).collect()
    }
}

/// `f_{mu nu}(t) = sum_s t_mu^s t_nu^s e^{-i W_s t}`.
pub fn amplitude_discrete(tm: &TransformMatrix, mu: ModeIndex, nu: ModeIndex, t: f64) -> C64 {
    let m = tm.matrix();
    let (i, j) = (mu.row(), nu.row());
    tm.spectrum()
        .bigomegas()
        .iter()
        .enumerate()
        .map(|(s, &w)| m[[i, s]] * m[[j, s]] * C64::from_polar(1.0, -w * t))
        .sum()
}

/// The whole row `f_{mu nu}(t)` over every `nu`.
pub fn amplitude_row(tm: &TransformMatrix, mu: ModeIndex, t: f64) -> Vec<C64> {
    let m = tm.matrix();
    let i = mu.row();
    let weights: Vec<C64> = tm
        .spectrum()
        .bigomegas()
        .iter()
        .enumerate()
        .map(|(s, &w)| m[[i, s]] * C64::from_polar(1.0, -w * t))
        .collect();
    m.rows()
        .into_iter()
        .map(|row| row.iter().zip(&weights).map(|(a, w)| w * *a).sum())
        .collect()
}

/// `sum_nu |f_{mu nu}(t)|^2`.
pub fn row_norm_sq(tm: &TransformMatrix, mu: ModeIndex, t: f64) -> f64 {
    amplitude_row(tm, mu, t).iter().map(|f| f.norm_sqr()).sum()
}

pub fn discrete_trace(
    tm: &TransformMatrix,
    mu: ModeIndex,
    nu: ModeIndex,
    times: &[f64],
) -> AmplitudeTrace {
    AmplitudeTrace {
        times: times.to_vec(),
        values: times
            .iter()
            .map(|&t| amplitude_discrete(tm, mu, nu, t))
            .collect(),
        mu,
        nu,
        method: AmplitudeMethod::DiscreteSum,
    }
}

/// Parameters of the free-space closed form; requires `kappa^2 = wbar^2 - g^2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeSpaceParams {
    omega_bar: f64,
    g: f64,
    kappa: f64,
}

impl FreeSpaceParams {
    pub fn new(omega_bar: f64, g: f64) -> Result<Self> {
        for (name, v) in [("omega_bar", omega_bar), ("g", g)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be finite and > 0",
                });
            }
        }
        let kappa_sq = omega_bar * omega_bar - g * g;
        if kappa_sq <= 0.0 {
            return Err(Error::RegimeViolation(format!(
                "free-space closed form needs wbar > g (kappa^2 = {kappa_sq})"
            )));
        }
        Ok(Self {
            omega_bar,
            g,
            kappa: kappa_sq.sqrt(),
        })
    }

    pub fn omega_bar(&self) -> f64 {
        self.omega_bar
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

impl TryFrom<&DressedAtomParams> for FreeSpaceParams {
    type Error = Error;

    fn try_from(p: &DressedAtomParams) -> Result<Self> {
        Self::new(p.omega_bar(), p.g())
    }
}

/// `G(t) = -(4g/pi) int_0^inf x^2 sin(xt) / ((x^2 - wbar^2)^2 + 4 g^2 x^2) dx`.
///
/// The range is split at the resonance `wbar` and at the first zero of
/// `sin(xt)` beyond `wbar + 10 g`; the two head pieces are integrated
/// adaptively and the oscillatory tail half-period by half-period with
/// alternating-series acceleration.
pub fn g_integral(t: f64, omega_bar: f64, g: f64, quad: &QuadratureConfig) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "time must be finite and >= 0",
        });
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let prefactor = 4.0 * g / PI;
    let wb2 = omega_bar * omega_bar;
    let spectral = move |x: f64| {
        let x2 = x * x;
        x2 / ((x2 - wb2).powi(2) + 4.0 * g * g * x2)
    };
    let integrand = |x: f64| spectral(x) * (x * t).sin();

    let tol = quad.abs_tol / prefactor;
    let head_cfg = QuadratureConfig {
        abs_tol: 0.25 * tol,
        ..*quad
    };
    let split = omega_bar + 10.0 * g;
    let x0 = (split * t / PI).ceil().max(1.0) * PI / t;
    let near = integrate(integrand, 0.0, omega_bar, &head_cfg)?;
    let far = integrate(integrand, omega_bar, x0, &head_cfg)?;
    let tail_cfg = QuadratureConfig {
        abs_tol: 0.5 * tol,
        ..*quad
    };
    let tail = sine_tail(spectral, x0, t, &tail_cfg)?;
    Ok(-prefactor * (near.value + far.value + tail.value))
}

/// Free-space amplitude
/// `f_00(t) = e^{-gt} [cos(kappa t) - (g/kappa) sin(kappa t)] + i G(t)`.
pub fn amplitude_free_space(p: &FreeSpaceParams, t: f64, quad: &QuadratureConfig) -> Result<C64> {
    let (g, k) = (p.g, p.kappa);
    let re = (-g * t).exp() * ((k * t).cos() - g / k * (k * t).sin());
    Ok(C64::new(re, g_integral(t, p.omega_bar, g, quad)?))
}

pub fn free_space_trace(
    p: &FreeSpaceParams,
    times: &[f64],
    quad: &QuadratureConfig,
) -> Result<AmplitudeTrace> {
    let values = times
        .iter()
        .map(|&t| amplitude_free_space(p, t, quad))
        .collect::<Result<Vec<_>>>()?;
    Ok(AmplitudeTrace {
        times: times.to_vec(),
        values,
        mu: ModeIndex::Atom,
        nu: ModeIndex::Atom,
        method: AmplitudeMethod::FreeSpaceClosedForm,
    })
}

/// Large-time form of the free-space `|f_00|^2`:
/// `e^{-2gt} [cos(wbar t) - (g/wbar) sin(wbar t)]^2 + 64 g^2 / (wbar^8 t^6)`.
pub fn f00_sq_large_time(t: f64, omega_bar: f64, g: f64) -> f64 {
    let osc = (omega_bar * t).cos() - g / omega_bar * (omega_bar * t).sin();
    (-2.0 * g * t).exp() * osc * osc + 64.0 * g * g / (omega_bar.powi(8) * t.powi(6))
}

/// A truncated series value with a bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// Small-cavity `|f_00(t)|^2` from the leading-order spectrum and elements:
///
/// `(1 + 2 pi delta/3)^-2 { 1 + (8 delta/pi) sum_k cos[(W_0 - W_k) t]/k^2
///  + (16 delta^2/pi^2) sum_{k,l} cos[(W_k - W_l) t]/(k^2 l^2) }`
///
/// truncated at `k_max`. The double sum equals `|sum_k e^{i W_k t}/k^2|^2` and
/// is evaluated that way.
pub fn f00_sq_small_cavity(
    t: f64,
    params: &DressedAtomParams,
    k_max: usize,
    delta_threshold: f64,
) -> Result<SeriesValue> {
    check_small_cavity(params, delta_threshold)?;
    if k_max == 0 {
        return Err(Error::InvalidParameter {
            name: "k_max",
            value: 0.0,
            reason: "at least one term is required",
        });
    }
    let delta = params.delta();
    let g = params.g();
    let norm = (1.0 + 2.0 * PI * delta / 3.0).powi(-2);
    let omega0 = params.omega_bar() * (1.0 - PI * delta / 3.0);

    let mut single = 0.0;
    let mut phasor = C64::new(0.0, 0.0);
    for k in 1..=k_max {
        let kf = k as f64;
        let weight = 1.0 / (kf * kf);
        let omega_k = g / delta * (kf + 2.0 * delta / (PI * kf));
        single += weight * ((omega0 - omega_k) * t).cos();
        phasor += weight * C64::from_polar(1.0, omega_k * t);
    }
    let double = phasor.norm_sqr();
    let value =
        norm * (1.0 + 8.0 * delta / PI * single + 16.0 * delta * delta / (PI * PI) * double);

    let tail = 1.0 / k_max as f64;
    let zeta2 = PI * PI / 6.0;
    let tail_bound = norm
        * (8.0 * delta / PI * tail
            + 16.0 * delta * delta / (PI * PI) * tail * (2.0 * zeta2 + tail));
    Ok(SeriesValue { value, tail_bound })
}

/// Small-cavity amplitude `f_00(t) = sum_s (t_s^0)^2 e^{-i W_s t}` with the
/// leading-order spectrum and squared elements, truncated at `k_max`.
pub fn amplitude_small_cavity(
    t: f64,
    params: &DressedAtomParams,
    k_max: usize,
    delta_threshold: f64,
) -> Result<C64> {
    let weights = approx_small_cavity_elements(params, k_max, delta_threshold)?;
    let delta = params.delta();
    let g = params.g();
    let omega0 = params.omega_bar() * (1.0 - PI * delta / 3.0);
    Ok(weights
        .iter()
        .enumerate()
        .map(|(k, &w)| {
            let omega = if k == 0 {
                omega0
            } else {
                let kf = k as f64;
                g / delta * (kf + 2.0 * delta / (PI * kf))
            };
            w * C64::from_polar(1.0, -omega * t)
        })
        .sum())
}

pub fn small_cavity_trace(
    params: &DressedAtomParams,
    times: &[f64],
    k_max: usize,
    delta_threshold: f64,
) -> Result<AmplitudeTrace> {
    let values = times
        .iter()
        .map(|&t| amplitude_small_cavity(t, params, k_max, delta_threshold))
        .collect::<Result<Vec<_>>>()?;
    Ok(AmplitudeTrace {
        times: times.to_vec(),
        values,
        mu: ModeIndex::Atom,
        nu: ModeIndex::Atom,
        method: AmplitudeMethod::SmallCavitySeries,
    })
}

/// Lower bound on the small-cavity `|f_00|^2`, obtained by setting both
/// cosines of the series to -1:
/// `(1 + 2 pi delta/3)^-2 (1 - 4 pi delta/3 - 4 pi^2 delta^2/9)`.
pub fn f00_sq_lower_bound(delta: f64) -> f64 {
    (1.0 + 2.0 * PI * delta / 3.0).powi(-2)
        * (1.0 - 4.0 * PI * delta / 3.0 - 4.0 * PI * PI * delta * delta / 9.0)
}
