//! Physical parameters of one atom coupled to the modes of a reflecting
//! spherical cavity.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Parameters of one atom–field system.
///
/// The primary inputs are the renormalized atom frequency `omega_bar`, the
/// coupling `g`, the cavity radius `radius`, the wave speed `c` and the
/// number of retained field modes `n_modes`. The mode spacing, the coupling
/// amplitude `eta`, the small-cavity parameter `delta` and `kappa_sq` are
/// derived once on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedAtomParams {
    omega_bar: f64,
    g: f64,
    radius: f64,
    c: f64,
    n_modes: usize,
    delta_omega: f64,
    eta: f64,
    delta: f64,
    kappa_sq: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

impl DressedAtomParams {
    pub fn new(omega_bar: f64, g: f64, radius: f64, c: f64, n_modes: usize) -> Result<Self> {
        let omega_bar = positive("omega_bar", omega_bar)?;
        let g = positive("g", g)?;
        let radius = positive("radius", radius)?;
        let c = positive("c", c)?;
        if n_modes == 0 {
            return Err(Error::InvalidParameter {
                name: "n_modes",
                value: 0.0,
                reason: "at least one field mode is required",
            });
        }
        let delta_omega = PI * c / radius;
        let eta = (4.0 * g * delta_omega / PI).sqrt();
        let delta = g * radius / (PI * c);
        Ok(Self {
            omega_bar,
            g,
            radius,
            c,
            n_modes,
            delta_omega,
            eta,
            delta,
            kappa_sq: omega_bar * omega_bar - g * g,
        })
    }

    /// Builds the parameters from the small-cavity ratio `delta = g R / (pi c)`.
    pub fn from_delta(omega_bar: f64, g: f64, delta: f64, c: f64, n_modes: usize) -> Result<Self> {
        let delta = positive("delta", delta)?;
        let g = positive("g", g)?;
        let c = positive("c", c)?;
        Self::new(omega_bar, g, delta * PI * c / g, c, n_modes)
    }

    /// Same physical system with a different number of retained modes.
    pub fn with_n_modes(&self, n_modes: usize) -> Result<Self> {
        Self::new(self.omega_bar, self.g, self.radius, self.c, n_modes)
    }

    pub fn omega_bar(&self) -> f64 {
        self.omega_bar
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Spacing between neighbouring field frequencies, `pi c / R`.
    pub fn delta_omega(&self) -> f64 {
        self.delta_omega
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn eta_sq(&self) -> f64 {
        4.0 * self.g * self.delta_omega / PI
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn kappa_sq(&self) -> f64 {
        self.kappa_sq
    }

    /// Bare field frequency of mode `k` (1-based); `k = 0` is the origin.
    pub fn field_frequency(&self, k: usize) -> f64 {
        k as f64 * self.delta_omega
    }
}
