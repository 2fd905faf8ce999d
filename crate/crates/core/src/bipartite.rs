//! Two non-interacting dressed atoms prepared in a one-excitation
//! superposition: reduced two-atom density matrix, degree of impurity and
//! single-atom von Neumann entropy.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance on the trace and on negative populations.
pub const TRACE_TOL: f64 = 1e-9;
/// Eigenvalues below this are dropped from the entropy sum.
pub const ENTROPY_CUTOFF: f64 = 1e-12;
/// Allowed deviation of `sum |f_A nu|^2` from one.
pub const ROW_NORM_TOL: f64 = 1e-6;

/// `sqrt(xi) e^{i phi} |1_A 0_B> + sqrt(1-xi) |0_A 1_B>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionSpec {
    xi: f64,
    phi: f64,
}

impl SuperpositionSpec {
    /// `xi` must lie in `(0, 1)`; `phi` is reduced to `[0, 2 pi)`.
    pub fn new(xi: f64, phi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi < 1.0) {
            return Err(Error::InvalidParameter {
                name: "xi",
                value: xi,
                reason: "superposition weight must lie in (0, 1)",
            });
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: phi,
                reason: "phase must be finite",
            });
        }
        Ok(Self {
            xi,
            phi: phi.rem_euclid(2.0 * PI),
        })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Reduced density matrix of the two bare atoms in the basis
/// `|0_A 0_B>, |0_A 1_B>, |1_A 0_B>, |1_A 1_B>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedAtomPairMatrix {
    pub time: f64,
    pub rho_00_00: f64,
    pub rho_01_01: f64,
    pub rho_10_10: f64,
    /// Always zero: a single excitation cannot occupy both atoms.
    pub rho_11_11: f64,
    /// `<1_A 0_B| rho |0_A 1_B>`.
    pub coh_10_01: C64,
    /// `<0_A 1_B| rho |1_A 0_B>`.
    pub coh_01_10: C64,
}

impl ReducedAtomPairMatrix {
    pub fn trace(&self) -> f64 {
        self.rho_00_00 + self.rho_01_01 + self.rho_10_10 + self.rho_11_11
    }

    /// Dense 4x4 form.
    pub fn to_dense(&self) -> Array2<C64> {
        let mut m = Array2::<C64>::zeros((4, 4));
        m[[0, 0]] = self.rho_00_00.into();
        m[[1, 1]] = self.rho_01_01.into();
        m[[2, 2]] = self.rho_10_10.into();
        m[[3, 3]] = self.rho_11_11.into();
        m[[2, 1]] = self.coh_10_01;
        m[[1, 2]] = self.coh_01_10;
        m
    }

    /// Eigenvalues, ascending: the two populations outside the coherence
    /// block and the closed-form eigenvalues of the 2x2 block.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let a = self.rho_01_01;
        let d = self.rho_10_10;
        let mean = 0.5 * (a + d);
        let split = (0.25 * (a - d).powi(2) + self.coh_10_01.norm_sqr()).sqrt();
        let mut ev = [self.rho_00_00, self.rho_11_11, mean - split, mean + split];
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Trace, Hermiticity, population range and positivity.
    pub fn check(&self) -> Result<()> {
        if (self.trace() - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvariantViolation(format!(
                "t={}: trace {} differs from 1",
                self.time,
                self.trace()
            )));
        }
        if (self.coh_10_01 - self.coh_01_10.conj()).norm() > TRACE_TOL {
            return Err(Error::InvariantViolation(format!(
                "t={}: coherences are not conjugate",
                self.time
            )));
        }
        for p in [
            self.rho_00_00,
            self.rho_01_01,
            self.rho_10_10,
            self.rho_11_11,
        ] {
            if !(-TRACE_TOL..=1.0 + TRACE_TOL).contains(&p) {
                return Err(Error::InvariantViolation(format!(
                    "t={}: population {p} outside [0, 1]",
                    self.time
                )));
            }
        }
        let det = self.rho_01_01 * self.rho_10_10 - self.coh_10_01.norm_sqr();
        if det < -TRACE_TOL {
            return Err(Error::InvariantViolation(format!(
                "t={}: coherence block determinant {det:e} is negative",
                self.time
            )));
        }
        Ok(())
    }

    /// `Tr rho^2` from the entries.
    pub fn purity(&self) -> f64 {
        self.rho_00_00.powi(2)
            + self.rho_01_01.powi(2)
            + self.rho_10_10.powi(2)
            + self.rho_11_11.powi(2)
            + self.coh_10_01.norm_sqr()
            + self.coh_01_10.norm_sqr()
    }
}

/// Builds the reduced two-atom matrix from the atomic survival amplitudes of
/// atoms A and B.
pub fn reduced_pair_matrix(
    f_aa: C64,
    f_bb: C64,
    spec: SuperpositionSpec,
    t: f64,
) -> Result<ReducedAtomPairMatrix> {
    for (name, f) in [("f_AA", f_aa), ("f_BB", f_bb)] {
        if !(f.norm() <= 1.0 + TRACE_TOL) {
            return Err(Error::DomainError(format!(
                "|{name}| = {} exceeds 1",
                f.norm()
            )));
        }
    }
    let xi = spec.xi();
    let rho_10_10 = xi * f_aa.norm_sqr();
    let rho_01_01 = (1.0 - xi) * f_bb.norm_sqr();
    let rho_00_00 = 1.0 - rho_10_10 - rho_01_01;
    if rho_00_00 < -TRACE_TOL {
        return Err(Error::DomainError(format!(
            "ground population {rho_00_00:e} is negative"
        )));
    }
    let coh = (xi * (1.0 - xi)).sqrt() * C64::from_polar(1.0, spec.phi()) * f_aa.conj() * f_bb;
    Ok(ReducedAtomPairMatrix {
        time: t,
        rho_00_00,
        rho_01_01,
        rho_10_10,
        rho_11_11: 0.0,
        coh_10_01: coh,
        coh_01_10: coh.conj(),
    })
}

/// `D = 2u - 2u^2` with `u = xi |f_AA|^2 + (1-xi) |f_BB|^2`.
pub fn impurity_closed_form(m: &ReducedAtomPairMatrix) -> f64 {
    let u = m.rho_10_10 + m.rho_01_01;
    2.0 * u - 2.0 * u * u
}

/// Degree of impurity `1 - Tr rho^2`, cross-checked against the closed form.
pub fn impurity(m: &ReducedAtomPairMatrix) -> Result<f64> {
    let d = 1.0 - m.purity();
    let closed = impurity_closed_form(m);
    if (d - closed).abs() > TRACE_TOL {
        return Err(Error::InvariantViolation(format!(
            "t={}: impurity {d} disagrees with closed form {closed}",
            m.time
        )));
    }
    Ok(d)
}

/// Identical atoms: `D = 2 |f00|^2 (1 - |f00|^2)` whatever the superposition.
pub fn impurity_identical(f00: C64, _spec: SuperpositionSpec) -> f64 {
    let p = f00.norm_sqr();
    2.0 * p * (1.0 - p)
}

/// State of atom A with atom B traced out, in the basis
/// `{vacuum, 1_nu}` with `nu = atom, field modes`:
/// `(1-xi) |0><0| + xi v v^dagger`, `v_nu = f_{A nu}(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleAtomReducedMatrix {
    pub time: f64,
    pub xi: f64,
    pub row: Vec<C64>,
}

/// Builds the single-atom reduced state from the amplitude row of atom A.
pub fn single_atom_reduced(
    row: &[C64],
    spec: SuperpositionSpec,
    t: f64,
) -> Result<SingleAtomReducedMatrix> {
    let norm: f64 = row.iter().map(|f| f.norm_sqr()).sum();
    if (norm - 1.0).abs() > ROW_NORM_TOL {
        return Err(Error::InvariantViolation(format!(
            "t={t}: amplitude row norm {norm} differs from 1"
        )));
    }
    Ok(SingleAtomReducedMatrix {
        time: t,
        xi: spec.xi(),
        row: row.to_vec(),
    })
}

impl SingleAtomReducedMatrix {
    pub fn row_norm_sq(&self) -> f64 {
        self.row.iter().map(|f| f.norm_sqr()).sum()
    }

    /// The two nonzero eigenvalues, ascending.
    ///
    /// `rho = a a^dagger + b b^dagger` with `a = sqrt(1-xi) e_0` and
    /// `b = sqrt(xi) (0, v)`, so its nonzero spectrum is that of the Gram
    /// matrix `[[a.a, a.b], [b.a, b.b]]`.
    pub fn nonzero_eigenvalues(&self) -> [f64; 2] {
        // a.b vanishes: v has no vacuum component
        let aa = 1.0 - self.xi;
        let bb = self.xi * self.row_norm_sq();
        let ab = 0.0;
        let mean = 0.5 * (aa + bb);
        let split = (0.25 * (aa - bb).powi(2) + ab * ab).sqrt();
        [mean - split, mean + split]
    }

    /// Dense `(N+2) x (N+2)` matrix.
    pub fn to_dense(&self) -> Array2<C64> {
        let n = self.row.len() + 1;
        let mut m = Array2::<C64>::zeros((n, n));
        m[[0, 0]] = (1.0 - self.xi).into();
        for (i, fi) in self.row.iter().enumerate() {
            for (j, fj) in self.row.iter().enumerate() {
                m[[i + 1, j + 1]] = self.xi * fi * fj.conj();
            }
        }
        m
    }
}

/// `-sum alpha ln alpha` over the eigenvalues above [`ENTROPY_CUTOFF`].
pub fn entropy_of(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&a| a > ENTROPY_CUTOFF)
        .map(|&a| -a * a.ln())
        .sum()
}

/// Von Neumann entropy of atom A, in nats.
pub fn von_neumann_entropy(m: &SingleAtomReducedMatrix) -> f64 {
    entropy_of(&m.nonzero_eigenvalues())
}

/// `-(1-xi) ln(1-xi) - xi ln xi`, with `0 ln 0 = 0`.
pub fn binary_entropy(xi: f64) -> f64 {
    entropy_of(&[1.0 - xi, xi])
}
