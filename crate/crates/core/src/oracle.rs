//! Brute-force reference: dense diagonalization of the finite quadratic
//! Hamiltonian, independent of the root-finding pipeline.
//!
//! At finite `N` the bare atom frequency is reconstructed as
//! `omega_bare^2 = wbar^2 + N eta^2`, so the matrix
//!
//! ```text
//! B[atom][atom] = wbar^2 + N eta^2
//! B[k][k]       = omega_k^2
//! B[atom][k]    = -eta omega_k
//! ```
//!
//! has eigenvalues `Omega_r^2` and eigenvectors `t_mu^r`.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::coupling::{build_matrix, ModeIndex};
use crate::dynamics::amplitude_discrete;
use crate::error::{Error, Result};
use crate::params::DressedAtomParams;
use crate::spectrum::{solve_eigenfrequencies, SecularForm, SolverConfig};

/// Sweep cap for [`jacobi_eigh`].
pub const MAX_SWEEPS: usize = 100;

/// Symmetric matrix of the quadratic potential in bare coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    matrix: Array2<f64>,
}

impl QuadraticForm {
    /// Wraps a square symmetric matrix.
    pub fn new(matrix: Array2<f64>) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || matrix.ncols() != n {
            return Err(Error::InvalidParameter {
                name: "matrix",
                value: n as f64,
                reason: "quadratic form must be square and non-empty",
            });
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[[i, j]] != matrix[[j, i]] {
                    return Err(Error::InvalidParameter {
                        name: "matrix",
                        value: (matrix[[i, j]] - matrix[[j, i]]).abs(),
                        reason: "quadratic form must be symmetric",
                    });
                }
            }
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.matrix.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Assembles the finite-`N` quadratic form of one atom and its field.
pub fn build_form(params: &DressedAtomParams) -> QuadraticForm {
    let n = params.n_modes();
    let eta = params.eta();
    let mut b = Array2::<f64>::zeros((n + 1, n + 1));
    b[[0, 0]] = params.omega_bar().powi(2) + n as f64 * params.eta_sq();
    for k in 1..=n {
        let wk = params.field_frequency(k);
        b[[k, k]] = wk * wk;
        b[[0, k]] = -eta * wk;
        b[[k, 0]] = -eta * wk;
    }
    QuadraticForm { matrix: b }
}

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending, eigenvectors
/// stored as columns.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Array2<f64>,
    pub sweeps: usize,
}

/// Cyclic Jacobi eigensolver.
///
/// An off-diagonal entry is annihilated unless it is already negligible
/// against its diagonal pair (`|a_pq| <= eps sqrt(|a_pp a_qq|)`); the
/// iteration stops after a sweep with no rotations. Each eigenvector is
/// signed so that its first non-negligible component is positive.
pub fn jacobi_eigh(a: &Array2<f64>, max_sweeps: usize) -> Result<SymmetricEigen> {
    let n = a.nrows();
    let mut m: Vec<f64> = a.iter().copied().collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let idx = |i: usize, j: usize| i * n + j;

    let mut sweeps = 0;
    let mut converged = n < 2;
    while !converged {
        if sweeps == max_sweeps {
            return Err(Error::ConvergenceFailure {
                interval: sweeps,
                reason: format!("Jacobi iteration did not converge in {max_sweeps} sweeps"),
            });
        }
        sweeps += 1;
        let mut rotations = 0;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[idx(p, q)];
                let app = m[idx(p, p)];
                let aqq = m[idx(q, q)];
                if apq == 0.0 {
                    continue;
                }
                if apq.abs() <= f64::EPSILON * (app * aqq).abs().sqrt() {
                    m[idx(p, q)] = 0.0;
                    m[idx(q, p)] = 0.0;
                    continue;
                }
                rotations += 1;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                m[idx(p, p)] = app - t * apq;
                m[idx(q, q)] = aqq + t * apq;
                m[idx(p, q)] = 0.0;
                m[idx(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let g = m[idx(r, p)];
                        let h = m[idx(r, q)];
                        let new_p = g - s * (h + g * tau);
                        let new_q = h + s * (g - h * tau);
                        m[idx(r, p)] = new_p;
                        m[idx(p, r)] = new_p;
                        m[idx(r, q)] = new_q;
                        m[idx(q, r)] = new_q;
                    }
                    let g = v[idx(r, p)];
                    let h = v[idx(r, q)];
                    v[idx(r, p)] = g - s * (h + g * tau);
                    v[idx(r, q)] = h + s * (g - h * tau);
                }
            }
        }
        converged = rotations == 0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[idx(i, i)].total_cmp(&m[idx(j, j)]));
    let values = order.iter().map(|&i| m[idx(i, i)]).collect();
    let mut vectors = Array2::<f64>::zeros((n, n));
    for (col, &src) in order.iter().enumerate() {
        let lead = (0..n)
            .map(|r| v[idx(r, src)])
            .find(|x| x.abs() > 1e-300)
            .unwrap_or(1.0);
        let sign = if lead < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors[[r, col]] = sign * v[idx(r, src)];
        }
    }
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Eigenvalues of a Hermitian matrix via the real symmetric embedding
/// `[[Re, -Im], [Im, Re]]`, whose spectrum is that of the input doubled.
pub fn hermitian_eigenvalues(h: &Array2<C64>) -> Result<Vec<f64>> {
    let n = h.nrows();
    let mut e = Array2::<f64>::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            let z = h[[i, j]];
            e[[i, j]] = z.re;
            e[[i + n, j + n]] = z.re;
            e[[i, j + n]] = -z.im;
            e[[i + n, j]] = z.im;
        }
    }
    let eig = jacobi_eigh(&e, MAX_SWEEPS)?;
    Ok(eig.values.iter().step_by(2).copied().collect())
}

/// Normal-mode decomposition of a [`QuadraticForm`].
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// `Omega_r^2`, ascending.
    pub eigenvalues: Vec<f64>,
    /// `Omega_r`.
    pub frequencies: Vec<f64>,
    /// `t_mu^r` with the atom component of every column positive.
    pub vectors: Array2<f64>,
}

/// Diagonalizes `form`; fails if any eigenvalue is non-positive (no stable
/// normal modes).
pub fn diagonalize(form: &QuadraticForm) -> Result<Decomposition> {
    let eig = jacobi_eigh(form.matrix(), MAX_SWEEPS)?;
    if let Some(&bad) = eig.values.iter().find(|&&l| l <= 0.0) {
        return Err(Error::DomainError(format!(
            "non-positive eigenvalue {bad:e}: no stationary configuration"
        )));
    }
    Ok(Decomposition {
        frequencies: eig.values.iter().map(|l| l.sqrt()).collect(),
        eigenvalues: eig.values,
        vectors: eig.vectors,
    })
}

/// `sum_s v_mu^s v_nu^s e^{-i Omega_s t}` from the oracle eigenpairs.
pub fn oracle_amplitude(decomp: &Decomposition, mu: ModeIndex, nu: ModeIndex, t: f64) -> C64 {
    let (i, j) = (mu.row(), nu.row());
    decomp
        .frequencies
        .iter()
        .enumerate()
        .map(|(s, &w)| {
            decomp.vectors[[i, s]] * decomp.vectors[[j, s]] * C64::from_polar(1.0, -w * t)
        })
        .sum()
}

impl Decomposition {
    /// `max_r ||B v_r - lambda_r v_r||`.
    pub fn max_residual(&self, form: &QuadraticForm) -> f64 {
        let bv = form.matrix().dot(&self.vectors);
        let mut worst: f64 = 0.0;
        for (r, &lambda) in self.eigenvalues.iter().enumerate() {
            let norm = bv
                .column(r)
                .iter()
                .zip(self.vectors.column(r))
                .map(|(a, v)| (a - lambda * v).powi(2))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(norm);
        }
        worst
    }

    /// `V diag(lambda) V^T`.
    pub fn reconstruct(&self) -> Array2<f64> {
        let mut scaled = self.vectors.clone();
        for (mut col, &l) in scaled.columns_mut().into_iter().zip(&self.eigenvalues) {
            col *= l;
        }
        scaled.dot(&self.vectors.t())
    }
}

/// Outcome of one oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

/// Sample times used by [`cross_check`] for amplitude comparisons.
pub const CHECK_TIMES: [f64; 8] = [0.0, 0.5, 1.0, 2.5, 5.0, 10.0, 25.0, 50.0];

/// Runs every comparison between the root-finding pipeline (truncated
/// secular condition) and the dense diagonalization at the given parameters.
pub fn cross_check(params: &DressedAtomParams, cfg: &SolverConfig) -> Result<Vec<CheckOutcome>> {
    let n = params.n_modes();
    let form = build_form(params);
    let decomp = diagonalize(&form)?;
    let spectrum = solve_eigenfrequencies(params, SecularForm::Truncated, cfg)?;
    let tm = build_matrix(&spectrum)?;
    let b_norm = form.norm();
    let label = |what: &str| format!("N={n} {what}");
    let mut out = Vec::new();

    let freq_dev = spectrum
        .bigomegas()
        .iter()
        .zip(&decomp.frequencies)
        .map(|(a, b)| (a - b).abs() / b)
        .fold(0.0, f64::max);
    out.push(CheckOutcome {
        name: label("frequencies (relative)"),
        deviation: freq_dev,
        tolerance: 1e-8,
    });

    let elem_dev = tm
        .matrix()
        .iter()
        .zip(decomp.vectors.iter())
        .map(|(a, b)| (a.abs() - b.abs()).abs())
        .fold(0.0, f64::max);
    out.push(CheckOutcome {
        name: label("|t_mu^r| (absolute)"),
        deviation: elem_dev,
        tolerance: 1e-8,
    });

    let mut amp_dev: f64 = 0.0;
    let mut unitarity_dev: f64 = 0.0;
    for &t in &CHECK_TIMES {
        let a = amplitude_discrete(&tm, ModeIndex::Atom, ModeIndex::Atom, t);
        let b = oracle_amplitude(&decomp, ModeIndex::Atom, ModeIndex::Atom, t);
        amp_dev = amp_dev.max((a - b).norm());
        let norm: f64 = (0..=n)
            .map(|nu| {
                oracle_amplitude(&decomp, ModeIndex::Atom, ModeIndex::from_row(nu), t).norm_sqr()
            })
            .sum();
        unitarity_dev = unitarity_dev.max((norm - 1.0).abs());
    }
    out.push(CheckOutcome {
        name: label("f_00(t) (absolute)"),
        deviation: amp_dev,
        tolerance: 1e-8,
    });
    out.push(CheckOutcome {
        name: label("oracle unitarity"),
        deviation: unitarity_dev,
        tolerance: 1e-10,
    });

    out.push(CheckOutcome {
        name: label("eigenpair residual / ||B||"),
        deviation: decomp.max_residual(&form) / b_norm,
        tolerance: 1e-10,
    });

    let rebuilt = decomp.reconstruct();
    let oracle_rebuild = (&rebuilt - form.matrix())
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    out.push(CheckOutcome {
        name: label("oracle reconstruction / ||B||"),
        deviation: oracle_rebuild / b_norm,
        tolerance: 1e-8,
    });

    let analytic_rebuild = (&tm.quadratic_form() - form.matrix())
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let omega_n = params.field_frequency(n);
    out.push(CheckOutcome {
        name: label("analytic reconstruction / omega_N^2"),
        deviation: analytic_rebuild / (omega_n * omega_n),
        tolerance: 1e-6,
    });

    // v_k / v_atom = eta omega_k / (omega_k^2 - Omega_r^2)
    let mut ratio_dev: f64 = 0.0;
    for r in 0..=n {
        let atom = decomp.vectors[[0, r]];
        for k in 1..=n {
            let expected = params.eta() * params.field_frequency(k)
                / (spectrum.gap(k, r) * (params.field_frequency(k) + spectrum.bigomegas()[r]));
            let got = decomp.vectors[[k, r]] / atom;
            ratio_dev = ratio_dev.max((got - expected).abs() / expected.abs().max(1.0));
        }
    }
    out.push(CheckOutcome {
        name: label("eigenvector ratio v_k/v_atom"),
        deviation: ratio_dev,
        tolerance: 1e-8,
    });

    let interlaced = decomp.frequencies.iter().enumerate().all(|(r, &w)| {
        w > params.field_frequency(r) && (r == n || w < params.field_frequency(r + 1))
    });
    out.push(CheckOutcome {
        name: label("oracle interlacing"),
        deviation: if interlaced { 0.0 } else { 1.0 },
        tolerance: 0.0,
    });

    Ok(out)
}
