//! Adaptive Gauss–Kronrod quadrature and a half-period summation for
//! semi-infinite Fourier sine integrals.

use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Tolerances and budgets for the quadrature routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of intervals kept by the adaptive bisection.
    pub max_subdivisions: usize,
    /// Maximum number of half-periods summed in an oscillatory tail.
    pub max_half_periods: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-8,
            rel_tol: 0.0,
            max_subdivisions: 2000,
            max_half_periods: 10_000,
        }
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

// 15-point Kronrod abscissae; the odd entries are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One 15-point Kronrod / 7-point Gauss pair on `[a, b]`.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Estimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Estimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

struct Piece {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Globally adaptive integration of `f` over `[a, b]`: the interval with the
/// largest error estimate is bisected until the summed error meets
/// `max(abs_tol, rel_tol |I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let first = gauss_kronrod_15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, est: first });
    let mut value = first.value;
    let mut error = first.error;
    loop {
        if !value.is_finite() {
            return Err(Error::QuadratureFailure(format!(
                "non-finite integrand on [{a}, {b}]"
            )));
        }
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(Estimate { value, error });
        }
        if heap.len() >= cfg.max_subdivisions {
            return Err(Error::QuadratureFailure(format!(
                "error {error:e} above tolerance after {} subdivisions on [{a}, {b}]",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod_15(&f, worst.a, mid);
        let right = gauss_kronrod_15(&f, mid, worst.b);
        value += left.value + right.value - worst.est.value;
        error += left.error + right.error - worst.est.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            est: left,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            est: right,
        });
        // rebuild the running sums occasionally to shed cancellation drift
        if heap.len() % 256 == 0 {
            value = heap.iter().map(|p| p.est.value).sum();
            error = heap.iter().map(|p| p.est.error).sum();
        }
    }
}

/// Limit of an alternating series from its partial sums by repeated
/// averaging of neighbouring partial sums (Euler's transformation).
fn euler_average(partial: &[f64]) -> f64 {
    let mut row = partial.to_vec();
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    row[0]
}

/// `int_{x0}^inf f(x) sin(omega x) dx` for a smooth, slowly decaying,
/// single-signed `f`, with `x0` a zero of `sin(omega x)`.
///
/// The integral is split at the zeros of the sine; the half-period
/// contributions alternate in sign and their partial sums are accelerated by
/// [`euler_average`] over a sliding window.
pub fn sine_tail<F: Fn(f64) -> f64>(
    f: F,
    x0: f64,
    omega: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    const WINDOW: usize = 16;
    let half_period = PI / omega;
    let g = |x: f64| f(x) * (omega * x).sin();
    let piece_cfg = QuadratureConfig {
        abs_tol: 0.1 * cfg.abs_tol,
        ..*cfg
    };

    let mut partial = Vec::with_capacity(64);
    let mut sum = 0.0;
    let mut piece_error = 0.0;
    let mut previous: Option<f64> = None;
    let mut streak = 0;
    for m in 0..cfg.max_half_periods {
        let a = x0 + m as f64 * half_period;
        let est = integrate(g, a, a + half_period, &piece_cfg)?;
        sum += est.value;
        piece_error += est.error;
        partial.push(sum);
        if partial.len() < WINDOW {
            continue;
        }
        let accelerated = euler_average(&partial[partial.len() - WINDOW..]);
        if let Some(prev) = previous {
            if (accelerated - prev).abs() < 0.1 * cfg.abs_tol {
                streak += 1;
                if streak >= 3 {
                    return Ok(Estimate {
                        value: accelerated,
                        error: (accelerated - prev).abs() + piece_error,
                    });
                }
            } else {
                streak = 0;
            }
        }
        previous = Some(accelerated);
    }
    Err(Error::QuadratureFailure(format!(
        "oscillatory tail did not converge within {} half-periods",
        cfg.max_half_periods
    )))
}
