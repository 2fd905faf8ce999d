//! Bracketed scalar root finding.
//!
//! Brent's method: inverse quadratic interpolation and secant steps are
//! accepted only while they stay inside the current bracket and shrink it
//! fast enough; otherwise the step falls back to bisection.

/// Why a bracketed search stopped without a root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BracketError {
    /// `f(a)` and `f(b)` have the same sign.
    NoSignChange { fa: f64, fb: f64 },
    /// The function returned NaN or infinity at `x`.
    NotFinite { x: f64 },
    /// The iteration cap was reached.
    MaxIter,
}

/// Finds a root of `f` in `[a, b]`, given `fa = f(a)` and `fb = f(b)` of
/// opposite sign. Stops when the bracket width falls below
/// `4 eps |x| + xtol_abs` or after `max_iter` iterations.
pub fn brent<F>(
    mut f: F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    xtol_abs: f64,
    max_iter: usize,
) -> Result<f64, BracketError>
where
    F: FnMut(f64) -> f64,
{
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(BracketError::NoSignChange { fa, fb });
    }

    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol_abs;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(BracketError::NotFinite { x: b });
        }
    }
    Err(BracketError::MaxIter)
}
