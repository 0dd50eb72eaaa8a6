//! Bracketed scalar root finding.

use thiserror::Error;

use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("no sign change on [{a}, {b}] (f(a) = {fa}, f(b) = {fb})")]
    NoSignChange { a: f64, b: f64, fa: f64, fb: f64 },
    #[error("function is not finite at {x}")]
    NotFinite { x: f64 },
    #[error("no convergence after {iterations} iterations")]
    MaxIter { iterations: usize },
}

/// Stopping rule for [`brent`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance<T> {
    pub abs: T,
    pub rel: T,
    pub max_iter: usize,
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            abs: T::zero(),
            rel: T::tol_or_eps(1e-14),
            max_iter: 200,
        }
    }
}

/// Brent's method on a bracket `[a, b]` with `f(a)·f(b) <= 0`.
pub fn brent<T, F>(mut f: F, a: T, b: T, tol: Tolerance<T>) -> Result<T, RootError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if !fa.is_finite() {
        return Err(RootError::NotFinite { x: to_f64(a) });
    }
    if !fb.is_finite() {
        return Err(RootError::NotFinite { x: to_f64(b) });
    }
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NoSignChange {
            a: to_f64(a),
            b: to_f64(b),
            fa: to_f64(fa),
            fb: to_f64(fb),
        });
    }

    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..tol.max_iter {
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
        let tol1 = two * T::epsilon() * b.abs() + half * (tol.abs + tol.rel * b.abs());
        let xm = half * (c - b);
        if xm.abs() <= tol1 || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when only two points differ
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = T::lit(3.0) * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b = b + d;
        } else {
            b = b + tol1 * xm.signum();
        }
        fb = f(b);
        if !fb.is_finite() {
            return Err(RootError::NotFinite { x: to_f64(b) });
        }
    }
    Err(RootError::MaxIter {
        iterations: tol.max_iter,
    })
}

/// Plain bisection; used where an oracle must not share Brent's interpolation.
pub fn bisect<T, F>(mut f: F, a: T, b: T, rel_tol: T, max_iter: usize) -> Result<T, RootError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo.signum() == fhi.signum() && flo != T::zero() && fhi != T::zero() {
        return Err(RootError::NoSignChange {
            a: to_f64(a),
            b: to_f64(b),
            fa: to_f64(flo),
            fb: to_f64(fhi),
        });
    }
    for _ in 0..max_iter {
        let mid = (lo + hi) * T::lit(0.5);
        if (hi - lo).abs() <= rel_tol * mid.abs() {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(RootError::MaxIter {
        iterations: max_iter,
    })
}

/// Scans `f` on the grid and returns the first adjacent pair with a sign change.
pub fn first_sign_change<T, F>(grid: &[T], mut f: F) -> Option<(T, T)>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let mut prev: Option<(T, T)> = None;
    for &x in grid {
        let fx = f(x);
        if !fx.is_finite() {
            prev = None;
            continue;
        }
        if let Some((xp, fp)) = prev {
            if fp == T::zero() {
                return Some((xp, xp));
            }
            if fp.signum() != fx.signum() || fx == T::zero() {
                return Some((xp, x));
            }
        }
        prev = Some((x, fx));
    }
    None
}

/// `n` points from `a` to `b` inclusive, evenly spaced.
pub fn linspace<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / T::from_usize(n - 1).unwrap();
            (0..n)
                .map(|i| {
                    if i + 1 == n {
                        b
                    } else {
                        a + step * T::from_usize(i).unwrap()
                    }
                })
                .collect()
        }
    }
}

/// `n` points from `a` to `b` (both positive), evenly spaced in log.
pub fn logspace<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    let mut v: Vec<T> = linspace(a.ln(), b.ln(), n)
        .into_iter()
        .map(Float::exp)
        .collect();
    if let Some(first) = v.first_mut() {
        *first = a;
    }
    if n > 1 {
        v[n - 1] = b;
    }
    v
}

use num_traits::Float;

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
