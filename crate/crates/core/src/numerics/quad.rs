//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use thiserror::Error;

use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("integrand is not finite at {x}")]
    NotFinite { x: f64 },
    #[error("tolerance not reached after {intervals} subdivisions (error estimate {estimate:e})")]
    Subdivision { intervals: usize, estimate: f64 },
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Settings for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::zero(),
            rel_tol: T::tol_or_eps(1e-12),
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn kronrod<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Result<Segment<T>, QuadError> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let radius = half * (b - a);
    let fc = f(center);
    check(center, fc)?;
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = radius * T::lit(XGK[j]);
        let (x1, x2) = (center - dx, center + dx);
        let (f1, f2) = (f(x1), f(x2));
        check(x1, f1)?;
        check(x2, f2)?;
        kron = kron + T::lit(WGK[j]) * (f1 + f2);
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    Ok(Segment {
        a,
        b,
        value: kron * radius,
        error: ((kron - gauss) * radius).abs(),
    })
}

fn check<T: Real>(x: T, fx: T) -> Result<(), QuadError> {
    if fx.is_finite() {
        Ok(())
    } else {
        Err(QuadError::NotFinite {
            x: x.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Integrates `f` over `[a, b]`, bisecting the worst segment until the summed
/// error estimate meets `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T, F>(mut f: F, a: T, b: T, cfg: QuadConfig<T>) -> Result<T, QuadError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let mut segments = vec![kronrod(&mut f, a, b)?];
    loop {
        let total: T = segments.iter().map(|s| s.value).sum();
        let err: T = segments.iter().map(|s| s.error).sum();
        if err <= cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
            return Ok(total);
        }
        if segments.len() >= cfg.max_intervals {
            return Err(QuadError::Subdivision {
                intervals: segments.len(),
                estimate: err.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, T::zero()), |(iw, ew), (i, s)| {
                if s.error > ew {
                    (i, s.error)
                } else {
                    (iw, ew)
                }
            });
        let seg = segments.swap_remove(worst);
        let mid = T::lit(0.5) * (seg.a + seg.b);
        segments.push(kronrod(&mut f, seg.a, mid)?);
        segments.push(kronrod(&mut f, mid, seg.b)?);
    }
}

/// Integrates over consecutive breakpoints, summing the pieces.
pub fn integrate_pieces<T, F>(mut f: F, breaks: &[T], cfg: QuadConfig<T>) -> Result<T, QuadError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    breaks
        .windows(2)
        .map(|w| integrate(&mut f, w[0], w[1], cfg))
        .sum()
}
