//! Euler gamma function and the reciprocal-gamma helpers used by the Bessel series.

use super::SpecFunError;
use crate::real::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// Taylor coefficients of 1/Γ(z) about z = 0, starting at z¹.
const RGAMMA_TAYLOR: [f64; 28] = [
    1.0,
    0.577_215_664_901_532_860_6,
    -0.655_878_071_520_253_881_1,
    -0.042_002_635_034_095_235_53,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_75,
    -0.009_621_971_527_876_973_562,
    0.007_218_943_246_663_099_542,
    -0.001_165_167_591_859_065_112,
    -0.000_215_241_674_114_950_972_8,
    0.000_128_050_282_388_116_186_2,
    -0.000_020_134_854_780_788_238_66,
    -1.250_493_482_142_670_657e-6,
    1.133_027_231_981_695_882e-6,
    -2.056_338_416_977_607_104e-7,
    6.116_095_104_481_415_818e-9,
    5.002_007_644_469_222_930e-9,
    -1.181_274_570_487_020_145e-9,
    1.043_426_711_691_100_511e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783e-14,
    -5.348_122_539_423_017_982e-15,
    1.226_778_628_238_260_790e-15,
    -1.181_259_301_697_458_770e-16,
    1.186_692_254_751_600_333e-18,
    1.412_380_655_318_031_782e-18,
];

fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

// Lanczos sum for Γ(z+1), valid for z >= -0.5.
fn lanczos<T: Real>(z: T) -> T {
    let mut a = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::lit(c) / (z + T::from_usize(i).unwrap());
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    (T::PI() + T::PI()).sqrt() * t.powf(z + T::lit(0.5)) * (-t).exp() * a
}

/// Γ(x) for real `x` off the non-positive integers.
pub fn gamma<T: Real>(x: T) -> Result<T, SpecFunError> {
    if x.is_nan() {
        return Err(SpecFunError::domain("gamma", "argument is NaN"));
    }
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::GammaPole {
            x: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    if x < T::lit(0.5) {
        // reflection Γ(x)Γ(1-x) = π / sin(πx)
        let s = sin_pi(x);
        return Ok(T::PI() / (s * gamma_unchecked(T::one() - x)));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked<T: Real>(x: T) -> T {
    if x == x.round() && x <= T::lit(30.0) {
        // exact factorial for small positive integers
        let n = x.to_usize().unwrap();
        return (1..n).fold(T::one(), |acc, k| acc * T::from_usize(k).unwrap());
    }
    lanczos(x - T::one())
}

/// ln|Γ(x)| for x > 0.
pub fn ln_gamma<T: Real>(x: T) -> Result<T, SpecFunError> {
    if !(x > T::zero()) {
        return Err(SpecFunError::domain(
            "ln_gamma",
            "argument must be positive",
        ));
    }
    if x < T::lit(0.5) {
        return Ok((T::PI() / (sin_pi(x) * gamma_unchecked(T::one() - x))).ln());
    }
    let z = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::lit(c) / (z + T::from_usize(i).unwrap());
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    Ok(T::lit(0.5) * (T::PI() + T::PI()).ln() + (z + T::lit(0.5)) * t.ln() - t + a.ln())
}

/// 1/Γ(x), entire: zero at the non-positive integers.
pub fn rgamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::zero();
    }
    if x.abs() <= T::lit(0.5) {
        return rgamma_taylor(x);
    }
    if x > T::lit(171.0) {
        return T::zero();
    }
    T::one() / gamma(x).expect("non-pole argument")
}

fn rgamma_taylor<T: Real>(z: T) -> T {
    let mut acc = T::zero();
    for &c in RGAMMA_TAYLOR.iter().rev() {
        acc = acc * z + T::lit(c);
    }
    acc * z
}

/// Temme's auxiliary functions for |mu| <= 1/2:
/// `gam1 = (1/Γ(1-μ) - 1/Γ(1+μ)) / (2μ)`, `gam2 = (1/Γ(1-μ) + 1/Γ(1+μ)) / 2`,
/// together with `1/Γ(1+μ)` and `1/Γ(1-μ)`.
pub(crate) fn temme_gammas<T: Real>(mu: T) -> (T, T, T, T) {
    // 1/Γ(1+μ) = Σ c_k μ^{k-1}; split the series into even and odd k
    let mu2 = mu * mu;
    let mut even = T::zero();
    let mut odd = T::zero();
    for (i, &c) in RGAMMA_TAYLOR.iter().enumerate().rev() {
        let k = i + 1;
        if k % 2 == 0 {
            even = even * mu2 + T::lit(c);
        } else {
            odd = odd * mu2 + T::lit(c);
        }
    }
    // even holds Σ_{k even} c_k μ^{k-2}, odd holds Σ_{k odd} c_k μ^{k-1}
    let gam1 = -even;
    let gam2 = odd;
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

/// sin(πx) with exact zeros at integers.
pub(crate) fn sin_pi<T: Real>(x: T) -> T {
    let n = x.round();
    let r = x - n;
    let s = (T::PI() * r).sin();
    if n.to_i64().unwrap_or(0) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// cos(πx) with exact zeros at half-integers.
pub(crate) fn cos_pi<T: Real>(x: T) -> T {
    sin_pi(x + T::lit(0.5))
}
