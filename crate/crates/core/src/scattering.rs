//! Spin-dependent scattering off the charged line: closed-form amplitudes and
//! cross sections, the partial-wave field, numeric amplitude extraction and the
//! pole scan of the ingoing coefficient.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;
use thiserror::Error;

use crate::channels::{Coupling, Spin};
use crate::real::Real;
use crate::sae::{ingoing_coefficient, SaeError};
use crate::specfun::{bessel_j, bessel_j_orders, SpecFunError};

/// Angular half-width of the excluded forward cone.
pub const FORWARD_CONE: f64 = 0.05;

/// Tail bound above which a partial-wave sum is flagged as truncated.
pub const TAIL_WARNING: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error("amplitude diverges in the forward direction (phi = {phi})")]
    ForwardDirection { phi: f64 },
    #[error("momentum must be positive and finite, got {0}")]
    InvalidMomentum(f64),
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("probe radius too small: p*r = {pr} < 100")]
    ProbeTooSmall { pr: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid spin state '{0}', expected z:+1, z:-1, x:+1 or x:-1")]
    InvalidSpinState(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Sae(#[from] SaeError),
}

fn f<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Z,
    X,
}

/// Incoming spin: eigenstate of σ₃ (axis Z) or σ₁ (axis X).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinState {
    pub axis: Axis,
    pub eigenvalue: Spin,
}

impl SpinState {
    pub fn z(s: Spin) -> Self {
        Self {
            axis: Axis::Z,
            eigenvalue: s,
        }
    }

    pub fn x(s: Spin) -> Self {
        Self {
            axis: Axis::X,
            eigenvalue: s,
        }
    }

    /// Unit doublet: (1,0)/(0,1) on Z, (1,±1)/√2 on X.
    pub fn doublet<T: Real>(&self) -> [Complex<T>; 2] {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        match (self.axis, self.eigenvalue) {
            (Axis::Z, Spin::Up) => [one, zero],
            (Axis::Z, Spin::Down) => [zero, one],
            (Axis::X, s) => {
                let h = T::lit(0.5).sqrt();
                [one * h, one * (h * s.value::<T>())]
            }
        }
    }
}

impl fmt::Display for SpinState {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.axis {
            Axis::Z => "z",
            Axis::X => "x",
        };
        write!(fm, "{a}:{}", self.eigenvalue)
    }
}

impl FromStr for SpinState {
    type Err = ScatteringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScatteringError::InvalidSpinState(s.to_string());
        let (axis, val) = s.split_once(':').ok_or_else(bad)?;
        let axis = match axis.trim().to_ascii_lowercase().as_str() {
            "z" => Axis::Z,
            "x" => Axis::X,
            _ => return Err(bad()),
        };
        let eigenvalue = match val.trim() {
            "+1" | "1" | "+" => Spin::Up,
            "-1" | "-" => Spin::Down,
            _ => return Err(bad()),
        };
        Ok(Self { axis, eigenvalue })
    }
}

fn check_p<T: Real>(p: T) -> Result<(), ScatteringError> {
    if p > T::zero() && p.is_finite() {
        Ok(())
    } else {
        Err(ScatteringError::InvalidMomentum(f(p)))
    }
}

fn half_sine<T: Real>(phi: T) -> Result<T, ScatteringError> {
    let s = (phi / T::lit(2.0)).sin();
    if s.abs() < T::tol_or_eps(1e-12) {
        return Err(ScatteringError::ForwardDirection { phi: f(phi) });
    }
    Ok(s)
}

fn scale<T: Real>(v: [Complex<T>; 2], c: Complex<T>) -> [Complex<T>; 2] {
    [v[0] * c, v[1] * c]
}

/// Squared modulus of a doublet.
pub fn doublet_norm_sqr<T: Real>(v: &[Complex<T>; 2]) -> T {
    v[0].norm_sqr() + v[1].norm_sqr()
}

/// f_s(φ) = −s/√(2πp) · e^{is(|n|−1/2)φ + i|n|π} · sin(πμ)/sin(φ/2) · u_s.
pub fn amplitude_spin_z<T: Real>(
    phi: T,
    p: T,
    coupling: &Coupling<T>,
    s: Spin,
) -> Result<[Complex<T>; 2], ScatteringError> {
    check_p(p)?;
    let sh = half_sine(phi)?;
    let sv = s.value::<T>();
    let n_abs = T::from_int(coupling.n.abs());
    let mag = -sv * (T::PI() * coupling.mu).sin() / ((T::lit(2.0) * T::PI() * p).sqrt() * sh);
    let phase = sv * (n_abs - T::lit(0.5)) * phi + n_abs * T::PI();
    Ok(scale(
        SpinState::z(s).doublet(),
        Complex::from_polar(mag, phase),
    ))
}

/// dσ/dφ = sin²(πμ)/(2πp sin²(φ/2)).
pub fn cross_section_spin_z<T: Real>(phi: T, p: T, mu: T) -> Result<T, ScatteringError> {
    check_p(p)?;
    let sh = half_sine(phi)?;
    let sm = (T::PI() * mu).sin();
    Ok(sm * sm / (T::lit(2.0) * T::PI() * p * sh * sh))
}

/// f_± = (−1)^{|n|} sin(πμ)/(√(2πp) sin(φ/2)) · sin[(|n|−1/2)φ] · u_±.
pub fn amplitude_spin_x<T: Real>(
    phi: T,
    p: T,
    coupling: &Coupling<T>,
    s1: Spin,
) -> Result<[Complex<T>; 2], ScatteringError> {
    check_p(p)?;
    let sh = half_sine(phi)?;
    let n_abs = coupling.n.abs();
    let sign = if n_abs % 2 == 0 { T::one() } else { -T::one() };
    let a = sign * (T::PI() * coupling.mu).sin() / ((T::lit(2.0) * T::PI() * p).sqrt() * sh)
        * ((T::from_int(n_abs) - T::lit(0.5)) * phi).sin();
    Ok(scale(
        SpinState::x(s1).doublet(),
        Complex::new(a, T::zero()),
    ))
}

/// dσ/dφ = sin²(πμ) sin²[(|n|−1/2)φ] / (2πp sin²(φ/2)).
pub fn cross_section_spin_x<T: Real>(
    phi: T,
    p: T,
    coupling: &Coupling<T>,
) -> Result<T, ScatteringError> {
    check_p(p)?;
    let sh = half_sine(phi)?;
    let sm = (T::PI() * coupling.mu).sin();
    let w = ((T::from_int(coupling.n.abs()) - T::lit(0.5)) * phi).sin();
    Ok(sm * sm * w * w / (T::lit(2.0) * T::PI() * p * sh * sh))
}

/// Closed-form amplitude for either spin axis.
pub fn amplitude<T: Real>(
    phi: T,
    p: T,
    coupling: &Coupling<T>,
    spin: SpinState,
) -> Result<[Complex<T>; 2], ScatteringError> {
    match spin.axis {
        Axis::Z => amplitude_spin_z(phi, p, coupling, spin.eigenvalue),
        Axis::X => amplitude_spin_x(phi, p, coupling, spin.eigenvalue),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringRow<T> {
    pub phi: T,
    pub amplitude: [Complex<T>; 2],
    pub dsigma_dphi: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringTable<T> {
    pub p: T,
    pub coupling: Coupling<T>,
    pub spin: SpinState,
    pub rows: Vec<ScatteringRow<T>>,
}

fn in_forward_cone<T: Real>(phi: T) -> bool {
    let two_pi = T::lit(2.0) * T::PI();
    let w = phi - two_pi * (phi / two_pi).round();
    w.abs() < T::lit(FORWARD_CONE)
}

/// Closed-form amplitudes on `points` equally spaced angles in [phi_min, phi_max],
/// skipping the forward cone.
pub fn scattering_table<T: Real>(
    p: T,
    coupling: &Coupling<T>,
    spin: SpinState,
    phi_min: T,
    phi_max: T,
    points: usize,
) -> Result<ScatteringTable<T>, ScatteringError> {
    check_p(p)?;
    if points == 0 || !(phi_max >= phi_min) || !phi_min.is_finite() || !phi_max.is_finite() {
        return Err(ScatteringError::InvalidGrid(format!(
            "need points >= 1 and phi_min <= phi_max, got {points} points on [{}, {}]",
            phi_min, phi_max
        )));
    }
    let grid = crate::numerics::linspace(phi_min, phi_max, points);
    let rows = grid
        .into_par_iter()
        .filter(|&phi| !in_forward_cone(phi))
        .map(|phi| {
            let amp = amplitude(phi, p, coupling, spin)?;
            Ok(ScatteringRow {
                phi,
                amplitude: amp,
                dsigma_dphi: doublet_norm_sqr(&amp),
            })
        })
        .collect::<Result<Vec<_>, ScatteringError>>()?;
    Ok(ScatteringTable {
        p,
        coupling: *coupling,
        spin,
        rows,
    })
}

// ---------------------------------------------------------------------------
// partial waves

/// Treatment of the channel k = −sn, whose order μ admits both J_{±μ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldVariant<T> {
    /// Extension angle θ: cos(θ/2) J_μ for s = +1, sin(θ/2) J_{−μ} for s = −1.
    General(T),
    /// Shell limit: J_μ for s = +1, J_{−μ} for s = −1.
    LimitR0,
}

/// Truncation order ceil(pr + 10 (pr)^{1/3} + 40).
pub fn default_l_max<T: Real>(pr: T) -> usize {
    (pr + T::lit(10.0) * pr.cbrt() + T::lit(40.0))
        .ceil()
        .to_usize()
        .unwrap_or(usize::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub psi: [Complex<T>; 2],
    /// Bound on the neglected |k| > L_max terms.
    pub tail_bound: T,
    pub truncated: bool,
}

// (−i)^j
fn minus_i_pow<T: Real>(j: usize) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    match j % 4 {
        0 => Complex::new(o, z),
        1 => Complex::new(z, -o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, o),
    }
}

// Coefficients c_k of Σ c_k e^{ikφ} for the scalar field of spin s at radius r,
// k = −L..=L, together with the tail bound.
struct RadialTerms<T> {
    l_max: i64,
    coeffs: Vec<Complex<T>>,
    tail: T,
}

fn radial_terms<T: Real>(
    p: T,
    r: T,
    coupling: &Coupling<T>,
    s: Spin,
    l_max: usize,
    variant: FieldVariant<T>,
) -> Result<RadialTerms<T>, ScatteringError> {
    let x = p * r;
    let mu = coupling.mu;
    let n = coupling.n;
    let sv = s.sign();
    let l = l_max as i64;
    let count = l_max + n.unsigned_abs() as usize + 2;
    // A_j = J_{μ+j}, B_j = J_{1−μ+j}
    let a_seq = bessel_j_orders(mu, count, x)?;
    let b_seq = bessel_j_orders(T::one() - mu, count, x)?;
    let ph_mu = Complex::from_polar(T::one(), -T::PI() * mu / T::lit(2.0));
    let ph_comp = Complex::from_polar(T::one(), -T::PI() * (T::one() - mu) / T::lit(2.0));
    let half = T::lit(0.5);
    let mut coeffs = Vec::with_capacity(2 * l_max + 1);
    for k in -l..=l {
        let a = k + sv * n;
        let parity = if k.rem_euclid(2) == 0 {
            T::one()
        } else {
            -T::one()
        };
        let c = if a == 0 {
            match s {
                Spin::Up => {
                    let w = match variant {
                        FieldVariant::General(theta) => (theta * half).cos(),
                        FieldVariant::LimitR0 => T::one(),
                    };
                    ph_mu * (a_seq[0] * w)
                }
                Spin::Down => {
                    let w = match variant {
                        FieldVariant::General(theta) => (theta * half).sin(),
                        FieldVariant::LimitR0 => T::one(),
                    };
                    ph_mu.conj() * (bessel_j(-mu, x)? * w)
                }
            }
        } else {
            // ν = |a + sμ| split into the μ + j and (1 − μ) + j ladders
            let mu_ladder = (sv > 0) == (a > 0);
            if mu_ladder {
                let j = a.unsigned_abs() as usize;
                ph_mu * minus_i_pow::<T>(j) * a_seq[j]
            } else {
                let j = a.unsigned_abs() as usize - 1;
                ph_comp * minus_i_pow::<T>(j) * b_seq[j]
            }
        };
        coeffs.push(c * parity);
    }
    let sm = T::from_int(sv) * (T::from_int(n) + mu);
    let edge = (T::from_int(l + 1) + sm)
        .abs()
        .min((T::from_int(-l - 1) + sm).abs());
    let q = x / (T::lit(2.0) * (edge + T::one()) - x);
    let tail = if q > T::zero() && q < T::one() {
        T::lit(2.0) * bessel_j(edge, x)?.abs() / (T::one() - q)
    } else {
        T::infinity()
    };
    Ok(RadialTerms {
        l_max: l,
        coeffs,
        tail,
    })
}

impl<T: Real> RadialTerms<T> {
    fn eval(&self, phi: T) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = i as i64 - self.l_max;
            acc = acc + c * Complex::from_polar(T::one(), T::from_int(k) * phi);
        }
        acc
    }
}

fn check_field_args<T: Real>(r: T, p: T, l_max: usize) -> Result<(), ScatteringError> {
    check_p(p)?;
    if !(r > T::zero() && r.is_finite()) {
        return Err(ScatteringError::InvalidRadius(f(r)));
    }
    if l_max < 1 {
        return Err(ScatteringError::InvalidGrid("L_max must be >= 1".into()));
    }
    Ok(())
}

// Radial terms for each spin-z component the state populates.
fn component_terms<T: Real>(
    p: T,
    r: T,
    coupling: &Coupling<T>,
    spin: SpinState,
    l_max: usize,
    variant: FieldVariant<T>,
) -> Result<[Option<RadialTerms<T>>; 2], ScatteringError> {
    let up = |sp| radial_terms(p, r, coupling, sp, l_max, variant);
    Ok(match (spin.axis, spin.eigenvalue) {
        (Axis::Z, Spin::Up) => [Some(up(Spin::Up)?), None],
        (Axis::Z, Spin::Down) => [None, Some(up(Spin::Down)?)],
        (Axis::X, _) => [Some(up(Spin::Up)?), Some(up(Spin::Down)?)],
    })
}

fn assemble<T: Real>(
    terms: &[Option<RadialTerms<T>>; 2],
    spin: SpinState,
    phi: T,
) -> [Complex<T>; 2] {
    let u = spin.doublet::<T>();
    let zero = Complex::new(T::zero(), T::zero());
    let comp = |i: usize| terms[i].as_ref().map_or(zero, |t| t.eval(phi) * u[i]);
    [comp(0), comp(1)]
}

/// Partial-wave sum of the scattering state at (r, φ), truncated at |k| ≤ L_max.
/// The spin-z component s carries the flux s·Ma; an X-axis state superposes both.
pub fn partial_wave_field<T: Real>(
    r: T,
    phi: T,
    p: T,
    coupling: &Coupling<T>,
    spin: SpinState,
    l_max: usize,
    variant: FieldVariant<T>,
) -> Result<FieldSample<T>, ScatteringError> {
    check_field_args(r, p, l_max)?;
    let terms = component_terms(p, r, coupling, spin, l_max, variant)?;
    let tail_bound = terms
        .iter()
        .flatten()
        .map(|t| t.tail)
        .fold(T::zero(), |a, b| a.max(b));
    Ok(FieldSample {
        psi: assemble(&terms, spin, phi),
        tail_bound,
        truncated: tail_bound > T::lit(TAIL_WARNING),
    })
}

// Incident wave e^{ipx} e^{−iα(φ−π)} with α = s·Ma, φ taken in (0, 2π).
fn incident<T: Real>(r: T, phi: T, p: T, coupling: &Coupling<T>, s: Spin) -> Complex<T> {
    let two_pi = T::lit(2.0) * T::PI();
    let w = phi - two_pi * (phi / two_pi).floor();
    let alpha = s.value::<T>() * coupling.ma;
    Complex::from_polar(T::one(), p * r * phi.cos() - alpha * (w - T::PI()))
}

const PROBE_RADII: usize = 13;

// Least-squares fit of g(r) = c0 + c1 ρ + c2 ρ² + c3 ρ³ with ρ = r_probe/r; returns c0.
fn fit_weights<T: Real>(rho: &[T]) -> Vec<T> {
    const D: usize = 4;
    let mut a = [[T::zero(); D]; D];
    for &x in rho {
        let pw: Vec<T> = (0..D).map(|i| x.powi(i as i32)).collect();
        for i in 0..D {
            for j in 0..D {
                a[i][j] = a[i][j] + pw[i] * pw[j];
            }
        }
    }
    // first row of the inverse normal matrix, by Gauss–Jordan
    let mut inv = [[T::zero(); D]; D];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = T::one();
    }
    for col in 0..D {
        let piv = (col..D)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col];
        for j in 0..D {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for i in 0..D {
            if i != col {
                let fct = a[i][col];
                for j in 0..D {
                    a[i][j] = a[i][j] - fct * a[col][j];
                    inv[i][j] = inv[i][j] - fct * inv[col][j];
                }
            }
        }
    }
    // c0 = Σ_j w_j g_j with w_j = Σ_i inv[0][i] ρ_j^i
    rho.iter()
        .map(|&x| (0..D).fold(T::zero(), |acc, i| acc + inv[0][i] * x.powi(i as i32)))
        .collect()
}

/// Numeric scattering amplitude from the partial-wave field.
///
/// At radii r ∈ [r_probe, 4 r_probe] the outgoing part
/// (ψ − incident)·√r·e^{−i(pr−π/4)} is sampled and its 1/r corrections removed
/// by a cubic least-squares fit; the constant term is returned per φ.
pub fn extract_amplitude<T: Real>(
    p: T,
    coupling: &Coupling<T>,
    spin: SpinState,
    phi_grid: &[T],
    r_probe: T,
    l_max: Option<usize>,
    variant: FieldVariant<T>,
) -> Result<Vec<[Complex<T>; 2]>, ScatteringError> {
    check_p(p)?;
    let pr = p * r_probe;
    if !(pr >= T::lit(100.0)) {
        return Err(ScatteringError::ProbeTooSmall { pr: f(pr) });
    }
    if let Some(&phi) = phi_grid.iter().find(|&&phi| in_forward_cone(phi)) {
        return Err(ScatteringError::ForwardDirection { phi: f(phi) });
    }
    let radii = crate::numerics::linspace(r_probe, T::lit(4.0) * r_probe, PROBE_RADII);
    let rho: Vec<T> = radii.iter().map(|&r| r_probe / r).collect();
    let w = fit_weights(&rho);
    let u = spin.doublet::<T>();
    let samples = radii
        .par_iter()
        .map(|&r| {
            let lm = l_max.unwrap_or_else(|| default_l_max(p * r));
            check_field_args(r, p, lm)?;
            let terms = component_terms(p, r, coupling, spin, lm, variant)?;
            let out = Complex::from_polar(r.sqrt(), -(p * r - T::PI() / T::lit(4.0)));
            Ok(phi_grid
                .iter()
                .map(|&phi| {
                    let psi = assemble(&terms, spin, phi);
                    let mut g = [Complex::new(T::zero(), T::zero()); 2];
                    for (i, s) in [Spin::Up, Spin::Down].into_iter().enumerate() {
                        if terms[i].is_some() {
                            g[i] = (psi[i] - incident(r, phi, p, coupling, s) * u[i]) * out;
                        }
                    }
                    g
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, ScatteringError>>()?;
    Ok((0..phi_grid.len())
        .map(|ip| {
            let mut acc = [Complex::new(T::zero(), T::zero()); 2];
            for (j, row) in samples.iter().enumerate() {
                acc[0] = acc[0] + row[ip][0] * w[j];
                acc[1] = acc[1] + row[ip][1] * w[j];
            }
            acc
        })
        .collect())
}

/// B_l(E) = 1 + ξ Γ(1−γ)/Γ(1+γ) (−E/2m)^γ tabulated over negative energies.
pub fn pole_scan<T: Real>(
    xi: T,
    gamma: T,
    m: T,
    e_grid: &[T],
) -> Result<Vec<(T, T)>, ScatteringError> {
    e_grid
        .iter()
        .map(|&e| Ok((e, ingoing_coefficient(e, xi, gamma, m)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::decompose;
    use std::f64::consts::PI;

    fn cp(ma: f64) -> Coupling<f64> {
        decompose(ma).unwrap()
    }

    #[test]
    fn spin_state_parsing() {
        let s: SpinState = "x:+1".parse().unwrap();
        assert_eq!(s, SpinState::x(Spin::Up));
        assert_eq!(
            "z:-1".parse::<SpinState>().unwrap(),
            SpinState::z(Spin::Down)
        );
        assert!("y:+1".parse::<SpinState>().is_err());
        assert!("z:2".parse::<SpinState>().is_err());
        assert_eq!(SpinState::z(Spin::Up).to_string(), "z:+1");
        let d = SpinState::x(Spin::Down).doublet::<f64>();
        assert!((doublet_norm_sqr(&d) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn half_flux_backscatter() {
        let a = amplitude_spin_z(PI, 1.0, &cp(0.5), Spin::Up).unwrap();
        assert!((doublet_norm_sqr(&a).sqrt() - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
        let cs = cross_section_spin_z(PI, 1.0, 0.5).unwrap();
        assert!((cs - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn integer_flux_does_not_scatter() {
        for &phi in &[0.3, 1.0, 3.0, 5.5] {
            let a = amplitude_spin_z(phi, 2.0, &cp(3.0), Spin::Down).unwrap();
            assert_eq!(doublet_norm_sqr(&a), 0.0);
        }
    }

    #[test]
    fn forward_direction_rejected() {
        assert!(matches!(
            amplitude_spin_z(0.0, 1.0, &cp(0.5), Spin::Up),
            Err(ScatteringError::ForwardDirection { .. })
        ));
        assert!(cross_section_spin_z(2.0 * PI, 1.0, 0.5).is_err());
        assert!(amplitude_spin_x(0.0, 1.0, &cp(0.5), Spin::Up).is_err());
    }

    #[test]
    fn spin_x_isotropic_at_n0() {
        let c = cp(0.3);
        let iso = (PI * 0.3).sin().powi(2) / (2.0 * PI * 1.5);
        for i in 1..20 {
            let phi = 0.3 * i as f64;
            let v = cross_section_spin_x(phi, 1.5, &c).unwrap();
            assert!((v - iso).abs() < 1e-14 * iso);
            let up = amplitude_spin_x(phi, 1.5, &c, Spin::Up).unwrap();
            let dn = amplitude_spin_x(phi, 1.5, &c, Spin::Down).unwrap();
            assert!((doublet_norm_sqr(&up) - doublet_norm_sqr(&dn)).abs() < 1e-15);
        }
    }

    #[test]
    fn table_excludes_forward_cone() {
        let t =
            scattering_table(1.0, &cp(0.5), SpinState::z(Spin::Up), 0.0, 2.0 * PI, 101).unwrap();
        assert!(t
            .rows
            .iter()
            .all(|r| r.phi >= 0.05 && r.phi <= 2.0 * PI - 0.05));
        assert_eq!(t.rows.len(), 99);
        for r in &t.rows {
            assert!((r.dsigma_dphi - doublet_norm_sqr(&r.amplitude)).abs() == 0.0);
        }
    }

    #[test]
    fn plane_wave_limit() {
        let p = 1.0;
        for &ma in &[0.0, 2.0, -1.0] {
            let c = cp(ma);
            for &s in &[Spin::Up, Spin::Down] {
                for &(r, phi) in &[(3.0, 0.4), (12.0, 2.2), (20.0, 4.0)] {
                    let lm = (p * r) as usize + 40;
                    let fs = partial_wave_field(
                        r,
                        phi,
                        p,
                        &c,
                        SpinState::z(s),
                        lm,
                        FieldVariant::LimitR0,
                    )
                    .unwrap();
                    let want = incident(r, phi, p, &c, s);
                    let i = if s == Spin::Up { 0 } else { 1 };
                    assert!((fs.psi[i] - want).norm() < 1e-8, "ma={ma} s={s} r={r}");
                    assert_eq!(fs.psi[1 - i].norm(), 0.0);
                    assert!(!fs.truncated);
                }
            }
        }
    }

    #[test]
    fn general_theta_zero_is_shell_limit_for_spin_up() {
        let c = cp(1.3);
        let a = partial_wave_field(
            5.0,
            1.1,
            1.0,
            &c,
            SpinState::z(Spin::Up),
            60,
            FieldVariant::General(0.0),
        )
        .unwrap();
        let b = partial_wave_field(
            5.0,
            1.1,
            1.0,
            &c,
            SpinState::z(Spin::Up),
            60,
            FieldVariant::LimitR0,
        )
        .unwrap();
        assert_eq!(a.psi, b.psi);
        let d = partial_wave_field(
            5.0,
            1.1,
            1.0,
            &c,
            SpinState::z(Spin::Down),
            60,
            FieldVariant::General(PI),
        )
        .unwrap();
        let e = partial_wave_field(
            5.0,
            1.1,
            1.0,
            &c,
            SpinState::z(Spin::Down),
            60,
            FieldVariant::LimitR0,
        )
        .unwrap();
        assert!((d.psi[1] - e.psi[1]).norm() < 1e-15);
    }

    #[test]
    fn short_truncation_is_flagged() {
        let fs = partial_wave_field(
            50.0,
            1.0,
            1.0,
            &cp(0.5),
            SpinState::z(Spin::Up),
            10,
            FieldVariant::LimitR0,
        )
        .unwrap();
        assert!(fs.truncated);
    }

    #[test]
    fn extraction_matches_closed_form() {
        let c = cp(0.5);
        let phis = [0.5, PI / 2.0, PI];
        let num = extract_amplitude(
            1.0,
            &c,
            SpinState::z(Spin::Up),
            &phis,
            200.0,
            None,
            FieldVariant::LimitR0,
        )
        .unwrap();
        for (phi, fnum) in phis.iter().zip(&num) {
            let want = doublet_norm_sqr(&amplitude_spin_z(*phi, 1.0, &c, Spin::Up).unwrap()).sqrt();
            let got = doublet_norm_sqr(fnum).sqrt();
            assert!(
                ((got - want) / want).abs() < 1e-3,
                "phi={phi}: {got} vs {want}"
            );
        }
        assert!(matches!(
            extract_amplitude(
                1.0,
                &c,
                SpinState::z(Spin::Up),
                &phis,
                50.0,
                None,
                FieldVariant::LimitR0
            ),
            Err(ScatteringError::ProbeTooSmall { .. })
        ));
    }

    #[test]
    fn pole_scan_brackets_bound_state() {
        let grid: Vec<f64> = (1..=100).map(|i| -0.02 * i as f64).collect();
        let tab = pole_scan(-1.0, 0.5, 1.0, &grid).unwrap();
        let idx = tab.windows(2).position(|w| w[0].1 * w[1].1 <= 0.0).unwrap();
        assert!(tab[idx].0 >= -0.5 && tab[idx + 1].0 <= -0.5);
        let tab = pole_scan(1.0, 0.5, 1.0, &grid).unwrap();
        assert!(tab.iter().all(|&(_, b)| b > 0.0));
    }
}
