//! Bound and scattering states of the self-adjoint extension family h_ξ.
//!
//! For 0 < γ < 1 the extension parameter ξ fixes the small-r boundary form
//! `F ~ A[(mr)^{1/2+γ} + ξ (mr)^{1/2-γ}]`; in the log case `F ~ C√r [ln(mr) + ξ]`.

use num_complex::Complex;
use rayon::prelude::*;
use thiserror::Error;

use crate::channels::{enumerate_channels, Channel, ChannelError, Coupling, Region, Spin};
use crate::numerics::{
    brent, first_sign_change, integrate_pieces, linspace, QuadConfig, QuadError, RootError,
    Tolerance,
};
use crate::real::Real;
use crate::specfun::{bessel_j, bessel_k, bessel_n, gamma, SpecFunError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SaeError {
    #[error("order gamma must lie in (0, 1), got {0}")]
    InvalidGamma(f64),
    #[error("mass must be positive, got {0}")]
    InvalidMass(f64),
    #[error("energy must be {expected}, got {got}")]
    EnergySign { expected: &'static str, got: f64 },
    #[error("no bound state: B_l(E) = 1 + xi*Gamma(1-gamma)/Gamma(1+gamma)*(-E/2m)^gamma has no root for xi = {xi} (xi must be negative)")]
    NoBoundState { xi: f64 },
    #[error("no sign change of B_l(E) found on the scan window")]
    BracketNotFound,
    #[error("extension parameter must not be NaN")]
    InvalidXi,
    #[error("{0}")]
    RegionMismatch(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

fn f<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Extension parameter ξ ∈ [-∞, +∞], equivalently θ = 2 arctan ξ ∈ [0, 2π).
/// θ = π corresponds to ξ = ±∞ (the purely irregular boundary form).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionParameter<T> {
    xi: T,
}

impl<T: Real> ExtensionParameter<T> {
    pub fn from_xi(xi: T) -> Result<Self, SaeError> {
        if xi.is_nan() {
            return Err(SaeError::InvalidXi);
        }
        Ok(Self {
            xi: if xi.is_infinite() { T::infinity() } else { xi },
        })
    }

    pub fn from_theta(theta: T) -> Result<Self, SaeError> {
        if !theta.is_finite() {
            return Err(SaeError::InvalidXi);
        }
        let two_pi = T::PI() + T::PI();
        let t = theta - two_pi * (theta / two_pi).floor();
        if (t - T::PI()).abs() <= T::epsilon() * T::lit(8.0) {
            return Ok(Self { xi: T::infinity() });
        }
        Ok(Self {
            xi: (t * T::lit(0.5)).tan(),
        })
    }

    pub fn infinite() -> Self {
        Self { xi: T::infinity() }
    }

    pub fn xi(&self) -> T {
        self.xi
    }

    pub fn is_infinite(&self) -> bool {
        self.xi.is_infinite()
    }

    /// θ in [0, 2π).
    pub fn theta(&self) -> T {
        if self.is_infinite() {
            return T::PI();
        }
        let t = T::lit(2.0) * self.xi.atan();
        if t < T::zero() {
            t + T::PI() + T::PI()
        } else {
            t
        }
    }
}

/// Radial order of a bound state: a power-law family order or the log case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundOrder<T> {
    Power(T),
    Log,
}

impl<T: Real> BoundOrder<T> {
    /// Order of the McDonald function profile (0 for the log case).
    pub fn order(&self) -> T {
        match self {
            BoundOrder::Power(g) => *g,
            BoundOrder::Log => T::zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState<T> {
    pub energy: T,
    pub kappa: T,
    pub order: BoundOrder<T>,
    /// Fixes ∫₀^∞ |F|² dr = 1 for F = norm_const·√r·K(κr).
    pub norm_const: T,
    pub channel: Option<Channel<T>>,
}

impl<T: Real> BoundState<T> {
    /// Builds a bound state at `energy` < 0 with a numerically determined normalization.
    pub fn new(
        energy: T,
        order: BoundOrder<T>,
        m: T,
        channel: Option<Channel<T>>,
    ) -> Result<Self, SaeError> {
        check_mass(m)?;
        if !(energy < T::zero()) {
            return Err(SaeError::EnergySign {
                expected: "negative",
                got: f(energy),
            });
        }
        if let BoundOrder::Power(g) = order {
            check_gamma(g)?;
        }
        let kappa = (-T::lit(2.0) * m * energy).sqrt();
        let norm_const = kappa / x_k_squared_integral(order)?.sqrt();
        Ok(Self {
            energy,
            kappa,
            order,
            norm_const,
            channel,
        })
    }

    /// The constant √(κ² sin(πγ)/(πγ)) of the textbook closed form, for comparison
    /// with the numerical normalization. None in the log case.
    pub fn closed_form_norm_const(&self) -> Option<T> {
        match self.order {
            BoundOrder::Power(g) => {
                let pg = T::PI() * g;
                Some(self.kappa * (pg.sin() / pg).sqrt())
            }
            BoundOrder::Log => None,
        }
    }
}

fn check_gamma<T: Real>(g: T) -> Result<(), SaeError> {
    if g > T::zero() && g < T::one() {
        Ok(())
    } else {
        Err(SaeError::InvalidGamma(f(g)))
    }
}

fn check_mass<T: Real>(m: T) -> Result<(), SaeError> {
    if m > T::zero() && m.is_finite() {
        Ok(())
    } else {
        Err(SaeError::InvalidMass(f(m)))
    }
}

/// Γ(1-γ)/Γ(1+γ).
pub fn gamma_ratio<T: Real>(g: T) -> Result<T, SaeError> {
    Ok(gamma(T::one() - g)? / gamma(T::one() + g)?)
}

/// Coefficient of the ingoing wave, B_l(E) = 1 + ξ Γ(1-γ)/Γ(1+γ) (-E/2m)^γ, for E < 0.
pub fn ingoing_coefficient<T: Real>(e: T, xi: T, g: T, m: T) -> Result<T, SaeError> {
    check_gamma(g)?;
    check_mass(m)?;
    if !(e < T::zero()) {
        return Err(SaeError::EnergySign {
            expected: "negative",
            got: f(e),
        });
    }
    if !xi.is_finite() {
        return Err(SaeError::InvalidXi);
    }
    Ok(T::one() + xi * gamma_ratio(g)? * (-e / (T::lit(2.0) * m)).powf(g))
}

/// B_l continued to real E of either sign on the physical sheet: for E > 0 the
/// power carries the phase e^{-iπγ}.
pub fn ingoing_coefficient_complex<T: Real>(
    e: T,
    xi: T,
    g: T,
    m: T,
) -> Result<Complex<T>, SaeError> {
    if e < T::zero() {
        return Ok(Complex::new(ingoing_coefficient(e, xi, g, m)?, T::zero()));
    }
    check_gamma(g)?;
    check_mass(m)?;
    if !xi.is_finite() {
        return Err(SaeError::InvalidXi);
    }
    let mag = xi * gamma_ratio(g)? * (e / (T::lit(2.0) * m)).powf(g);
    Ok(Complex::new(T::one(), T::zero()) + Complex::from_polar(mag, -T::PI() * g))
}

/// E = -2m (-ξ Γ(1-γ)/Γ(1+γ))^{-1/γ}, the root of B_l for ξ < 0.
pub fn bound_energy_closed<T: Real>(g: T, xi: T, m: T) -> Result<T, SaeError> {
    check_gamma(g)?;
    check_mass(m)?;
    if xi.is_nan() {
        return Err(SaeError::InvalidXi);
    }
    if !(xi < T::zero()) || xi.is_infinite() {
        return Err(SaeError::NoBoundState { xi: f(xi) });
    }
    Ok(-T::lit(2.0) * m * (-xi * gamma_ratio(g)?).powf(-T::one() / g))
}

/// The |l| = 1 level written through μ' (order γ = 1 - μ'):
/// E = -2m (-ξ Γ(μ')/Γ(2-μ'))^{-1/(1-μ')}.
pub fn bound_energy_unit_l<T: Real>(mu_prime: T, xi: T, m: T) -> Result<T, SaeError> {
    check_gamma(mu_prime)?;
    check_mass(m)?;
    if !(xi < T::zero()) || xi.is_infinite() {
        return Err(SaeError::NoBoundState { xi: f(xi) });
    }
    let ratio = gamma(mu_prime)? / gamma(T::lit(2.0) - mu_prime)?;
    Ok(-T::lit(2.0) * m * (-xi * ratio).powf(-T::one() / (T::one() - mu_prime)))
}

/// Log-case level E₀ = -4m e^{2(ξ-C)}, with `xi_nonnegative` set when ξ >= 0
/// (outside the range where the level is usually quoted).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLevel<T> {
    pub energy: T,
    pub xi_nonnegative: bool,
}

pub fn bound_energy_log<T: Real>(xi: T, m: T) -> Result<LogLevel<T>, SaeError> {
    check_mass(m)?;
    if !xi.is_finite() {
        return Err(SaeError::NoBoundState { xi: f(xi) });
    }
    Ok(LogLevel {
        energy: -T::lit(4.0) * m * (T::lit(2.0) * (xi - T::euler_gamma())).exp(),
        xi_nonnegative: xi >= T::zero(),
    })
}

/// Root of B_l(E) in E < 0: scan u = ln(-E) on [-60, 60] (1201 points) and refine.
pub fn find_pole<T: Real>(xi: T, g: T, m: T) -> Result<T, SaeError> {
    check_gamma(g)?;
    check_mass(m)?;
    if !(xi < T::zero()) || !xi.is_finite() {
        return Err(SaeError::NoBoundState { xi: f(xi) });
    }
    let rho = gamma_ratio(g)?;
    let two_m = T::lit(2.0) * m;
    let b = |u: T| T::one() + xi * rho * (u.exp() / two_m).powf(g);
    let grid = linspace(T::lit(-60.0), T::lit(60.0), 1201);
    let (lo, hi) = first_sign_change(&grid, b).ok_or(SaeError::BracketNotFound)?;
    let tol = Tolerance {
        abs: T::tol_or_eps(1e-14),
        rel: T::zero(),
        max_iter: 200,
    };
    let u = if lo == hi { lo } else { brent(b, lo, hi, tol)? };
    Ok(-u.exp())
}

// ∫₀^∞ x K_ν(x)² dx. The stretch below x0 uses the two-term small-x form of K.
fn x_k_squared_integral<T: Real>(order: BoundOrder<T>) -> Result<T, SaeError> {
    let x0 = T::lit(1e-6);
    let g = order.order();
    let tail = match order {
        BoundOrder::Power(g) => {
            let two = T::lit(2.0);
            let a = gamma(g)? * two.powf(g - T::one());
            let b = T::PI() / (two * (T::PI() * g).sin()) * two.powf(-g) / gamma(T::one() + g)?;
            a * a * x0.powf(two - two * g) / (two - two * g) - a * b * x0 * x0
                + b * b * x0.powf(two + two * g) / (two + two * g)
        }
        BoundOrder::Log => {
            // K₀ ≈ -(ln(x/2) + C)
            let l0 = (x0 * T::lit(0.5)).ln() + T::euler_gamma();
            x0 * x0 * T::lit(0.5) * (l0 * l0 - l0 + T::lit(0.5))
        }
    };
    let t0 = x0.ln();
    let t1 = T::lit(60.0).ln();
    let breaks = linspace(t0, t1, 19);
    let cfg = QuadConfig {
        rel_tol: T::tol_or_eps(1e-14),
        ..QuadConfig::default()
    };
    let mut err = None;
    let body = integrate_pieces(
        |t: T| {
            let x = t.exp();
            match bessel_k(g, x) {
                Ok(k) => x * x * k * k,
                Err(e) => {
                    err.get_or_insert(e);
                    T::zero()
                }
            }
        },
        &breaks,
        cfg,
    )?;
    if let Some(e) = err {
        return Err(e.into());
    }
    Ok(tail + body)
}

/// F(r) = norm_const·√r·K(κr); zero once K underflows.
pub fn bound_wavefunction<T: Real>(bs: &BoundState<T>, r: T) -> Result<T, SaeError> {
    if !(r > T::zero()) {
        return Err(SaeError::RegionMismatch("radius must be positive".into()));
    }
    match bessel_k(bs.order.order(), bs.kappa * r) {
        Ok(k) => Ok(bs.norm_const * r.sqrt() * k),
        Err(SpecFunError::Underflow { .. }) => Ok(T::zero()),
        Err(e) => Err(e.into()),
    }
}

/// Scattering solution of energy E > 0 in a channel, normalized so that the
/// regular part is √r·J(pr).
///
/// Extension family: √r [J_γ(pr) + ξ Γ(1-γ)/Γ(1+γ) (E/2m)^γ J_{-γ}(pr)], which
/// reproduces the boundary form with real ξ; ξ = ∞ gives √r J_{-γ}(pr).
/// Log case: √r [(ξ - ln(p/2m) - C) J₀(pr) + (π/2) N₀(pr)], using
/// N₀(x) ≈ (2/π)(ln(x/2) + C) so that F ≈ √r [ln(mr) + ξ]; ξ = ∞ gives √r J₀(pr).
pub fn continuum_wavefunction<T: Real>(
    ch: &Channel<T>,
    xi: ExtensionParameter<T>,
    e: T,
    m: T,
    r: T,
) -> Result<Complex<T>, SaeError> {
    check_mass(m)?;
    if !(e > T::zero()) {
        return Err(SaeError::EnergySign {
            expected: "positive",
            got: f(e),
        });
    }
    if !(r > T::zero()) {
        return Err(SaeError::RegionMismatch("radius must be positive".into()));
    }
    let p = (T::lit(2.0) * m * e).sqrt();
    let x = p * r;
    let sr = r.sqrt();
    let val = match ch.region {
        Region::EssentiallySelfAdjoint => sr * bessel_j(ch.nu, x)?,
        Region::ExtensionFamily => {
            let g = ch.gamma.ok_or_else(|| {
                SaeError::RegionMismatch("extension channel without gamma".into())
            })?;
            if xi.is_infinite() {
                sr * bessel_j(-g, x)?
            } else {
                let c = xi.xi() * gamma_ratio(g)? * (e / (T::lit(2.0) * m)).powf(g);
                sr * (bessel_j(g, x)? + c * bessel_j(-g, x)?)
            }
        }
        Region::LogCase => {
            if xi.is_infinite() {
                sr * bessel_j(T::zero(), x)?
            } else {
                let a = xi.xi() - (p / (T::lit(2.0) * m)).ln() - T::euler_gamma();
                sr * (a * bessel_j(T::zero(), x)? + T::FRAC_PI_2() * bessel_n(T::zero(), x)?)
            }
        }
    };
    Ok(Complex::new(val, T::zero()))
}

/// Maps outside coefficients of √r J_{+γ}(pr) and √r J_{-γ}(pr) onto ξ through the
/// small-r boundary form: ξ = (N₋/N₊)(p/2m)^{-2γ} Γ(1+γ)/Γ(1-γ).
pub fn xi_from_coefficients<T: Real>(
    n_plus: T,
    n_minus: T,
    g: T,
    p: T,
    m: T,
) -> Result<ExtensionParameter<T>, SaeError> {
    check_gamma(g)?;
    if n_plus == T::zero() {
        return Ok(ExtensionParameter::infinite());
    }
    let xi = n_minus / n_plus * (p / (T::lit(2.0) * m)).powf(-T::lit(2.0) * g) / gamma_ratio(g)?;
    ExtensionParameter::from_xi(xi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelEntry<T> {
    pub channel: Channel<T>,
    pub bound: Option<BoundState<T>>,
}

/// Spin degeneracy of the l = 0 level and its coincidence with the |l| = 1 level
/// at the conjugate fractional part μ' = 1 - μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degeneracy<T> {
    pub e0_up: T,
    pub e0_down: T,
    pub e_unit_l_conjugate: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport<T> {
    pub coupling: Coupling<T>,
    pub xi: T,
    pub m: T,
    pub entries: Vec<ChannelEntry<T>>,
    pub degeneracy: Option<Degeneracy<T>>,
}

impl<T: Real> SpectrumReport<T> {
    pub fn bound_states(&self) -> impl Iterator<Item = &BoundState<T>> {
        self.entries.iter().filter_map(|e| e.bound.as_ref())
    }
}

/// Classifies the channels with k in [k_min, k_max] and attaches a bound state to
/// each extension-family or log-case channel when ξ < 0.
pub fn spectrum_report<T: Real>(
    coupling: &Coupling<T>,
    xi: T,
    m: T,
    k_min: i64,
    k_max: i64,
) -> Result<SpectrumReport<T>, SaeError> {
    check_mass(m)?;
    if xi.is_nan() {
        return Err(SaeError::InvalidXi);
    }
    let channels = enumerate_channels(coupling, k_min, k_max)?;
    let entries = channels
        .into_par_iter()
        .map(|ch| -> Result<ChannelEntry<T>, SaeError> {
            let bound = if xi < T::zero() && xi.is_finite() {
                match ch.region {
                    Region::ExtensionFamily => {
                        let g = ch.gamma.expect("extension channel carries gamma");
                        let e = bound_energy_closed(g, xi, m)?;
                        Some(BoundState::new(e, BoundOrder::Power(g), m, Some(ch))?)
                    }
                    Region::LogCase => {
                        let e = bound_energy_log(xi, m)?.energy;
                        Some(BoundState::new(e, BoundOrder::Log, m, Some(ch))?)
                    }
                    Region::EssentiallySelfAdjoint => None,
                }
            } else {
                None
            };
            Ok(ChannelEntry { channel: ch, bound })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let degeneracy = if xi < T::zero() && xi.is_finite() && coupling.mu > T::zero() {
        let level = |s: Spin| -> Option<T> {
            entries
                .iter()
                .find(|e| e.channel.s == s && e.channel.l == 0)
                .and_then(|e| e.bound.map(|b| b.energy))
        };
        match (level(Spin::Up), level(Spin::Down)) {
            (Some(up), Some(down)) => Some(Degeneracy {
                e0_up: up,
                e0_down: down,
                e_unit_l_conjugate: bound_energy_unit_l(T::one() - coupling.mu, xi, m)?,
            }),
            _ => None,
        }
    } else {
        None
    };

    Ok(SpectrumReport {
        coupling: *coupling,
        xi,
        m,
        entries,
        degeneracy,
    })
}
