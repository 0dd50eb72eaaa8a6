//! Delta-shell regularization of the contact interaction.
//!
//! Inside the shell (r < R) the radial equation carries the field-free order |l|,
//! outside the order γ. The strength Ma·δ(r−R)/R makes F′ jump by Ma·F(R)/R.
//! With X = κR, κ = √(2m|E|), a bound state satisfies
//! `X K_γ′(X)/K_γ(X) − X I_|l|′(X)/I_|l|(X) = Ma`.

use rayon::prelude::*;
use thiserror::Error;

use crate::channels::{Coupling, Spin};
use crate::numerics::{brent, RootError, Tolerance};
use crate::real::Real;
use crate::sae::{gamma_ratio, xi_from_coefficients, ExtensionParameter, SaeError};
use crate::specfun::{
    bessel_i_log_derivative, bessel_j, bessel_j_prime, bessel_k_log_derivative, SpecFunError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShellError {
    #[error("invalid shell configuration: {0}")]
    InvalidConfig(String),
    #[error("closed form needs (|l|+Ma-gamma)*Gamma(1-gamma)/((|l|+Ma+gamma)*Gamma(1+gamma)) > 0, got {bracket}")]
    NoClosedForm { bracket: f64 },
    #[error("degenerate configuration: |l|+Ma-gamma or |l|+Ma+gamma vanishes")]
    Degenerate,
    #[error("no bound state: the matching equation has no root (requires Ma < -(gamma+|l|) = {threshold})")]
    NoRoot { threshold: f64 },
    #[error("no eigenvalue of the shell problem in the search window")]
    NoEigenvalue,
    #[error("target energy must be negative, got {0}")]
    TargetNotNegative(f64),
    #[error("target energy unreachable: {0}")]
    Unreachable(String),
    #[error("continuity system is singular")]
    Singular,
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Sae(#[from] SaeError),
}

fn f<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Shell of radius `r` and strength `ma` separating the inner order |l| from the outer order γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellConfig<T> {
    pub r: T,
    pub ma: T,
    pub m: T,
    pub l: i64,
    pub gamma: T,
}

impl<T: Real> ShellConfig<T> {
    pub fn new(r: T, ma: T, m: T, l: i64, gamma: T) -> Result<Self, ShellError> {
        let cfg = Self { r, ma, m, l, gamma };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ShellError> {
        if !(self.r > T::zero() && self.r.is_finite()) {
            return Err(ShellError::InvalidConfig(format!(
                "R must be positive, got {}",
                self.r
            )));
        }
        if !(self.m > T::zero() && self.m.is_finite()) {
            return Err(ShellError::InvalidConfig(format!(
                "m must be positive, got {}",
                self.m
            )));
        }
        if !(self.gamma > T::zero() && self.gamma < T::one()) {
            return Err(ShellError::InvalidConfig(format!(
                "gamma must lie in (0, 1), got {}",
                self.gamma
            )));
        }
        if !self.ma.is_finite() {
            return Err(ShellError::InvalidConfig("Ma must be finite".into()));
        }
        Ok(())
    }

    /// The spin-s sector of channel `l` for coupling Ma: the field vanishes inside
    /// the shell, so the inner index is `l - s n`; outside the order is |l + s μ|;
    /// the contact strength seen by spin s is `s Ma`.
    pub fn for_spin(
        l: i64,
        s: Spin,
        coupling: &Coupling<T>,
        r: T,
        m: T,
    ) -> Result<Self, ShellError> {
        let sv = s.sign();
        let gamma = (T::from_int(l) + s.value::<T>() * coupling.mu).abs();
        Self::new(
            r,
            s.value::<T>() * coupling.ma,
            m,
            l - sv * coupling.n,
            gamma,
        )
    }

    fn inner_order(&self) -> T {
        T::from_int(self.l.abs())
    }

    /// The dimensionless X = √(2m|E|)·R of an energy.
    pub fn x_of_energy(&self, e: T) -> T {
        (T::lit(2.0) * self.m * e.abs()).sqrt() * self.r
    }

    pub fn energy_of_x(&self, x: T) -> T {
        -x * x / (T::lit(2.0) * self.m * self.r * self.r)
    }

    /// Threshold below which Ma binds: Ma < -(γ + |l|).
    pub fn binding_threshold(&self) -> T {
        -(self.gamma + self.inner_order())
    }
}

// X K'/K − X I'/I: the contact strength that puts a bound state at X.
fn coupling_at<T: Real>(x: T, l_abs: T, g: T) -> Result<T, ShellError> {
    Ok(bessel_k_log_derivative(g, x)? - bessel_i_log_derivative(l_abs, x)?)
}

/// [√X K_γ(X)]′/K_γ(X) − [√X I_|l|(X)]′/I_|l|(X) − Ma/√X, zero at a bound state.
pub fn matching_residual<T: Real>(x: T, cfg: &ShellConfig<T>) -> Result<T, ShellError> {
    cfg.validate()?;
    if !(x > T::zero()) {
        return Err(ShellError::InvalidConfig(format!(
            "X must be positive, got {x}"
        )));
    }
    Ok((coupling_at(x, cfg.inner_order(), cfg.gamma)? - cfg.ma) / x.sqrt())
}

/// Small-R closed form E = −(2/(mR²))·bracket^{−1/γ} with
/// bracket = (|l|+Ma−γ)Γ(1−γ)/((|l|+Ma+γ)Γ(1+γ)). Accurate only when κR ≪ 1.
pub fn shell_bound_energy_closed<T: Real>(cfg: &ShellConfig<T>) -> Result<T, ShellError> {
    cfg.validate()?;
    let bracket = closed_bracket(cfg)?;
    let two = T::lit(2.0);
    Ok(-two / (cfg.m * cfg.r * cfg.r) * bracket.powf(-T::one() / cfg.gamma))
}

fn closed_bracket<T: Real>(cfg: &ShellConfig<T>) -> Result<T, ShellError> {
    let lm = cfg.inner_order() + cfg.ma;
    let num = lm - cfg.gamma;
    let den = lm + cfg.gamma;
    let tiny = T::tol_or_eps(1e-14);
    if num.abs() < tiny || den.abs() < tiny {
        return Err(ShellError::Degenerate);
    }
    let bracket = num * gamma_ratio(cfg.gamma)? / den;
    if !(bracket > T::zero()) {
        return Err(ShellError::NoClosedForm {
            bracket: f(bracket),
        });
    }
    Ok(bracket)
}

fn x_max<T: Real>(cfg: &ShellConfig<T>) -> T {
    (cfg.ma.abs() + T::lit(20.0)).min(T::lit(600.0))
}

/// Root of the matching equation without small-X expansions, E = −X*²/(2mR²).
pub fn shell_bound_energy_exact<T: Real>(cfg: &ShellConfig<T>) -> Result<T, ShellError> {
    Ok(cfg.energy_of_x(shell_root_x(cfg)?))
}

/// X* solving the matching equation. The left side decreases from −(γ+|l|) at
/// X → 0 to −∞, so a root exists exactly when Ma < −(γ+|l|).
pub fn shell_root_x<T: Real>(cfg: &ShellConfig<T>) -> Result<T, ShellError> {
    cfg.validate()?;
    let (l_abs, g) = (cfg.inner_order(), cfg.gamma);
    let h = |t: T| -> Result<T, ShellError> { Ok(coupling_at(t.exp(), l_abs, g)? - cfg.ma) };
    let mut hi = x_max(cfg).ln();
    if h(hi)? > T::zero() {
        return Err(ShellError::NoRoot {
            threshold: f(cfg.binding_threshold()),
        });
    }
    let floor = T::min_positive_value().sqrt().ln();
    let mut lo = hi - T::one();
    loop {
        if h(lo)? > T::zero() {
            break;
        }
        hi = lo;
        lo = lo - T::one();
        if lo < floor {
            return Err(ShellError::NoRoot {
                threshold: f(cfg.binding_threshold()),
            });
        }
    }
    let mut err = None;
    let t = brent(
        |t| match h(t) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                T::nan()
            }
        },
        lo,
        hi,
        Tolerance {
            abs: T::tol_or_eps(1e-15),
            rel: T::zero(),
            max_iter: 200,
        },
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(t?.exp())
}

// ---------------------------------------------------------------------------
// Numerov oracle
//
// With r = e^t and F = e^{t/2} u, the radial equation −F″ + (ν²−1/4)/r² F = −κ²F
// becomes u_tt = (ν² + κ² e^{2t}) u, and the jump condition reads
// u_t(R⁺) − u_t(R⁻) = Ma·u(R).

struct Sweep<T> {
    // u and u_t at the shell, up to a common factor
    u: T,
    du: T,
}

fn numerov_step<T: Real>(u0: T, u1: T, g0: T, g1: T, g2: T, h2: T) -> T {
    let c = h2 / T::lit(12.0);
    (T::lit(2.0) * (T::one() + T::lit(5.0) * c * g1) * u1 - (T::one() - c * g0) * u0)
        / (T::one() - c * g2)
}

// Integrates from `t_start` to `t_end` (either direction) with `n` steps, starting
// from the two values (u(t_start), u(t_start + h)), and carries one step past the
// end to form a fourth-order central derivative there.
fn numerov_sweep<T: Real>(
    nu2: T,
    kappa2: T,
    t_start: T,
    t_end: T,
    n: usize,
    u_first: T,
    u_second: T,
) -> Sweep<T> {
    let h = (t_end - t_start) / T::from_usize(n).unwrap();
    let h2 = h * h;
    let g = |t: T| nu2 + kappa2 * (T::lit(2.0) * t).exp();
    let big = T::one() / T::epsilon().powi(8);
    let mut t_prev = t_start;
    let mut t_cur = t_start + h;
    let (mut u_prev, mut u_cur) = (u_first, u_second);
    let (mut g_prev, mut g_cur) = (g(t_prev), g(t_cur));
    let mut at_end = None;
    for i in 2..=n + 1 {
        let t_next = t_start + h * T::from_usize(i).unwrap();
        let g_next = g(t_next);
        let u_next = numerov_step(u_prev, u_cur, g_prev, g_cur, g_next, h2);
        if i == n + 1 {
            at_end = Some((u_prev, g_prev, u_cur, u_next, g_next));
        }
        t_prev = t_cur;
        t_cur = t_next;
        u_prev = u_cur;
        u_cur = u_next;
        g_prev = g_cur;
        g_cur = g_next;
        if u_cur.abs() > big {
            u_prev = u_prev / big;
            u_cur = u_cur / big;
        }
        let _ = t_prev;
    }
    let (um, gm, u0, up, gp) = at_end.expect("sweep has at least two steps");
    let c = h2 / T::lit(6.0);
    let du = (up * (T::one() - c * gp) - um * (T::one() - c * gm)) / (T::lit(2.0) * h);
    Sweep { u: u0, du }
}

// Matching defect at κ for a grid density of `per_unit` points per unit of t.
fn numerov_defect<T: Real>(cfg: &ShellConfig<T>, kappa: T, per_unit: usize) -> T {
    let l_abs = cfg.inner_order();
    let g = cfg.gamma;
    let kappa2 = kappa * kappa;
    let t_r = cfg.r.ln();
    let steps = |span: T| {
        ((span * T::from_usize(per_unit).unwrap())
            .ceil()
            .to_usize()
            .unwrap())
        .max(8)
    };

    // inside: regular solution u ≈ e^{|l| t}(1 + (κr)²/(4(|l|+1)))
    let t0 = (cfg.r * T::lit(1e-6)).ln();
    let n_in = steps(t_r - t0);
    let h_in = (t_r - t0) / T::from_usize(n_in).unwrap();
    let regular = |t: T| {
        let kr = kappa * t.exp();
        // relative to e^{|l| t0} to keep the start O(1)
        (l_abs * (t - t0)).exp() * (T::one() + kr * kr / (T::lit(4.0) * (l_abs + T::one())))
    };
    let inner = numerov_sweep(
        l_abs * l_abs,
        kappa2,
        t0,
        t_r,
        n_in,
        regular(t0),
        regular(t0 + h_in),
    );

    // outside: decaying solution from the large-argument expansion of K_γ
    let r_inf = (T::lit(30.0) / kappa).max(T::lit(3.0) * cfg.r);
    let t_inf = r_inf.ln();
    let n_out = steps(t_inf - t_r);
    let h_out = (t_r - t_inf) / T::from_usize(n_out).unwrap();
    let z_inf = kappa * r_inf;
    let mu4 = T::lit(4.0) * g * g;
    let decaying = |t: T| {
        let z = kappa * t.exp();
        let mut s = T::one();
        let mut term = T::one();
        for k in 1..=30 {
            let odd = T::lit((2 * k - 1) as f64);
            let next = term * (mu4 - odd * odd) / (T::from_usize(k).unwrap() * T::lit(8.0) * z);
            if next.abs() > term.abs() {
                break;
            }
            term = next;
            s = s + term;
        }
        (T::PI() / (T::lit(2.0) * z)).sqrt() * (z_inf - z).exp() * s
    };
    let outer = numerov_sweep(
        g * g,
        kappa2,
        t_inf,
        t_r,
        n_out,
        decaying(t_inf),
        decaying(t_inf + h_out),
    );
    outer.du / outer.u - inner.du / inner.u - cfg.ma
}

fn numerov_root_kappa<T: Real>(cfg: &ShellConfig<T>, per_unit: usize) -> Result<T, ShellError> {
    let d = |lk: T| numerov_defect(cfg, lk.exp(), per_unit);
    let kr = cfg.r.ln();
    let mut hi = x_max(cfg).ln() - kr;
    if !(d(hi) < T::zero()) {
        return Err(ShellError::NoEigenvalue);
    }
    let floor = T::lit(-300.0);
    let mut lo = hi - T::one();
    while !(d(lo) > T::zero()) {
        hi = lo;
        lo = lo - T::one();
        if lo + kr < floor {
            return Err(ShellError::NoEigenvalue);
        }
    }
    let lk = brent(
        d,
        lo,
        hi,
        Tolerance {
            abs: T::tol_or_eps(1e-13),
            rel: T::zero(),
            max_iter: 200,
        },
    )?;
    Ok(lk.exp())
}

/// Bound energy from direct integration of the two radial equations on a
/// logarithmic grid, matched with the jump condition at R. The grid density
/// doubles from 200 points per e-fold until the energy moves by < 1e-6 relative.
pub fn numerov_bound_energy<T: Real>(cfg: &ShellConfig<T>) -> Result<T, ShellError> {
    cfg.validate()?;
    let to_e = |k: T| -k * k / (T::lit(2.0) * cfg.m);
    let mut per_unit = 200;
    let mut prev = to_e(numerov_root_kappa(cfg, per_unit)?);
    for _ in 0..6 {
        per_unit *= 2;
        let next = to_e(numerov_root_kappa(cfg, per_unit)?);
        if ((next - prev) / next).abs() < T::lit(1e-6) {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

// ---------------------------------------------------------------------------
// effective extension parameter and renormalization

/// Outside the shell at energy E_ref > 0 the solution is N₊√r J_γ(pr) + N₋√r J_{−γ}(pr);
/// the ratio N₋/N₊ maps to the extension parameter of the point interaction the
/// shell reproduces at low energy.
pub fn effective_extension_parameter<T: Real>(
    cfg: &ShellConfig<T>,
    e_ref: T,
) -> Result<ExtensionParameter<T>, ShellError> {
    cfg.validate()?;
    if !(e_ref > T::zero()) {
        return Err(ShellError::InvalidConfig(
            "reference energy must be positive".into(),
        ));
    }
    let p = (T::lit(2.0) * cfg.m * e_ref).sqrt();
    let r = cfg.r;
    let x = p * r;
    let sr = r.sqrt();
    let half = T::lit(0.5);
    // value and r-derivative of √r J_ν(pr) at R
    let vd = |nu: T| -> Result<(T, T), ShellError> {
        let j = bessel_j(nu, x)?;
        let jp = bessel_j_prime(nu, x)?;
        Ok((sr * j, half * j / sr + sr * p * jp))
    };
    let (a_in, d_in) = vd(cfg.inner_order())?;
    let (a_p, d_p) = vd(cfg.gamma)?;
    let (a_m, d_m) = vd(-cfg.gamma)?;
    let rhs_d = d_in + cfg.ma * a_in / r;
    let det = a_p * d_m - a_m * d_p;
    if det == T::zero() || !det.is_finite() {
        return Err(ShellError::Singular);
    }
    let n_plus = (a_in * d_m - a_m * rhs_d) / det;
    let n_minus = (a_p * rhs_d - d_p * a_in) / det;
    Ok(xi_from_coefficients(n_plus, n_minus, cfg.gamma, p, cfg.m)?)
}

/// θ for spin up and spin down in channel `l`.
pub fn effective_extension_parameters<T: Real>(
    l: i64,
    coupling: &Coupling<T>,
    r: T,
    m: T,
    e_ref: T,
) -> Result<(T, T), ShellError> {
    let up = ShellConfig::for_spin(l, Spin::Up, coupling, r, m)?;
    let down = ShellConfig::for_spin(l, Spin::Down, coupling, r, m)?;
    Ok((
        effective_extension_parameter(&up, e_ref)?.theta(),
        effective_extension_parameter(&down, e_ref)?.theta(),
    ))
}

/// Shell strength Ma(R) that places the bound state at `e_target`.
///
/// The matching equation gives Ma as an explicit function of X, so the coupling
/// is evaluated at X = √(2m|E|)R directly; the small-R closed form inverted,
/// Ma = γ(1+q)/(1−q) − |l| with q = (2/(mR²|E|))^γ Γ(1+γ)/Γ(1−γ), is its leading term.
pub fn renormalize_coupling<T: Real>(
    e_target: T,
    r: T,
    l: i64,
    gamma: T,
    m: T,
) -> Result<T, ShellError> {
    if !(e_target < T::zero()) {
        return Err(ShellError::TargetNotNegative(f(e_target)));
    }
    let probe = ShellConfig::new(r, T::zero(), m, l, gamma)?;
    let x = probe.x_of_energy(e_target);
    let ma = coupling_at(x, probe.inner_order(), gamma)?;
    if !ma.is_finite() {
        return Err(ShellError::Unreachable(format!("X = {x}")));
    }
    Ok(ma)
}

/// Leading small-R estimate of the renormalized coupling.
pub fn renormalize_coupling_closed<T: Real>(
    e_target: T,
    r: T,
    l: i64,
    gamma: T,
    m: T,
) -> Result<T, ShellError> {
    if !(e_target < T::zero()) {
        return Err(ShellError::TargetNotNegative(f(e_target)));
    }
    let b = (T::lit(2.0) / (m * r * r * e_target.abs())).powf(gamma);
    let q = b / gamma_ratio(gamma)?;
    if q == T::one() {
        return Err(ShellError::Degenerate);
    }
    Ok(gamma * (T::one() + q) / (T::one() - q) - T::from_int(l.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowPoint<T> {
    pub r: T,
    pub ma: T,
    /// Energy recomputed from the exact matching equation at (Ma(R), R).
    pub e_check: T,
    /// Closed-form energy at (Ma(R), R).
    pub e_closed: Option<T>,
}

/// Ma(R) across the given radii, each point checked by re-solving for the energy.
pub fn renormalization_flow<T: Real>(
    e_target: T,
    l: i64,
    gamma: T,
    m: T,
    radii: &[T],
) -> Result<Vec<FlowPoint<T>>, ShellError> {
    radii
        .par_iter()
        .map(|&r| {
            let ma = renormalize_coupling(e_target, r, l, gamma, m)?;
            let cfg = ShellConfig::new(r, ma, m, l, gamma)?;
            Ok(FlowPoint {
                r,
                ma,
                e_check: shell_bound_energy_exact(&cfg)?,
                e_closed: shell_bound_energy_closed(&cfg).ok(),
            })
        })
        .collect()
}

/// Whether (l, γ, Ma) lies in the window where a shell can bind:
/// l = 0 with 0 < γ < 1/2, or |l| = 1 with 1/2 < γ < 1, and Ma < 0.
pub fn attraction_window<T: Real>(l: i64, gamma: T, ma: T) -> bool {
    let half = T::lit(0.5);
    let window = match l.abs() {
        0 => gamma > T::zero() && gamma < half,
        1 => gamma > half && gamma < T::one(),
        _ => false,
    };
    window && ma < T::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::decompose;

    fn cfg(r: f64, ma: f64, l: i64, g: f64) -> ShellConfig<f64> {
        ShellConfig::new(r, ma, 1.0, l, g).unwrap()
    }

    #[test]
    fn closed_form_example_value() {
        // the quoted positive-coupling configuration still has a positive bracket
        let c = cfg(1e-3, 1.3, 0, 0.3);
        let e = shell_bound_energy_closed(&c).unwrap();
        let bracket = (1.0 / 1.6) * gamma_ratio(0.3f64).unwrap();
        assert!((bracket - 0.90398).abs() < 1e-4);
        let want = -2e6 * bracket.powf(-1.0 / 0.3);
        assert!(((e - want) / want).abs() < 1e-14);
        assert!((e / -2.80e6 - 1.0).abs() < 0.01);
    }

    #[test]
    fn closed_form_scaling_and_errors() {
        let a = shell_bound_energy_closed(&cfg(1e-3, -0.5, 0, 0.3)).unwrap();
        let b = shell_bound_energy_closed(&cfg(5e-4, -0.5, 0, 0.3)).unwrap();
        assert!((b / a - 4.0).abs() < 1e-12);
        assert!(matches!(
            shell_bound_energy_closed(&cfg(1e-3, 0.1, 0, 0.3)),
            Err(ShellError::NoClosedForm { .. })
        ));
        assert!(matches!(
            shell_bound_energy_closed(&cfg(1e-3, 0.3, 0, 0.3)),
            Err(ShellError::Degenerate)
        ));
    }

    #[test]
    fn no_binding_without_attraction() {
        let c = cfg(1e-3, 0.0, 0, 0.3);
        for &x in &[1e-4, 0.1, 1.0, 10.0] {
            assert!(matching_residual(x, &c).unwrap() < 0.0);
        }
        assert!(matches!(
            shell_bound_energy_exact(&c),
            Err(ShellError::NoRoot { .. })
        ));
        assert!(matches!(
            numerov_bound_energy(&c),
            Err(ShellError::NoEigenvalue)
        ));
        assert!(matches!(
            shell_bound_energy_exact(&cfg(1e-3, 1.3, 0, 0.3)),
            Err(ShellError::NoRoot { .. })
        ));
    }

    #[test]
    fn exact_root_zeroes_residual() {
        let c = cfg(1e-3, -0.8, 0, 0.3);
        let x = shell_root_x(&c).unwrap();
        assert!(matching_residual(x, &c).unwrap().abs() < 1e-9);
        let e = shell_bound_energy_exact(&c).unwrap();
        assert!(((c.x_of_energy(e) - x) / x).abs() < 1e-12);
    }

    #[test]
    fn numerov_matches_exact() {
        for &(l, g, ma) in &[(0, 0.3, -0.8), (1, 0.7, -2.5), (0, 0.2, -3.0)] {
            let c = cfg(1e-3, ma, l, g);
            let ex = shell_bound_energy_exact(&c).unwrap();
            let nv = numerov_bound_energy(&c).unwrap();
            assert!(
                ((nv - ex) / ex).abs() < 1e-6,
                "l={l} g={g} ma={ma}: {nv} vs {ex}"
            );
        }
    }

    #[test]
    fn renormalized_coupling_hits_target() {
        for &r in &[1e-2, 1e-4, 1e-6] {
            let ma = renormalize_coupling(-1.0, r, 0, 0.3, 1.0).unwrap();
            let e = shell_bound_energy_exact(&cfg(r, ma, 0, 0.3)).unwrap();
            assert!((e + 1.0).abs() < 1e-8, "R={r}: {e}");
            let seed = renormalize_coupling_closed(-1.0, r, 0, 0.3, 1.0).unwrap();
            assert!((seed - ma).abs() < 1e-2 * ma.abs());
        }
    }

    #[test]
    fn theta_limits_per_spin() {
        let cp = decompose(0.5).unwrap();
        let (up, down): (f64, f64) =
            effective_extension_parameters(0, &cp, 1e-6, 1.0, 1e-4).unwrap();
        assert!(up.min(2.0 * std::f64::consts::PI - up) < 1e-3, "up {up}");
        assert!((down - std::f64::consts::PI).abs() < 1e-3, "down {down}");
    }

    #[test]
    fn attraction_examples() {
        assert!(attraction_window(0, 0.3, -0.3));
        assert!(!attraction_window(0, 0.3, 0.3));
        assert!(!attraction_window(2, 0.3, -0.3));
        assert!(attraction_window(-1, 0.7, -1.0));
        assert!(!attraction_window(1, 0.3, -1.0));
    }
}
