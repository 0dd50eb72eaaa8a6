//! Coupling decomposition and classification of angular/spin channels by the
//! behaviour of their radial Hamiltonian at the origin.

use std::fmt;

use thiserror::Error;

use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("coupling must be finite, got {0}")]
    NonFinite(f64),
    #[error("spin projection must be +1 or -1, got {0}")]
    InvalidSpin(i64),
    #[error("empty k range [{k_min}, {k_max}]")]
    EmptyRange { k_min: i64, k_max: i64 },
}

/// Coupling Ma split as `n + mu` with `n = floor(Ma)` and `0 <= mu < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling<T> {
    pub ma: T,
    pub n: i64,
    pub mu: T,
}

impl<T: Real> Coupling<T> {
    pub fn new(ma: T) -> Result<Self, ChannelError> {
        decompose(ma)
    }

    /// True when the fractional part vanishes (integer coupling).
    pub fn is_integer(&self) -> bool {
        self.mu == T::zero()
    }
}

/// Splits `ma` by the floor convention; a fractional part within 1e-14 of 0 or 1
/// snaps to the neighbouring integer.
pub fn decompose<T: Real>(ma: T) -> Result<Coupling<T>, ChannelError> {
    if !ma.is_finite() {
        return Err(ChannelError::NonFinite(ma.to_f64().unwrap_or(f64::NAN)));
    }
    let snap = T::tol_or_eps(1e-14);
    let floor = ma.floor();
    let mut n = floor
        .to_i64()
        .ok_or(ChannelError::NonFinite(ma.to_f64().unwrap_or(f64::NAN)))?;
    let mut mu = ma - floor;
    if mu < snap {
        mu = T::zero();
    } else if T::one() - mu < snap {
        mu = T::zero();
        n += 1;
    }
    Ok(Coupling { ma, n, mu })
}

/// Spin projection on the field axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub fn from_sign(s: i64) -> Result<Self, ChannelError> {
        match s {
            1 => Ok(Spin::Up),
            -1 => Ok(Spin::Down),
            other => Err(ChannelError::InvalidSpin(other)),
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn value<T: Real>(self) -> T {
        T::from_int(self.sign())
    }

    pub fn flip(self) -> Self {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Up => "+1",
            Spin::Down => "-1",
        })
    }
}

/// Behaviour of the radial Hamiltonian at r = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// (l + s mu)^2 >= 1: unique self-adjoint Hamiltonian.
    EssentiallySelfAdjoint,
    /// 0 < (l + s mu)^2 < 1: one-parameter family of extensions.
    ExtensionFamily,
    /// l + s mu = 0: extensions with a logarithmic boundary condition.
    LogCase,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::EssentiallySelfAdjoint => "essentially-self-adjoint",
            Region::ExtensionFamily => "extension-family",
            Region::LogCase => "log-case",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel<T> {
    pub k: i64,
    pub s: Spin,
    /// Shifted angular index `k + s n`.
    pub l: i64,
    pub region: Region,
    /// Bessel order |l + s mu|.
    pub nu: T,
    /// ||l| - mu| for extension-family channels.
    pub gamma: Option<T>,
}

impl<T: Real> Channel<T> {
    /// The order that governs this channel: gamma in the extension family, nu otherwise.
    pub fn order(&self) -> T {
        self.gamma.unwrap_or(self.nu)
    }
}

pub fn classify<T: Real>(k: i64, s: Spin, coupling: &Coupling<T>) -> Channel<T> {
    let sv = s.sign();
    let l = k + sv * coupling.n;
    let shifted = T::from_int(l) + s.value::<T>() * coupling.mu;
    let sq = shifted * shifted;
    let region = if shifted == T::zero() {
        Region::LogCase
    } else if sq >= T::one() {
        Region::EssentiallySelfAdjoint
    } else {
        Region::ExtensionFamily
    };
    let gamma = match region {
        Region::ExtensionFamily => Some((T::from_int(l.abs()) - coupling.mu).abs()),
        _ => None,
    };
    Channel {
        k,
        s,
        l,
        region,
        nu: shifted.abs(),
        gamma,
    }
}

/// Both spins for every k in `[k_min, k_max]`, ordered by (k, s).
pub fn enumerate_channels<T: Real>(
    coupling: &Coupling<T>,
    k_min: i64,
    k_max: i64,
) -> Result<Vec<Channel<T>>, ChannelError> {
    if k_min > k_max {
        return Err(ChannelError::EmptyRange { k_min, k_max });
    }
    Ok((k_min..=k_max)
        .flat_map(|k| [Spin::Down, Spin::Up].map(|s| classify(k, s, coupling)))
        .collect())
}
