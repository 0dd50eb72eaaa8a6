//! Planar neutral fermion with an anomalous magnetic moment in the field of a
//! charged line.
//!
//! Layers, bottom up:
//! - [`specfun`]: Γ and real-order Bessel functions J, N, I, K.
//! - [`channels`]: coupling split Ma = n + μ and per-(k, s) channel classification.
//! - [`sae`]: bound and scattering states for each self-adjoint extension.
//! - [`shell`]: the delta-shell regularization and its coupling flow.
//! - [`scattering`]: amplitudes, cross sections and the partial-wave field.
//!
//! Everything is generic over [`real::Real`] (`f32`/`f64`); the `*64` aliases
//! fix the scalar to `f64`.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod numerics;
pub mod real;
pub mod sae;
pub mod scattering;
pub mod shell;
pub mod specfun;

use thiserror::Error;

pub type Coupling64 = channels::Coupling<f64>;
pub type Channel64 = channels::Channel<f64>;
pub type ExtensionParameter64 = sae::ExtensionParameter<f64>;
pub type BoundState64 = sae::BoundState<f64>;
pub type SpectrumReport64 = sae::SpectrumReport<f64>;
pub type ShellConfig64 = shell::ShellConfig<f64>;
pub type FlowPoint64 = shell::FlowPoint<f64>;
pub type ScatteringTable64 = scattering::ScatteringTable<f64>;

/// Whether a failure comes from the inputs or from the numerics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Inputs outside the domain of the requested quantity.
    Domain,
    /// A root, quadrature or series did not converge.
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    SpecFun(#[from] specfun::SpecFunError),
    #[error(transparent)]
    Channel(#[from] channels::ChannelError),
    #[error(transparent)]
    Sae(#[from] sae::SaeError),
    #[error(transparent)]
    Shell(#[from] shell::ShellError),
    #[error(transparent)]
    Scattering(#[from] scattering::ScatteringError),
}

fn specfun_kind(e: &specfun::SpecFunError) -> ErrorKind {
    use specfun::SpecFunError as E;
    match e {
        E::Domain { .. } | E::GammaPole { .. } | E::InvalidPolicy(_) => ErrorKind::Domain,
        E::Underflow { .. } | E::Overflow { .. } | E::NoConvergence { .. } => ErrorKind::Numerical,
    }
}

fn sae_kind(e: &sae::SaeError) -> ErrorKind {
    use sae::SaeError as E;
    match e {
        E::InvalidGamma(_)
        | E::InvalidMass(_)
        | E::EnergySign { .. }
        | E::NoBoundState { .. }
        | E::InvalidXi
        | E::RegionMismatch(_)
        | E::Channel(_) => ErrorKind::Domain,
        E::SpecFun(s) => specfun_kind(s),
        E::BracketNotFound | E::Root(_) | E::Quad(_) => ErrorKind::Numerical,
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use scattering::ScatteringError as Sc;
        use shell::ShellError as Sh;
        match self {
            Error::SpecFun(e) => specfun_kind(e),
            Error::Channel(_) => ErrorKind::Domain,
            Error::Sae(e) => sae_kind(e),
            Error::Shell(e) => match e {
                Sh::InvalidConfig(_)
                | Sh::NoClosedForm { .. }
                | Sh::Degenerate
                | Sh::TargetNotNegative(_) => ErrorKind::Domain,
                Sh::SpecFun(s) => specfun_kind(s),
                Sh::Sae(s) => sae_kind(s),
                Sh::NoRoot { .. }
                | Sh::NoEigenvalue
                | Sh::Unreachable(_)
                | Sh::Singular
                | Sh::Root(_) => ErrorKind::Numerical,
            },
            Error::Scattering(e) => match e {
                Sc::SpecFun(s) => specfun_kind(s),
                Sc::Sae(s) => sae_kind(s),
                _ => ErrorKind::Domain,
            },
        }
    }
}
