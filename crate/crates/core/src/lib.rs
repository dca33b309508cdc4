//! Secrecy rate regions for the two-user interference channel with an
//! external eavesdropper.
//!
//! The crate is layered bottom-up:
//!
//! * [`channel`]: Gaussian and discrete channel models, power schedules and
//!   factored input distributions.
//! * [`pmf`]: dense joint distributions over small finite alphabets.
//! * [`mi`]: conditional mutual-information tables, computed in closed form
//!   for Gaussian schedules, by exact enumeration for discrete inputs, or by
//!   a seeded Monte Carlo estimator.
//! * [`region`]: the rate polytope over message and randomisation rates,
//!   with LP supports, frontiers, and Fourier-Motzkin projection.
//! * [`schemes`]: transmission-scheme families, parameter sweeps and
//!   closed-form benchmark rates.
//! * [`bounds`]: converse-side machinery: case conditions, outer bounds and
//!   achievability witnesses.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod channel;
pub mod mi;
pub mod pmf;
pub mod region;
pub mod schemes;
pub mod seeded;

pub use channel::{
    ComponentSet, DiscreteChannel, FactoredInput, GaussianChannel, MacChannel, PowerState,
    SignalComponent, TimeSharingSchedule, User, UserPowers,
};
pub use mi::{MutualInfoTable, Receiver};
pub use region::{RatePolytope, RegionFrontier};
