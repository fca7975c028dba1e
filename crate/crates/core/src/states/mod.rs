//! Amplitude providers for the states the pipeline prepares.
//!
//! A provider maps sector ditstrings to (unnormalized) amplitudes;
//! [`amplitudes_along`] evaluates it in Gray code order and normalizes.

mod aklt;
mod bethe;
mod dicke;
mod generic;

use num_complex::Complex64 as C64;

pub use aklt::{aklt_amplitudes, Aklt, MpsTriple};
pub use bethe::{bethe_amplitudes, bethe_amplitudes_with, Bethe, BetheRoots};
pub use dicke::{dicke_amplitude, dicke_amplitudes, Dicke};
pub use generic::{AmplitudeEntry, GenericAmplitudes};

use crate::angles::AmplitudeList;
use crate::compositions::{Ditstring, GrayCode};
use crate::error::Result;

pub trait AmplitudeProvider {
    /// Amplitude of `m`, up to a common normalization.
    fn amplitude(&self, m: &Ditstring) -> Result<C64>;
}

/// Amplitudes of `provider` in `code` order, scaled to unit norm.
pub fn amplitudes_along(code: &GrayCode, provider: &dyn AmplitudeProvider) -> Result<AmplitudeList> {
    let values = code.entries().iter().map(|m| provider.amplitude(m)).collect::<Result<Vec<_>>>()?;
    AmplitudeList::new(values).normalized()
}
