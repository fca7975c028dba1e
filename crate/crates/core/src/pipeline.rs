//! Spec to simulated state: Gray code, angles, controls, circuit, run.

use crate::angles::{angles_auto, AmplitudeList, AngleSchedule};
use crate::circuit::{assemble_circuit, control_schedule, AssembleOptions, Circuit, ControlSchedule};
use crate::compositions::{
    walsh_gray_code_with, warnsdorff_gray_code_with, CompositionSpec, Ditstring, Generator, GrayCode,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::simulator::{fidelity, run_with, StateVector};

/// Gray code for `spec` from the chosen generator. `start` only applies to
/// the Warnsdorff search.
pub fn gray_code(
    spec: &CompositionSpec,
    generator: Generator,
    start: Option<&Ditstring>,
    limits: &Limits,
) -> Result<GrayCode> {
    match generator {
        Generator::Walsh if start.is_some() => {
            Err(Error::InvalidSpec("a start ditstring only applies to the warnsdorff generator".into()))
        }
        Generator::Walsh => walsh_gray_code_with(spec, limits),
        Generator::Warnsdorff => warnsdorff_gray_code_with(spec, start, limits),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PrepareOptions {
    pub assemble: AssembleOptions,
    pub limits: Limits,
}

#[derive(Clone, Debug)]
pub struct Prepared {
    pub schedule: AngleSchedule,
    pub controls: ControlSchedule,
    pub circuit: Circuit,
    pub state: StateVector,
    pub target: StateVector,
    /// `|⟨target|state⟩|`, insensitive to the schedule's global `rescale`.
    pub fidelity: f64,
    /// `|‖state‖ - 1|`.
    pub norm_drift: f64,
}

/// Builds and simulates the circuit preparing `amps`, given in `code` order.
pub fn prepare(code: &GrayCode, amps: &AmplitudeList, options: &PrepareOptions) -> Result<Prepared> {
    let schedule = angles_auto(amps)?;
    let controls = control_schedule(code)?;
    let circuit = assemble_circuit(code, &schedule, &controls, options.assemble)?;
    let state = run_with(&circuit, &options.limits)?;
    let target = StateVector::from_sector(code, amps, &options.limits)?;
    let fidelity = fidelity(&target, &state)?;
    let norm_drift = (state.norm() - 1.0).abs();
    Ok(Prepared { schedule, controls, circuit, state, target, fidelity, norm_drift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    #[test]
    fn complex_target_round_trip() {
        let spec = CompositionSpec::new(3, 3, 2).unwrap();
        let code = gray_code(&spec, Generator::Walsh, None, &Limits::default()).unwrap();
        let amps = AmplitudeList::new((0..7).map(|l| C64::from_polar(1.0 + l as f64, 0.9 * l as f64 - 2.0)).collect())
            .normalized()
            .unwrap();
        let p = prepare(&code, &amps, &PrepareOptions::default()).unwrap();
        assert!(p.fidelity > 1.0 - 1e-12);
        assert!(p.norm_drift < 1e-12);
        // up to the global rescale the amplitudes agree entry by entry
        for (m, a) in code.entries().iter().zip(amps.values()) {
            let got = p.state.amplitude_of(m).unwrap();
            assert!((got - a * p.schedule.rescale).norm() < 1e-12);
        }
    }

    #[test]
    fn walsh_rejects_start() {
        let spec = CompositionSpec::new(3, 3, 2).unwrap();
        let start = Ditstring::parse_display("012").unwrap();
        assert!(gray_code(&spec, Generator::Walsh, Some(&start), &Limits::default()).is_err());
        let code = gray_code(&spec, Generator::Warnsdorff, Some(&start), &Limits::default()).unwrap();
        assert_eq!(code.entries()[0], start);
    }
}
