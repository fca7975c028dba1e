use graystate::angles::{angles_complex, angles_real, reconstruct_amplitudes, AmplitudeList};
use graystate::circuit::{Control, Gate, GrayGate};
use graystate::compositions::Ditstring;
use graystate::simulator::StateVector;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn register() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=6, 2usize..=5)
}

fn random_state(n: usize, d: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d.pow(n as u32)).prop_filter_map("zero vector", move |pairs| {
        let amps: Vec<C64> = pairs.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        (norm > 1e-6).then(|| StateVector::from_amplitudes(n, d, amps.iter().map(|a| a / norm).collect()).unwrap())
    })
}

fn gray_gate(n: usize, d: usize) -> impl Strategy<Value = Gate> {
    (
        1..=n,
        1..=n,
        0..d as u8 - 1,
        1..d as u8,
        -4.0f64..4.0,
        -4.0f64..4.0,
        prop::collection::vec((1..=n, 0..d as u8), 0..3),
    )
        .prop_filter("distinct pair", |(i, j, ..)| i != j)
        .prop_map(|(i, j, m_i, m_j, theta, phi, raw)| {
            let mut controls: Vec<Control> = raw
                .into_iter()
                .filter(|&(q, _)| q != i && q != j)
                .map(|(qudit, value)| Control { qudit, value })
                .collect();
            controls.sort();
            controls.dedup_by_key(|c| c.qudit);
            Gate::Gray(GrayGate { i, j, m_i, m_j, theta, phi, controls })
        })
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Target amplitudes times the schedule's global `rescale`, which is what the angles produce.
fn rescaled(amps: &AmplitudeList, rescale: C64) -> Vec<C64> {
    amps.values().iter().map(|a| a * rescale).collect()
}

proptest! {
    #[test]
    fn encode_decode_round_trip((n, d) in (1usize..=6, 2usize..=5), seed in any::<u64>()) {
        let state = StateVector::zero_state(n, d).unwrap();
        let size = d.pow(n as u32);
        let b = (seed % size as u64) as usize;
        let m = state.decode(b);
        prop_assert_eq!(m.len(), n);
        prop_assert_eq!(state.encode(&m).unwrap(), b);
        let again = Ditstring::new(m.digits().to_vec());
        prop_assert_eq!(state.encode(&again).unwrap(), b);
    }

    #[test]
    fn x_to_the_d_is_identity(((n, d), target) in register().prop_flat_map(|(n, d)| (Just((n, d)), 1..=n)), seed in any::<u64>()) {
        let mut state = StateVector::zero_state(n, d).unwrap();
        let start = state.decode((seed % d.pow(n as u32) as u64) as usize);
        // move to a random basis state with single-step X gates
        for r in 1..=n {
            for _ in 0..start.digit(r) {
                state.apply_gate(&Gate::X { target: r, power: 1 }).unwrap();
            }
        }
        let before = state.amplitudes().to_vec();
        for _ in 0..d {
            state.apply_gate(&Gate::X { target, power: 1 }).unwrap();
        }
        prop_assert_eq!(state.amplitudes(), &before[..]);
    }

    #[test]
    fn gate_then_adjoint_restores(
        (state, gate) in (1usize..=4, 2usize..=4).prop_filter("two qudits", |(n, _)| *n >= 2).prop_flat_map(|(n, d)| (random_state(n, d), gray_gate(n, d)))
    ) {
        let mut evolved = state.clone();
        evolved.apply_gate(&gate).unwrap();
        prop_assert!((evolved.norm() - 1.0).abs() < 1e-12);
        evolved.apply_gate_adjoint(&gate).unwrap();
        prop_assert!(max_diff(evolved.amplitudes(), state.amplitudes()) < 1e-12);
    }

    #[test]
    fn real_angles_round_trip(values in prop::collection::vec(-1.0f64..1.0, 1..60)) {
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-6);
        let amps = AmplitudeList::from_real(&values.iter().map(|v| v / norm).collect::<Vec<_>>());
        let schedule = angles_real(&amps).unwrap();
        prop_assert_eq!(schedule.thetas.len(), amps.len() - 1);
        prop_assert!(schedule.rescale == C64::new(1.0, 0.0) || amps.len() == 1);
        prop_assert!(max_diff(reconstruct_amplitudes(&schedule).values(), &rescaled(&amps, schedule.rescale)) < 1e-12);
    }

    #[test]
    fn complex_angles_round_trip(values in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..60)) {
        let amps = AmplitudeList::new(values.into_iter().map(|(re, im)| C64::new(re, im)).collect());
        prop_assume!(amps.norm_sqr() > 1e-12);
        let amps = amps.normalized().unwrap();
        let schedule = angles_complex(&amps).unwrap();
        prop_assert!((schedule.rescale.norm() - 1.0).abs() < 1e-12);
        prop_assert!(max_diff(reconstruct_amplitudes(&schedule).values(), &rescaled(&amps, schedule.rescale)) < 1e-12);
    }
}
