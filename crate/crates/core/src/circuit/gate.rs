//! Two-qudit matrices for Gray gates and their three-step decomposition.
//!
//! Matrices act on the `d²`-dimensional pair space with local index
//! `μ + d ν`, where `μ` is the digit of the raised qudit `i` and `ν` the
//! digit of the lowered qudit `j`. Controls on other qudits are not part of
//! these matrices.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::GrayGate;
use crate::error::Result;

fn pair_index(mu: usize, nu: usize, d: usize) -> usize {
    mu + d * nu
}

/// The Gray gate on the pair space: a Givens block
/// `[[cos θ, -sin θ], [e^{iφ} sin θ, e^{iφ} cos θ]]` on
/// `{|m_i, m_j⟩, |m_i+1, m_j-1⟩}` and the identity elsewhere.
pub fn gray_gate_matrix(gate: &GrayGate, d: usize) -> Result<DMatrix<C64>> {
    gate.check_levels(d)?;
    let mut u = DMatrix::<C64>::identity(d * d, d * d);
    let (mi, mj) = (gate.m_i as usize, gate.m_j as usize);
    let a = pair_index(mi, mj, d);
    let b = pair_index(mi + 1, mj - 1, d);
    let (s, c) = gate.theta.sin_cos();
    let phase = C64::from_polar(1.0, gate.phi);
    u[(a, a)] = C64::new(c, 0.0);
    u[(b, a)] = phase * s;
    u[(a, b)] = C64::new(-s, 0.0);
    u[(b, b)] = phase * c;
    Ok(u)
}

/// Which wire of the pair an elementary operation touches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wire {
    /// Qudit `i`, whose digit is raised.
    Raise,
    /// Qudit `j`, whose digit is lowered.
    Lower,
}

/// A singly-controlled one-qudit operation inside the Gray gate circuit.
#[derive(Clone, Debug, PartialEq)]
pub enum ElementaryOp {
    /// `X^shift` on `target` when `control` holds `control_value` (`shift = -1` is `X†`).
    Shift { target: Wire, control: Wire, control_value: u8, shift: i8 },
    /// Givens rotation `R_{upper, upper-1}(θ, φ)` on `target` when `control` holds `control_value`.
    Rotation { target: Wire, control: Wire, control_value: u8, upper: u8, theta: f64, phi: f64 },
}

impl ElementaryOp {
    fn control(&self) -> (Wire, u8) {
        match *self {
            ElementaryOp::Shift { control, control_value, .. }
            | ElementaryOp::Rotation { control, control_value, .. } => (control, control_value),
        }
    }

    fn target(&self) -> Wire {
        match *self {
            ElementaryOp::Shift { target, .. } | ElementaryOp::Rotation { target, .. } => target,
        }
    }

    /// The single-qudit matrix applied to the target when the control fires.
    pub fn local_matrix(&self, d: usize) -> DMatrix<C64> {
        match *self {
            ElementaryOp::Shift { shift, .. } => {
                let mut m = DMatrix::<C64>::zeros(d, d);
                for mu in 0..d {
                    let to = (mu as i64 + shift as i64).rem_euclid(d as i64) as usize;
                    m[(to, mu)] = C64::new(1.0, 0.0);
                }
                m
            }
            ElementaryOp::Rotation { upper, theta, phi, .. } => {
                let mut m = DMatrix::<C64>::identity(d, d);
                let (hi, lo) = (upper as usize, upper as usize - 1);
                let (s, c) = theta.sin_cos();
                let phase = C64::from_polar(1.0, phi);
                m[(hi, hi)] = C64::new(c, 0.0);
                m[(hi, lo)] = C64::new(-s, 0.0);
                m[(lo, hi)] = phase * s;
                m[(lo, lo)] = phase * c;
                m
            }
        }
    }

    /// The controlled operation as a `d² × d²` pair-space matrix.
    pub fn pair_matrix(&self, d: usize) -> DMatrix<C64> {
        let local = self.local_matrix(d);
        let (control, value) = self.control();
        let target = self.target();
        let mut u = DMatrix::<C64>::zeros(d * d, d * d);
        for mu in 0..d {
            for nu in 0..d {
                let col = pair_index(mu, nu, d);
                let control_digit = if control == Wire::Raise { mu } else { nu };
                if control_digit != value as usize {
                    u[(col, col)] = C64::new(1.0, 0.0);
                    continue;
                }
                let from = if target == Wire::Raise { mu } else { nu };
                for to in 0..d {
                    let row = if target == Wire::Raise { pair_index(to, nu, d) } else { pair_index(mu, to, d) };
                    u[(row, col)] += local[(to, from)];
                }
            }
        }
        u
    }
}

/// Controlled-X on `i`, controlled rotation on `j`, controlled-X† on `i`, in
/// application order.
pub fn gray_gate_decomposition(gate: &GrayGate, d: usize) -> Result<[ElementaryOp; 3]> {
    gate.check_levels(d)?;
    let shift =
        |s| ElementaryOp::Shift { target: Wire::Raise, control: Wire::Lower, control_value: gate.m_j, shift: s };
    Ok([
        shift(1),
        ElementaryOp::Rotation {
            target: Wire::Lower,
            control: Wire::Raise,
            control_value: gate.m_i + 1,
            upper: gate.m_j,
            theta: gate.theta,
            phi: gate.phi,
        },
        shift(-1),
    ])
}

/// Product of the decomposition's pair matrices (last operation leftmost).
pub fn decomposition_matrix(ops: &[ElementaryOp], d: usize) -> DMatrix<C64> {
    ops.iter().fold(DMatrix::identity(d * d, d * d), |acc, op| op.pair_matrix(d) * acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Control;

    fn gate(m_i: u8, m_j: u8, theta: f64, phi: f64) -> GrayGate {
        GrayGate { i: 2, j: 1, m_i, m_j, theta, phi, controls: Vec::<Control>::new() }
    }

    fn max_abs(m: &DMatrix<C64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn zero_angles_give_identity() {
        for d in 2..=4 {
            let g = gate(0, 1, 0.0, 0.0);
            let u = gray_gate_matrix(&g, d).unwrap();
            assert_eq!(u, DMatrix::identity(d * d, d * d));
            let ops = gray_gate_decomposition(&g, d).unwrap();
            assert!(max_abs(&(decomposition_matrix(&ops, d) - DMatrix::identity(d * d, d * d))) < 1e-15);
        }
    }

    #[test]
    fn qubit_case_is_a_real_rotation() {
        let theta = 0.7f64;
        let (s, c) = theta.sin_cos();
        let u = gray_gate_matrix(&gate(0, 1, theta, 0.0), 2).unwrap();
        let (i01, i10) = (pair_index(0, 1, 2), pair_index(1, 0, 2));
        // |01⟩ -> c|01⟩ + s|10⟩ and |10⟩ -> c|10⟩ - s|01⟩ in (μ_i, ν_j) labels
        assert_eq!(u[(i01, i01)], C64::new(c, 0.0));
        assert_eq!(u[(i10, i01)], C64::new(s, 0.0));
        assert_eq!(u[(i10, i10)], C64::new(c, 0.0));
        assert_eq!(u[(i01, i10)], C64::new(-s, 0.0));
        for fixed in [pair_index(0, 0, 2), pair_index(1, 1, 2)] {
            assert_eq!(u[(fixed, fixed)], C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn qutrit_decomposition_matches() {
        let g = gate(1, 1, std::f64::consts::PI / 3.0, std::f64::consts::PI / 5.0);
        let direct = gray_gate_matrix(&g, 3).unwrap();
        let ops = gray_gate_decomposition(&g, 3).unwrap();
        assert!(max_abs(&(decomposition_matrix(&ops, 3) - direct)) < 1e-13);
    }

    #[test]
    fn level_bounds_are_checked() {
        assert!(gray_gate_matrix(&gate(2, 1, 0.1, 0.0), 3).is_err());
        assert!(gray_gate_matrix(&gate(0, 0, 0.1, 0.0), 3).is_err());
        assert!(gray_gate_matrix(&gate(0, 3, 0.1, 0.0), 3).is_err());
        assert!(gray_gate_decomposition(&gate(1, 1, 0.1, 0.0), 2).is_err());
    }
}
