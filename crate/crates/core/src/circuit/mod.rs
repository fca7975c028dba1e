//! Preparation circuits: X-power gates that write `m[0]`, followed by one
//! controlled Gray gate per Gray code step.
//!
//! Qudit indices are 1-based, matching ditstring positions.

mod controls;
mod gate;

use serde::{Deserialize, Serialize};

pub use controls::{control_schedule, ControlSchedule, StepControls};
pub use gate::{decomposition_matrix, gray_gate_decomposition, gray_gate_matrix, ElementaryOp, Wire};

use crate::angles::AngleSchedule;
use crate::compositions::{gray_steps, GrayCode};
use crate::error::{Error, Result};

/// Fires when qudit `qudit` holds `value`. Serialized as `[qudit, value]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, u8)", into = "(usize, u8)")]
pub struct Control {
    pub qudit: usize,
    pub value: u8,
}

impl From<(usize, u8)> for Control {
    fn from((qudit, value): (usize, u8)) -> Self {
        Control { qudit, value }
    }
}

impl From<Control> for (usize, u8) {
    fn from(c: Control) -> Self {
        (c.qudit, c.value)
    }
}

/// Controlled two-level rotation between `|m_i, m_j⟩` and `|m_i+1, m_j-1⟩` on qudits `(i, j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrayGate {
    pub i: usize,
    pub j: usize,
    pub m_i: u8,
    pub m_j: u8,
    pub theta: f64,
    pub phi: f64,
    pub controls: Vec<Control>,
}

impl GrayGate {
    /// Level bounds only: `m_i + 1` and `m_j - 1` must be valid levels.
    pub fn check_levels(&self, d: usize) -> Result<()> {
        if self.i == self.j {
            return Err(Error::LevelBound(format!("raise and lower qudit coincide ({})", self.i)));
        }
        if self.m_i as usize + 1 >= d {
            return Err(Error::LevelBound(format!("m_i = {} leaves no room to raise with d = {d}", self.m_i)));
        }
        if self.m_j == 0 || self.m_j as usize >= d {
            return Err(Error::LevelBound(format!("m_j = {} is not in 1..{d}", self.m_j)));
        }
        Ok(())
    }

    /// Full structural check against an `n`-qudit, `d`-level register.
    pub fn validate(&self, n: usize, d: usize) -> Result<()> {
        for q in [self.i, self.j] {
            if q == 0 || q > n {
                return Err(Error::QuditIndex { index: q, n });
            }
        }
        self.check_levels(d)?;
        let mut seen = vec![false; n + 1];
        seen[self.i] = true;
        seen[self.j] = true;
        for c in &self.controls {
            if c.qudit == 0 || c.qudit > n {
                return Err(Error::QuditIndex { index: c.qudit, n });
            }
            if std::mem::replace(&mut seen[c.qudit], true) {
                return Err(Error::LevelBound(format!("qudit {} is used twice by one gate", c.qudit)));
            }
            if c.value as usize >= d {
                return Err(Error::LevelBound(format!(
                    "control value {} on qudit {} exceeds {}",
                    c.value,
                    c.qudit,
                    d - 1
                )));
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.theta == 0.0 && self.phi == 0.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    /// `X^power` on `target`, with `X|μ⟩ = |μ+1 mod d⟩`.
    X {
        target: usize,
        power: u8,
    },
    Gray(GrayGate),
}

impl Gate {
    pub fn validate(&self, n: usize, d: usize) -> Result<()> {
        match self {
            Gate::X { target, power } => {
                if *target == 0 || *target > n {
                    return Err(Error::QuditIndex { index: *target, n });
                }
                if *power as usize >= d {
                    return Err(Error::LevelBound(format!("X power {power} should be reduced mod {d}")));
                }
                Ok(())
            }
            Gate::Gray(g) => g.validate(n, d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub n: usize,
    pub d: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d < 2 {
            return Err(Error::ShapeMismatch(format!("register n = {}, d = {}", self.n, self.d)));
        }
        self.gates.iter().try_for_each(|g| g.validate(self.n, self.d))
    }

    pub fn gray_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Gray(_))).count()
    }

    pub fn x_gate_count(&self) -> usize {
        self.gates.len() - self.gray_gate_count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let circuit: Circuit = serde_json::from_str(text)?;
        circuit.validate()?;
        Ok(circuit)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssembleOptions {
    /// Drop Gray gates with `θ = φ = 0`.
    pub elide_identity: bool,
    /// Use the unpruned control sets.
    pub naive_controls: bool,
}

/// X powers for `m[0]`, then Gray gate `l` with angles `(θ_l, φ_l)` and the
/// step's controls, for `l = 0 … D-2`.
pub fn assemble_circuit(
    code: &GrayCode,
    schedule: &AngleSchedule,
    controls: &ControlSchedule,
    options: AssembleOptions,
) -> Result<Circuit> {
    let steps = gray_steps(code)?;
    for found in [schedule.thetas.len(), schedule.phis.len(), controls.steps.len()] {
        if found != steps.len() {
            return Err(Error::LengthMismatch { expected: steps.len(), found });
        }
    }
    let spec = code.spec();
    let mut gates: Vec<Gate> = code.entries()[0]
        .digits()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m != 0)
        .map(|(r, &m)| Gate::X { target: r + 1, power: m })
        .collect();
    for (step, ctrl) in steps.iter().zip(&controls.steps) {
        let gate = GrayGate {
            i: step.i,
            j: step.j,
            m_i: step.m_i,
            m_j: step.m_j,
            theta: schedule.thetas[step.l],
            phi: schedule.phis[step.l],
            controls: if options.naive_controls { ctrl.naive.clone() } else { ctrl.pruned.clone() },
        };
        if options.elide_identity && gate.is_identity() {
            continue;
        }
        gates.push(Gate::Gray(gate));
    }
    Ok(Circuit { n: spec.n(), d: spec.d(), gates })
}
