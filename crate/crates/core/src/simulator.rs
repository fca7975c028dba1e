//! Dense state-vector simulation of `n` qudits with `d` levels.
//!
//! Basis index `b = Σ_r m_r d^(r-1)`: qudit 1 is the least significant digit,
//! matching the right-to-left labels of displayed ditstrings.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::angles::AmplitudeList;
use crate::circuit::{Circuit, Gate, GrayGate};
use crate::compositions::{Ditstring, GrayCode};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    d: usize,
    amps: Vec<C64>,
}

fn checked_len(n: usize, d: usize, cap: usize) -> Result<usize> {
    let len = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if len > cap as u128 {
        return Err(Error::StateTooLarge { len, cap });
    }
    Ok(len as usize)
}

/// Calls `f` with every offset `Σ_p v_p strides[p]`, `v_p ∈ 0..d`.
fn for_each_offset(strides: &[usize], d: usize, mut f: impl FnMut(usize)) {
    let mut digits = vec![0usize; strides.len()];
    let mut offset = 0usize;
    loop {
        f(offset);
        let mut p = 0;
        loop {
            if p == strides.len() {
                return;
            }
            digits[p] += 1;
            offset += strides[p];
            if digits[p] < d {
                break;
            }
            offset -= d * strides[p];
            digits[p] = 0;
            p += 1;
        }
    }
}

impl StateVector {
    /// `|0…0⟩` under the default [`Limits`].
    pub fn zero_state(n: usize, d: usize) -> Result<Self> {
        Self::zero_state_with(n, d, &Limits::default())
    }

    pub fn zero_state_with(n: usize, d: usize, limits: &Limits) -> Result<Self> {
        if n == 0 || d < 2 {
            return Err(Error::ShapeMismatch(format!("register n = {n}, d = {d}")));
        }
        let len = checked_len(n, d, limits.max_state_len)?;
        let mut amps = vec![C64::new(0.0, 0.0); len];
        amps[0] = C64::new(1.0, 0.0);
        Ok(StateVector { n, d, amps })
    }

    /// Wraps raw amplitudes; the length must be `d^n`.
    pub fn from_amplitudes(n: usize, d: usize, amps: Vec<C64>) -> Result<Self> {
        let len = checked_len(n, d, usize::MAX)?;
        if amps.len() != len {
            return Err(Error::LengthMismatch { expected: len, found: amps.len() });
        }
        Ok(StateVector { n, d, amps })
    }

    /// The state `Σ_l a_l |m[l]⟩` for amplitudes ordered along `code`.
    pub fn from_sector(code: &GrayCode, amps: &AmplitudeList, limits: &Limits) -> Result<Self> {
        if code.len() != amps.len() {
            return Err(Error::LengthMismatch { expected: code.len(), found: amps.len() });
        }
        let spec = code.spec();
        let mut state = StateVector::zero_state_with(spec.n(), spec.d(), limits)?;
        state.amps[0] = C64::new(0.0, 0.0);
        for (m, a) in code.entries().iter().zip(amps.values()) {
            let b = state.encode(m)?;
            state.amps[b] = *a;
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn stride(&self, r: usize) -> usize {
        self.d.pow(r as u32 - 1)
    }

    pub fn encode(&self, m: &Ditstring) -> Result<usize> {
        if m.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: m.len() });
        }
        m.digits().iter().rev().try_fold(0usize, |acc, &x| {
            if x as usize >= self.d {
                Err(Error::LevelBound(format!("digit {x} with d = {}", self.d)))
            } else {
                Ok(acc * self.d + x as usize)
            }
        })
    }

    pub fn decode(&self, mut b: usize) -> Ditstring {
        let digits = (0..self.n)
            .map(|_| {
                let x = (b % self.d) as u8;
                b /= self.d;
                x
            })
            .collect();
        Ditstring::new(digits)
    }

    pub fn amplitude_of(&self, m: &Ditstring) -> Result<C64> {
        Ok(self.amps[self.encode(m)?])
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n, self.d)?;
        match gate {
            Gate::X { target, power } => {
                self.apply_shift(*target, *power as usize);
                Ok(())
            }
            Gate::Gray(g) => {
                self.apply_gray(g, false);
                Ok(())
            }
        }
    }

    /// Applies the inverse of `gate`.
    pub fn apply_gate_adjoint(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n, self.d)?;
        match gate {
            Gate::X { target, power } => {
                self.apply_shift(*target, (self.d - *power as usize) % self.d);
                Ok(())
            }
            Gate::Gray(g) => {
                self.apply_gray(g, true);
                Ok(())
            }
        }
    }

    fn apply_shift(&mut self, target: usize, power: usize) {
        if power == 0 {
            return;
        }
        let d = self.d;
        let stride = self.stride(target);
        let free: Vec<usize> = (1..=self.n).filter(|&r| r != target).map(|r| self.stride(r)).collect();
        let mut buf = vec![C64::new(0.0, 0.0); d];
        let amps = &mut self.amps;
        for_each_offset(&free, d, |base| {
            for (mu, slot) in buf.iter_mut().enumerate() {
                *slot = amps[base + mu * stride];
            }
            for (mu, &value) in buf.iter().enumerate() {
                amps[base + ((mu + power) % d) * stride] = value;
            }
        });
    }

    fn apply_gray(&mut self, g: &GrayGate, adjoint: bool) {
        let (si, sj) = (self.stride(g.i), self.stride(g.j));
        let mut base = g.m_i as usize * si + g.m_j as usize * sj;
        let mut fixed = vec![false; self.n + 1];
        fixed[g.i] = true;
        fixed[g.j] = true;
        for c in &g.controls {
            base += c.value as usize * self.stride(c.qudit);
            fixed[c.qudit] = true;
        }
        let free: Vec<usize> = (1..=self.n).filter(|&r| !fixed[r]).map(|r| self.stride(r)).collect();
        let (s, c) = g.theta.sin_cos();
        let phase = C64::from_polar(1.0, if adjoint { -g.phi } else { g.phi });
        let amps = &mut self.amps;
        for_each_offset(&free, self.d, |off| {
            let a = base + off;
            let b = a + si - sj;
            let (x, y) = (amps[a], amps[b]);
            if adjoint {
                // [[c, e^{-iφ} s], [-s, e^{-iφ} c]]
                amps[a] = x * c + phase * y * s;
                amps[b] = -x * s + phase * y * c;
            } else {
                // [[c, -s], [e^{iφ} s, e^{iφ} c]]
                amps[a] = x * c - y * s;
                amps[b] = phase * (x * s + y * c);
            }
        });
    }
}

/// Runs `circuit` from `|0…0⟩` under the default [`Limits`].
pub fn run(circuit: &Circuit) -> Result<StateVector> {
    run_with(circuit, &Limits::default())
}

pub fn run_with(circuit: &Circuit, limits: &Limits) -> Result<StateVector> {
    circuit.validate()?;
    let mut state = StateVector::zero_state_with(circuit.n, circuit.d, limits)?;
    for gate in &circuit.gates {
        state.apply_gate(gate)?;
    }
    Ok(state)
}

/// `|⟨a|b⟩|`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.n != b.n || a.d != b.d {
        return Err(Error::ShapeMismatch(format!("({}, {}) vs ({}, {})", a.n, a.d, b.n, b.d)));
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum::<C64>().norm())
}

/// One row of a state dump.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmplitudeRow {
    pub ditstring: String,
    pub re: f64,
    pub im: f64,
}

impl StateVector {
    /// Entries with `|amplitude| > threshold`, in basis-index order.
    pub fn rows_above(&self, threshold: f64) -> Vec<AmplitudeRow> {
        let two_s = self.d - 1;
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > threshold)
            .map(|(b, a)| AmplitudeRow { ditstring: self.decode(b).render(two_s), re: a.re, im: a.im })
            .collect()
    }

    pub fn dump_json(&self, threshold: f64) -> String {
        serde_json::to_string(&self.rows_above(threshold)).expect("plain data serializes")
    }

    pub fn dump_csv(&self, threshold: f64) -> String {
        let mut out = String::from("ditstring,re,im\n");
        for row in self.rows_above(threshold) {
            // comma-separated ditstrings get quoted
            if row.ditstring.contains(',') {
                out.push_str(&format!("\"{}\",{:?},{:?}\n", row.ditstring, row.re, row.im));
            } else {
                out.push_str(&format!("{},{:?},{:?}\n", row.ditstring, row.re, row.im));
            }
        }
        out
    }
}
