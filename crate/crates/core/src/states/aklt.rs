//! Spin-1 AKLT ground state from its bond-dimension-2 matrix product form.

use num_complex::Complex64 as C64;
use std::f64::consts::FRAC_1_SQRT_2;

use super::{amplitudes_along, AmplitudeProvider};
use crate::angles::AmplitudeList;
use crate::compositions::{Ditstring, GrayCode};
use crate::error::{Error, Result};

type Mat2 = [[f64; 2]; 2];

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// The matrices `A⁰, A¹, A²`.
#[derive(Clone, Debug, PartialEq)]
pub struct MpsTriple {
    pub a: [Mat2; 3],
}

impl Default for MpsTriple {
    fn default() -> Self {
        MpsTriple {
            a: [[[0.0, 1.0], [0.0, 0.0]], [[-FRAC_1_SQRT_2, 0.0], [0.0, FRAC_1_SQRT_2]], [[0.0, 0.0], [-1.0, 0.0]]],
        }
    }
}

impl MpsTriple {
    /// `tr(A^{m_n} … A^{m_1})`.
    pub fn trace(&self, m: &Ditstring) -> Result<f64> {
        let mut p: Mat2 = [[1.0, 0.0], [0.0, 1.0]];
        for &x in m.digits().iter().rev() {
            let a = self.a.get(x as usize).ok_or_else(|| Error::LevelBound(format!("spin-1 digit {x}")))?;
            p = mul(&p, a);
        }
        Ok(p[0][0] + p[1][1])
    }
}

/// AKLT provider; every amplitude is real.
#[derive(Clone, Debug, Default)]
pub struct Aklt {
    pub mps: MpsTriple,
}

impl AmplitudeProvider for Aklt {
    fn amplitude(&self, m: &Ditstring) -> Result<C64> {
        Ok(C64::new(self.mps.trace(m)?, 0.0))
    }
}

/// Normalized AKLT amplitudes along `code`, which must cover the `(n, n, 2)` sector.
pub fn aklt_amplitudes(code: &GrayCode) -> Result<AmplitudeList> {
    let spec = code.spec();
    if spec.two_s() != 2 || spec.k() != spec.n() || spec.n() < 2 {
        return Err(Error::InvalidSpec(format!("AKLT needs n >= 2, k = n and two_s = 2, got {spec}")));
    }
    amplitudes_along(code, &Aklt::default())
}
