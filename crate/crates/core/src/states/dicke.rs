//! Spin-s Dicke states `|D^(s)_{n,k}⟩`.

use num_complex::Complex64 as C64;

use super::AmplitudeProvider;
use crate::angles::AmplitudeList;
use crate::compositions::{CompositionSpec, Ditstring, GrayCode};
use crate::error::{Error, Result};

fn binomial_f64(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (1..=r).fold(1.0, |acc, i| acc * (n - r + i) as f64 / i as f64)
}

/// `√(∏_j C(2s, m_j) / C(2sn, k))`.
pub fn dicke_amplitude(spec: &CompositionSpec, m: &Ditstring) -> Result<f64> {
    if !spec.contains(m) {
        return Err(Error::NotInSector(format!("{} of {spec}", m.render(spec.two_s()))));
    }
    let two_s = spec.two_s();
    let num: f64 = m.digits().iter().map(|&x| binomial_f64(two_s, x as usize)).product();
    Ok((num / binomial_f64(two_s * spec.n(), spec.k())).sqrt())
}

#[derive(Clone, Debug)]
pub struct Dicke {
    pub spec: CompositionSpec,
}

impl AmplitudeProvider for Dicke {
    fn amplitude(&self, m: &Ditstring) -> Result<C64> {
        Ok(C64::new(dicke_amplitude(&self.spec, m)?, 0.0))
    }
}

/// Dicke amplitudes along `code`. The formula is normalized on the sector,
/// so no rescaling is applied.
pub fn dicke_amplitudes(code: &GrayCode) -> Result<AmplitudeList> {
    let spec = code.spec();
    spec.require_nonempty()?;
    let values = code.entries().iter().map(|m| dicke_amplitude(spec, m)).collect::<Result<Vec<_>>>()?;
    Ok(AmplitudeList::from_real(&values))
}
