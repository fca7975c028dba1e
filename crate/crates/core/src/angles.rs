//! Rotation angles `(θ_l, φ_l)` that build a target amplitude list one Gray
//! step at a time.
//!
//! After the X-power preparation the circuit holds `|m[0]⟩`. Gray gate `l`
//! splits whatever amplitude sits on `m[l]` into `cos θ_l` on `m[l]` and
//! `e^{iφ_l} sin θ_l` on `m[l+1]`, so the final amplitudes are
//!
//! ```text
//! a_l     = (∏_{j<l} e^{iφ_j} sin θ_j) cos θ_l     for l <= D-2
//! a_{D-1} =  ∏_{j<=D-2} e^{iφ_j} sin θ_j
//! ```
//!
//! and the angles follow by peeling off one amplitude at a time.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Input amplitudes must satisfy `|Σ|a|² - 1| <= NORM_TOL`.
pub const NORM_TOL: f64 = 1e-9;

/// Amplitudes `a_0 … a_{D-1}` ordered along a Gray code.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeList {
    values: Vec<C64>,
}

impl AmplitudeList {
    pub fn new(values: Vec<C64>) -> Self {
        AmplitudeList { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        AmplitudeList { values: values.iter().map(|&x| C64::new(x, 0.0)).collect() }
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|a| a.im == 0.0)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            Err(Error::NotNormalized { norm_sqr })
        } else {
            Ok(())
        }
    }

    /// Rescaled to unit norm; errors on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(AmplitudeList { values: self.values.iter().map(|a| a / norm).collect() })
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &AmplitudeList) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum::<C64>().norm()
    }
}

/// Angles for the `D - 1` Gray gates, plus the global phase applied first.
///
/// `rescale` is the unit complex number the amplitudes were multiplied by so
/// that amplitude `anchor` became real and positive; it is `1` with
/// `anchor = 0` whenever `a_0 >= 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleSchedule {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    #[serde(with = "complex_pair")]
    pub rescale: C64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub anchor: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

mod complex_pair {
    use num_complex::Complex64 as C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(C64::new(re, im))
    }
}

impl AngleSchedule {
    fn identity(len: usize) -> Self {
        AngleSchedule { thetas: vec![0.0; len], phis: vec![0.0; len], rescale: C64::new(1.0, 0.0), anchor: 0 }
    }

    /// Number of amplitudes this schedule produces, `D`.
    pub fn dimension(&self) -> usize {
        self.thetas.len() + 1
    }

    pub fn is_real(&self) -> bool {
        self.phis.iter().all(|&p| p == 0.0)
    }

    pub fn reconstruct(&self) -> AmplitudeList {
        reconstruct_amplitudes(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let schedule: AngleSchedule = serde_json::from_str(text)?;
        if schedule.thetas.len() != schedule.phis.len() {
            return Err(Error::LengthMismatch { expected: schedule.thetas.len(), found: schedule.phis.len() });
        }
        Ok(schedule)
    }
}

/// `atan2(y, x)` with the zero-tail convention `atan2(0, 0) = 0` (also for `-0.0`).
fn angle(y: f64, x: f64) -> f64 {
    if y == 0.0 && x == 0.0 {
        0.0
    } else {
        y.atan2(x)
    }
}

/// `tails[l] = Σ_{j>l} w_j`.
fn tail_sums(weights: impl DoubleEndedIterator<Item = f64> + ExactSizeIterator) -> Vec<f64> {
    let mut tails = vec![0.0; weights.len()];
    let mut acc = 0.0;
    for (l, w) in weights.enumerate().rev() {
        tails[l] = acc;
        acc += w;
    }
    tails
}

/// Angles for real amplitudes; every `φ_l` is zero.
///
/// `θ_l = atan2(√(Σ_{j>l} a_j²), a_l)` for `l <= D-3` and
/// `θ_{D-2} = atan2(a_{D-1}, a_{D-2})`, so a negative last pair is absorbed
/// by the sign of the final angle.
pub fn angles_real(amps: &AmplitudeList) -> Result<AngleSchedule> {
    if let Some(index) = amps.values().iter().position(|a| a.im != 0.0) {
        return Err(Error::NotReal { index });
    }
    amps.check_normalized()?;
    let dim = amps.len();
    if dim <= 1 {
        // no angles to carry a sign, so a lone negative amplitude becomes a global phase
        let rescale = if amps.values().first().is_some_and(|a| a.re < 0.0) { -1.0 } else { 1.0 };
        return Ok(AngleSchedule { rescale: C64::new(rescale, 0.0), ..AngleSchedule::identity(0) });
    }
    let a: Vec<f64> = amps.values().iter().map(|z| z.re).collect();
    let tails = tail_sums(a.iter().map(|x| x * x));
    let mut thetas: Vec<f64> = (0..dim - 2).map(|l| angle(tails[l].sqrt(), a[l])).collect();
    thetas.push(angle(a[dim - 1], a[dim - 2]));
    Ok(AngleSchedule { phis: vec![0.0; thetas.len()], thetas, rescale: C64::new(1.0, 0.0), anchor: 0 })
}

/// Angles for complex amplitudes.
///
/// The list is first multiplied by `|a_0| / a_0` so that `a_0` is real and
/// positive; when `a_0 = 0` the first nonzero amplitude plays that role and
/// is recorded as the schedule's `anchor`. The `θ_l` follow from the moduli,
/// and `φ_l = arg(a_{l+1} / (a_l tan θ_l cos θ_{l+1}))`, which equals the
/// phase step from `a_l` to `a_{l+1}` since the trigonometric factors are
/// non-negative. A zero amplitude inherits the phase of its predecessor, so
/// `φ_l = 0` whenever `a_{l+1} = 0`.
pub fn angles_complex(amps: &AmplitudeList) -> Result<AngleSchedule> {
    amps.check_normalized()?;
    let values = amps.values();
    let anchor = values.iter().position(|a| *a != C64::new(0.0, 0.0)).ok_or(Error::ZeroVector)?;
    let pivot = values[anchor];
    let rescale = if pivot.im == 0.0 && pivot.re > 0.0 { C64::new(1.0, 0.0) } else { pivot.norm() / pivot };
    let dim = values.len();
    if dim <= 1 {
        return Ok(AngleSchedule { rescale, anchor, ..AngleSchedule::identity(0) });
    }
    let b: Vec<C64> = values.iter().map(|a| a * rescale).collect();
    let moduli: Vec<f64> = b.iter().map(|z| z.norm()).collect();
    let tails = tail_sums(moduli.iter().map(|x| x * x));
    let mut thetas: Vec<f64> = (0..dim - 2).map(|l| angle(tails[l].sqrt(), moduli[l])).collect();
    thetas.push(angle(moduli[dim - 1], moduli[dim - 2]));

    let one = C64::new(1.0, 0.0);
    let mut phases = Vec::with_capacity(dim);
    let mut current = one;
    for (z, &r) in b.iter().zip(&moduli) {
        if r > 0.0 {
            current = z / r;
        }
        phases.push(current);
    }
    let phis = phases.windows(2).map(|w| (w[1] * w[0].conj()).arg()).collect();
    Ok(AngleSchedule { thetas, phis, rescale, anchor })
}

/// Real schedule when every amplitude is real, complex otherwise.
pub fn angles_auto(amps: &AmplitudeList) -> Result<AngleSchedule> {
    if amps.is_real() {
        angles_real(amps)
    } else {
        angles_complex(amps)
    }
}

/// Amplitudes produced by a schedule, before undoing its `rescale`.
pub fn reconstruct_amplitudes(schedule: &AngleSchedule) -> AmplitudeList {
    let mut values = Vec::with_capacity(schedule.dimension());
    let mut prefix = C64::new(1.0, 0.0);
    for (&theta, &phi) in schedule.thetas.iter().zip(&schedule.phis) {
        values.push(prefix * theta.cos());
        prefix *= C64::from_polar(theta.sin(), phi);
    }
    values.push(prefix);
    AmplitudeList::new(values)
}
