//! Coordinate Bethe ansatz amplitudes for the integrable spin-s chain.
//!
//! Roots `u_j` enter through `z_j = e^{i k_j} = (u_j + is)/(u_j - is)`. The
//! amplitude of a ditstring `m` is
//!
//! ```text
//! a(x) ∏_j √C(2s, m_j),   a(x) = Σ_P A_P ∏_j z_{P(j)}^{x_j}
//! ```
//!
//! where `x` lists position `j` exactly `m_j` times in ascending order.

use itertools::Itertools;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{amplitudes_along, AmplitudeProvider};
use crate::angles::AmplitudeList;
use crate::compositions::{binomial, CompositionSpec, Ditstring, GrayCode};
use crate::error::{Error, Result};
use crate::limits::Limits;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Roots `u_1 … u_k` for an `n`-site chain of spin `two_s / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetheRoots {
    pub n: usize,
    pub two_s: usize,
    pub u: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct RootsFile {
    n: usize,
    k: usize,
    s_times_2: usize,
    u: Vec<[f64; 2]>,
}

impl BetheRoots {
    pub fn new(n: usize, two_s: usize, u: Vec<C64>) -> Result<Self> {
        if n == 0 || two_s == 0 {
            return Err(Error::InvalidSpec(format!(
                "Bethe roots need n >= 1 and two_s >= 1, got n = {n}, two_s = {two_s}"
            )));
        }
        Ok(BetheRoots { n, two_s, u })
    }

    pub fn k(&self) -> usize {
        self.u.len()
    }

    pub fn s(&self) -> f64 {
        self.two_s as f64 / 2.0
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RootsFile = serde_json::from_str(text)?;
        if file.k != file.u.len() {
            return Err(Error::LengthMismatch { expected: file.k, found: file.u.len() });
        }
        Self::new(file.n, file.s_times_2, file.u.iter().map(|&[re, im]| C64::new(re, im)).collect())
    }

    pub fn to_json(&self) -> String {
        let file = RootsFile {
            n: self.n,
            k: self.k(),
            s_times_2: self.two_s,
            u: self.u.iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }

    /// `e^{i k_j} = (u_j + is)/(u_j - is)`.
    pub fn exp_momenta(&self) -> Result<Vec<C64>> {
        let is = I * self.s();
        self.u
            .iter()
            .enumerate()
            .map(|(j, &u)| {
                let (num, den) = (u + is, u - is);
                if num == C64::new(0.0, 0.0) || den == C64::new(0.0, 0.0) {
                    Err(Error::Pole(format!("root {} = {u} sits at ±is", j + 1)))
                } else {
                    Ok(num / den)
                }
            })
            .collect()
    }

    /// Momenta `k_j` on the principal branch of the logarithm.
    pub fn momenta(&self) -> Result<Vec<C64>> {
        Ok(self.exp_momenta()?.into_iter().map(|z| -I * z.ln()).collect())
    }

    /// `|z_j^n - ∏_{l≠j} (u_j - u_l + i)/(u_j - u_l - i)|` for each root.
    pub fn residual(&self) -> Result<Vec<f64>> {
        let z = self.exp_momenta()?;
        (0..self.k())
            .map(|j| {
                let mut rhs = C64::new(1.0, 0.0);
                for l in (0..self.k()).filter(|&l| l != j) {
                    let diff = self.u[j] - self.u[l];
                    if diff - I == C64::new(0.0, 0.0) {
                        return Err(Error::Pole(format!("roots {} and {} differ by i", j + 1, l + 1)));
                    }
                    rhs *= (diff + I) / (diff - I);
                }
                Ok((z[j].powi(self.n as i32) - rhs).norm())
            })
            .collect()
    }

    /// `E = -Σ_j 2s / (u_j² + s²)`, complex in general.
    pub fn energy_complex(&self) -> Result<C64> {
        let s = self.s();
        self.u.iter().enumerate().try_fold(C64::new(0.0, 0.0), |acc, (j, &u)| {
            let den = u * u + s * s;
            if den == C64::new(0.0, 0.0) {
                Err(Error::Pole(format!("root {} = {u} gives u² + s² = 0", j + 1)))
            } else {
                Ok(acc - 2.0 * s / den)
            }
        })
    }

    /// Real part of [`energy_complex`](Self::energy_complex).
    pub fn energy(&self) -> Result<f64> {
        Ok(self.energy_complex()?.re)
    }
}

/// Bethe provider with the permutation coefficients `A_P` precomputed.
#[derive(Clone, Debug)]
pub struct Bethe {
    n: usize,
    two_s: usize,
    perms: Vec<(Vec<usize>, C64)>,
    /// `powers[j][x] = z_j^x` for `x = 0 … n`.
    powers: Vec<Vec<C64>>,
}

impl Bethe {
    pub fn new(roots: &BetheRoots, limits: &Limits) -> Result<Self> {
        let k = roots.k();
        if k > limits.max_bethe_k {
            return Err(Error::PermutationCap { k, cap: limits.max_bethe_k });
        }
        let z = roots.exp_momenta()?;
        for (a, b) in (0..k).tuple_combinations() {
            if (z[a] - z[b]).norm() <= 1e-13 * z[a].norm().max(1.0) {
                return Err(Error::CoincidentMomenta(a + 1, b + 1));
            }
        }
        let inv_two_s = 1.0 / roots.two_s as f64;
        let one = C64::new(1.0, 0.0);
        let perms = (0..k)
            .permutations(k)
            .map(|p| {
                let coeff = (0..k).tuple_combinations().fold(one, |acc, (j, l)| {
                    let (zj, zl) = (z[p[j]], z[p[l]]);
                    acc * (one - inv_two_s * (zj - one) * (zl - one) / (zj - zl))
                });
                (p, coeff)
            })
            .collect();
        let powers = z.iter().map(|&zj| (0..=roots.n as i32).map(|x| zj.powi(x)).collect()).collect();
        Ok(Bethe { n: roots.n, two_s: roots.two_s, perms, powers })
    }

    /// `a(x)` for a nondecreasing list of positions `x_j ∈ 1..=n`.
    pub fn wavefunction(&self, x: &[usize]) -> C64 {
        self.perms
            .iter()
            .map(|(p, coeff)| x.iter().enumerate().fold(*coeff, |acc, (j, &xj)| acc * self.powers[p[j]][xj]))
            .sum()
    }
}

impl AmplitudeProvider for Bethe {
    fn amplitude(&self, m: &Ditstring) -> Result<C64> {
        let k = self.powers.len();
        if m.len() != self.n || m.digit_sum() != k || m.digits().iter().any(|&x| x as usize > self.two_s) {
            return Err(Error::NotInSector(format!("{m} of n = {}, k = {k}, two_s = {}", self.n, self.two_s)));
        }
        let x: Vec<usize> =
            m.digits().iter().enumerate().flat_map(|(r, &c)| std::iter::repeat_n(r + 1, c as usize)).collect();
        let weight: f64 = m
            .digits()
            .iter()
            .map(|&c| (binomial(self.two_s as u128, c as u128).expect("small binomial") as f64).sqrt())
            .product();
        Ok(self.wavefunction(&x) * weight)
    }
}

fn check_spec(spec: &CompositionSpec, roots: &BetheRoots) -> Result<()> {
    if spec.n() != roots.n || spec.k() != roots.k() || spec.two_s() != roots.two_s {
        return Err(Error::InvalidSpec(format!(
            "roots are for n = {}, k = {}, two_s = {} but the code covers {spec}",
            roots.n,
            roots.k(),
            roots.two_s
        )));
    }
    Ok(())
}

/// Normalized Bethe amplitudes along `code` under the default [`Limits`].
pub fn bethe_amplitudes(code: &GrayCode, roots: &BetheRoots) -> Result<AmplitudeList> {
    bethe_amplitudes_with(code, roots, &Limits::default())
}

pub fn bethe_amplitudes_with(code: &GrayCode, roots: &BetheRoots, limits: &Limits) -> Result<AmplitudeList> {
    check_spec(code.spec(), roots)?;
    amplitudes_along(code, &Bethe::new(roots, limits)?)
}
