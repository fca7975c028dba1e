//! Bounded integer compositions and their Gray codes.
//!
//! A sector is the set of ditstrings `m = (m_n, …, m_1)` with every digit in
//! `0..=2s` and digit sum `k`. Positions are numbered from 1 at the right end
//! of the displayed string, and a [`Ditstring`] stores them in that index
//! order: `digits()[0]` is `m_1`.
//!
//! Two generators produce Gray codes over a sector: Walsh's non-recursive
//! successor rule ([`walsh_gray_code`]) and a Warnsdorff-guided backtracking
//! search for a Hamiltonian path ([`warnsdorff_gray_code`]).

mod code;
mod io;
mod walsh;
mod warnsdorff;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use code::{gray_steps, verify_gray_property, GrayCode, GrayStep, GrayViolation, ViolationKind};
pub use walsh::{walsh_gray_code, walsh_gray_code_with, walsh_initial, WalshState};
pub use warnsdorff::{warnsdorff_gray_code, warnsdorff_gray_code_with};

/// The sector `(n, k, 2s)`: `n` digits, each in `0..=two_s`, summing to `k`.
///
/// `k > n * two_s` is representable; such a sector is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompositionSpec {
    n: usize,
    k: usize,
    two_s: usize,
}

impl CompositionSpec {
    pub fn new(n: usize, k: usize, two_s: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if two_s == 0 {
            return Err(Error::InvalidSpec("2s must be at least 1".into()));
        }
        if two_s > u8::MAX as usize - 1 {
            return Err(Error::InvalidSpec(format!("2s = {two_s} exceeds {}", u8::MAX - 1)));
        }
        Ok(CompositionSpec { n, k, two_s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn two_s(&self) -> usize {
        self.two_s
    }

    /// Levels per qudit, `d = 2s + 1`.
    pub fn d(&self) -> usize {
        self.two_s + 1
    }

    pub fn is_empty(&self) -> bool {
        self.k > self.n * self.two_s
    }

    /// `Err(EmptySector)` when no ditstring has this digit sum.
    pub fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySector { n: self.n, k: self.k, two_s: self.two_s })
        } else {
            Ok(())
        }
    }

    /// Whether `m` has the right length, digit range and digit sum.
    pub fn contains(&self, m: &Ditstring) -> bool {
        m.len() == self.n && m.digits().iter().all(|&x| (x as usize) <= self.two_s) && m.digit_sum() == self.k
    }
}

impl fmt::Display for CompositionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={}, 2s={})", self.n, self.k, self.two_s)
    }
}

/// A computational-basis label `(m_n, …, m_1)`, stored in index order.
///
/// The derived ordering compares `m_1` first, so "lexicographically largest"
/// means the greedy fill from position 1 upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ditstring(Vec<u8>);

impl Ditstring {
    /// Builds from digits in index order (`digits[0]` is `m_1`).
    pub fn new(digits: Vec<u8>) -> Self {
        Ditstring(digits)
    }

    /// Parses the displayed form `m_n … m_1`, either compact (`"012"`) or
    /// comma-separated (`"0,11,2"`).
    pub fn parse_display(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut digits: Vec<u8> = if text.contains(',') {
            text.split(',')
                .map(|p| p.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad digit {p:?} in {text:?}"))))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10).map(|v| v as u8).ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {text:?}")))
                })
                .collect::<Result<_>>()?
        };
        if digits.is_empty() {
            return Err(Error::Parse("empty ditstring".into()));
        }
        digits.reverse();
        Ok(Ditstring(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Digit at 1-based position `r`.
    pub fn digit(&self, r: usize) -> u8 {
        self.0[r - 1]
    }

    pub fn digit_sum(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    /// Sum of `|m_r - m'_r|` over all positions.
    pub fn manhattan(&self, other: &Ditstring) -> usize {
        self.0.iter().zip(&other.0).map(|(&a, &b)| (a as isize - b as isize).unsigned_abs()).sum()
    }

    /// Displayed form `m_n … m_1`; compact for `d <= 10`, comma-separated otherwise.
    pub fn render(&self, two_s: usize) -> String {
        if two_s < 10 {
            self.0.iter().rev().map(|x| char::from(b'0' + x)).collect()
        } else {
            self.0.iter().rev().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Display for Ditstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.0.iter().copied().max().unwrap_or(0) as usize;
        f.write_str(&self.render(max))
    }
}

/// Exact binomial coefficient, `None` on `u128` overflow.
pub(crate) fn binomial(n: u128, r: u128) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Sector dimension by inclusion-exclusion over digits exceeding `2s`.
///
/// # Panics
///
/// Panics if an intermediate binomial overflows `u128`.
pub fn dimension(spec: &CompositionSpec) -> u128 {
    if spec.is_empty() {
        return 0;
    }
    let (n, k, d) = (spec.n as u128, spec.k as u128, spec.d() as u128);
    let mut total: i128 = 0;
    for l in 0..=(k / d) {
        let term = binomial(n, l)
            .and_then(|a| binomial(k - l * d + n - 1, n - 1).and_then(|b| a.checked_mul(b)))
            .expect("sector dimension overflows u128");
        let term = i128::try_from(term).expect("sector dimension overflows i128");
        if l % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u128
}

/// All sector ditstrings in ascending [`Ditstring`] order.
pub fn enumerate_sector(spec: &CompositionSpec) -> Vec<Ditstring> {
    let mut out = Vec::new();
    if spec.is_empty() {
        return out;
    }
    let mut digits = vec![0u8; spec.n];
    fill(spec, 0, spec.k, &mut digits, &mut out);
    out
}

fn fill(spec: &CompositionSpec, pos: usize, remaining: usize, digits: &mut [u8], out: &mut Vec<Ditstring>) {
    let rest = spec.n - pos - 1;
    if rest == 0 {
        if remaining <= spec.two_s {
            digits[pos] = remaining as u8;
            out.push(Ditstring(digits.to_vec()));
        }
        return;
    }
    let lo = remaining.saturating_sub(rest * spec.two_s);
    let hi = remaining.min(spec.two_s);
    for v in lo..=hi {
        digits[pos] = v as u8;
        fill(spec, pos + 1, remaining - v, digits, out);
    }
}

/// Which generator builds a sector's Gray code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Generator {
    #[default]
    Walsh,
    Warnsdorff,
}

impl std::str::FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "walsh" => Ok(Generator::Walsh),
            "warnsdorff" => Ok(Generator::Warnsdorff),
            other => Err(Error::Parse(format!("unknown generator {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, k: usize, two_s: usize) -> CompositionSpec {
        CompositionSpec::new(n, k, two_s).unwrap()
    }

    fn brute_force_count(spec: &CompositionSpec) -> u128 {
        let d = spec.d();
        let total = d.pow(spec.n as u32);
        (0..total)
            .filter(|&b| {
                let mut b = b;
                let mut sum = 0;
                for _ in 0..spec.n {
                    sum += b % d;
                    b /= d;
                }
                sum == spec.k
            })
            .count() as u128
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&spec(3, 3, 2)), 7);
        assert_eq!(dimension(&spec(4, 2, 1)), 6);
        assert_eq!(dimension(&spec(3, 0, 2)), 1);
        assert_eq!(dimension(&spec(2, 5, 2)), 0);
        let s = spec(5, 7, 3);
        assert_eq!(dimension(&s), brute_force_count(&s));
    }

    #[test]
    fn dimension_matches_brute_force_sweep() {
        for n in 1..=6 {
            for two_s in 1..=4 {
                for k in 0..=n * two_s {
                    let s = spec(n, k, two_s);
                    let brute = brute_force_count(&s);
                    assert_eq!(dimension(&s), brute, "{s}");
                    assert_eq!(enumerate_sector(&s).len() as u128, brute, "{s}");
                    // particle-hole symmetry
                    assert_eq!(dimension(&s), dimension(&spec(n, n * two_s - k, two_s)));
                }
            }
        }
    }

    #[test]
    fn spin_half_dimension_is_binomial() {
        for n in 1..=12u128 {
            for k in 0..=n {
                let s = spec(n as usize, k as usize, 1);
                assert_eq!(dimension(&s), binomial(n, k).unwrap());
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let got: Vec<String> = enumerate_sector(&spec(3, 3, 2)).iter().map(|m| m.render(2)).collect();
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(sorted, ["012", "021", "102", "111", "120", "201", "210"]);
        assert_eq!(enumerate_sector(&spec(1, 2, 3)), vec![Ditstring::new(vec![2])]);
        assert!(enumerate_sector(&spec(2, 3, 1)).is_empty());
    }

    #[test]
    fn enumerate_is_sorted_and_in_sector() {
        let s = spec(4, 5, 3);
        let all = enumerate_sector(&s);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|m| s.contains(m)));
    }

    #[test]
    fn render_and_parse() {
        let m = Ditstring::parse_display("012").unwrap();
        assert_eq!(m.digits(), &[2, 1, 0]);
        assert_eq!(m.digit(1), 2);
        assert_eq!(m.render(2), "012");
        let wide = Ditstring::new(vec![11, 0, 3]);
        assert_eq!(wide.render(12), "3,0,11");
        assert_eq!(Ditstring::parse_display("3,0,11").unwrap(), wide);
        assert!(Ditstring::parse_display("0a1").is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(CompositionSpec::new(0, 0, 1).is_err());
        assert!(CompositionSpec::new(2, 0, 0).is_err());
        assert!(spec(2, 5, 2).is_empty());
        assert!(matches!(spec(2, 5, 2).require_nonempty(), Err(Error::EmptySector { .. })));
    }
}
