//! Walsh's non-recursive Gray code for bounded compositions.
//!
//! Part `g_i` has suffix sum `S_i = g_{i+1} + … + g_n` and prefix capacity
//! `M_i = 2s (i - 1)`, which confine it to `L_i <= g_i <= U_i` with
//! `L_i = max(0, k - S_i - M_i)` and `U_i = min(2s, k - S_i)`. When `S_i` is
//! even the "first" value of `g_i` is `L_i` and the "last" is `U_i`; odd `S_i`
//! swaps them. Each successor moves one unit between two parts.

use super::{dimension, CompositionSpec, Ditstring, GrayCode};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A bounded composition `(g_1, …, g_n)` with cached suffix sums.
///
/// Part `g_i` is digit `m_i`, so `parts()` is in the same index order as
/// [`Ditstring::digits`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshState {
    spec: CompositionSpec,
    g: Vec<u8>,
    // suffix[i] = S_{i+1} in 1-based terms
    suffix: Vec<usize>,
}

impl WalshState {
    pub fn parts(&self) -> &[u8] {
        &self.g
    }

    pub fn spec(&self) -> &CompositionSpec {
        &self.spec
    }

    /// Suffix sum `S_i` for 1-based `i`.
    pub fn suffix_sum(&self, i: usize) -> usize {
        self.suffix[i - 1]
    }

    /// `(L_i, U_i)` for 1-based `i` under the current suffix.
    pub fn bounds(&self, i: usize) -> (usize, usize) {
        let s = self.suffix[i - 1];
        let k = self.spec.k();
        let two_s = self.spec.two_s();
        let prefix_capacity = two_s * (i - 1);
        let lower = k.saturating_sub(s + prefix_capacity);
        let upper = two_s.min(k - s);
        (lower, upper)
    }

    fn first_value(&self, i: usize) -> usize {
        let (lower, upper) = self.bounds(i);
        if self.suffix[i - 1].is_multiple_of(2) {
            lower
        } else {
            upper
        }
    }

    fn last_value(&self, i: usize) -> usize {
        let (lower, upper) = self.bounds(i);
        if self.suffix[i - 1].is_multiple_of(2) {
            upper
        } else {
            lower
        }
    }

    fn refresh_suffix(&mut self) {
        let mut acc = 0;
        for idx in (0..self.g.len()).rev() {
            self.suffix[idx] = acc;
            acc += self.g[idx] as usize;
        }
    }

    pub fn to_ditstring(&self) -> Ditstring {
        Ditstring::new(self.g.clone())
    }

    /// Moves to the successor in place; returns `false` on the final composition.
    pub fn advance(&mut self) -> bool {
        let n = self.g.len();
        let Some(i) = (2..=n).find(|&i| self.g[i - 1] as usize != self.last_value(i)) else {
            return false;
        };
        if self.suffix[i - 1].is_multiple_of(2) {
            self.g[i - 1] += 1;
        } else {
            self.g[i - 1] -= 1;
        }
        self.refresh_suffix();
        let j = (1..i)
            .rev()
            .find(|&j| self.g[j - 1] as usize != self.first_value(j))
            .expect("a prefix part must absorb the unit moved at the first pivot");
        self.g[j - 1] = self.first_value(j) as u8;
        self.refresh_suffix();
        true
    }

    /// The successor composition, or `None` when this one is final.
    pub fn successor(&self) -> Option<WalshState> {
        let mut next = self.clone();
        next.advance().then_some(next)
    }
}

/// The lexicographically largest composition: fill `g_1`, then `g_2`, … greedily.
pub fn walsh_initial(spec: &CompositionSpec) -> Result<WalshState> {
    spec.require_nonempty()?;
    let mut remaining = spec.k();
    let g: Vec<u8> = (0..spec.n())
        .map(|_| {
            let v = remaining.min(spec.two_s());
            remaining -= v;
            v as u8
        })
        .collect();
    let mut state = WalshState { spec: *spec, suffix: vec![0; g.len()], g };
    state.refresh_suffix();
    Ok(state)
}

/// Walsh's Gray code under the default [`Limits`].
pub fn walsh_gray_code(spec: &CompositionSpec) -> Result<GrayCode> {
    walsh_gray_code_with(spec, &Limits::default())
}

pub fn walsh_gray_code_with(spec: &CompositionSpec, limits: &Limits) -> Result<GrayCode> {
    spec.require_nonempty()?;
    let dim = dimension(spec);
    if dim > limits.max_dim {
        return Err(Error::DimensionCap { dim, cap: limits.max_dim });
    }
    let mut state = walsh_initial(spec)?;
    let mut entries = Vec::with_capacity(dim as usize);
    entries.push(state.to_ditstring());
    while state.advance() {
        entries.push(state.to_ditstring());
    }
    Ok(GrayCode::new(*spec, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::enumerate_sector;

    fn spec(n: usize, k: usize, two_s: usize) -> CompositionSpec {
        CompositionSpec::new(n, k, two_s).unwrap()
    }

    #[test]
    fn initial_examples() {
        assert_eq!(walsh_initial(&spec(3, 3, 2)).unwrap().parts(), &[2, 1, 0]);
        assert_eq!(walsh_initial(&spec(3, 0, 2)).unwrap().parts(), &[0, 0, 0]);
        let s = spec(4, 6, 2);
        let init = walsh_initial(&s).unwrap();
        assert_eq!(init.parts(), &[2, 2, 2, 0]);
        assert_eq!(&init.to_ditstring(), enumerate_sector(&s).iter().max().unwrap());
        assert!(matches!(walsh_initial(&spec(2, 5, 2)), Err(Error::EmptySector { .. })));
    }

    fn state_from(parts: &[u8]) -> WalshState {
        let s = spec(parts.len(), parts.iter().map(|&x| x as usize).sum(), 2);
        let mut st = WalshState { spec: s, g: parts.to_vec(), suffix: vec![0; parts.len()] };
        st.refresh_suffix();
        st
    }

    #[test]
    fn successor_examples() {
        assert_eq!(state_from(&[2, 1, 0]).successor().unwrap().parts(), &[1, 2, 0]);
        assert_eq!(state_from(&[1, 0, 2]).successor().unwrap().parts(), &[0, 1, 2]);
        assert!(state_from(&[0, 1, 2]).successor().is_none());
    }

    #[test]
    fn bounds_and_suffix() {
        let st = state_from(&[2, 1, 0]);
        assert_eq!(st.suffix_sum(1), 1);
        assert_eq!(st.suffix_sum(3), 0);
        assert_eq!(st.bounds(1), (2, 2));
        assert_eq!(st.bounds(2), (1, 2));
    }

    #[test]
    fn table3_sequence() {
        let code = walsh_gray_code(&spec(3, 3, 2)).unwrap();
        let parts: Vec<&[u8]> = code.entries().iter().map(|m| m.digits()).collect();
        let expected: [&[u8]; 7] = [&[2, 1, 0], &[1, 2, 0], &[0, 2, 1], &[1, 1, 1], &[2, 0, 1], &[1, 0, 2], &[0, 1, 2]];
        assert_eq!(parts, expected);
    }

    #[test]
    fn singleton_and_cap() {
        let code = walsh_gray_code(&spec(1, 2, 2)).unwrap();
        assert_eq!(code.entries(), &[Ditstring::new(vec![2])]);
        let limits = Limits { max_dim: 5, ..Limits::default() };
        assert!(matches!(walsh_gray_code_with(&spec(3, 3, 2), &limits), Err(Error::DimensionCap { dim: 7, cap: 5 })));
    }

    #[test]
    fn bitstrings_weight_three() {
        let s = spec(4, 3, 1);
        let code = walsh_gray_code(&s).unwrap();
        assert_eq!(code.verify(), Ok(()));
        let mut got = code.entries().to_vec();
        got.sort();
        assert_eq!(got, enumerate_sector(&s));
    }

    #[test]
    fn every_step_moves_one_unit() {
        for n in 1..=6 {
            for two_s in 1..=4 {
                for k in 0..=n * two_s {
                    let s = spec(n, k, two_s);
                    let code = walsh_gray_code(&s).unwrap();
                    assert_eq!(code.verify(), Ok(()), "{s}");
                }
            }
        }
    }
}
