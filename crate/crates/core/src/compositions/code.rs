use std::collections::HashSet;
use std::fmt;

use super::{dimension, CompositionSpec, Ditstring};
use crate::error::{Error, Result};

/// An ordered list of sector ditstrings, meant to satisfy the Gray property.
///
/// Construction does not check the property; call [`GrayCode::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayCode {
    spec: CompositionSpec,
    entries: Vec<Ditstring>,
}

impl GrayCode {
    pub fn new(spec: CompositionSpec, entries: Vec<Ditstring>) -> Self {
        GrayCode { spec, entries }
    }

    /// Builds and verifies in one go.
    pub fn checked(spec: CompositionSpec, entries: Vec<Ditstring>) -> Result<Self> {
        let code = GrayCode::new(spec, entries);
        code.verify().map_err(|v| Error::InvalidCode(v.to_string()))?;
        Ok(code)
    }

    pub fn spec(&self) -> &CompositionSpec {
        &self.spec
    }

    pub fn entries(&self) -> &[Ditstring] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn verify(&self) -> std::result::Result<(), GrayViolation> {
        verify_gray_property(self)
    }

    /// Position of `m` in the code.
    pub fn index_of(&self, m: &Ditstring) -> Option<usize> {
        self.entries.iter().position(|e| e == m)
    }
}

/// One transition `m[l+1] = m[l] + e_i - e_j`, with positions 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrayStep {
    pub l: usize,
    /// Raised position.
    pub i: usize,
    /// Lowered position.
    pub j: usize,
    /// Digit `i` before the step.
    pub m_i: u8,
    /// Digit `j` before the step.
    pub m_j: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Entry has the wrong length, a digit above 2s, or the wrong digit sum.
    NotInSector,
    /// Entry repeats an earlier one.
    Duplicate,
    /// Entry and its successor are not one unit move apart.
    NotAdjacent,
    /// The code does not cover the whole sector.
    WrongLength,
}

/// First place a Gray code fails. For [`ViolationKind::NotAdjacent`] the index
/// is the pair `(index, index + 1)`; for [`ViolationKind::WrongLength`] it is
/// the code length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrayViolation {
    pub index: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for GrayViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::NotInSector => write!(f, "entry {} is not in the sector", self.index),
            ViolationKind::Duplicate => write!(f, "entry {} repeats an earlier entry", self.index),
            ViolationKind::NotAdjacent => {
                write!(f, "entries {} and {} do not differ by e_i - e_j", self.index, self.index + 1)
            }
            ViolationKind::WrongLength => {
                write!(f, "code has {} entries but the sector dimension differs", self.index)
            }
        }
    }
}

/// Returns the raised and lowered positions (1-based) if `b = a + e_i - e_j`.
pub(crate) fn unit_move(a: &Ditstring, b: &Ditstring) -> Option<(usize, usize)> {
    if a.len() != b.len() {
        return None;
    }
    let mut raised = None;
    let mut lowered = None;
    for (r, (&x, &y)) in a.digits().iter().zip(b.digits()).enumerate() {
        match y as i32 - x as i32 {
            0 => {}
            1 if raised.is_none() => raised = Some(r + 1),
            -1 if lowered.is_none() => lowered = Some(r + 1),
            _ => return None,
        }
    }
    raised.zip(lowered)
}

/// Checks membership, distinctness, adjacency and completeness, in entry order.
pub fn verify_gray_property(code: &GrayCode) -> std::result::Result<(), GrayViolation> {
    let spec = code.spec();
    let mut seen = HashSet::with_capacity(code.len());
    for (idx, m) in code.entries().iter().enumerate() {
        if !spec.contains(m) {
            return Err(GrayViolation { index: idx, kind: ViolationKind::NotInSector });
        }
        if !seen.insert(m) {
            return Err(GrayViolation { index: idx, kind: ViolationKind::Duplicate });
        }
        if let Some(next) = code.entries().get(idx + 1) {
            if unit_move(m, next).is_none() {
                return Err(GrayViolation { index: idx, kind: ViolationKind::NotAdjacent });
            }
        }
    }
    if code.len() as u128 != dimension(spec) {
        return Err(GrayViolation { index: code.len(), kind: ViolationKind::WrongLength });
    }
    Ok(())
}

/// Per-step `(i, j, m_i, m_j)` deltas; `D - 1` of them.
pub fn gray_steps(code: &GrayCode) -> Result<Vec<GrayStep>> {
    code.verify().map_err(|v| Error::InvalidCode(v.to_string()))?;
    Ok(code
        .entries()
        .windows(2)
        .enumerate()
        .map(|(l, pair)| {
            let (i, j) = unit_move(&pair[0], &pair[1]).expect("verified adjacency");
            GrayStep { l, i, j, m_i: pair[0].digit(i), m_j: pair[0].digit(j) }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1() -> GrayCode {
        let spec = CompositionSpec::new(3, 3, 2).unwrap();
        let entries = ["012", "021", "120", "111", "102", "201", "210"]
            .iter()
            .map(|s| Ditstring::parse_display(s).unwrap())
            .collect();
        GrayCode::new(spec, entries)
    }

    #[test]
    fn table1_is_a_gray_code() {
        assert_eq!(table1().verify(), Ok(()));
    }

    #[test]
    fn table1_steps() {
        let steps: Vec<_> = gray_steps(&table1()).unwrap().iter().map(|s| (s.i, s.j, s.m_i, s.m_j)).collect();
        assert_eq!(steps, [(2, 1, 1, 2), (3, 1, 0, 1), (1, 2, 0, 2), (1, 2, 1, 1), (3, 1, 1, 2), (2, 1, 0, 1)]);
    }

    #[test]
    fn distance_four_pair_is_rejected_at_zero() {
        let spec = CompositionSpec::new(3, 3, 2).unwrap();
        let code = GrayCode::new(
            spec,
            vec![Ditstring::parse_display("012").unwrap(), Ditstring::parse_display("210").unwrap()],
        );
        assert_eq!(code.verify(), Err(GrayViolation { index: 0, kind: ViolationKind::NotAdjacent }));
    }

    #[test]
    fn other_violations() {
        let spec = CompositionSpec::new(3, 3, 2).unwrap();
        let p = |s: &str| Ditstring::parse_display(s).unwrap();
        let dup = GrayCode::new(spec, vec![p("012"), p("021"), p("012")]);
        assert_eq!(dup.verify().unwrap_err().kind, ViolationKind::Duplicate);
        let out = GrayCode::new(spec, vec![p("012"), p("003")]);
        assert_eq!(out.verify().unwrap_err(), GrayViolation { index: 1, kind: ViolationKind::NotInSector });
        let short = GrayCode::new(spec, vec![p("012"), p("021")]);
        assert_eq!(short.verify().unwrap_err(), GrayViolation { index: 2, kind: ViolationKind::WrongLength });
        assert!(gray_steps(&short).is_err());
    }

    #[test]
    fn singleton_has_no_steps() {
        let spec = CompositionSpec::new(2, 0, 2).unwrap();
        let code = GrayCode::new(spec, vec![Ditstring::new(vec![0, 0])]);
        assert!(gray_steps(&code).unwrap().is_empty());
    }
}
