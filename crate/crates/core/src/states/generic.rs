//! User-supplied amplitudes keyed by ditstring.
//!
//! File form: a JSON array of `{"m": [m1, …, mn], "re": …, "im": …}` in any
//! order, with `m` in index order like every other ditstring array.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::AmplitudeProvider;
use crate::angles::AmplitudeList;
use crate::compositions::{Ditstring, GrayCode};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeEntry {
    pub m: Vec<u8>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GenericAmplitudes {
    values: BTreeMap<Ditstring, C64>,
}

impl GenericAmplitudes {
    pub fn from_entries(entries: Vec<AmplitudeEntry>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for e in entries {
            let m = Ditstring::new(e.m);
            if values.insert(m.clone(), C64::new(e.re, e.im)).is_some() {
                return Err(Error::Parse(format!("ditstring {m} listed twice")));
            }
        }
        Ok(GenericAmplitudes { values })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_entries(serde_json::from_str(text)?)
    }

    /// Entries of `amps`, keyed by the matching entries of `code`.
    pub fn from_list(code: &GrayCode, amps: &AmplitudeList) -> Result<Self> {
        if code.len() != amps.len() {
            return Err(Error::LengthMismatch { expected: code.len(), found: amps.len() });
        }
        Ok(GenericAmplitudes { values: code.entries().iter().cloned().zip(amps.values().iter().copied()).collect() })
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<AmplitudeEntry> =
            self.values.iter().map(|(m, a)| AmplitudeEntry { m: m.digits().to_vec(), re: a.re, im: a.im }).collect();
        serde_json::to_string(&entries).expect("plain data serializes")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Raw values in `code` order. Every sector entry must be present and
    /// nothing outside the code may be listed; no normalization is applied.
    pub fn along(&self, code: &GrayCode) -> Result<AmplitudeList> {
        let spec = code.spec();
        if let Some(extra) = self.values.keys().find(|m| code.index_of(m).is_none()) {
            return Err(Error::NotInSector(format!("{} of {spec}", extra.render(spec.two_s()))));
        }
        let values = code.entries().iter().map(|m| self.amplitude(m)).collect::<Result<Vec<_>>>()?;
        Ok(AmplitudeList::new(values))
    }
}

impl AmplitudeProvider for GenericAmplitudes {
    fn amplitude(&self, m: &Ditstring) -> Result<C64> {
        self.values.get(m).copied().ok_or_else(|| Error::MissingAmplitude(m.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::{walsh_gray_code, CompositionSpec};

    fn code() -> GrayCode {
        walsh_gray_code(&CompositionSpec::new(2, 1, 1).unwrap()).unwrap()
    }

    #[test]
    fn reorders_along_code() {
        let g =
            GenericAmplitudes::from_json(r#"[{"m":[0,1],"re":0.8,"im":0.0},{"m":[1,0],"re":0.0,"im":0.6}]"#).unwrap();
        let code = code();
        let a = g.along(&code).unwrap();
        for (m, v) in code.entries().iter().zip(a.values()) {
            let expected = if m.digits() == [0, 1] { C64::new(0.8, 0.0) } else { C64::new(0.0, 0.6) };
            assert_eq!(*v, expected);
        }
    }

    #[test]
    fn missing_extra_and_duplicate() {
        let code = code();
        let missing = GenericAmplitudes::from_json(r#"[{"m":[0,1],"re":1.0}]"#).unwrap();
        assert!(matches!(missing.along(&code), Err(Error::MissingAmplitude(_))));
        let extra = GenericAmplitudes::from_json(r#"[{"m":[0,1],"re":1.0},{"m":[1,0],"re":0.0},{"m":[1,1],"re":0.0}]"#)
            .unwrap();
        assert!(matches!(extra.along(&code), Err(Error::NotInSector(_))));
        assert!(GenericAmplitudes::from_json(r#"[{"m":[0,1],"re":1.0},{"m":[0,1],"re":0.0}]"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let code = code();
        let list = AmplitudeList::new(vec![C64::new(0.6, 0.0), C64::new(0.0, -0.8)]);
        let g = GenericAmplitudes::from_list(&code, &list).unwrap();
        let back = GenericAmplitudes::from_json(&g.to_json()).unwrap();
        assert_eq!(back.along(&code).unwrap(), list);
    }
}
