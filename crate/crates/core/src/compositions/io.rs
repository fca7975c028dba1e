//! Text and JSON forms of a [`GrayCode`].
//!
//! Text: a `# n k two_s` header, then one displayed ditstring `m_n … m_1` per
//! line. JSON: `{"n":…,"k":…,"two_s":…,"entries":[[m_1,…,m_n],…]}`.

use serde::{Deserialize, Serialize};

use super::{CompositionSpec, Ditstring, GrayCode};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct GrayCodeJson {
    n: usize,
    k: usize,
    two_s: usize,
    entries: Vec<Vec<u8>>,
}

impl GrayCode {
    pub fn to_text(&self) -> String {
        let spec = self.spec();
        let mut out = format!("# {} {} {}\n", spec.n(), spec.k(), spec.two_s());
        for m in self.entries() {
            out.push_str(&m.render(spec.two_s()));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let fields: Vec<usize> = header
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse(format!("header {header:?} must start with '#'")))?
            .split_whitespace()
            .map(|f| f.parse().map_err(|_| Error::Parse(format!("bad header field {f:?}"))))
            .collect::<Result<_>>()?;
        let [n, k, two_s] = fields[..] else {
            return Err(Error::Parse(format!("header {header:?} needs three fields")));
        };
        let spec = CompositionSpec::new(n, k, two_s)?;
        let entries = lines
            .map(|l| {
                let m = Ditstring::parse_display(l)?;
                if m.len() != n {
                    return Err(Error::Parse(format!("line {l:?} has {} digits, expected {n}", m.len())));
                }
                Ok(m)
            })
            .collect::<Result<_>>()?;
        Ok(GrayCode::new(spec, entries))
    }

    pub fn to_json(&self) -> String {
        let spec = self.spec();
        let doc = GrayCodeJson {
            n: spec.n(),
            k: spec.k(),
            two_s: spec.two_s(),
            entries: self.entries().iter().map(|m| m.digits().to_vec()).collect(),
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GrayCodeJson = serde_json::from_str(text)?;
        let spec = CompositionSpec::new(doc.n, doc.k, doc.two_s)?;
        if let Some(bad) = doc.entries.iter().find(|e| e.len() != doc.n) {
            return Err(Error::Parse(format!("entry {bad:?} has the wrong length")));
        }
        Ok(GrayCode::new(spec, doc.entries.into_iter().map(Ditstring::new).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::walsh_gray_code;

    #[test]
    fn table3_text() {
        let code = walsh_gray_code(&CompositionSpec::new(3, 3, 2).unwrap()).unwrap();
        assert_eq!(code.to_text(), "# 3 3 2\n012\n021\n120\n111\n102\n201\n210\n");
        assert_eq!(GrayCode::from_text(&code.to_text()).unwrap(), code);
    }

    #[test]
    fn json_form() {
        let code = walsh_gray_code(&CompositionSpec::new(2, 1, 1).unwrap()).unwrap();
        assert_eq!(code.to_json(), r#"{"n":2,"k":1,"two_s":1,"entries":[[1,0],[0,1]]}"#);
        assert_eq!(GrayCode::from_json(&code.to_json()).unwrap(), code);
    }

    #[test]
    fn wide_digits_use_commas() {
        let code = walsh_gray_code(&CompositionSpec::new(2, 11, 10).unwrap()).unwrap();
        let text = code.to_text();
        assert!(text.lines().nth(1).unwrap().contains(','));
        assert_eq!(GrayCode::from_text(&text).unwrap(), code);
    }

    #[test]
    fn malformed_inputs() {
        assert!(GrayCode::from_text("3 3 2\n012\n").is_err());
        assert!(GrayCode::from_text("# 3 3\n012\n").is_err());
        assert!(GrayCode::from_text("# 3 3 2\n12\n").is_err());
        assert!(GrayCode::from_json(r#"{"n":2,"k":1,"two_s":1,"entries":[[1]]}"#).is_err());
    }
}
