//! Codebook files: one JSON document holding the code parameters and the
//! codewords. Every integer is a decimal string, codewords are one-line
//! notation strings, and [`save`] output reloads and re-saves byte for byte.
//!
//! ```json
//! {
//!   "n": "7",
//!   "t": "2",
//!   "q": "5",
//!   "m": "31",
//!   "m_t": "248",
//!   "sidon": ["0", "1", …],
//!   "h": ["62", "63", …],
//!   "coset": "17",
//!   "codebook": ["1,2,3,4,5,6,7", …]
//! }
//! ```
//!
//! `q` and `m` are `null` for the single-error code, which has no Sidon set.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::code::RankCode;
use super::parity::ParityCheck;
use super::sidon::SidonSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodebookFile {
    n: String,
    t: String,
    q: Option<String>,
    m: Option<String>,
    m_t: String,
    sidon: Vec<String>,
    h: Vec<String>,
    coset: String,
    codebook: Vec<String>,
}

fn parse_num<T: std::str::FromStr>(field: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Format(format!("field {field}: {s:?} is not a decimal integer")))
}

/// Serialises a code. The output ends with a newline.
pub fn to_string(code: &RankCode) -> String {
    let file = CodebookFile {
        n: code.n().to_string(),
        t: code.t().to_string(),
        q: code.q().map(|q| q.to_string()),
        m: code.m().map(|m| m.to_string()),
        m_t: code.m_t().to_string(),
        sidon: code
            .sidon()
            .map(|s| s.elements().iter().map(u64::to_string).collect())
            .unwrap_or_default(),
        h: code.parity().h().iter().map(u64::to_string).collect(),
        coset: code.coset().to_string(),
        codebook: code.codebook().iter().map(Permutation::to_string).collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("plain strings serialise");
    out.push('\n');
    out
}

/// Parses a codebook document and rebuilds the code. The check gates run;
/// call [`RankCode::verify`] for the full codebook checks.
pub fn from_str(text: &str) -> Result<RankCode> {
    let file: CodebookFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let n: usize = parse_num("n", &file.n)?;
    let t: u32 = parse_num("t", &file.t)?;
    let m_t: u64 = parse_num("m_t", &file.m_t)?;
    let coset: u64 = parse_num("coset", &file.coset)?;
    let h = file
        .h
        .iter()
        .map(|s| parse_num("h", s))
        .collect::<Result<Vec<u64>>>()?;
    let m = file
        .m
        .as_deref()
        .map(|s| parse_num::<u64>("m", s))
        .transpose()?;
    let sidon = match file.q.as_deref() {
        None => {
            if !file.sidon.is_empty() {
                return Err(Error::Format("sidon elements given without q".into()));
            }
            None
        }
        Some(q) => {
            let q: u64 = parse_num("q", q)?;
            let elements = file
                .sidon
                .iter()
                .map(|s| parse_num("sidon", s))
                .collect::<Result<Vec<u64>>>()?;
            let set = SidonSet::new(q, t, elements)?;
            if Some(set.m()) != m {
                return Err(Error::Format(format!(
                    "m does not match (q^(t+1) - 1)/(q - 1) = {}",
                    set.m()
                )));
            }
            Some(set)
        }
    };
    let parity = ParityCheck::from_parts(t, m, m_t, h)?;
    let codebook = file
        .codebook
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.parse::<Permutation>()
                .map_err(|e| Error::Format(format!("codeword {i}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    RankCode::from_parts(n, t, sidon, parity, coset, codebook)
}

pub fn save(code: &RankCode, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_string(code))
        .map_err(|e| Error::Format(format!("cannot write {}: {e}", path.display())))
}

pub fn load(path: impl AsRef<Path>) -> Result<RankCode> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
    from_str(&text)
}
